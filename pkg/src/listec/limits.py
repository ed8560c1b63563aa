"""Size guards for the exhaustive routines."""
import os

from .errors import CapacityError

OVERRIDE_ENV = "LISTEC_GUARD_OVERRIDE"


def guards_lifted():
    return os.environ.get(OVERRIDE_ENV, "").strip().lower() not in ("", "0", "false", "no")


def check_guard(what, size, limit):
    """Raise CapacityError when ``size`` exceeds ``limit`` and guards are in force."""
    if size > limit and not guards_lifted():
        raise CapacityError(f"{what}: size {size} exceeds guard {limit} (set {OVERRIDE_ENV}=1 to lift)")
