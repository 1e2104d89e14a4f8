"""Default caps. Each may be overridden through an environment variable."""

import os


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw, 0)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}")


# largest field (number of elements) make_field will build
FIELD_CAP = _env_int("DRINFELD_FIELD_CAP", 1 << 24)
# largest extension degree k of L searched for torsion points
KMAX = _env_int("DRINFELD_KMAX", 12)
# largest torsion module q^(2 deg a) we list point by point
POINT_CAP = _env_int("DRINFELD_POINT_CAP", 1 << 16)
# largest number of modules an enumeration will visit
ENUM_CAP = _env_int("DRINFELD_ENUM_CAP", 1_000_000)
# largest field scanned element by element (root search in embed)
SCAN_CAP = _env_int("DRINFELD_SCAN_CAP", 1 << 20)
