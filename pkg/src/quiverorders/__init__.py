"""Marked quiver settings for smooth orders: reduction, classification, McKay quivers,
stability, localization and invariant rings."""
from .errors import (
    CharacterDataError,
    DimensionError,
    IllegalMoveError,
    NotInChartError,
    PairingError,
    QuiverError,
    ResourceError,
    SchemeError,
    UnsupportedError,
    ValidationError,
)
from .quiver_core import (
    MarkedQuiver,
    MarkedQuiverSetting,
    MoritaSetting,
    bergman_small_total,
    central_dimension,
    euler_form,
    is_simple_dimvec,
    make_setting,
)

__version__ = "0.1.0"
