"""Locally recoverable codes from covers of curves and surfaces over finite fields."""

__version__ = "0.1.0"

from .gf import GF, FieldElement, make_field
from .exprs import RatExpr
from .curves import WeierstrassCurve, EcPoint, INF, ProjPoint
from .covers import CoverData
from .engine import (
    ConstructionError,
    RecoveryError,
    LinearCode,
    build_code,
    build_availability_code,
    local_recover,
    recover_word,
    read_code_file,
    write_code_file,
)
from .surfaces import build_surface_code
from .analysis import ConstructionReport, report, min_distance_exhaustive, min_distance_low_weight
from .config import ConfigError, build_from_config, builtin_config, builtin_names, load_config, parse_config
from .estimator import LRCEncoder

__all__ = [
    "__version__",
    "GF",
    "FieldElement",
    "make_field",
    "RatExpr",
    "WeierstrassCurve",
    "EcPoint",
    "INF",
    "ProjPoint",
    "CoverData",
    "ConstructionError",
    "RecoveryError",
    "LinearCode",
    "build_code",
    "build_availability_code",
    "local_recover",
    "recover_word",
    "read_code_file",
    "write_code_file",
    "build_surface_code",
    "ConstructionReport",
    "report",
    "min_distance_exhaustive",
    "min_distance_low_weight",
    "ConfigError",
    "build_from_config",
    "builtin_config",
    "builtin_names",
    "load_config",
    "parse_config",
    "LRCEncoder",
]
