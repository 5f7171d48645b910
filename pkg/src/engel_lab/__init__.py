"""Engel elements in finite groups: table-driven group engine, structure
radicals, Engel level sets, example constructions and a theorem-check catalog."""

__version__ = "0.1.0"

from .config import Limits, RunConfig
from .constructions import build_group, make_group
from .engel import EngelReport, engel_level_sets, left_engel_status, right_engel_status
from .errors import (
    CapabilityError,
    CapacityError,
    EngelLabError,
    InvariantViolation,
    PreconditionError,
    SpecParseError,
    UsageError,
    ValidationError,
)
from .group import FiniteGroup, Subgroup, closure, engel_commutator
from .specs import parse_group_spec
from .structure import radicals, structure_report
from .verify import CATALOG, CheckResult, replay_witness, run_check, search_witness

__all__ = [
    "CATALOG",
    "CapabilityError",
    "CapacityError",
    "CheckResult",
    "EngelLabError",
    "EngelReport",
    "FiniteGroup",
    "InvariantViolation",
    "Limits",
    "PreconditionError",
    "RunConfig",
    "SpecParseError",
    "Subgroup",
    "UsageError",
    "ValidationError",
    "build_group",
    "closure",
    "engel_commutator",
    "engel_level_sets",
    "left_engel_status",
    "make_group",
    "parse_group_spec",
    "radicals",
    "replay_witness",
    "right_engel_status",
    "run_check",
    "search_witness",
    "structure_report",
]
