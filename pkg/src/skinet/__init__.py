"""Skillset verification through 1-safe Petri nets with priorities."""

__version__ = "0.1.0"

from .builder import BuildOptions, build_net, expand_transition, lower_skillset
from .checks import check_dead, check_deadset, check_deadskill, check_live, check_safe
from .model import Skillset, validate
from .parser import ParseError, format_skillset, parse_skillset
from .statespace import explore, path_to

__all__ = [
    "BuildOptions", "ParseError", "Skillset", "build_net", "check_dead", "check_deadset",
    "check_deadskill", "check_live", "check_safe", "explore", "expand_transition",
    "format_skillset", "lower_skillset", "parse_skillset", "path_to", "validate",
]
