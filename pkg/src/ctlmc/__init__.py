"""Explicit-state CTL model checking with interleaving expansion of
concurrent workflow steps."""

from .checker import CheckError, Verdict, check, check_oracle, label
from .ctl import CTLSyntaxError, count_subformulas, format_ctl, normalize, parse_ctl
from .kripke import (
    KripkeStructure, KripkeSyntaxError, ValidationReport, complete_sinks, parse_kripke,
    serialize_kripke, size_metrics, validate,
)
from .workflow import (
    ConcurrentBlock, InterleavingExplosionError, WorkflowSpec, expand, interleavings,
    parse_workflow, serialize_workflow,
)

__all__ = [
    "CTLSyntaxError", "CheckError", "ConcurrentBlock", "InterleavingExplosionError",
    "KripkeStructure", "KripkeSyntaxError", "ValidationReport", "Verdict", "WorkflowSpec",
    "check", "check_oracle", "complete_sinks", "count_subformulas", "expand", "format_ctl",
    "interleavings", "label", "normalize", "parse_ctl", "parse_kripke", "parse_workflow",
    "serialize_kripke", "serialize_workflow", "size_metrics", "validate",
]
