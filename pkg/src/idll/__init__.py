"""Proof kernel, cut elimination and finite totality-space models for
linear logic and idempotent linear logic."""

from .calculus import IDLL, LL, Proof, RuleError, System, build, check
from .syntax import dual, parse_formula, parse_sequent, print_formula, print_sequent

__all__ = [
    "IDLL",
    "LL",
    "Proof",
    "RuleError",
    "System",
    "build",
    "check",
    "dual",
    "parse_formula",
    "parse_sequent",
    "print_formula",
    "print_sequent",
]
