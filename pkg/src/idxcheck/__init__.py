"""A bidirectional typechecker for a language with higher-rank polymorphism,
indexed types and pattern matching, with a declarative reference oracle."""

from .checker import Checker, SynthResult, check, covers, covers_assuming, expand, match_branches, recspine, spine, synth
from .context import Ctx, apply_complete, apply_ctx, canonical_completion, extends, wf_ctx, wf_type
from .errors import FuelExhausted, IdxError, ParseError, TypeCheckError
from .oracle import Fuel, decl_covers, decl_sub, decl_synth, decl_synthesizes, decl_typecheck, mgu, verdict
from .parser import parse_expr, parse_program, parse_prop, parse_type
from .printer import print_ctx, print_expr, print_type
from .solve import BOTTOM, check_eq, check_prop, elim_eq, elim_prop, instantiate
from .subtype import equiv_types, subtype
from .syntax import BANG, SLASH, Principality, Session, Sort
from .trace import Tracer

__all__ = [
    "BANG",
    "BOTTOM",
    "Checker",
    "Ctx",
    "Fuel",
    "FuelExhausted",
    "IdxError",
    "ParseError",
    "Principality",
    "SLASH",
    "Session",
    "Sort",
    "SynthResult",
    "Tracer",
    "TypeCheckError",
    "apply_complete",
    "apply_ctx",
    "canonical_completion",
    "check",
    "check_eq",
    "check_prop",
    "covers",
    "covers_assuming",
    "decl_covers",
    "decl_sub",
    "decl_synth",
    "decl_synthesizes",
    "decl_typecheck",
    "elim_eq",
    "elim_prop",
    "equiv_types",
    "expand",
    "extends",
    "instantiate",
    "match_branches",
    "mgu",
    "parse_expr",
    "parse_program",
    "parse_prop",
    "parse_type",
    "print_ctx",
    "print_expr",
    "print_type",
    "recspine",
    "spine",
    "subtype",
    "synth",
    "verdict",
    "wf_ctx",
    "wf_type",
]
