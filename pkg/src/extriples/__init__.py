"""Exceptional triples: subgroups H of G with the same invariant field on V."""

from .classifier import Verdict, classify
from .groups import EmbeddingSpec, Factor, FactorMap, GroupSpec, ModuleSpec, ModuleSummand, TripleSpec
from .oracle import is_exceptional_oracle
from .specio import format_triple, parse_spec, parse_triple

__all__ = [
    "Verdict", "classify", "EmbeddingSpec", "Factor", "FactorMap", "GroupSpec", "ModuleSpec", "ModuleSummand",
    "TripleSpec", "is_exceptional_oracle", "format_triple", "parse_spec", "parse_triple",
]
__version__ = "0.1.0"
