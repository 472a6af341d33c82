"""Finite-dimensional 7-tuples given by structure tensors: law checkers,
bar-units, brackets, and tangent-like spaces of local monoids."""

from __future__ import annotations

from .axioms import CheckReport, Witness, check_quasitrisemigroup, check_triunit, check_trisemigroup
from .leibniz import BracketPair, brackets_from, check_eq18, check_huliu_identity, verify_local_leibniz
from .linalg import AffineSubspace, Subspace, solve_linear
from .local_monoid import Curve, DeltaOp, LocalMonoidSpec, verify_local_monoid
from .tangent import TangentReport, tangent_spaces, verify_passage
from .trialgebra import SevenTuple, StructureTensor, build_phi_model
from .units import (
    Diconjugator, compute_additive_halo, compute_halo, find_local_identity, induced_operations,
    one_sided_inverse, sharp_inverse,
)

__all__ = [
    "AffineSubspace", "BracketPair", "CheckReport", "Curve", "DeltaOp", "Diconjugator", "LocalMonoidSpec",
    "SevenTuple", "StructureTensor", "Subspace", "TangentReport", "Witness", "brackets_from",
    "build_phi_model", "check_eq18", "check_huliu_identity", "check_quasitrisemigroup", "check_triunit",
    "check_trisemigroup", "compute_additive_halo", "compute_halo", "find_local_identity",
    "induced_operations", "one_sided_inverse", "sharp_inverse", "solve_linear", "tangent_spaces",
    "verify_local_leibniz", "verify_local_monoid", "verify_passage",
]
