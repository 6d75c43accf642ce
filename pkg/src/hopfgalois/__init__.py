"""Exact decision procedures for Galois-theoretical pointed Hopf algebras."""

__version__ = "0.1.0"

from .classifier import (
    Status,
    Verdict,
    check_graded,
    check_lifted_rank2,
    check_uqg_obstruction,
    classify,
    classify_A1theta,
    classify_rank1,
    classify_rank2,
    count_twists,
)
from .cyclotomic import CycloScalar
from .datumfile import DatumFile, parse_datum_file, render_datum
from .field_action import ActionSpec, LaurentPoly, build_action, sl2_demo, verify_relations_on_basis
from .group import Character, FiniteAbelianGroup, GroupElement
from .group_algebra import GroupAlgebraElement
from .hopf_datum import HopfDatum, LiftingData, infer_cartan_matrix, validate
from .relations import NcPolynomial, adjoint, power_relation_Q, relation_Q, serre_relation

__all__ = [
    "ActionSpec",
    "Character",
    "CycloScalar",
    "DatumFile",
    "FiniteAbelianGroup",
    "GroupAlgebraElement",
    "GroupElement",
    "HopfDatum",
    "LaurentPoly",
    "LiftingData",
    "NcPolynomial",
    "Status",
    "Verdict",
    "adjoint",
    "build_action",
    "check_graded",
    "check_lifted_rank2",
    "check_uqg_obstruction",
    "classify",
    "classify_A1theta",
    "classify_rank1",
    "classify_rank2",
    "count_twists",
    "infer_cartan_matrix",
    "parse_datum_file",
    "power_relation_Q",
    "relation_Q",
    "render_datum",
    "serre_relation",
    "sl2_demo",
    "validate",
    "verify_relations_on_basis",
]
