"""Exact linearisation of irreducible matrix actions over a skew-field.

If ``V = F^n`` is irreducible under a matrix algebra ``S`` with ``T = C(S)``
and ``S = C(T)``, then ``T`` is a skew-field ``K``, ``V`` is a ``K``-vector
space and ``S`` is the full ring of ``K``-linear maps. This package computes
all of that exactly and emits independently checkable certificates.
"""

from .algebra import AlgebraBasis, algebra_closure, centralizer_basis
from .certificate import LinearizationCertificate, SkewFieldPresentation, verify_certificate
from .commutant import double_centralizer_check, is_division_ring
from .corollaries import NPReport, group_action, nesin_poizat, one_sided
from .documents import parse_instance, serialize
from .engine import (
    analyze_lines,
    check_domain_surjective,
    compress,
    compute_delta,
    direct_sum_decompose,
    kernel_chain,
    line_complement,
    linearize,
    local_inverse,
)
from .errors import (
    BudgetExhausted,
    HypothesisViolation,
    Inconclusive,
    ParseError,
    SkewFieldError,
    ValidationError,
)
from .fields import GF, QQ, FieldSpec, field_make
from .linalg import Matrix, Subspace
from .module import ModuleInstance, irreducible_test, minimal_submodule, spin

__version__ = "0.1.0"

__all__ = [
    "AlgebraBasis",
    "BudgetExhausted",
    "FieldSpec",
    "GF",
    "HypothesisViolation",
    "Inconclusive",
    "LinearizationCertificate",
    "Matrix",
    "ModuleInstance",
    "NPReport",
    "ParseError",
    "QQ",
    "SkewFieldError",
    "SkewFieldPresentation",
    "Subspace",
    "ValidationError",
    "algebra_closure",
    "analyze_lines",
    "centralizer_basis",
    "check_domain_surjective",
    "compress",
    "compute_delta",
    "direct_sum_decompose",
    "double_centralizer_check",
    "field_make",
    "group_action",
    "irreducible_test",
    "is_division_ring",
    "kernel_chain",
    "line_complement",
    "linearize",
    "local_inverse",
    "minimal_submodule",
    "nesin_poizat",
    "one_sided",
    "parse_instance",
    "serialize",
    "spin",
    "verify_certificate",
]
