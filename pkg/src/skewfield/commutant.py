"""Commutant algebras, division-ring certification and the double-centraliser check."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraBasis, algebra_closure, centralizer_basis, quadratic_norm_test
from .linalg import Matrix, kernel
from .module import ModuleInstance, irreducible_test

__all__ = [
    "AlgebraBasis",
    "DivisionVerdict",
    "DoubleCentralizerReport",
    "algebra_closure",
    "centralizer_basis",
    "double_centralizer_check",
    "is_division_ring",
]


@dataclass(frozen=True)
class DivisionVerdict:
    is_division: bool
    strategy: str
    witness: tuple[Matrix, Matrix] | None = None

    def __bool__(self):
        return self.is_division


def _zero_divisors_from_left_ideal(A: AlgebraBasis, ideal_coords) -> tuple[Matrix, Matrix]:
    # y spans part of a proper left ideal, so right multiplication by y is not onto
    y = A.element(ideal_coords.basis[0])
    x_coords = kernel(A.right_regular(y)).basis[0]
    x = A.element(x_coords)
    assert not x.is_zero() and not y.is_zero() and (x @ y).is_zero()
    return x, y


def is_division_ring(A: AlgebraBasis, *, method: str = "auto", seed: int = 0) -> DivisionVerdict:
    """Division iff the left regular module has no proper nonzero submodule.

    Returns a zero-divisor pair ``(x, y)`` with ``x @ y == 0`` otherwise.
    """
    if not A.unital:
        raise ValueError("division test needs a unital algebra")
    if A.dim == 1:
        return DivisionVerdict(True, "one-dimensional")
    if not A.field.is_finite:
        norm = quadratic_norm_test(A)
        if norm.division:
            return DivisionVerdict(True, "norm-form")
        if norm.division is False:
            x = A.element(norm.witness)
            conj = A.unit_element().scale(_reduced_trace(A, x)) - x
            assert (conj @ x).is_zero()
            return DivisionVerdict(False, "norm-form", (conj, x))
    regs = A.left_regular()
    regular = ModuleInstance(A.field, A.dim, tuple(regs))
    verdict = irreducible_test(regular, regs, method=method, seed=seed)
    if verdict.irreducible:
        return DivisionVerdict(True, "regular-module-" + verdict.strategy)
    return DivisionVerdict(False, "regular-module-" + verdict.strategy, _zero_divisors_from_left_ideal(A, verdict.witness))


def _reduced_trace(A: AlgebraBasis, x: Matrix):
    unit = A.unit_element()
    tr = lambda m: sum((m[i, i] for i in range(A.n)), A.field.zero)
    return 2 * tr(x) / tr(unit)


@dataclass(frozen=True)
class DoubleCentralizerReport:
    t_basis: AlgebraBasis
    s_cc_basis: AlgebraBasis
    closure_basis: AlgebraBasis
    biequal: bool


def double_centralizer_check(M: ModuleInstance) -> DoubleCentralizerReport:
    """Compare ``C(C(S))`` with the algebra generated by ``S``."""
    if not M.s_gens:
        raise ValueError("double-centraliser check needs S generators")
    closure = algebra_closure(M.s_gens, M.n, M.field)
    T = centralizer_basis(M.s_gens, M.n, M.field)
    CT = centralizer_basis(T.basis, M.n, M.field)
    return DoubleCentralizerReport(T, CT, closure, CT == closure)
