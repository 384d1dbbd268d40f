"""Modules ``V = F^n`` presented by generator matrices.

Spinning, irreducibility testing (exhaustive or MeatAxe), annihilators and
minimal submodules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import poly
from .algebra import AlgebraBasis, algebra_closure, quadratic_norm_test
from .errors import Inconclusive, ValidationError
from .fields import Field
from .linalg import (
    Matrix,
    Subspace,
    annihilator_space,
    is_invertible,
    kernel,
    projective_points,
    rank_kernel_image,
    restrict,
)

EXHAUSTIVE_LIMIT = 2**16
MEATAXE_BUDGET = 200


@dataclass(frozen=True)
class ModuleInstance:
    """Generators of the rings acting on ``V = F^n``.

    ``s_gens`` generate S; ``t_gens`` optionally generate T; ``g_gens`` are
    group generators (invertible) and ``r_gens`` generate a commutative ring.
    """

    field: Field
    n: int
    s_gens: tuple = ()
    t_gens: tuple | None = None
    g_gens: tuple | None = None
    r_gens: tuple | None = None
    name: str = ""
    metadata: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("carrier dimension must be at least 1")
        for label in ("s_gens", "t_gens", "g_gens", "r_gens"):
            gens = getattr(self, label)
            if gens is None:
                continue
            gens = tuple(gens)
            object.__setattr__(self, label, gens)
            for idx, m in enumerate(gens):
                if not isinstance(m, Matrix):
                    raise ValidationError(f"{label}[{idx}] is not a matrix")
                if m.field != self.field:
                    raise ValidationError(f"{label}[{idx}] is over {m.field}, expected {self.field}")
                if m.shape != (self.n, self.n):
                    raise ValidationError(f"{label}[{idx}] has shape {m.shape}, expected {(self.n, self.n)}")
        for idx, g in enumerate(self.g_gens or ()):
            if not is_invertible(g):
                raise ValidationError(f"g_gens[{idx}] is singular")
        r = self.r_gens or ()
        for i, a in enumerate(r):
            for j, b in enumerate(r[i + 1:], i + 1):
                if a @ b != b @ a:
                    raise ValidationError(f"r_gens[{i}] and r_gens[{j}] do not commute")

    def with_gens(self, **changes) -> "ModuleInstance":
        from dataclasses import replace

        return replace(self, **changes)


def spin(M: ModuleInstance, gens: Sequence[Matrix], seeds: Sequence[Sequence]) -> Subspace:
    """Smallest ``gens``-invariant subspace containing ``seeds``."""
    return spin_vectors(M.field, M.n, gens, seeds)


def spin_vectors(field: Field, n: int, gens: Sequence[Matrix], seeds: Sequence[Sequence]) -> Subspace:
    space = Subspace.zero(field, n)
    queue = []
    for v in seeds:
        if not space.contains(v):
            space = Subspace.span(field, n, list(space.basis) + [tuple(v)])
            queue.append(tuple(v))
    while queue:
        v = queue.pop(0)
        for g in gens:
            w = g.apply(v)
            if not space.contains(w):
                space = Subspace.span(field, n, list(space.basis) + [w])
                queue.append(w)
                if space.dim == n:
                    return space
    return space


@dataclass(frozen=True)
class IrreducibilityVerdict:
    irreducible: bool
    strategy: str
    witness: Subspace | None = None

    def __bool__(self):
        return self.irreducible


def _check_witness(W: Subspace, gens: Sequence[Matrix], n: int) -> Subspace:
    if not (0 < W.dim < n) or not W.is_invariant(gens):
        raise AssertionError("reducibility witness failed verification")
    return W


def _exhaustive(M: ModuleInstance, gens: Sequence[Matrix]) -> IrreducibilityVerdict:
    for v in projective_points(M.field, M.n):
        W = spin(M, gens, [v])
        if W.dim < M.n:
            return IrreducibilityVerdict(False, "exhaustive", _check_witness(W, gens, M.n))
    return IrreducibilityVerdict(True, "exhaustive")


def _random_algebra_element(field: Field, n: int, words: Sequence[Matrix], rng: random.Random) -> Matrix:
    acc = Matrix.identity(field, n).scale(field.random(rng))
    for w in words:
        c = field.random(rng)
        if c != field.zero:
            acc = acc + w.scale(c)
    return acc


def _meataxe(M: ModuleInstance, gens: Sequence[Matrix], rng: random.Random, budget: int) -> IrreducibilityVerdict:
    F, n = M.field, M.n
    gens_t = [g.transpose() for g in gens]
    words = list(gens) + [a @ b for a in gens for b in gens]
    for _ in range(budget):
        theta0 = _random_algebra_element(F, n, words, rng)
        for f in poly.irreducible_factors(poly.charpoly(theta0), F, rng):
            theta = poly.evaluate_matrix(f, theta0)
            _, null, _ = rank_kernel_image(theta)
            if null.dim == 0:
                continue
            v = null.basis[0]
            W = spin(M, gens, [v])
            if W.dim < n:
                return IrreducibilityVerdict(False, "meataxe", _check_witness(W, gens, n))
            if null.dim != poly.degree(f):
                # kernel too large for the criterion; a random kernel vector may still split
                v = null.combine([F.random(rng) for _ in range(null.dim)])
                if any(x != F.zero for x in v):
                    W = spin(M, gens, [v])
                    if W.dim < n:
                        return IrreducibilityVerdict(False, "meataxe", _check_witness(W, gens, n))
                continue
            # Norton's criterion: also spin a kernel vector of the transpose in the dual module
            w = kernel(theta.transpose()).basis[0]
            D = spin_vectors(F, n, gens_t, [w])
            if D.dim < n:
                return IrreducibilityVerdict(False, "meataxe", _check_witness(annihilator_space(D), gens, n))
            return IrreducibilityVerdict(True, "meataxe")
    raise Inconclusive(f"MeatAxe found no usable algebra element in {budget} attempts")


def irreducible_test(
    M: ModuleInstance,
    gens: Sequence[Matrix] | None = None,
    *,
    method: str = "auto",
    seed: int = 0,
    budget: int = MEATAXE_BUDGET,
) -> IrreducibilityVerdict:
    """Decide whether ``V`` has no proper nonzero ``gens``-invariant subspace.

    ``method`` is ``"exhaustive"`` (spin every projective point; finite fields
    only), ``"meataxe"`` or ``"auto"``, which is exhaustive while
    ``|F|^n <= 2^16``. Over infinite fields a MeatAxe failure falls back to
    the norm form of the generated algebra: a division algebra of dimension
    ``n`` acts irreducibly on ``F^n``.
    """
    gens = list(M.s_gens if gens is None else gens)
    F, n = M.field, M.n
    if n == 1:
        return IrreducibilityVerdict(True, "trivial")
    if method == "auto":
        method = "exhaustive" if F.is_finite and F.order**n <= EXHAUSTIVE_LIMIT else "meataxe"
    if method == "exhaustive":
        if not F.is_finite:
            raise ValueError("exhaustive irreducibility test needs a finite field")
        return _exhaustive(M, gens)
    if method != "meataxe":
        raise ValueError(f"unknown method {method!r}")
    # cheap witnesses first
    for i in range(n):
        e = tuple(F.one if j == i else F.zero for j in range(n))
        W = spin(M, gens, [e])
        if W.dim < n:
            return IrreducibilityVerdict(False, "meataxe", _check_witness(W, gens, n))
    if not F.is_finite:
        # a division algebra of dimension n acts irreducibly; cheaper than the MeatAxe over Q
        A = algebra_closure(gens, n, F)
        if A.dim == n and quadratic_norm_test(A).division:
            return IrreducibilityVerdict(True, "division-algebra")
    return _meataxe(M, gens, random.Random(seed), budget)


def annihilator(M: ModuleInstance, algebra: AlgebraBasis, W: Subspace) -> Subspace:
    """``{r in algebra : r W = 0}`` in the algebra's coordinates."""
    F = algebra.field
    if W.dim == 0:
        return Subspace.full(F, algebra.dim)
    rows = []
    images = [[b.apply(w) for w in W.basis] for b in algebra.basis]
    for wi in range(W.dim):
        for coord in range(M.n):
            rows.append(tuple(images[bi][wi][coord] for bi in range(algebra.dim)))
    return kernel(Matrix(F, tuple(rows)))


def minimal_submodule(
    M: ModuleInstance,
    gens: Sequence[Matrix],
    *,
    method: str = "auto",
    seed: int = 0,
    budget: int = MEATAXE_BUDGET,
) -> Subspace:
    """A nonzero ``gens``-invariant subspace with no proper nonzero invariant subspace.

    Exhaustively, the spin of the first vector (in canonical order) with the
    smallest spin; otherwise the MeatAxe is applied repeatedly to shrink a
    reducible submodule.
    """
    F, n = M.field, M.n
    gens = list(gens)
    if method == "auto":
        method = "exhaustive" if F.is_finite and F.order**n <= EXHAUSTIVE_LIMIT else "meataxe"
    if method == "exhaustive":
        best = None
        for v in projective_points(F, n):
            W = spin(M, gens, [v])
            if best is None or W.dim < best.dim:
                best = W
                if W.dim == 1:
                    break
        return best
    W = Subspace.full(F, n)
    while W.dim > 1:
        sub_gens = [restrict(g, W) for g in gens]
        sub = ModuleInstance(F, W.dim, tuple(sub_gens))
        verdict = irreducible_test(sub, sub_gens, method="meataxe", seed=seed, budget=budget)
        if verdict.irreducible:
            break
        W = Subspace.span(F, n, (W.combine(c) for c in verdict.witness.basis))
    return W
