"""Finite-dimensional matrix algebras: spans of matrices closed under product."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .fields import Field
from .linalg import Matrix, Subspace, kernel, linear_combination, projective_points, solve_linear


class AlgebraBasis:
    """A product-closed linear span of ``n x n`` matrices.

    The basis is the canonical RREF basis of the flattened matrices, so two
    algebras are equal exactly when their ``space`` attributes are. Closure
    and the unit are checked at construction.
    """

    def __init__(self, field: Field, n: int, spanning: Sequence[Matrix], *, check_closure: bool = True):
        self.field = field
        self.n = n
        self.space = Subspace.span(field, n * n, (m.flat() for m in spanning))
        self.basis = tuple(Matrix.from_flat(field, n, n, row) for row in self.space.basis)
        if check_closure:
            for a in self.basis:
                for b in self.basis:
                    if not self.contains(a @ b):
                        raise ValueError("span is not closed under multiplication")
        self.unit = self._find_unit()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def unital(self) -> bool:
        return self.unit is not None

    def __repr__(self):
        return f"AlgebraBasis(dim={self.dim}, n={self.n}, field={self.field})"

    def __eq__(self, other):
        return isinstance(other, AlgebraBasis) and self.space == other.space

    def __hash__(self):
        return hash(self.space)

    def contains(self, M: Matrix) -> bool:
        return self.space.contains(M.flat())

    def coordinates(self, M: Matrix) -> tuple | None:
        return self.space.coordinates(M.flat())

    def element(self, coords: Sequence) -> Matrix:
        return linear_combination(self.field, coords, self.basis, self.n)

    def unit_element(self) -> Matrix:
        if self.unit is None:
            raise ValueError("algebra has no unit")
        return self.element(self.unit)

    def _find_unit(self) -> tuple | None:
        F = self.field
        if self.dim == 0:
            return None
        ident = Matrix.identity(F, self.n)
        coords = self.coordinates(ident)
        if coords is not None:
            return coords
        # non-identity unit (e.g. a corner algebra pi S pi): solve e b = b = b e
        rows, rhs = [], []
        for b in self.basis:
            left = [(c @ b).flat() for c in self.basis]
            right = [(b @ c).flat() for c in self.basis]
            for prods in (left, right):
                for idx, target in enumerate(b.flat()):
                    rows.append(tuple(p[idx] for p in prods))
                    rhs.append(target)
        return solve_linear(Matrix(F, rows), rhs)

    def structure_constants(self) -> list[list[tuple]]:
        """``c[i][j]`` = coordinates of ``basis[i] @ basis[j]``."""
        return [[self.coordinates(a @ b) for b in self.basis] for a in self.basis]

    def is_commutative(self) -> bool:
        return all(a @ b == b @ a for i, a in enumerate(self.basis) for b in self.basis[i + 1:])

    def left_regular(self) -> list[Matrix]:
        """Left multiplication by each basis element, on coordinate space."""
        F = self.field
        consts = self.structure_constants()
        return [Matrix.from_columns(F, [consts[i][j] for j in range(self.dim)]) for i in range(self.dim)]

    def right_regular(self, y: Matrix) -> Matrix:
        return Matrix.from_columns(self.field, [self.coordinates(b @ y) for b in self.basis])

    def order(self) -> int | None:
        return None if not self.field.is_finite else self.field.order**self.dim

    def elements(self) -> Iterator[Matrix]:
        import itertools

        elems = list(self.field.elements())
        for coords in itertools.product(elems, repeat=self.dim):
            yield self.element(coords)

    def projective_elements(self) -> Iterator[tuple[tuple, Matrix]]:
        """Nonzero elements up to scalars, in canonical coordinate order."""
        for coords in projective_points(self.field, self.dim):
            yield coords, self.element(coords)

    def random_element(self, rng: random.Random) -> Matrix:
        return self.element([self.field.random(rng) for _ in range(self.dim)])

    def random_nonzero(self, rng: random.Random) -> Matrix:
        while True:
            m = self.random_element(rng)
            if not m.is_zero():
                return m


def algebra_closure(gens: Sequence[Matrix], n: int, field: Field, adjoin_identity: bool = True) -> AlgebraBasis:
    """Smallest product-closed span containing ``gens`` (and the identity)."""
    spanning = list(gens)
    if adjoin_identity:
        spanning.append(Matrix.identity(field, n))
    space = Subspace.span(field, n * n, (m.flat() for m in spanning))
    for _ in range(n * n + 1):
        basis = [Matrix.from_flat(field, n, n, row) for row in space.basis]
        products = [(b @ g).flat() for b in basis for g in gens]
        grown = Subspace.span(field, n * n, list(space.basis) + products)
        if grown.dim == space.dim:
            break
        space = grown
    return AlgebraBasis(field, n, [Matrix.from_flat(field, n, n, row) for row in space.basis], check_closure=False)


def commutation_system(gens: Sequence[Matrix], n: int, field: Field) -> Matrix:
    """Coefficient matrix of ``X A - A X = 0`` in the ``n^2`` entries of ``X``."""
    rows = []
    for A in gens:
        for i in range(n):
            for j in range(n):
                row = [field.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = field.add(row[i * n + k], A[k, j])
                    row[k * n + j] = field.sub(row[k * n + j], A[i, k])
                rows.append(tuple(row))
    return Matrix(field, tuple(rows))


def centralizer_basis(gens: Sequence[Matrix], n: int, field: Field) -> AlgebraBasis:
    """All ``X`` with ``X A = A X`` for every ``A`` in ``gens``."""
    if not gens:
        return AlgebraBasis(field, n, [Matrix.from_flat(field, n, n, row) for row in Subspace.full(field, n * n).basis], check_closure=False)
    space = kernel(commutation_system(gens, n, field))
    return AlgebraBasis(field, n, [Matrix.from_flat(field, n, n, row) for row in space.basis], check_closure=False)


@dataclass(frozen=True)
class NormFormVerdict:
    """Outcome of the quadratic norm test. ``division`` is None when undecided."""

    division: bool | None
    gram: tuple | None = None
    witness: tuple | None = None
    reason: str = ""


def _is_rational_square(q: Fraction) -> bool:
    from math import isqrt

    if q < 0:
        return False
    a, b = q.numerator, q.denominator
    return isqrt(a) ** 2 == a and isqrt(b) ** 2 == b


def quadratic_norm_test(A: AlgebraBasis) -> NormFormVerdict:
    """Decide the division property of a quadratic algebra over the rationals.

    If every ``x`` satisfies ``x^2 - t(x) x + N(x) 1 = 0`` with ``t`` linear,
    then ``x (t(x) - x) = N(x)``, so ``x`` is invertible whenever ``N(x) != 0``.
    The algebra is then a division ring iff the quadratic form ``N`` is
    anisotropic. Definite forms are anisotropic; a binary form is isotropic
    iff its discriminant is a rational square. Anything else is undecided.
    """
    F = A.field
    if F.characteristic != 0 or not A.unital:
        return NormFormVerdict(None, reason="needs a unital algebra in characteristic 0")
    d = A.dim
    unit = A.unit_element()
    if d == 1:
        return NormFormVerdict(True, reason="one-dimensional")
    unit_space = Subspace.span(F, A.n * A.n, [unit.flat()])

    def trace(x: Matrix) -> Fraction:
        return sum((x[i, i] for i in range(A.n)), Fraction(0))

    unit_trace = trace(unit)

    def reduced_trace(x: Matrix) -> Fraction:
        # t(1) = 2 for a quadratic algebra; rescale the matrix trace accordingly
        return 2 * trace(x) / unit_trace

    def defect(x: Matrix) -> Fraction | None:
        value = x.scale(reduced_trace(x)) - x @ x
        coords = unit_space.coordinates(value.flat())
        return None if coords is None else coords[0]

    gram = [[Fraction(0)] * d for _ in range(d)]
    diag = []
    for i, b in enumerate(A.basis):
        v = defect(b)
        if v is None:
            return NormFormVerdict(None, reason="not a quadratic algebra")
        diag.append(v)
        gram[i][i] = v
    for i in range(d):
        for j in range(i + 1, d):
            v = defect(A.basis[i] + A.basis[j])
            if v is None:
                return NormFormVerdict(None, reason="not a quadratic algebra")
            gram[i][j] = gram[j][i] = (v - diag[i] - diag[j]) / 2
    frozen = tuple(tuple(r) for r in gram)
    minors = [_det([row[:k] for row in gram[:k]]) for k in range(1, d + 1)]
    if all(m > 0 for m in minors) or all((m > 0) if k % 2 == 0 else (m < 0) for k, m in enumerate(minors, 1)):
        return NormFormVerdict(True, gram=frozen, reason="definite norm form")
    if d == 2:
        a, b, c = gram[0][0], 2 * gram[0][1], gram[1][1]
        disc = b * b - 4 * a * c
        if not _is_rational_square(disc):
            return NormFormVerdict(True, gram=frozen, reason="binary norm form with non-square discriminant")
        return NormFormVerdict(False, gram=frozen, witness=_binary_zero(a, b, c), reason="isotropic binary norm form")
    return NormFormVerdict(None, gram=frozen, reason="indefinite norm form in dimension > 2")


def _binary_zero(a: Fraction, b: Fraction, c: Fraction) -> tuple:
    from math import isqrt

    if a == 0:
        return (Fraction(1), Fraction(0))
    disc = b * b - 4 * a * c
    root = Fraction(isqrt(disc.numerator), isqrt(disc.denominator))
    return ((-b + root) / (2 * a), Fraction(1))


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
