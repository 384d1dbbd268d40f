"""Dense exact linear algebra over any :class:`~skewfield.fields.Field`.

Matrices act on column vectors, so the composite "apply ``t`` then ``s``" is
the product ``s @ t``. Vectors are plain tuples of field elements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import AmbientMismatch, ShapeMismatch
from .fields import Field, PrimeField

Vector = tuple


def rref(field: Field, rows: Iterable[Sequence], ncols: int | None = None) -> tuple[list[tuple], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the nonzero reduced rows and their pivot columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0]) if ncols is None else ncols
    if isinstance(field, PrimeField):
        return _rref_prime(field.p, m, ncols)
    zero = field.zero
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][c])
        prow = [field.mul(inv, x) for x in m[r]]
        m[r] = prow
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def _rref_prime(p: int, m: list[list[int]], ncols: int):
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        prow = [x * inv % p for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r:
                f = m[i][c] % p
                if f:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(x % p for x in row) for row in m[:r]], pivots


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_ncols", len(rows[0]) if rows else 0)

    @classmethod
    def from_ints(cls, field: Field, rows) -> "Matrix":
        return cls(field, tuple(tuple(field.from_int(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls(field, ((field.zero,) * ncols,) * nrows)

    @classmethod
    def from_flat(cls, field: Field, nrows: int, ncols: int, flat: Sequence) -> "Matrix":
        return cls(field, tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows)))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if not columns:
            return cls(field, ((),) * (nrows or 0))
        return cls(field, tuple(zip(*columns)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(self.field.to_json(x)) for x in r) + "]" for r in self.rows)
        return f"Matrix({self.field}, [{body}])"

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def columns(self) -> list[tuple]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        cols = other.columns()
        return Matrix(F, tuple(tuple(F.dot(r, c) for c in cols) for r in self.rows))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} for matrix {self.shape}")
        F = self.field
        return tuple(F.dot(r, v) for r in self.rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        return Matrix(self.field, tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.field.sub
        return Matrix(self.field, tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, tuple(tuple(neg(a) for a in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        mul = self.field.mul
        return Matrix(self.field, tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def rank(self) -> int:
        return len(rref(self.field, self.rows, self.ncols)[0])


def linear_combination(field: Field, coeffs: Sequence, mats: Sequence[Matrix], n: int | None = None) -> Matrix:
    """``sum(c * M)`` over matching coefficient/matrix pairs."""
    if not mats:
        return Matrix.zeros(field, n or 0)
    nr, nc = mats[0].shape
    acc = [field.zero] * (nr * nc)
    for c, m in zip(coeffs, mats):
        if c == field.zero:
            continue
        for idx, x in enumerate(m.flat()):
            if x != field.zero:
                acc[idx] = field.add(acc[idx], field.mul(c, x))
    return Matrix.from_flat(field, nr, nc, acc)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``F^ambient`` held as its canonical RREF basis."""

    field: Field
    ambient: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        rows, pivots = rref(field, vectors, ambient)
        return cls(field, ambient, tuple(rows), tuple(pivots))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient, Matrix.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        rows = ", ".join(str([self.field.to_json(x) for x in v]) for v in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient}, [{rows}])"

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        F = self.field
        v = list(v)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f != F.zero:
                v = [F.sub(a, F.mul(f, b)) for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        zero = self.field.zero
        return all(x == zero for x in self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates of ``v`` in the RREF basis, or ``None`` if outside."""
        if not self.contains(v):
            return None
        return tuple(v[c] for c in self.pivots)

    def combine(self, coords: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.ambient
        for c, row in zip(coords, self.basis):
            if c != F.zero:
                out = [F.add(a, F.mul(c, b)) for a, b in zip(out, row)]
        return tuple(out)

    def sort_key(self):
        key = self.field.sort_key
        return (self.pivots, tuple(tuple(key(x) for x in row) for row in self.basis))

    def image(self, M: Matrix) -> "Subspace":
        return Subspace.span(self.field, M.nrows, (M.apply(v) for v in self.basis))

    def is_invariant(self, mats: Iterable[Matrix]) -> bool:
        return all(self.contains(M.apply(v)) for M in mats for v in self.basis)

    def matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient x dim`` matrix."""
        return Matrix(self.field, tuple(zip(*self.basis)) if self.basis else ((),) * self.ambient)


def rank_kernel_image(M: Matrix) -> tuple[int, Subspace, Subspace]:
    F = M.field
    rows, pivots = rref(F, M.rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in pivots]
    kernel_vectors = []
    for j in free:
        v = [F.zero] * M.ncols
        v[j] = F.one
        for row, c in zip(rows, pivots):
            v[c] = F.neg(row[j])
        kernel_vectors.append(v)
    kernel = Subspace.span(F, M.ncols, kernel_vectors)
    image = Subspace.span(F, M.nrows, M.columns())
    return len(rows), kernel, image


def kernel(M: Matrix) -> Subspace:
    return rank_kernel_image(M)[1]


def image(M: Matrix) -> Subspace:
    return Subspace.span(M.field, M.nrows, M.columns())


def solve_linear(A: Matrix, b: Sequence) -> tuple | None:
    """First solution of ``A x = b`` (free variables zero), or ``None``."""
    if len(b) != A.nrows:
        raise ShapeMismatch(f"right-hand side of length {len(b)} for a {A.shape} system")
    F = A.field
    aug = [tuple(r) + (x,) for r, x in zip(A.rows, b)]
    rows, pivots = rref(F, aug, A.ncols + 1)
    if pivots and pivots[-1] == A.ncols:
        return None
    x = [F.zero] * A.ncols
    for row, c in zip(rows, pivots):
        x[c] = row[-1]
    return tuple(x)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    F = M.field
    n = M.nrows
    ident = Matrix.identity(F, n).rows
    aug = [tuple(r) + e for r, e in zip(M.rows, ident)]
    rows, pivots = rref(F, aug, 2 * n)
    if len(rows) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(F, tuple(r[n:] for r in rows))


def is_invertible(M: Matrix) -> bool:
    return M.is_square() and M.rank() == M.nrows


def subspace_sum_intersect(U: Subspace, W: Subspace) -> tuple[Subspace, Subspace]:
    """Sum and intersection by the Zassenhaus construction."""
    if U.ambient != W.ambient:
        raise AmbientMismatch(f"ambient dimensions {U.ambient} and {W.ambient}")
    F = U.field
    n = U.ambient
    zeros = (F.zero,) * n
    rows = [u + u for u in U.basis] + [w + zeros for w in W.basis]
    reduced, pivots = rref(F, rows, 2 * n)
    total = [r[:n] for r, c in zip(reduced, pivots) if c < n]
    inter = [r[n:] for r, c in zip(reduced, pivots) if c >= n]
    return Subspace.span(F, n, total), Subspace.span(F, n, inter)


def subspace_sum(spaces: Sequence[Subspace], field: Field | None = None, ambient: int | None = None) -> Subspace:
    if not spaces:
        return Subspace.zero(field, ambient)
    return Subspace.span(spaces[0].field, spaces[0].ambient, (v for S in spaces for v in S.basis))


def intersection(spaces: Sequence[Subspace]) -> Subspace:
    result = spaces[0]
    for S in spaces[1:]:
        result = subspace_sum_intersect(result, S)[1]
    return result


def projective_points(field: Field, n: int) -> Iterator[tuple]:
    """Nonzero vectors of ``F^n`` up to scalars, leading entry one.

    Ordered by position of the leading entry, then lexicographically in the
    field's element order, so ``e_1`` comes first.
    """
    elements = list(field.elements())
    for lead in range(n):
        for tail in itertools.product(elements, repeat=n - lead - 1):
            yield (field.zero,) * lead + (field.one,) + tail


def all_vectors(field: Field, n: int) -> Iterator[tuple]:
    return itertools.product(list(field.elements()), repeat=n)


def restrict(M: Matrix, W: Subspace) -> Matrix:
    """Matrix of ``M`` on an invariant subspace ``W`` in its RREF basis."""
    cols = []
    for v in W.basis:
        coords = W.coordinates(M.apply(v))
        if coords is None:
            raise ValueError("subspace is not invariant under the matrix")
        cols.append(coords)
    return Matrix.from_columns(M.field, cols, W.dim)


def annihilator_space(W: Subspace) -> Subspace:
    """``{v : w . v = 0 for all w in W}``."""
    F = W.field
    if W.dim == 0:
        return Subspace.full(F, W.ambient)
    return kernel(Matrix(F, W.basis))


def block_projection(blocks: Sequence[Subspace], index: int) -> Matrix:
    """Projection onto ``blocks[index]`` along the sum of the other blocks.

    The blocks must form a direct sum decomposition of the ambient space.
    """
    F = blocks[0].field
    n = blocks[0].ambient
    columns = [v for B in blocks for v in B.basis]
    if len(columns) != n:
        raise ValueError("blocks do not have complementary dimensions")
    basis = Matrix.from_columns(F, columns)
    start = sum(B.dim for B in blocks[:index])
    stop = start + blocks[index].dim
    diag = Matrix(F, tuple(tuple(F.one if i == j and start <= i < stop else F.zero for j in range(n)) for i in range(n)))
    return basis @ diag @ inverse(basis)
