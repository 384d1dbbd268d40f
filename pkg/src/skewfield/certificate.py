"""Linearisation certificates and their independent verifier.

A certificate presents the skew-field ``K`` by structure constants over the
ground field, an adapted basis ``b[i*d + m] = t_m v_i`` of ``V`` (``k`` blocks
of ``d`` vectors) and the image of every generator: S- and G-generators as
``k x k`` matrices over ``K``, T- and R-generators as single ``K``-scalars.

Conventions. Entry ``[j][i]`` of a matrix image is the ``K``-coefficient of
``v_j`` in ``s(v_i)``, and ``K`` acts on the left, so

    s(b[i, m]) = sum_j sum_p (t_m * a[j][i])_p b[j, p]
    t(b[i, m]) = sum_p (kappa * t_m)_p b[i, p]

:func:`verify_certificate` recomputes everything from the raw instance using
only the exact field and linear-algebra layer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from math import isqrt
from typing import Any, Iterator, Sequence

from .documents import matrix_json, parse_field, parse_matrix, parse_vector, vector_json
from .errors import ParseError
from .fields import Field
from .linalg import Matrix, Subspace, kernel, projective_points


@dataclass(frozen=True)
class SkewFieldPresentation:
    """``K`` with basis ``e_0..e_{d-1}``: ``e_i e_j = sum_p c[i][j][p] e_p``."""

    field: Field
    d: int
    constants: tuple  # d x d tuple of coordinate tuples
    unit: tuple
    commutative: bool

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.d
        for i, xi in enumerate(x):
            if xi == F.zero:
                continue
            for j, yj in enumerate(y):
                if yj == F.zero:
                    continue
                c = F.mul(xi, yj)
                row = self.constants[i][j]
                for p in range(self.d):
                    if row[p] != F.zero:
                        out[p] = F.add(out[p], F.mul(c, row[p]))
        return tuple(out)

    def order(self) -> int | None:
        return None if not self.field.is_finite else self.field.order**self.d

    def to_json(self) -> dict:
        F = self.field
        return {
            "d": self.d,
            "structure_constants": [[vector_json(F, c) for c in row] for row in self.constants],
            "unit": vector_json(F, self.unit),
            "commutative": self.commutative,
        }

    @classmethod
    def from_json(cls, F: Field, obj: Any, where: str = "skew_field") -> "SkewFieldPresentation":
        if not isinstance(obj, dict):
            raise ParseError("expected an object", where)
        d = obj.get("d")
        if not isinstance(d, int) or d < 1:
            raise ParseError("d must be a positive integer", f"{where}.d")
        raw = obj.get("structure_constants")
        if not isinstance(raw, list) or len(raw) != d or any(not isinstance(r, list) or len(r) != d for r in raw):
            raise ParseError(f"structure constants must be a {d}x{d} array of vectors", f"{where}.structure_constants")
        consts = tuple(
            tuple(parse_vector(F, raw[i][j], d, f"{where}.structure_constants[{i}][{j}]") for j in range(d)) for i in range(d)
        )
        unit = parse_vector(F, obj.get("unit"), d, f"{where}.unit")
        comm = obj.get("commutative")
        if not isinstance(comm, bool):
            raise ParseError("commutative must be a boolean", f"{where}.commutative")
        return cls(F, d, consts, unit, comm)


@dataclass(frozen=True)
class LinearizationCertificate:
    field: Field
    n: int
    k: int
    d: int
    K: SkewFieldPresentation
    adapted_basis: tuple  # n vectors, block-major
    s_generators: tuple
    s_images: tuple  # per generator: k x k tuple of coordinate tuples
    t_generators: tuple
    t_images: tuple  # per generator: coordinate tuple
    g_images: tuple | None = None
    r_images: tuple | None = None
    dimensions: dict = dc_field(default_factory=dict)
    check_log: tuple = ()
    extensions: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        F = self.field
        mat_img = lambda a: [[vector_json(F, x) for x in row] for row in a]
        return {
            "kind": "linearization-certificate",
            "field": F.spec.to_json(),
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "skew_field": self.K.to_json(),
            "adapted_basis": [vector_json(F, v) for v in self.adapted_basis],
            "s_generators": [matrix_json(m) for m in self.s_generators],
            "s_images": [mat_img(a) for a in self.s_images],
            "t_generators": [matrix_json(m) for m in self.t_generators],
            "t_images": [vector_json(F, x) for x in self.t_images],
            "g_images": None if self.g_images is None else [mat_img(a) for a in self.g_images],
            "r_images": None if self.r_images is None else [vector_json(F, x) for x in self.r_images],
            "dimensions": dict(self.dimensions),
            "check_log": [dict(e) for e in self.check_log],
            "extensions": self.extensions,
        }

    @classmethod
    def from_json(cls, obj: Any) -> "LinearizationCertificate":
        if not isinstance(obj, dict) or obj.get("kind") != "linearization-certificate":
            raise ParseError("not a linearization certificate", "$")
        F = parse_field(obj.get("field"))
        ints = {}
        for key in ("n", "k", "d"):
            v = obj.get(key)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ParseError(f"{key} must be a positive integer", key)
            ints[key] = v
        n, k, d = ints["n"], ints["k"], ints["d"]
        K = SkewFieldPresentation.from_json(F, obj.get("skew_field"))

        def mats(key, size):
            block = obj.get(key)
            if not isinstance(block, list):
                raise ParseError("expected an array", key)
            return tuple(parse_matrix(F, m, size, f"{key}[{i}]") for i, m in enumerate(block))

        def k_matrix(a, where):
            if not isinstance(a, list) or len(a) != k:
                raise ParseError(f"expected {k} rows", where)
            out = []
            for r, row in enumerate(a):
                if not isinstance(row, list) or len(row) != k:
                    raise ParseError(f"expected {k} entries", f"{where}[{r}]")
                out.append(tuple(parse_vector(F, x, d, f"{where}[{r}][{c}]") for c, x in enumerate(row)))
            return tuple(out)

        def k_images(key, optional=False):
            block = obj.get(key)
            if block is None and optional:
                return None
            if not isinstance(block, list):
                raise ParseError("expected an array", key)
            return tuple(k_matrix(a, f"{key}[{i}]") for i, a in enumerate(block))

        def scalars(key, optional=False):
            block = obj.get(key)
            if block is None and optional:
                return None
            if not isinstance(block, list):
                raise ParseError("expected an array", key)
            return tuple(parse_vector(F, x, d, f"{key}[{i}]") for i, x in enumerate(block))

        basis = obj.get("adapted_basis")
        if not isinstance(basis, list):
            raise ParseError("expected an array", "adapted_basis")
        adapted = tuple(parse_vector(F, v, n, f"adapted_basis[{i}]") for i, v in enumerate(basis))
        return cls(
            F,
            n,
            k,
            d,
            K,
            adapted,
            mats("s_generators", n),
            k_images("s_images"),
            mats("t_generators", n),
            scalars("t_images"),
            k_images("g_images", optional=True),
            scalars("r_images", optional=True),
            dict(obj.get("dimensions") or {}),
            tuple(obj.get("check_log") or ()),
            dict(obj.get("extensions") or {}),
        )


# -- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    failed_check: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


class _Fail(Exception):
    def __init__(self, check: str, detail: str):
        super().__init__(detail)
        self.check = check
        self.detail = detail


def _require(cond: bool, check: str, detail: str):
    if not cond:
        raise _Fail(check, detail)


def _left_mult(K: SkewFieldPresentation, x: Sequence) -> Matrix:
    cols = [K.mul(x, tuple(K.field.one if q == j else K.field.zero for q in range(K.d))) for j in range(K.d)]
    return Matrix.from_columns(K.field, cols, K.d)


def _kpow(K: SkewFieldPresentation, x: tuple, e: int) -> tuple:
    result, base = K.unit, x
    while e:
        if e & 1:
            result = K.mul(result, base)
        base = K.mul(base, base)
        e >>= 1
    return result


def _prime_divisors(m: int) -> list[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def _check_division_finite_large(K: SkewFieldPresentation):
    # a finite division ring is a field; certify F[x]/(f) with f irreducible (Rabin)
    F, d, q = K.field, K.d, K.field.order
    _require(K.commutative, "division", "finite non-commutative algebra cannot be a division ring")
    rng = random.Random(0)
    for _ in range(200):
        x = tuple(F.random(rng) for _ in range(d))
        powers = [K.unit]
        for _ in range(d - 1):
            powers.append(K.mul(powers[-1], x))
        if Matrix.from_columns(F, powers, d).rank() == d:
            break
    else:
        raise _Fail("division", "no primitive element found")
    frob = x
    for _ in range(d):
        frob = _kpow(K, frob, q)
    _require(frob == x, "division", "primitive element does not satisfy x^(q^d) = x")
    for r in _prime_divisors(d):
        y = x
        for _ in range(d // r):
            y = _kpow(K, y, q)
        diff = tuple(F.sub(a, b) for a, b in zip(y, x))
        _require(_left_mult(K, diff).rank() == d, "division", f"minimal polynomial has a factor of degree dividing {d // r}")


def _det(rows: list[list]) -> Fraction:
    m = [list(r) for r in rows]
    n, det = len(m), Fraction(1)
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


def _check_division_rational(K: SkewFieldPresentation):
    # quadratic algebras: x (t(x) - x) = N(x), so an anisotropic norm form means division
    d = K.d
    if d == 1:
        _require(any(c != 0 for c in K.unit), "division", "zero algebra")
        return
    tr_unit = _left_mult(K, K.unit)
    tr_unit = sum((tr_unit[i, i] for i in range(d)), Fraction(0))

    def norm(x):
        L = _left_mult(K, x)
        t = 2 * sum((L[i, i] for i in range(d)), Fraction(0)) / tr_unit
        val = [t * a - b for a, b in zip(x, K.mul(x, x))]
        piv = next(i for i, u in enumerate(K.unit) if u != 0)
        c = val[piv] / K.unit[piv]
        _require(all(v == c * u for v, u in zip(val, K.unit)), "division", "K is not a quadratic algebra; no certificate of division")
        return c

    e = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    diag = [norm(v) for v in e]
    gram = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        gram[i][i] = diag[i]
        for j in range(i + 1, d):
            s = tuple(a + b for a, b in zip(e[i], e[j]))
            gram[i][j] = gram[j][i] = (norm(s) - diag[i] - diag[j]) / 2
    minors = [_det([r[:m] for r in gram[:m]]) for m in range(1, d + 1)]
    if all(m > 0 for m in minors) or all((m > 0) == (i % 2 == 0) and m != 0 for i, m in enumerate(minors, 1)):
        return
    if d == 2:
        disc = 4 * gram[0][1] ** 2 - 4 * gram[0][0] * gram[1][1]
        square = disc >= 0 and isqrt(disc.numerator) ** 2 == disc.numerator and isqrt(disc.denominator) ** 2 == disc.denominator
        _require(not square, "division", "binary norm form is isotropic")
        return
    raise _Fail("division", "indefinite norm form; division property not certified")


def _check_skew_field(K: SkewFieldPresentation, F: Field):
    d = K.d
    zero = F.zero
    _require(len(K.constants) == d and all(len(r) == d for r in K.constants), "structure-shape", "constants are not d x d")
    e = [tuple(F.one if i == j else zero for j in range(d)) for i in range(d)]
    for i in range(d):
        _require(K.mul(K.unit, e[i]) == e[i] and K.mul(e[i], K.unit) == e[i], "unit", f"unit fails on basis element {i}")
    for i in range(d):
        for j in range(d):
            ij = K.constants[i][j]
            for l in range(d):
                _require(K.mul(ij, e[l]) == K.mul(e[i], K.constants[j][l]), "associativity", f"(e{i} e{j}) e{l} != e{i} (e{j} e{l})")
    comm = all(K.constants[i][j] == K.constants[j][i] for i in range(d) for j in range(d))
    _require(comm == K.commutative, "commutative-flag", f"flag {K.commutative} but structure constants say {comm}")
    order = K.order()
    if order is not None and order <= 2**16:
        for x in projective_points(F, d):
            _require(_left_mult(K, x).rank() == d, "division", f"element {x} is a zero divisor")
    elif order is not None:
        _check_division_finite_large(K)
    else:
        _check_division_rational(K)


def _image_matrix(cert: LinearizationCertificate, a) -> Matrix:
    F, K, k, d = cert.field, cert.K, cert.k, cert.d
    n = k * d
    cols = [[F.zero] * n for _ in range(n)]
    for i in range(k):
        for m in range(d):
            tm = tuple(F.one if q == m else F.zero for q in range(d))
            for j in range(k):
                coeffs = K.mul(tm, a[j][i])
                for p in range(d):
                    cols[i * d + m][j * d + p] = coeffs[p]
    return Matrix.from_columns(F, cols, n)


def _scalar_matrix(cert: LinearizationCertificate, kappa) -> Matrix:
    F, K, k, d = cert.field, cert.K, cert.k, cert.d
    n = k * d
    cols = [[F.zero] * n for _ in range(n)]
    for i in range(k):
        for m in range(d):
            tm = tuple(F.one if q == m else F.zero for q in range(d))
            coeffs = K.mul(kappa, tm)
            for p in range(d):
                cols[i * d + m][i * d + p] = coeffs[p]
    return Matrix.from_columns(F, cols, n)


def _closure_dim(F: Field, n: int, gens: Sequence[Matrix]) -> int:
    ident = Matrix.identity(F, n)
    space = Subspace.span(F, n * n, [ident.flat()] + [g.flat() for g in gens])
    while True:
        basis = [Matrix.from_flat(F, n, n, r) for r in space.basis]
        grown = Subspace.span(F, n * n, list(space.basis) + [(b @ g).flat() for b in basis for g in gens])
        if grown.dim == space.dim:
            return space.dim
        space = grown


def _centraliser(F: Field, n: int, gens: Sequence[Matrix]) -> Subspace:
    rows = []
    for A in gens:
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = F.add(row[i * n + k], A[k, j])
                    row[k * n + j] = F.sub(row[k * n + j], A[i, k])
                rows.append(tuple(row))
    if not rows:
        return Subspace.full(F, n * n)
    return kernel(Matrix(F, tuple(rows)))


def _run_checks(M, cert: LinearizationCertificate):
    F = cert.field
    _require(F == M.field, "field", f"certificate field {F} differs from instance field {M.field}")
    _require(cert.n == M.n, "field", "carrier dimension differs")
    n, k, d = cert.n, cert.k, cert.d
    _require(k * d == n and cert.K.d == d, "dimensions", f"k*d = {k * d} but n = {n}")
    _check_skew_field(cert.K, F)
    _require(len(cert.adapted_basis) == n, "adapted-basis", "wrong number of basis vectors")
    B = Matrix.from_columns(F, cert.adapted_basis, n)
    _require(B.rank() == n, "adapted-basis", "adapted basis is not a basis")

    # corollary pipelines append generators of C(T) after the instance's own
    _require(tuple(cert.s_generators[: len(M.s_gens)]) == tuple(M.s_gens), "generators", "S generators differ from the instance")
    _require(len(cert.s_generators) > 0, "generators", "no S generators")
    if M.t_gens is not None:
        _require(tuple(cert.t_generators) == tuple(M.t_gens), "generators", "T generators differ from the instance")
    _require(len(cert.s_images) == len(cert.s_generators), "generators", "S image count mismatch")
    _require(len(cert.t_images) == len(cert.t_generators), "generators", "T image count mismatch")
    if M.g_gens:
        _require(cert.g_images is not None and len(cert.g_images) == len(M.g_gens), "generators", "missing G images")
    if M.r_gens:
        _require(cert.r_images is not None and len(cert.r_images) == len(M.r_gens), "generators", "missing R images")

    for label, gens, imgs, build in (
        ("s", cert.s_generators, cert.s_images, _image_matrix),
        ("g", M.g_gens or (), cert.g_images or (), _image_matrix),
        ("t", cert.t_generators, cert.t_images, _scalar_matrix),
        ("r", M.r_gens or (), cert.r_images or (), _scalar_matrix),
    ):
        for idx, (g, a) in enumerate(zip(gens, imgs)):
            _require(B @ build(cert, a) == g @ B, "reproduction", f"{label}-generator {idx} is not reproduced")
    for idx, a in enumerate(cert.g_images or ()):
        _require(_image_matrix(cert, a).rank() == n, "reproduction", f"g-generator {idx} image is singular")

    dim_s = _closure_dim(F, n, cert.s_generators)
    _require(dim_s == k * k * d, "dimension-S", f"dim <S> = {dim_s}, expected k^2 d = {k * k * d}")
    C = _centraliser(F, n, cert.s_generators)
    _require(C.dim == d, "dimension-T", f"dim C(S) = {C.dim}, expected d = {d}")
    if M.s_gens:
        _require(_centraliser(F, n, M.s_gens).dim == d, "dimension-T", "C(S) of the instance is larger than K")
    T_span = Subspace.span(F, n * n, [Matrix.identity(F, n).flat()] + [t.flat() for t in cert.t_generators])
    _require(C.contains_space(T_span), "dimension-T", "a T generator does not commute with S")
    _require(_closure_dim(F, n, cert.t_generators) == d, "dimension-T", "T generators do not generate C(S)")
    dims = cert.dimensions
    for key, val in (("dim_S", dim_s), ("dim_T", d)):
        if key in dims:
            _require(dims[key] == val, "dimensions", f"recorded {key} = {dims[key]}, recomputed {val}")


def verify_certificate(M, cert: LinearizationCertificate) -> VerificationResult:
    """Re-check a certificate against its instance; reports the first failing check."""
    try:
        _run_checks(M, cert)
    except _Fail as fail:
        return VerificationResult(False, fail.check, fail.detail)
    except (ValueError, ZeroDivisionError, IndexError, TypeError) as exc:
        return VerificationResult(False, "malformed", str(exc))
    return VerificationResult(True)


# -- fault injection ------------------------------------------------------------------


def bump(F: Field, x):
    """A scalar different from ``x``."""
    if F.is_finite and F.degree > 1:
        return ((x[0] + 1) % F.characteristic,) + tuple(x[1:])
    if F.is_finite:
        return (x + 1) % F.characteristic
    return x + 1


def _bump_vec(F, v, p):
    return tuple(bump(F, c) if i == p else c for i, c in enumerate(v))


def single_entry_mutations(cert: LinearizationCertificate) -> Iterator[tuple[str, LinearizationCertificate]]:
    """Every certificate obtained by changing one structure constant or one image entry."""
    F, K, d = cert.field, cert.K, cert.d
    for i in range(d):
        for j in range(d):
            for p in range(d):
                consts = [list(r) for r in K.constants]
                consts[i][j] = _bump_vec(F, consts[i][j], p)
                newK = replace(K, constants=tuple(tuple(r) for r in consts))
                yield f"structure_constants[{i}][{j}][{p}]", replace(cert, K=newK)

    def k_matrix_mutations(label, imgs):
        for g, a in enumerate(imgs or ()):
            for r in range(cert.k):
                for c in range(cert.k):
                    for p in range(d):
                        rows = [list(row) for row in a]
                        rows[r][c] = _bump_vec(F, rows[r][c], p)
                        new = list(imgs)
                        new[g] = tuple(tuple(row) for row in rows)
                        yield f"{label}[{g}][{r}][{c}][{p}]", tuple(new)

    def scalar_mutations(imgs):
        for g, x in enumerate(imgs or ()):
            for p in range(d):
                new = list(imgs)
                new[g] = _bump_vec(F, x, p)
                yield g, p, tuple(new)

    for label, new in k_matrix_mutations("s_images", cert.s_images):
        yield label, replace(cert, s_images=new)
    for label, new in k_matrix_mutations("g_images", cert.g_images):
        yield label, replace(cert, g_images=new)
    for g, p, new in scalar_mutations(cert.t_images):
        yield f"t_images[{g}][{p}]", replace(cert, t_images=new)
    for g, p, new in scalar_mutations(cert.r_images):
        yield f"r_images[{g}][{p}]", replace(cert, r_images=new)
