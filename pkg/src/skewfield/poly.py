"""Univariate polynomials over a field, as coefficient lists in ascending degree.

Used by the MeatAxe: characteristic polynomials of algebra elements and their
irreducible factors. Finite fields are factored here by distinct-degree and
equal-degree splitting; rational polynomials are handed to sympy.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .fields import Field
from .linalg import Matrix

Poly = list


def trim(f: Sequence, field: Field) -> Poly:
    f = list(f)
    while f and f[-1] == field.zero:
        f.pop()
    return f


def degree(f: Poly) -> int:
    return len(f) - 1


def monic(f: Poly, field: Field) -> Poly:
    if not f:
        return f
    lead = field.inv(f[-1])
    return [field.mul(lead, c) for c in f]


def add(f: Poly, g: Poly, field: Field) -> Poly:
    n = max(len(f), len(g))
    f = list(f) + [field.zero] * (n - len(f))
    g = list(g) + [field.zero] * (n - len(g))
    return trim([field.add(a, b) for a, b in zip(f, g)], field)


def sub(f: Poly, g: Poly, field: Field) -> Poly:
    return add(f, [field.neg(c) for c in g], field)


def mul(f: Poly, g: Poly, field: Field) -> Poly:
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == field.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return trim(out, field)


def divmod_(f: Poly, g: Poly, field: Field) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lead = field.inv(g[-1])
    q = [field.zero] * max(len(f) - dg, 1)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c == field.zero:
            continue
        c = field.mul(c, inv_lead)
        q[i - dg] = c
        for j in range(dg + 1):
            f[i - dg + j] = field.sub(f[i - dg + j], field.mul(c, g[j]))
    return trim(q, field), trim(f[:dg], field)


def mod(f: Poly, g: Poly, field: Field) -> Poly:
    return divmod_(f, g, field)[1]


def gcd(f: Poly, g: Poly, field: Field) -> Poly:
    f, g = trim(f, field), trim(g, field)
    while g:
        f, g = g, mod(f, g, field)
    return monic(f, field)


def powmod(f: Poly, e: int, m: Poly, field: Field) -> Poly:
    result = [field.one]
    base = mod(f, m, field)
    while e:
        if e & 1:
            result = mod(mul(result, base, field), m, field)
        base = mod(mul(base, base, field), m, field)
        e >>= 1
    return result


def evaluate_matrix(f: Poly, A: Matrix) -> Matrix:
    """``f(A)`` by Horner's rule."""
    F = A.field
    n = A.nrows
    result = Matrix.zeros(F, n)
    ident = Matrix.identity(F, n)
    for c in reversed(f):
        result = result @ A + ident.scale(c)
    return result


def charpoly(A: Matrix) -> Poly:
    """Characteristic polynomial ``det(x I - A)`` via Hessenberg reduction."""
    F = A.field
    n = A.nrows
    H = [list(r) for r in A.rows]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1] != F.zero), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        t = H[m][m - 1]
        for j in range(m + 1, n):
            u = F.div(H[j][m - 1], t)
            if u == F.zero:
                continue
            H[j] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[j], H[m])]
            for row in H:
                row[m] = F.add(row[m], F.mul(u, row[j]))
    p: list[Poly] = [[F.one]]
    for m in range(1, n + 1):
        pm = mul([F.neg(H[m - 1][m - 1]), F.one], p[m - 1], F)
        t = F.one
        for i in range(1, m):
            t = F.mul(t, H[m - i][m - i - 1])
            coeff = F.mul(t, H[m - i - 1][m - 1])
            pm = sub(pm, [F.mul(coeff, c) for c in p[m - i - 1]], F)
        p.append(pm)
    return p[n]


def _ddf(f: Poly, field: Field) -> list[tuple[Poly, int]]:
    """Distinct-degree factorisation of a monic polynomial (multiplicities dropped)."""
    q = field.order
    x = [field.zero, field.one]
    out = []
    rem = f
    h = x
    d = 0
    while degree(rem) >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, rem, field)
        g = gcd(rem, sub(h, x, field), field)
        if degree(g) > 0:
            out.append((g, d))
            while True:
                rem = divmod_(rem, g, field)[0]
                g2 = gcd(rem, g, field)
                if degree(g2) == 0:
                    break
                g = g2
            h = mod(h, rem, field) if degree(rem) > 0 else h
    if degree(rem) > 0:
        out.append((monic(rem, field), degree(rem)))
    return out


def _edf(g: Poly, d: int, field: Field, rng: random.Random) -> list[Poly]:
    if degree(g) == d:
        return [g]
    q = field.order
    p = field.characteristic
    k = field.degree
    while True:
        a = trim([field.random(rng) for _ in range(degree(g))], field)
        if degree(a) < 1:
            continue
        if p == 2:
            t = list(a)
            power = a
            for _ in range(k * d - 1):
                power = mod(mul(power, power, field), g, field)
                t = add(t, power, field)
            b = t
        else:
            b = sub(powmod(a, (q**d - 1) // 2, g, field), [field.one], field)
        h = gcd(g, b, field)
        if 0 < degree(h) < degree(g):
            rest = divmod_(g, h, field)[0]
            return _edf(h, d, field, rng) + _edf(monic(rest, field), d, field, rng)


def _factor_rational(f: Poly) -> list[Poly]:
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(f))
    _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
    out = []
    for fac, _mult in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.monic().all_coeffs())]
        out.append(coeffs)
    return out


def irreducible_factors(f: Poly, field: Field, rng: random.Random | None = None) -> list[Poly]:
    """Distinct monic irreducible factors, sorted by degree then coefficients."""
    f = monic(trim(f, field), field)
    if degree(f) < 1:
        return []
    if not field.is_finite:
        factors = _factor_rational(f)
    else:
        rng = rng or random.Random(0)
        factors = []
        for g, d in _ddf(f, field):
            factors.extend(_edf(g, d, field, rng))
    key = field.sort_key
    return sorted(factors, key=lambda h: (degree(h), [key(c) for c in h]))
