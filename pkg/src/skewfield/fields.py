"""Exact scalar arithmetic: prime fields, small extension fields and the rationals.

Elements are plain Python values so they can be hashed and compared cheaply:

* prime field ``F_p``: ``int`` residues in ``[0, p)``
* extension ``F_p[x]/(m)``: tuples of residues, ascending degree
* rationals: :class:`fractions.Fraction`

A field object carries the operations; elements never know their field.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Sequence

from .errors import NonPrimeCharacteristic, ReducibleModulus, ValidationError

MAX_EXTENSION_DEGREE = 8
MAX_EXTENSION_CHARACTERISTIC = 13


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a ground field.

    ``modulus`` lists the coefficients of a monic polynomial in ascending
    degree, so ``(1, 1, 1)`` is ``x^2 + x + 1``.
    """

    kind: str
    p: int | None = None
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.modulus is not None and not isinstance(self.modulus, tuple):
            object.__setattr__(self, "modulus", tuple(self.modulus))

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "rational":
            return cls("rational")
        if kind == "prime":
            return cls("prime", int(obj["p"]))
        if kind == "extension":
            return cls("extension", int(obj["p"]), tuple(int(c) for c in obj["modulus"]))
        raise ValidationError(f"unknown field kind {kind!r}")


class Field:
    """Operations on the elements of one field."""

    spec: FieldSpec
    zero: Any
    one: Any
    characteristic: int
    order: int | None  # None for infinite fields

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def is_zero(self, a) -> bool:
        return a == self.zero

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dot(self, xs: Sequence, ys: Sequence):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc

    def power(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        result = self.one
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def nonzero_elements(self) -> Iterator:
        return (a for a in self.elements() if not self.is_zero(a))

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"{type(self).__name__}({self.spec})"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        self.p = p
        self.spec = FieldSpec("prime", p)
        self.zero, self.one = 0, 1
        self.characteristic = p
        self.order = p
        self.degree = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def from_int(self, k: int):
        return k % self.p

    def elements(self):
        return iter(range(self.p))

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def sort_key(self, a):
        return a

    def to_json(self, a):
        return str(a)

    def from_json(self, obj):
        if isinstance(obj, bool):
            raise ValidationError(f"expected a residue, got {obj!r}")
        if isinstance(obj, str):
            text = obj.strip()
            if not text.lstrip("-").isdigit():
                raise ValidationError(f"malformed residue {obj!r}")
            value = int(text)
        elif isinstance(obj, int):
            value = obj
        else:
            raise ValidationError(f"expected a residue, got {obj!r}")
        if not 0 <= value < self.p:
            raise ValidationError(f"residue {value} out of range for F_{self.p}")
        return value

    def __str__(self):
        return f"F_{self.p}"


def _poly_mod_p(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic polynomial ``m`` over ``F_p``."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm]


def _has_factor_of_degree(modulus: Sequence[int], p: int, k: int) -> bool:
    for tail in itertools.product(range(p), repeat=k):
        divisor = list(tail) + [1]
        if not any(_poly_mod_p(list(modulus), divisor, p)):
            return True
    return False


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a monic polynomial over ``F_p``.

    Degree <= 3 only needs a root search; higher degree uses trial division
    by every monic polynomial of degree up to half the degree.
    """
    deg = len(modulus) - 1
    roots = any(sum(c * pow(x, i, p) for i, c in enumerate(modulus)) % p == 0 for x in range(p))
    if roots:
        return False
    if deg <= 3:
        return True
    return not any(_has_factor_of_degree(modulus, p, k) for k in range(2, deg // 2 + 1))


class ExtensionField(Field):
    """``F_p[x]/(modulus)`` with elements as coefficient tuples."""

    def __init__(self, p: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        deg = len(modulus) - 1
        if deg < 2 or modulus[-1] != 1:
            raise ValidationError("modulus must be monic of degree >= 2")
        if deg > MAX_EXTENSION_DEGREE or p > MAX_EXTENSION_CHARACTERISTIC:
            raise ValidationError(
                f"extension fields are limited to degree <= {MAX_EXTENSION_DEGREE} "
                f"and p <= {MAX_EXTENSION_CHARACTERISTIC}"
            )
        if not is_irreducible_mod_p(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.degree = deg
        self.spec = FieldSpec("extension", p, modulus)
        self.zero = (0,) * deg
        self.one = (1,) + (0,) * (deg - 1)
        self.characteristic = p
        self.order = p**deg
        self.mul = lru_cache(maxsize=1 << 16)(self._mul)
        self.inv = lru_cache(maxsize=1 << 12)(self._inv)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return tuple(_poly_mod_p(prod, self.modulus, self.p))

    def _inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # a^(q-2) in the multiplicative group of order q-1
        return self.power(a, self.order - 2)

    def from_int(self, k: int):
        return (k % self.p,) + (0,) * (self.degree - 1)

    def elements(self):
        # index order: sum c_i p^i ascending
        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield tuple(reversed(coeffs))

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def sort_key(self, a):
        return sum(c * self.p**i for i, c in enumerate(a))

    def to_json(self, a):
        return list(a)

    def from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != self.degree:
            raise ValidationError(f"expected {self.degree} coefficients, got {obj!r}")
        out = []
        for c in obj:
            if isinstance(c, bool) or not isinstance(c, (int, str)):
                raise ValidationError(f"malformed coefficient {c!r}")
            value = int(c)
            if not 0 <= value < self.p:
                raise ValidationError(f"coefficient {value} out of range for F_{self.p}")
            out.append(value)
        return tuple(out)

    def __str__(self):
        return f"F_{self.order}"


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec("rational")
        self.zero, self.one = Fraction(0), Fraction(1)
        self.characteristic = 0
        self.order = None
        self.degree = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def dot(self, xs, ys):
        return sum((x * y for x, y in zip(xs, ys)), Fraction(0))

    def from_int(self, k: int):
        return Fraction(k)

    def elements(self):
        raise TypeError("the rationals cannot be enumerated")

    def random(self, rng: random.Random):
        return Fraction(rng.randint(-3, 3))

    def sort_key(self, a):
        return a

    def to_json(self, a):
        return f"{a.numerator}/{a.denominator}"

    def from_json(self, obj):
        if isinstance(obj, bool):
            raise ValidationError(f"expected a rational, got {obj!r}")
        if isinstance(obj, int):
            return Fraction(obj)
        if not isinstance(obj, str):
            raise ValidationError(f"expected a rational string, got {obj!r}")
        num, sep, den = obj.strip().partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValidationError(f"malformed rational {obj!r}") from None
        if d <= 0:
            raise ValidationError(f"denominator must be positive in {obj!r}")
        value = Fraction(n, d)
        if value.denominator != d:
            raise ValidationError(f"rational {obj!r} is not in lowest terms")
        return value

    def __str__(self):
        return "Q"


@lru_cache(maxsize=None)
def field_make(spec: FieldSpec) -> Field:
    """Build (and cache) the field described by ``spec``."""
    if spec.kind == "prime":
        return PrimeField(spec.p)
    if spec.kind == "extension":
        return ExtensionField(spec.p, spec.modulus)
    if spec.kind == "rational":
        if spec.p is not None or spec.modulus is not None:
            raise ValidationError("the rational field takes no characteristic or modulus")
        return RationalField()
    raise ValidationError(f"unknown field kind {spec.kind!r}")


def GF(p: int, modulus: Sequence[int] | None = None) -> Field:
    if modulus is None:
        return field_make(FieldSpec("prime", p))
    return field_make(FieldSpec("extension", p, tuple(modulus)))


QQ = field_make(FieldSpec("rational"))
