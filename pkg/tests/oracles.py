"""Brute-force reference computations, written independently of the package.

Everything here works on numpy integer arrays modulo a prime and enumerates
exhaustively; it is only usable at tiny sizes, which is the point.
"""

from __future__ import annotations

import itertools

import numpy as np


def rref_mod_p(A, p: int):
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        nz = [i for i in range(r, rows) if A[i, c]]
        if not nz:
            continue
        A[[r, nz[0]]] = A[[nz[0], r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def rank_mod_p(A, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def all_matrices(n: int, p: int) -> np.ndarray:
    """Every n x n matrix over F_p, shape (p^(n^2), n, n)."""
    grid = np.array(list(itertools.product(range(p), repeat=n * n)), dtype=np.int64)
    return grid.reshape(-1, n, n)


def brute_centralizer(gens, n: int, p: int) -> np.ndarray:
    """RREF basis (flattened) of every matrix commuting with all ``gens``."""
    X = all_matrices(n, p)
    keep = np.ones(len(X), dtype=bool)
    for A in gens:
        A = np.array(A, dtype=np.int64)
        lhs = np.einsum("kij,jl->kil", X, A) % p
        rhs = np.einsum("ij,kjl->kil", A, X) % p
        keep &= np.all(lhs == rhs, axis=(1, 2))
    sols = X[keep].reshape(-1, n * n)
    return rref_mod_p(sols, p)[0]


def orbit_span_dim(v, gens, p: int) -> int:
    basis = [np.array(v, dtype=np.int64) % p]
    while True:
        new = basis + [(np.array(g) @ b) % p for g in gens for b in basis]
        R, _ = rref_mod_p(np.array(new), p)
        if len(R) == len(rref_mod_p(np.array(basis), p)[0]):
            return len(R)
        basis = list(R)


def brute_irreducible(gens, n: int, p: int) -> bool:
    """No nonzero vector spans a proper invariant subspace."""
    for v in itertools.product(range(p), repeat=n):
        if any(v) and orbit_span_dim(v, gens, p) < n:
            return False
    return True


def span_elements(basis, p: int):
    """All linear combinations of the given matrices (as numpy arrays)."""
    basis = [np.array(b, dtype=np.int64) for b in basis]
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        yield sum((c * b for c, b in zip(coeffs, basis)), np.zeros_like(basis[0])) % p


def brute_min_rank(basis, p: int) -> int:
    return min(rank_mod_p(m, p) for m in span_elements(basis, p) if m.any())


def brute_is_division(basis, p: int) -> bool:
    """A finite unital ring is a division ring iff it has no zero divisors."""
    elems = [m for m in span_elements(basis, p) if m.any()]
    stack = np.stack(elems)
    for x in elems:
        prods = np.einsum("ij,kjl->kil", x, stack) % p
        if not np.all(prods.reshape(len(elems), -1).any(axis=1)):
            return False
    return True


def matrix_order(A, p: int, limit: int = 10_000) -> int:
    A = np.array(A, dtype=np.int64) % p
    ident = np.eye(A.shape[0], dtype=np.int64)
    X = A.copy()
    for k in range(1, limit):
        if np.array_equal(X, ident):
            return k
        X = (X @ A) % p
    raise ValueError("order exceeds limit")
