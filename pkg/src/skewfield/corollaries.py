"""Corollary pipelines: one-sided action, group actions, and commutative rings normalised by a group."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field, replace
from typing import Any

from .algebra import AlgebraBasis, algebra_closure, centralizer_basis
from .certificate import LinearizationCertificate, SkewFieldPresentation
from .commutant import DivisionVerdict, is_division_ring
from .documents import vector_json
from .engine import CheckLog, kernel_chain, linearize
from .errors import HypothesisViolation
from .linalg import Matrix, Subspace, inverse, subspace_sum
from .module import ModuleInstance, annihilator, irreducible_test, minimal_submodule


def _require_irreducible(M: ModuleInstance, gens, what: str, seed: int):
    verdict = irreducible_test(M, gens, seed=seed)
    if not verdict.irreducible:
        raise HypothesisViolation("irreducibility", f"V is reducible under {what}", witness=verdict.witness)
    return verdict


def _extend_s(M: ModuleInstance, S: AlgebraBasis) -> ModuleInstance:
    """Keep the original S generators first and append a basis of the replacement algebra."""
    return M.with_gens(s_gens=tuple(M.s_gens) + tuple(S.basis))


# -- one-sided --------------------------------------------------------------------


@dataclass
class OneSidedResult:
    T: AlgebraBasis
    division: DivisionVerdict
    instance: ModuleInstance
    certificate: LinearizationCertificate | None


def one_sided(M: ModuleInstance, *, seed: int = 0, certify: bool = True) -> OneSidedResult:
    """``T = C(S)`` is a skew-field whenever ``V`` is S-irreducible.

    ``S`` is replaced by ``C(T)`` (which contains it) so that the pipeline's
    double-centraliser hypothesis holds, then the full linearisation runs.
    """
    if not M.s_gens:
        raise ValueError("one_sided needs S generators")
    _require_irreducible(M, M.s_gens, "S", seed)
    T = centralizer_basis(M.s_gens, M.n, M.field)
    division = is_division_ring(T, seed=seed)
    if not division.is_division:
        raise HypothesisViolation("(xi)", "C(S) has zero divisors", witness=division.witness)
    if T.field.is_finite and T.is_commutative():
        # a finite commutative domain is a field
        division = DivisionVerdict(True, "finite-commutative-domain")
    S2 = centralizer_basis(T.basis, M.n, M.field)
    M2 = M if S2 == algebra_closure(M.s_gens, M.n, M.field) else _extend_s(M, S2)
    cert = linearize(M2, seed=seed) if certify else None
    return OneSidedResult(T, division, M2, cert)


# -- group actions ------------------------------------------------------------------


def group_action(M: ModuleInstance, *, seed: int = 0) -> LinearizationCertificate:
    """For ``V`` irreducible under ``G``: ``T = C(G)``, ``S = C(T)``, and ``G`` acts ``K``-linearly."""
    if not M.g_gens:
        raise ValueError("group_action needs G generators")
    _require_irreducible(M, M.g_gens, "G", seed)
    F, n = M.field, M.n
    T = centralizer_basis(M.g_gens, n, F)
    S = centralizer_basis(T.basis, n, F)
    for idx, g in enumerate(M.g_gens):
        if not S.contains(g):
            raise HypothesisViolation("double-centraliser", f"g_gens[{idx}] is not in C(C(G))", witness=g)
    log = CheckLog()
    log.waived("infinite-centraliser", f"C(G) has dimension {T.dim} >= 1; infiniteness has no finite-instance content")
    cert = linearize(M.with_gens(s_gens=tuple(M.s_gens) + tuple(S.basis)), seed=seed, log=log)
    return cert


# -- commutative rings normalised by a group ----------------------------------------------


@dataclass
class NPReport:
    W: Subspace
    p_ideal: Subspace
    conjugates: list
    conjugators: list
    avoidance_witnesses: list = dc_field(default_factory=list)
    frac: SkewFieldPresentation | None = None
    directness: dict = dc_field(default_factory=dict)

    @property
    def num_conjugates(self) -> int:
        return len(self.conjugates)

    def to_json(self) -> dict[str, Any]:
        F = self.W.field
        return {
            "W": [vector_json(F, v) for v in self.W.basis],
            "W_dim": self.W.dim,
            "p_ideal": [vector_json(F, v) for v in self.p_ideal.basis],
            "num_conjugates": len(self.conjugates),
            "conjugate_dims": [P.dim for P in self.conjugates],
            "avoidance_witnesses": len(self.avoidance_witnesses),
            "frac": None if self.frac is None else self.frac.to_json(),
            "directness": self.directness,
        }


def _conjugate_ideal(R: AlgebraBasis, ideal: Subspace, h: Matrix, h_inv: Matrix) -> Subspace:
    mats = [h @ R.element(c) @ h_inv for c in ideal.basis]
    coords = [R.coordinates(m) for m in mats]
    if any(c is None for c in coords):
        raise HypothesisViolation("np-normalise", "conjugate of an ideal leaves R", witness=h)
    return Subspace.span(R.field, R.dim, coords)


def _elements_to_check(R: AlgebraBasis, seed: int, limit: int = 2**12, samples: int = 50):
    order = R.order()
    if order is not None and order <= limit:
        return [m for _, m in R.projective_elements()]
    rng = random.Random(seed)
    return list(R.basis) + [R.random_nonzero(rng) for _ in range(samples)]


def _fraction_field(R: AlgebraBasis) -> AlgebraBasis:
    if R.field.is_finite:
        return R
    F, n = R.field, R.n
    A = R
    while True:
        gens = list(A.basis) + [inverse(b) for b in A.basis]
        B = algebra_closure(gens, n, F)
        if B == A:
            return A
        A = B


def nesin_poizat(M: ModuleInstance, *, seed: int = 0) -> tuple[NPReport, LinearizationCertificate]:
    """A commutative ring ``R`` normalised by an irreducible group ``G`` embeds in ``K`` and ``G`` acts ``K``-linearly."""
    if not M.r_gens or not M.g_gens:
        raise ValueError("nesin_poizat needs R and G generators")
    F, n = M.field, M.n
    R = algebra_closure(M.r_gens, n, F)
    if not R.is_commutative():
        raise HypothesisViolation("np-commutative", "R is not commutative")
    g_invs = [inverse(g) for g in M.g_gens]
    for g, gi in zip(M.g_gens, g_invs):
        for b in R.basis:
            if not R.contains(g @ b @ gi):
                raise HypothesisViolation("np-normalise", "G does not normalise R", witness=g)
    elements = _elements_to_check(R, seed)
    for r in elements:
        if not r.is_zero() and kernel_chain(r).union.dim == n:
            raise HypothesisViolation("kernel-chain", "R contains a nonzero nilpotent element", witness=r)
    _require_irreducible(M, M.g_gens, "G", seed)

    W = minimal_submodule(M, R.basis, seed=seed)
    p = annihilator(M, R, W)
    ident = Matrix.identity(F, n)
    conjugates, conjugators = [p], [(ident, ident)]
    queue = [(ident, ident)]
    while queue:
        h, h_inv = queue.pop(0)
        for g, gi in zip(M.g_gens, g_invs):
            h2, h2_inv = g @ h, h_inv @ gi
            P = _conjugate_ideal(R, p, h2, h2_inv)
            if P not in conjugates:
                conjugates.append(P)
                conjugators.append((h2, h2_inv))
                queue.append((h2, h2_inv))
    for (h, h_inv), P in zip(conjugators, conjugates):
        if annihilator(M, R, W.image(h)) != P:
            raise HypothesisViolation("np-annihilator", "Ann_R(hW) differs from h p h^-1", witness=h)
    meet = conjugates[0]
    from .linalg import subspace_sum_intersect

    for P in conjugates[1:]:
        meet = subspace_sum_intersect(meet, P)[1]
    if meet.dim:
        raise HypothesisViolation("np-faithful", "R does not embed in the product of the quotients", witness=meet)
    report = NPReport(W, p, conjugates, [h for h, _ in conjugators])

    if len(conjugates) > 1:
        witnesses = []
        for i, Pi in enumerate(conjugates):
            prod = R.unit_element()
            for j, Pj in enumerate(conjugates):
                if j == i:
                    continue
                pick = next((c for c in Pj.basis if not Pi.contains(c)), None)
                if pick is None:
                    raise HypothesisViolation("np-avoidance", "conjugate ideals are nested")
                prod = prod @ R.element(pick)
            c = R.coordinates(prod)
            if Pi.contains(c) or any(not Pj.contains(c) for j, Pj in enumerate(conjugates) if j != i):
                raise HypothesisViolation("np-avoidance", "prime-avoidance product has the wrong membership")
            witnesses.append(prod)
        report.avoidance_witnesses = witnesses
        translates = [W.image(h) for h in report.conjugators]
        total = subspace_sum(translates, F, n)
        report.directness = {"dims": [X.dim for X in translates], "sum_dim": total.dim, "direct": total.dim == sum(X.dim for X in translates)}
        raise HypothesisViolation(
            "np-connected",
            f"G permutes {len(conjugates)} conjugates of Ann_R(W); a connected group would fix it",
            report=report,
        )
    if p.dim:
        raise HypothesisViolation("np-faithful", "Ann_R(W) is nonzero", witness=p)

    for r in elements:
        if not r.is_zero() and (r.rank() < n or kernel_chain(r).union.dim):
            raise HypothesisViolation("kernel-chain", "a nonzero element of R is not bijective", witness=r)
    Fr = _fraction_field(R)
    verdict = is_division_ring(Fr, seed=seed)
    if not verdict.is_division or not Fr.is_commutative():
        raise HypothesisViolation("np-frac", "Frac(R) is not a commutative division algebra")
    report.frac = SkewFieldPresentation(
        F, Fr.dim, tuple(tuple(tuple(c) for c in row) for row in Fr.structure_constants()), tuple(Fr.unit), True
    )
    S = centralizer_basis(Fr.basis, n, F)
    for idx, g in enumerate(M.g_gens):
        if not S.contains(g):
            raise HypothesisViolation("np-centralise", f"g_gens[{idx}] does not centralise R", witness=g)
    log = CheckLog()
    log.waived("connectedness", "replaced by the derived condition |P| = 1, which was checked")
    log.waived("unboundedness", "R is bounded at finite scale; the kernel-chain argument ran unconditionally")
    cert = linearize(M.with_gens(s_gens=tuple(M.s_gens) + tuple(S.basis)), seed=seed, log=log)
    cert = replace(cert, extensions={**cert.extensions, "nesin_poizat": report.to_json()})
    return report, cert
