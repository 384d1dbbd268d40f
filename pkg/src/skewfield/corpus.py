"""The built-in example corpus and the verb runner shared with the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .certificate import LinearizationCertificate
from .commutant import is_division_ring
from .corollaries import group_action, nesin_poizat, one_sided
from .documents import matrix_json, parse_instance, vector_json
from .engine import compute_delta, linearize
from .errors import HypothesisViolation, SkewFieldError
from .linalg import Matrix, Subspace
from .algebra import algebra_closure, centralizer_basis
from .module import ModuleInstance, irreducible_test

VERBS = ("centralize", "irreducible", "delta", "linearize", "corollary-one-sided", "corollary-group", "corollary-np")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    file: str
    runs: tuple  # ({"verb": ..., "expected": {...}}, ...)
    provenance: str

    def instance(self) -> ModuleInstance:
        return parse_instance(_read(self.file))


def _read(filename: str) -> str:
    return resources.files("skewfield").joinpath("corpus", filename).read_text(encoding="utf-8")


def manifest() -> dict[str, CorpusEntry]:
    raw = json.loads(_read("manifest.json"))
    out = {}
    for e in raw["entries"]:
        out[e["name"]] = CorpusEntry(e["name"], e["file"], tuple(e["runs"]), e.get("provenance", ""))
    return dict(sorted(out.items()))


def load(name: str) -> ModuleInstance:
    entries = manifest()
    if name not in entries:
        raise KeyError(name)
    return entries[name].instance()


# -- running verbs ------------------------------------------------------------------


def witness_json(w: Any):
    if w is None:
        return None
    if isinstance(w, Matrix):
        return matrix_json(w)
    if isinstance(w, Subspace):
        return [vector_json(w.field, v) for v in w.basis]
    if isinstance(w, (tuple, list)):
        return [witness_json(x) for x in w]
    return str(w)


def certificate_summary(cert: LinearizationCertificate) -> dict:
    return {
        "status": "ok",
        "k": cert.k,
        "d": cert.d,
        "dim_S": cert.dimensions.get("dim_S"),
        "dim_T": cert.dimensions.get("dim_T"),
        "commutative": cert.K.commutative,
        "K_order": cert.K.order(),
    }


def run_verb(verb: str, M: ModuleInstance, *, seed: int = 0) -> tuple[dict, dict]:
    """Execute ``verb``; return the output document and a short summary for expectations."""
    F, n = M.field, M.n
    if verb == "centralize":
        gens = M.s_gens or M.g_gens or ()
        T = centralizer_basis(gens, n, F)
        div = is_division_ring(T, seed=seed)
        doc = {
            "kind": "centralizer",
            "dim": T.dim,
            "basis": [matrix_json(b) for b in T.basis],
            "commutative": T.is_commutative(),
            "division": div.is_division,
            "division_strategy": div.strategy,
        }
        return doc, {"status": "ok", "dim": T.dim, "division": div.is_division}
    if verb == "irreducible":
        gens = M.s_gens or M.g_gens or ()
        v = irreducible_test(M, gens, seed=seed)
        doc = {"kind": "irreducibility", "irreducible": v.irreducible, "strategy": v.strategy, "witness": witness_json(v.witness)}
        return doc, {"status": "ok", "irreducible": v.irreducible}
    if verb == "delta":
        S = algebra_closure(M.s_gens, n, F)
        T = centralizer_basis(M.s_gens, n, F)
        lower = T.dim if T.unital and is_division_ring(T, seed=seed).is_division else None
        r = compute_delta(S, seed=seed, lower_bound=lower)
        doc = {"kind": "delta", "delta": r.delta, "witness": matrix_json(r.witness), "certified": r.certified, "method": r.method}
        return doc, {"status": "ok", "delta": r.delta}
    if verb == "linearize":
        cert = linearize(M, seed=seed)
        return cert.to_json(), certificate_summary(cert)
    if verb == "corollary-one-sided":
        res = one_sided(M, seed=seed)
        doc = {
            "kind": "one-sided",
            "T_dim": res.T.dim,
            "T_basis": [matrix_json(b) for b in res.T.basis],
            "division_strategy": res.division.strategy,
            "certificate": None if res.certificate is None else res.certificate.to_json(),
        }
        summary = certificate_summary(res.certificate) if res.certificate else {"status": "ok"}
        summary["T_dim"] = res.T.dim
        return doc, summary
    if verb == "corollary-group":
        cert = group_action(M, seed=seed)
        return cert.to_json(), certificate_summary(cert)
    if verb == "corollary-np":
        report, cert = nesin_poizat(M, seed=seed)
        summary = certificate_summary(cert)
        summary.update(W_dim=report.W.dim, p_dim=report.p_ideal.dim, num_conjugates=report.num_conjugates)
        return cert.to_json(), summary
    raise ValueError(f"unknown verb {verb!r}")


def violation_json(exc: HypothesisViolation) -> dict:
    doc = {"kind": "hypothesis-violation", "claim": exc.claim, "message": exc.message, "witness": witness_json(exc.witness)}
    if exc.report is not None and hasattr(exc.report, "to_json"):
        doc["report"] = exc.report.to_json()
    return doc


def run_expectation(name: str, verb: str, expected: dict, seed: int = 0) -> tuple[bool, dict]:
    """Run one corpus expectation; return (matched, observed summary)."""
    M = load(name)
    try:
        _, observed = run_verb(verb, M, seed=seed)
    except HypothesisViolation as exc:
        observed = {"status": "violation", "claim": exc.claim}
    except SkewFieldError as exc:
        observed = {"status": "error", "error": type(exc).__name__}
    matched = all(observed.get(key) == val for key, val in expected.items())
    return matched, observed
