import random

import pytest

from conftest import F2, F3, as_ints, mat
from skewfield import corpus
from skewfield.algebra import algebra_closure
from skewfield.certificate import verify_certificate
from skewfield.commutant import double_centralizer_check
from skewfield.corollaries import group_action, nesin_poizat, one_sided
from skewfield.errors import HypothesisViolation, ValidationError
from skewfield.linalg import Matrix, Subspace, inverse
from skewfield.module import ModuleInstance, annihilator


def k_compose(K, outer, inner):
    """Image of outer∘inner from the images of the two maps (left K-coordinates)."""
    k = len(outer)
    zero = tuple(K.field.zero for _ in range(K.d))
    add = lambda x, y: tuple(K.field.add(a, b) for a, b in zip(x, y))
    out = []
    for j in range(k):
        row = []
        for i in range(k):
            acc = zero
            for l in range(k):
                acc = add(acc, K.mul(inner[l][i], outer[j][l]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def rebuild(cert, a):
    """The matrix of an image in the original coordinates, from the basis and K alone."""
    F, k, d, K = cert.field, cert.k, cert.d, cert.K
    B = Matrix.from_columns(F, cert.adapted_basis, cert.n)
    cols = []
    for i in range(k):
        for m in range(d):
            t_m = tuple(F.one if q == m else F.zero for q in range(d))
            col = [F.zero] * cert.n
            for j in range(k):
                x = K.mul(t_m, a[j][i])
                for p in range(d):
                    col[j * d + p] = x[p]
            cols.append(col)
    return B @ Matrix.from_columns(F, cols, cert.n) @ inverse(B)


# -- one-sided ----------------------------------------------------------------------


def test_one_sided_singer():
    res = one_sided(corpus.load("singer_f3"))
    assert res.T.dim == 2 and res.T.order() == 9
    assert res.division.is_division and res.division.strategy == "finite-commutative-domain"
    assert (res.certificate.k, res.certificate.d) == (1, 2)


def test_one_sided_quaternions(quaternions):
    res = one_sided(quaternions)
    assert res.T.dim == 4 and not res.T.is_commutative()
    assert res.division.strategy == "norm-form"
    assert verify_certificate(res.instance, res.certificate).ok


def test_one_sided_keeps_instance_when_s_is_bicommutant():
    # F2[A] with A of order 3 already equals its double centraliser
    M = ModuleInstance(F2, 2, (mat(F2, [[0, 1], [1, 1]]),))
    res = one_sided(M, certify=False)
    assert res.instance is M and res.certificate is None


@pytest.mark.parametrize("name", ["singer_f3", "quaternions_q4", "f4_on_f2sq", "full_mat3_f2"])
def test_one_sided_t_equals_commutant(name):
    M = corpus.load(name)
    assert one_sided(M, certify=False).T == double_centralizer_check(M).t_basis


def test_one_sided_rejects_reducible():
    with pytest.raises(HypothesisViolation) as info:
        one_sided(corpus.load("upper_triangular_fixture"))
    assert info.value.claim == "irreducibility"


# -- group actions --------------------------------------------------------------------


def test_group_action_gl2():
    M = corpus.load("gl2_f2_group")
    cert = group_action(M)
    assert (cert.k, cert.d, cert.K.order()) == (2, 1, 2)
    assert len(cert.g_images) == 2
    assert verify_certificate(M, cert).ok
    assert any(e["claim"] == "infinite-centraliser" for e in cert.check_log)


@pytest.mark.parametrize("name", ["gl2_f2_group", "singer_f3"])
def test_group_images_respect_words(name):
    M = corpus.load(name)
    cert = group_action(M)
    rng = random.Random(7)
    ident = Matrix.identity(M.field, M.n)
    for g, a in zip(M.g_gens, cert.g_images):
        assert rebuild(cert, a) == g
    for _ in range(20):
        word = [rng.randrange(len(M.g_gens)) for _ in range(rng.randint(1, 8))]
        W, img = ident, None
        for idx in word:
            W = W @ M.g_gens[idx]
            a = cert.g_images[idx]
            img = a if img is None else k_compose(cert.K, img, a)
        assert rebuild(cert, img) == W


def test_group_action_rejects_unipotent():
    with pytest.raises(HypothesisViolation) as info:
        group_action(corpus.load("unipotent_group_f2"))
    assert info.value.claim == "irreducibility"
    assert info.value.witness.dim == 1


# -- commutative rings normalised by a group ---------------------------------------------


def test_np_singer():
    report, cert = nesin_poizat(corpus.load("singer_f3"))
    assert report.W.dim == 2 and report.p_ideal.dim == 0 and report.num_conjugates == 1
    assert report.frac.order() == 9
    assert (cert.k, cert.d, cert.K.order()) == (1, 2, 9)
    assert cert.extensions["nesin_poizat"]["W_dim"] == 2
    assert verify_certificate(corpus.load("singer_f3"), cert).ok


def test_np_scalars():
    report, cert = nesin_poizat(corpus.load("np_scalars_gl2_f2"))
    assert report.frac.d == 1 and cert.k == 2
    assert len(cert.r_images) == 1 and cert.r_images[0] == (1,)


def test_np_nilpotent_ring():
    with pytest.raises(HypothesisViolation) as info:
        nesin_poizat(corpus.load("np_nilpotent_f2"))
    assert info.value.claim == "kernel-chain"
    assert as_ints(info.value.witness) == [[0, 1], [0, 0]]


def test_np_several_conjugates():
    M = corpus.load("np_monomial_f3")
    with pytest.raises(HypothesisViolation) as info:
        nesin_poizat(M)
    assert info.value.claim == "np-connected"
    report = info.value.report
    assert report.num_conjugates == 2 and len(report.avoidance_witnesses) == 2
    assert report.directness == {"dims": [1, 1], "sum_dim": 2, "direct": True}
    R = algebra_closure(M.r_gens, 2, F3)
    for h, P in zip(report.conjugators, report.conjugates):
        assert annihilator(M, R, report.W.image(h)) == P
    for i, w in enumerate(report.avoidance_witnesses):
        c = R.coordinates(w)
        assert not report.conjugates[i].contains(c)
        assert all(P.contains(c) for j, P in enumerate(report.conjugates) if j != i)


def test_np_annihilator_is_conjugation_equivariant():
    # Ann_R(gW) = g Ann_R(W) g^-1, checked directly for every group element
    M = corpus.load("np_monomial_f3")
    R = algebra_closure(M.r_gens, 2, F3)
    with pytest.raises(HypothesisViolation) as info:
        nesin_poizat(M)
    report_W = info.value.report.W
    p = annihilator(M, R, report_W)
    group = {Matrix.identity(F3, 2)}
    frontier = list(group)
    while frontier:
        h = frontier.pop()
        for g in M.g_gens:
            x = g @ h
            if x not in group:
                group.add(x)
                frontier.append(x)
    assert len(group) == 8
    for h in group:
        hi = inverse(h)
        conj = [R.coordinates(h @ R.element(c) @ hi) for c in p.basis]
        assert annihilator(M, R, report_W.image(h)) == Subspace.span(F3, R.dim, conj)


def test_np_requires_commutative_ring():
    # non-commuting R generators are rejected when the instance is built
    with pytest.raises(ValidationError):
        ModuleInstance(F2, 2, (), g_gens=(mat(F2, [[0, 1], [1, 1]]),), r_gens=(mat(F2, [[1, 0], [0, 0]]), mat(F2, [[0, 1], [0, 0]])))


def test_np_requires_normalising_group():
    M = ModuleInstance(F2, 2, (), g_gens=(mat(F2, [[0, 1], [1, 1]]),), r_gens=(mat(F2, [[1, 0], [0, 0]]),))
    with pytest.raises(HypothesisViolation) as info:
        nesin_poizat(M)
    assert info.value.claim == "np-normalise"
