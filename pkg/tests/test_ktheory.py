from fractions import Fraction

import numpy as np
import pytest
from scipy import linalg
import cstartools as ct

fixtures = ct.dummy_alg.algebras()
Verdict = ct.ktheory.Verdict


@pytest.mark.parametrize('seed', range(100))
def test_idempotent_to_projection(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 7))
    rank = int(rng.integers(0, n + 1))
    e = ct.dummy_alg.idempotent(n, rank, seed=seed)
    p = ct.ktheory.idempotent_to_projection(e)
    assert ct.matcore.op_norm(p @ p - p) <= 1e-9 and \
        ct.matcore.op_norm(p - p.conj().T) <= 1e-9,\
        'result is not a projection'
    res = ct.ktheory.equivalence_residuals(e, p)
    assert max(res.values()) <= 1e-9 * max(1., ct.matcore.op_norm(e)),\
        'projection and idempotent are not similar'
    A = ct.algebra.full_algebra(n)
    assert ct.ktheory.dimension_vector(p, A, tol=1e-9) == (rank,),\
        'projection has the wrong rank'


def test_not_idempotent():
    with pytest.raises(ct.matcore.NotIdempotentError):
        ct.ktheory.idempotent_to_projection([[1., 1.], [0., .5]])
    with pytest.raises(ct.matcore.NotProjectionError):
        ct.ktheory.dimension_vector(2. * np.eye(2),
                                    ct.algebra.full_algebra(2))


@pytest.mark.parametrize('name', sorted(fixtures))
def test_minimal_projection_classes(name):
    A, expected = fixtures[name]
    blocks = ct.algebra.decomposed(A).blocks
    for i in range(len(blocks)):
        for p in ct.algebra.minimal_projections(A, i):
            vec = ct.ktheory.dimension_vector(p, A)
            assert vec == tuple(int(j == i) for j in range(len(blocks))),\
                'minimal projection is not a generator of K_0'
    assert ct.ktheory.dimension_vector(ct.algebra.unit(A), A) == \
        tuple(expected['sizes']), 'class of the unit is not the size vector'


def test_stability():
    A = ct.algebra.standard_algebra([1, 2])
    p = ct.matcore.direct_sum([[1.]], ct.dummy_alg.projection(2, 1, seed=3))
    zero = np.zeros((3, 3))
    assert ct.ktheory.dimension_vector(p, A) == (1, 1), 'wrong class of p'
    assert ct.ktheory.mvn_equivalent(p, ct.matcore.direct_sum(p, zero), A),\
        'p and p (+) 0 are not equivalent'
    assert ct.ktheory.dimension_vector(ct.matcore.direct_sum(p, p), A) \
        == (2, 2), 'class of p (+) p is not twice the class of p'
    u = ct.matcore.direct_sum([[1j]], ct.matcore.random_unitary(2, seed=4))
    assert ct.ktheory.mvn_equivalent(p, u @ p @ u.conj().T, A),\
        'unitarily equivalent projections have different classes'
    outside = np.zeros((3, 3))
    outside[:2, :2] = .5
    with pytest.raises(ct.matcore.NotMemberError):
        ct.ktheory.dimension_vector(outside, A)


def test_k0_class_arithmetic():
    x = ct.ktheory.K0Class((1, 2), 1)
    y = ct.ktheory.K0Class((0, -1), 1)
    assert (x + y).vector == (1, 1), 'wrong sum'
    assert (x - y).vector == (1, 3), 'wrong difference'
    assert (3 * x).vector == (3, 6) and (-x).vector == (-1, -2),\
        'wrong scalar multiple'
    assert ct.ktheory.k0_from_json(x.to_json()) == x, 'class JSON round trip'
    with pytest.raises(ct.matcore.LevelError):
        x + ct.ktheory.K0Class((1, 2), 2)
    with pytest.raises(ct.matcore.LevelError):
        x + ct.ktheory.K0Class((1,), 1)


def test_functoriality():
    m1 = [[1, 1], [1, 2]]
    m2 = [[3, 0]]
    phi = ct.ktheory.block_homomorphism([1, 1], [2, 3], m1, seed=0)
    psi = ct.ktheory.block_homomorphism([2, 3], [6], m2, seed=1)
    assert np.array_equal(ct.ktheory.k0_of_hom(phi), m1),\
        'wrong K_0 matrix of C^2 -> M_2 (+) M_3'
    assert np.array_equal(ct.ktheory.k0_of_hom(psi), m2),\
        'wrong K_0 matrix of M_2 (+) M_3 -> M_6'
    both = ct.ktheory.compose(psi, phi)
    assert np.array_equal(ct.ktheory.k0_of_hom(both),
                          np.array(m2) @ np.array(m1)),\
        'K_0 is not functorial'
    ident = ct.ktheory.identity_homomorphism(phi.target)
    assert np.array_equal(ct.ktheory.k0_of_hom(ident), np.eye(2)),\
        'K_0 of the identity is not the identity'
    with pytest.raises(ct.matcore.OperationError):
        ct.ktheory.block_homomorphism([1, 1], [2, 2], m1)


def test_certify_rejects_non_unital():
    A = ct.algebra.full_algebra(1)
    B = ct.algebra.full_algebra(2)
    images = np.array([np.diag([1., 0.])])
    hom = ct.ktheory.Homomorphism(A, B, images)
    ct.ktheory.certify(hom, unital=False)
    with pytest.raises(ct.matcore.CertificationError):
        ct.ktheory.certify(hom)


@pytest.mark.parametrize('level', range(1, 7))
def test_car_grid(level):
    d = ct.ktheory.car_diagram()
    for k in range(-16, 17):
        x = ct.ktheory.K0Class((k,), level)
        same = ct.ktheory.K0Class((2 * k,), level + 1)
        other = ct.ktheory.K0Class((2 * k + 1,), level + 1)
        assert ct.ktheory.car_value(x) == Fraction(k, 2 ** (level - 1)),\
            'wrong dyadic value'
        assert ct.ktheory.bratteli_k0_equal(d, x, same) == Verdict.EQUAL,\
            'k / 2^n and 2k / 2^(n+1) differ'
        assert ct.ktheory.bratteli_k0_equal(d, x, other) == \
            Verdict.DISTINCT, 'different dyadic numbers are equal'
        expected = Verdict.POSITIVE if k >= 0 else Verdict.NOT_POSITIVE
        assert ct.ktheory.bratteli_k0_positive(d, x) == expected,\
            'wrong positivity of ' + str(k)


def test_car_pairs():
    d = ct.ktheory.car_diagram()
    grid = [ct.ktheory.K0Class((k,), level) for level in range(1, 7)
            for k in range(-16, 17)]
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, len(grid), size=(400, 2)):
        x, y = grid[i], grid[j]
        verdict = ct.ktheory.bratteli_k0_equal(d, x, y)
        assert verdict != Verdict.UNDECIDED, 'CAR query left undecided'
        same = ct.ktheory.car_value(x) == ct.ktheory.car_value(y)
        assert (verdict == Verdict.EQUAL) == same,\
            'K_0 equality differs from equality in Z[1/2]'


def test_compacts():
    d = ct.ktheory.compacts_diagram()
    x = ct.ktheory.K0Class((3,), 2)
    assert ct.ktheory.propagate(d, x, 20).vector == (3,),\
        'compacts diagram changes classes'
    assert ct.ktheory.bratteli_k0_equal(
        d, x, ct.ktheory.K0Class((3,), 5)) == Verdict.EQUAL,\
        'equal ranks at different levels differ'


def test_cantor():
    d = ct.ktheory.cantor_diagram()
    x = ct.ktheory.K0Class((1, 0), 2)
    y = ct.ktheory.K0Class((1, 1, 0, 0), 3)
    assert ct.ktheory.bratteli_k0_equal(d, x, y) == Verdict.EQUAL,\
        'split indicator differs from the original'
    assert ct.ktheory.bratteli_k0_equal(
        d, x, ct.ktheory.K0Class((0, 1), 2)) == Verdict.DISTINCT,\
        'disjoint clopen sets are equal'
    with pytest.raises(ct.matcore.LevelError):
        ct.ktheory.bratteli_k0_equal(d, x, ct.ktheory.K0Class((1,), 3))


def test_undecided():
    d = ct.ktheory.BratteliDiagram([(1, 1)], [[[1, 1], [1, 1]]],
                                   stationary=True)
    x = ct.ktheory.K0Class((1, 0), 1)
    assert ct.ktheory.bratteli_k0_equal(
        d, x, ct.ktheory.K0Class((0, 1), 1)) == Verdict.EQUAL,\
        'classes meeting at level 2 differ'
    assert ct.ktheory.bratteli_k0_equal(
        d, x, ct.ktheory.K0Class((0, 0), 1), horizon=4) == \
        Verdict.UNDECIDED, 'non-injective maps cannot certify a difference'


def test_finite_diagram():
    d = ct.ktheory.BratteliDiagram([(1, 1), (2,)], [[[1, 1]]], unital=True)
    x = ct.ktheory.K0Class((1, 0), 1)
    assert ct.ktheory.bratteli_k0_equal(
        d, x, ct.ktheory.K0Class((0, 0), 1)) == Verdict.DISTINCT,\
        'classes differing at the last level are not distinct'
    assert ct.ktheory.bratteli_k0_positive(
        d, ct.ktheory.K0Class((1, -1), 1)) == Verdict.POSITIVE,\
        'class vanishing at level 2 is not positive'
    assert ct.ktheory.bratteli_k0_positive(
        d, ct.ktheory.K0Class((1, -2), 1)) == Verdict.NOT_POSITIVE,\
        'negative class at the last level is positive'
    with pytest.raises(ct.matcore.LevelError):
        ct.ktheory.propagate(d, ct.ktheory.K0Class((1,), 2), 1)
    with pytest.raises(ct.matcore.CertificationError):
        ct.ktheory.BratteliDiagram([(1, 1), (3,)], [[[1, 1]]], unital=True)


def test_bratteli_json():
    d = ct.ktheory.cantor_diagram(levels=4)
    e = ct.ktheory.bratteli_from_json(ct.ktheory.bratteli_to_json(d))
    assert e.levels == d.levels, 'diagram JSON round trip'
    car = ct.ktheory.bratteli_from_json({'kind': 'car', 'levels': 3})
    assert car.stationary and car.levels == [(1,), (2,), (4,)],\
        'wrong built-in CAR diagram'
    with pytest.raises(ct.matcore.OperationError):
        ct.ktheory.bratteli_from_json({'kind': 'moebius'})


def test_toeplitz_index():
    ker, coker, expected = ct.dummy_alg.toeplitz()
    assert ct.ktheory.index_map(ker, coker) == expected,\
        'index of the unilateral shift is not -1'


@pytest.mark.parametrize('seed', range(50))
def test_index_map_matrix(seed):
    ext, v, expected = ct.dummy_alg.extension(seed)
    assert ct.ktheory.index_map_matrix(v, ext) == expected,\
        'finite-dimensional extension has nonzero index'


def test_index_map_errors():
    ext, v, _ = ct.dummy_alg.extension(0)
    with pytest.raises(ct.matcore.CertificationError):
        ct.ktheory.index_map_matrix(2. * v, ext)
    lifted = ct.matcore.direct_sum(np.zeros((2, 2)), np.eye(3))
    with pytest.raises(ct.matcore.CertificationError):
        ct.ktheory.index_map_matrix(lifted, ext)


def test_homotopy_partial_isometry():
    e = ct.dummy_alg.projection(4, 2, seed=1)
    h = ct.matcore.random_matrix(4, seed=2)
    w = linalg.expm(0.05j * (h + h.conj().T))
    f = w @ e @ w.conj().T
    u = ct.ktheory.homotopy_partial_isometry(e, f)
    assert np.allclose(u.conj().T @ u, e) and np.allclose(u @ u.conj().T, f),\
        'partial isometry does not connect e and f'
    with pytest.raises(ct.matcore.OperationError):
        ct.ktheory.homotopy_partial_isometry(np.diag([1., 0.]),
                                             np.diag([0., 1.]))


def test_nearby_projection():
    p = ct.dummy_alg.projection(4, 2, seed=5)
    h = ct.matcore.random_matrix(4, seed=6)
    h = h + h.conj().T
    a = p + 0.1 * h / ct.matcore.op_norm(h)
    q = ct.ktheory.nearby_projection(a)
    assert ct.matcore.is_projection(q), 'result is not a projection'
    assert ct.matcore.numerical_rank(q) == 2, 'rank changed'
    assert ct.matcore.op_norm(q - p) < 1., 'projection is far from p'
    with pytest.raises(ct.matcore.DomainError):
        ct.ktheory.nearby_projection(0.5 * np.eye(2))


def test_k1_vanishes():
    assert ct.ktheory.K1_FINITE_DIMENSIONAL == 0, 'K_1 of M_n is not zero'
