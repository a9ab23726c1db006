import numpy as np
import pytest
import cstartools as ct

small_groups = ['1', 'Z2', 'Z3', 'Z4', 'Z2xZ2', 'Z5', 'Z6', 'S3']


@pytest.fixture(scope='module')
def translation_s3():
    sys = ct.crossed.translation_system(ct.groups.symmetric(3))
    return ct.crossed.build_crossed(sys)


def test_verify_relations(translation_s3):
    report = ct.crossed.verify_relations(translation_s3)
    assert report['max_residual'] <= 1e-10,\
        'crossed product relations fail for C(S3) x| S3'


def test_verify_relations_bags():
    cp = ct.crossed.build_crossed(
        ct.crossed.translation_system(ct.groups.cyclic(3)))
    serial = ct.crossed.verify_relations(cp)
    bags = ct.crossed.verify_relations(cp, use_bags=True)
    assert bags['max_residual'] == pytest.approx(serial['max_residual']),\
        'dask bags give a different residual'
    with pytest.raises(ValueError):
        ct.crossed.verify_relations(cp, use_bags=True, use_mp=True)


def test_multiply_matches_matrices(translation_s3):
    cp = translation_s3
    rng = np.random.default_rng(0)
    x = rng.standard_normal(cp.shape) + 1j * rng.standard_normal(cp.shape)
    y = rng.standard_normal(cp.shape) + 1j * rng.standard_normal(cp.shape)
    xy = ct.crossed.to_matrix(cp, ct.crossed.multiply(cp, x, y))
    assert np.allclose(xy, ct.crossed.to_matrix(cp, x)
                       @ ct.crossed.to_matrix(cp, y)),\
        'twisted convolution differs from the matrix product'
    assert np.allclose(ct.crossed.to_matrix(cp, ct.crossed.star(cp, x)),
                       ct.crossed.to_matrix(cp, x).conj().T),\
        'involution differs from the matrix adjoint'


@pytest.mark.parametrize('name', small_groups)
def test_stone_von_neumann(name):
    G = ct.groups.from_name(name)
    report = ct.crossed.stone_von_neumann_check(G)
    assert report['is_single_block'], 'C(G) x| G is not simple for ' + name
    assert report['block_size'] == G.order,\
        'C(G) x| G is not M_|G| for ' + name
    assert report['multiplicity'] == 1,\
        'integrated pair on l^2(G) is not irreducible'
    assert report['regular_multiplicity'] == G.order,\
        'regular realization has the wrong multiplicity'
    assert report['matrix_unit_residual'] <= 1e-12,\
        'matrix unit relations fail for ' + name


def test_expectation_group_algebra():
    sys = ct.crossed.trivial_system(ct.algebra.full_algebra(1),
                                    ct.groups.cyclic(4))
    cp = ct.crossed.build_crossed(sys)
    assert cp.algebra.dim == 4, 'C x| Z4 is not four dimensional'
    report = ct.crossed.expectation_report(cp)
    assert report['averaging_vs_extraction'] <= 1e-12,\
        'dual group average differs from the coefficient at e'
    assert report['max_residual'] <= 1e-10,\
        'conditional expectation fails on C x| Z4'
    assert report['full_rank'], 'conditional expectation is not faithful'


def test_expectation_translation():
    cp = ct.crossed.build_crossed(
        ct.crossed.translation_system(ct.groups.cyclic(3)))
    report = ct.crossed.expectation_report(cp)
    assert report['averaging_vs_extraction'] <= 1e-12,\
        'dual group average differs from the coefficient at e'
    assert report['max_residual'] <= 1e-10,\
        'conditional expectation fails on C(Z3) x| Z3'
    assert report['faithfulness_rank'] == 9,\
        'conditional expectation is not faithful on C(Z3) x| Z3'


def test_expectation_not_abelian(translation_s3):
    with pytest.raises(ct.matcore.NotAbelianError):
        ct.crossed.expectation_report(translation_s3, samples=1)


@pytest.mark.parametrize('q', [2, 3, 5, 7])
def test_clock_shift(q):
    u, v = ct.crossed.clock_shift(q)
    assert ct.crossed.commutation_residual(u, v, 1. / q) <= 1e-12,\
        'clock and shift do not satisfy u v = w v u'
    A = ct.crossed.rotation_algebra(q)
    assert A.dim == q * q, 'clock and shift do not generate M_q'
    blocks = ct.algebra.block_decompose(A)
    assert len(blocks) == 1 and blocks[0].block_size == q,\
        'rotation algebra is not a single block'


def test_clock_shift_small_q():
    with pytest.raises(ct.matcore.OperationError):
        ct.crossed.clock_shift(1)


def test_covariance_error():
    sys = ct.crossed.translation_system(ct.groups.cyclic(3))
    U = np.array([np.eye(3)] * 3)
    with pytest.raises(ct.matcore.CovarianceError):
        ct.crossed.integrate_covariant(sys, sys.algebra.basis, U)


def test_integrate_trivial_group():
    A = ct.algebra.standard_algebra([1, 2])
    sys = ct.crossed.trivial_system(A, ct.groups.trivial())
    k = A.ambient_dim
    images = ct.crossed.integrate_covariant(sys, A.basis, [np.eye(k)])
    assert images.shape == (1, A.dim, k, k), 'wrong shape of the images'
    assert np.allclose(images[0], A.basis),\
        'integrated form over the trivial group differs from pi'


@pytest.mark.parametrize('name', ['Z2', 'Z3', 'Z2xZ2', 'S3'])
def test_integrated_translation_image(name):
    G = ct.groups.from_name(name)
    sys = ct.crossed.translation_system(G)
    images = ct.crossed.integrate_covariant(sys, sys.algebra.basis,
                                            ct.groups.left_regular(G))
    B = ct.crossed.integrated_image(images)
    assert B.dim == G.order ** 2,\
        'multiplication and translation do not span M_|G| for ' + name
    blocks = ct.algebra.block_decompose(B)
    assert len(blocks) == 1 and blocks[0].block_size == G.order\
        and blocks[0].multiplicity == 1,\
        'integrated image is not irreducible for ' + name


def test_integrate_rejects_non_star():
    A = ct.algebra.full_algebra(2)
    sys = ct.crossed.trivial_system(A, ct.groups.trivial())
    s = np.array([[1., 2.], [0., 1.]])
    pi = np.array([s @ b @ np.linalg.inv(s) for b in A.basis])
    with pytest.raises(ct.matcore.CertificationError):
        ct.crossed.integrate_covariant(sys, pi, [np.eye(2)])


def test_integrate_rejects_non_unitary():
    A = ct.algebra.full_algebra(1)
    sys = ct.crossed.trivial_system(A, ct.groups.cyclic(2))
    pi = np.array([np.eye(2)])
    with pytest.raises(ct.matcore.CertificationError):
        ct.crossed.integrate_covariant(sys, pi, [np.eye(2), 2 * np.eye(2)])


def test_make_system_errors():
    A = ct.algebra.diagonal_algebra(2)
    G = ct.groups.cyclic(2)
    with pytest.raises(ct.matcore.CertificationError):
        ct.crossed.make_system(A, G, unitaries=[np.eye(2), 2 * np.eye(2)])
    hadamard = np.array([[1., 1.], [1., -1.]]) / np.sqrt(2.)
    with pytest.raises(ct.matcore.CertificationError):
        ct.crossed.make_system(A, G, unitaries=[np.eye(2), hadamard])
    with pytest.raises(ct.matcore.OperationError):
        ct.crossed.make_system(A, G)


def test_coset_system():
    sys = ct.crossed.system_from_json({'kind': 'coset', 'group': 'S3',
                                       'subgroup': [0, 3, 4]})
    assert sys.algebra.dim == 2, 'S3 / A3 has two cosets'
    cp = ct.crossed.build_crossed(sys)
    summary = ct.crossed.crossed_summary(cp)
    assert summary['dim'] == 12, 'C(S3/A3) x| S3 is not twelve dimensional'
