import numpy as np
import pytest
import cstartools as ct

fixtures = ct.dummy_alg.groups()


@pytest.mark.parametrize('name', sorted(fixtures))
def test_decompose_group_algebra(name):
    G, sizes = fixtures[name]
    blocks = ct.groups.decompose_group_algebra(G)
    assert sorted(b.block_size for b in blocks) == sizes,\
        'wrong irreducible dimensions for ' + name
    assert all(b.multiplicity == b.block_size for b in blocks),\
        'regular representation holds each irreducible n times'
    assert len(blocks) == len(ct.groups.conjugacy_classes(G)),\
        'number of blocks differs from number of conjugacy classes'


@pytest.mark.parametrize('seed', range(1, 6))
@pytest.mark.parametrize('name', sorted(fixtures))
def test_decompose_reseed(name, seed):
    G, sizes = fixtures[name]
    blocks = ct.groups.decompose_group_algebra(G, seed=seed)
    assert sorted(b.block_size for b in blocks) == sizes,\
        'block sizes depend on the seed'


@pytest.mark.parametrize('n', range(1, 9))
def test_cyclic_commutative(n):
    G = ct.groups.cyclic(n)
    blocks = ct.groups.decompose_group_algebra(G)
    assert len(blocks) == n and all(b.block_size == 1 for b in blocks),\
        'C*(Z/n) is not C^n'
    chars = ct.groups.dual_group(G)
    assert len(chars) == n, 'dual group has the wrong order'
    assert np.allclose(chars[0].values, 1.),\
        'trivial character is not listed first'
    report = ct.groups.fourier_iso_check(G)
    assert report['max_residual'] <= 1e-10,\
        'Fourier transform is not a *-isomorphism'


def test_dual_group_klein():
    report = ct.groups.fourier_iso_check(ct.groups.from_name('Z2xZ2'))
    assert report['max_residual'] <= 1e-10,\
        'Fourier transform of Z2xZ2 is not a *-isomorphism'
    with pytest.raises(ct.matcore.NotAbelianError):
        ct.groups.dual_group(ct.groups.symmetric(3))


def test_convolution():
    G = ct.groups.symmetric(3)
    rng = np.random.default_rng(0)
    f = ct.groups.element(G, rng.standard_normal(6))
    g = ct.groups.element(G, rng.standard_normal(6) + 1j)
    fg = ct.groups.convolve(f, g)
    assert np.allclose(ct.groups.to_matrix(fg),
                       ct.groups.to_matrix(f) @ ct.groups.to_matrix(g)),\
        'regular representation is not multiplicative'
    assert np.allclose(ct.groups.to_matrix(ct.groups.star(g)),
                       ct.groups.to_matrix(g).conj().T),\
        'regular representation does not preserve the involution'
    s, t = 1, 2
    d = ct.groups.convolve(ct.groups.delta(G, s), ct.groups.delta(G, t))
    assert np.allclose(d.coeffs, ct.groups.delta(G, G.mul(s, t)).coeffs),\
        'delta_s * delta_t is not delta_st'
    with pytest.raises(ct.matcore.GroupMismatchError):
        ct.groups.convolve(f, ct.groups.delta(ct.groups.cyclic(6), 0))


def test_character_table_s3():
    table = ct.groups.character_table(ct.groups.symmetric(3))
    assert list(table.index) == [1, 1, 2], 'wrong character dimensions'
    assert np.allclose(table.iloc[:, 0].values, [1, 1, 2]),\
        'character at the identity is not the dimension'
    assert np.allclose(sorted(table.iloc[-1].values.real), [-1, 0, 2]),\
        'wrong character of the two dimensional irreducible'
    assert ct.groups.separates_points(ct.groups.symmetric(3)),\
        'irreducibles do not separate the points of S3'


def test_subgroups():
    S3 = ct.groups.symmetric(3)
    subs = ct.groups.subgroups(S3)
    assert [len(h) for h in subs] == [1, 2, 2, 2, 3, 6],\
        'S3 has six subgroups of orders 1, 2, 2, 2, 3, 6'
    A3 = subs[4]
    reps, cosets, labels = ct.groups.left_cosets(S3, A3)
    assert len(reps) == 2 and sorted(sum(cosets, [])) == list(range(6)),\
        'cosets of A3 do not partition S3'
    assert all(labels[s] == k for k, c in enumerate(cosets) for s in c),\
        'coset labels are inconsistent'
    with pytest.raises(ct.matcore.NotSubgroupError):
        ct.groups.left_cosets(ct.groups.cyclic(4), (0, 1))


@pytest.mark.parametrize('table', [
    [[0, 1], [1, 1]],
    [[1, 0], [0, 1]],
    [[0, 1, 2], [1, 2, 0]],
    [[0, 1, 2], [1, 0, 2], [2, 1, 0]],
    [[0, 3], [3, 0]],
])
def test_invalid_table(table):
    with pytest.raises(ct.matcore.InvalidTableError):
        ct.groups.from_table(table)


def test_group_json():
    G = ct.groups.dihedral(4)
    H = ct.groups.group_from_json(ct.groups.group_to_json(G))
    assert ct.groups.same_group(G, H), 'group JSON round trip'
    with pytest.raises(ct.matcore.InvalidTableError):
        ct.groups.group_from_json({'order': 3, 'table': G.table.tolist()})
    assert ct.groups.from_name('Z2xZ3').order == 6, 'wrong product order'
    with pytest.raises(ct.matcore.OperationError):
        ct.groups.from_name('X9')
