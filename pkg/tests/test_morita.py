import numpy as np
import pytest
import cstartools as ct

all_groups = ['Z2', 'Z3', 'Z4', 'Z2xZ2', 'Z5', 'Z6', 'S3', 'Z7', 'Z8',
              'D4', 'Q8']


@pytest.fixture(scope='module')
def s3_a3():
    return ct.morita.build_bimodule(ct.groups.symmetric(3), (0, 3, 4))


def test_dimensions(s3_a3):
    summary = ct.morita.bimodule_summary(s3_a3)
    assert summary['module_dim'] == 6, 'E_0 is not C(S3)'
    assert summary['dim_B'] == 3, 'B_0 is not C*(A3)'
    assert summary['dim_A'] == 12, 'A_0 is not C(S3/A3) x| S3'
    assert summary['cosets'] == 2, 'A3 has two cosets in S3'


@pytest.mark.parametrize('group, subgroup, dims', [
    ('S3', (0, 1), (6, 2, 18)),
    ('S3', (0,), (6, 1, 36)),
    ('Z4', (0, 2), (4, 2, 8)),
    ('Z4', (0, 1, 2, 3), (4, 4, 4)),
])
def test_special_cases(group, subgroup, dims):
    bm = ct.morita.build_bimodule(ct.groups.from_name(group), subgroup)
    summary = ct.morita.bimodule_summary(bm)
    assert (summary['module_dim'], summary['dim_B'], summary['dim_A']) \
        == dims, 'wrong dimensions for ' + group + ' / ' + str(subgroup)
    report = ct.morita.verify_axioms(bm, samples=10)
    assert report['max_residual'] <= 1e-10,\
        'axioms fail for ' + group + ' / ' + str(subgroup)


@pytest.mark.parametrize('name', all_groups)
def test_all_subgroups(name):
    G = ct.groups.from_name(name)
    for H in ct.groups.subgroups(G):
        bm = ct.morita.build_bimodule(G, H)
        report = ct.morita.verify_axioms(bm, samples=5)
        assert report['psd'], 'inner products are not positive'
        assert report['full_a'] and report['full_b'],\
            'inner products are not full'
        assert report['max_residual'] <= 1e-10,\
            'axioms fail for ' + name + ' / ' + str(H)
        blocks = ct.morita.block_correspondence(bm)
        assert blocks['blocks_A'] == blocks['blocks_B'] \
            == blocks['irreps_H'], 'block counts differ for ' + name


def test_identity_vector(s3_a3):
    e = np.zeros(6)
    e[0] = 1.
    assert np.allclose(ct.morita.inner_b(s3_a3, e, e), [1., 0., 0.]),\
        '<eps_e|eps_e>_B is not the unit of C*(H)'
    a = ct.morita.inner_a(s3_a3, e, e)
    expected = np.zeros((6, 2))
    expected[0, 0] = 1.
    assert np.allclose(a, expected), '<eps_e|eps_e>_A is not e_H'
    assert np.allclose(ct.morita.left_action(s3_a3, a, e), e),\
        'e_H does not fix eps_e'


def test_block_correspondence(s3_a3):
    report = ct.morita.block_correspondence(s3_a3)
    assert report['blocks_A'] == 3 and report['blocks_B'] == 3,\
        'A_0 and B_0 have different numbers of blocks'
    assert report['matched'], 'blocks are not matched'
    assert report['irreps_H'] == 3, 'A3 has three irreducibles'
    assert report['induced_ranks'] == [2, 2, 2],\
        'E_0 z has the wrong rank'


def test_block_correspondence_s3_z2():
    bm = ct.morita.build_bimodule(ct.groups.symmetric(3), (0, 1))
    report = ct.morita.block_correspondence(bm)
    assert report['blocks_A'] == report['blocks_B'] == 2,\
        'C(S3/Z2) x| S3 is not Morita equivalent to C^2'
    assert report['sizes_A'] == [3, 3], 'A_0 is not M_3 (+) M_3'
    assert report['induced_ranks'] == [3, 3], 'E_0 z has the wrong rank'


def test_axiom_table(s3_a3):
    df = ct.morita.axiom_table(ct.morita.verify_axioms(s3_a3))
    assert df.index.name == 'axiom', 'table is not indexed by axiom'
    assert set(df.index) == {'sesquilinear_a', 'sesquilinear_b',
                             'adjoint_a', 'adjoint_b', 'associativity',
                             'contractivity', 'fullness', 'norm', 'module'},\
        'axiom missing from the table'
    assert df['passed'].all(), 'an axiom failed'


def test_verify_axioms_bags(s3_a3):
    serial = ct.morita.verify_axioms(s3_a3, samples=2)
    bags = ct.morita.verify_axioms(s3_a3, samples=2, use_bags=True)
    assert bags['axioms']['associativity'] == pytest.approx(
        serial['axioms']['associativity']),\
        'dask bags give a different residual'
    with pytest.raises(ValueError):
        ct.morita.verify_axioms(s3_a3, use_bags=True, use_mp=True)


def test_not_subgroup():
    with pytest.raises(ct.matcore.NotSubgroupError):
        ct.morita.build_bimodule(ct.groups.symmetric(3), (0, 1, 3))
    with pytest.raises(ct.matcore.NotSubgroupError):
        ct.morita.build_bimodule(ct.groups.cyclic(4), (1, 3))
