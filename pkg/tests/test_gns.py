import dataclasses

import numpy as np
import pytest
import cstartools as ct

algebras = {'M2': ct.algebra.full_algebra(2),
            'M3': ct.algebra.full_algebra(3),
            'C2+M2': ct.algebra.standard_algebra([1, 1, 2])}


def random_density(n, seed):
    a = ct.matcore.random_matrix(n, seed=seed)
    d = a @ a.conj().T
    return d / np.trace(d)


def states(A):
    n = A.ambient_dim
    return [ct.gns.trace_state(A),
            ct.gns.state_from_density(A, random_density(n, 1)),
            ct.gns.state_from_density(A, random_density(n, 2))]


@pytest.mark.parametrize('name', sorted(algebras))
def test_gns_reconstruction(name):
    A = algebras[name]
    for phi in states(A):
        res = ct.gns.gns_construct(phi)
        assert res.reconstruction_residual <= 1e-10,\
            'GNS does not reconstruct the state on ' + name
        assert ct.gns.cyclicity_rank(res) == res.hilbert_dim,\
            'Omega is not cyclic on ' + name
        ct.gns.certify_representation(res.representation)


def test_trace_state_m2():
    res = ct.gns.gns_construct(ct.gns.trace_state(algebras['M2']))
    assert res.hilbert_dim == 4, 'tracial GNS space of M_2 is not C^4'
    assert ct.gns.rep_decompose(res.representation) == [(2, 2)],\
        'tracial GNS of M_2 is not twice the identity representation'
    assert not ct.gns.is_irreducible(res.representation),\
        'tracial GNS of M_2 is irreducible'


def test_vector_state_pure():
    A = algebras['M3']
    res = ct.gns.gns_construct(ct.gns.vector_state(A, [1., 1j, 0.]))
    assert res.hilbert_dim == 3, 'vector state on M_3 has GNS space C^3'
    assert ct.gns.is_irreducible(res.representation),\
        'GNS of a pure state is not irreducible'


def test_faithful_state():
    A = algebras['C2+M2']
    res = ct.gns.gns_construct(ct.gns.faithful_state(A))
    assert res.hilbert_dim == A.dim, 'faithful state has a null space'


def test_make_state_errors():
    A = algebras['M2']
    phi = ct.gns.trace_state(A)
    with pytest.raises(ct.matcore.NotPositiveError):
        ct.gns.make_state(A, -phi.values)
    with pytest.raises(ct.matcore.OperationError):
        ct.gns.make_state(A, 2. * phi.values)
    with pytest.raises(ct.matcore.OperationError):
        ct.gns.make_state(A, phi.values[:2])


def test_non_unital():
    A = ct.algebra.generate(2, [np.diag([1., 0.])], unital=False)
    phi = ct.gns.state_from_density(A, np.diag([1., 0.]))
    with pytest.raises(ct.matcore.NotUnitalError):
        ct.gns.gns_construct(phi)


def test_gns_unitary():
    A = algebras['M2']
    r1 = ct.gns.gns_construct(states(A)[1])
    w = ct.matcore.random_unitary(r1.hilbert_dim, seed=4)
    r2 = dataclasses.replace(
        r1, rep=np.einsum('ij,mjk,lk->mil', w, r1.rep, w.conj()),
        cyclic_vector=w @ r1.cyclic_vector)
    u = ct.gns.gns_unitary(r1, r2)
    assert np.allclose(u, w), 'GNS unitary is not the rotation'
    r3 = ct.gns.gns_construct(states(A)[2])
    with pytest.raises(ct.matcore.CertificationError):
        ct.gns.gns_unitary(r1, r3)


def test_schur_lemmas():
    A = ct.algebra.diagonal_algebra(2)
    first = ct.gns.Representation(A, A.basis[:, :1, :1].copy())
    second = ct.gns.Representation(A, A.basis[:, 1:, 1:].copy())
    assert ct.gns.are_disjoint(first, second),\
        'different characters are not disjoint'
    assert ct.gns.are_equivalent(first, first),\
        'a representation is not equivalent to itself'
    M = algebras['M2']
    w = ct.matcore.random_unitary(2, seed=5)
    ident = ct.gns.identity_representation(M)
    moved = ct.gns.Representation(
        M, np.einsum('ij,mjk,lk->mil', w, M.basis, w.conj()))
    u = ct.gns.equivalence_unitary(ident, moved)
    assert u is not None, 'conjugate representations are inequivalent'
    assert np.allclose(np.einsum('ij,mjk,lk->mil', u, M.basis, u.conj()),
                       moved.images), 'unitary does not intertwine'


def test_degenerate_representation():
    M = algebras['M2']
    images = np.array([ct.matcore.direct_sum(b, np.zeros((1, 1)))
                       for b in M.basis])
    rep = ct.gns.Representation(M, images)
    with pytest.raises(ct.matcore.DegenerateError):
        ct.gns.rep_decompose(rep)


def test_cauchy_schwarz():
    for phi in states(algebras['C2+M2']):
        assert ct.gns.cauchy_schwarz_defect(phi) <= 1e-10,\
            'Cauchy-Schwarz inequality fails'


def test_state_json():
    A = algebras['M2']
    phi = states(A)[1]
    psi = ct.gns.state_from_json(A, ct.gns.state_to_json(phi))
    assert np.allclose(phi.values, psi.values), 'state JSON round trip'
    tr = ct.gns.state_from_json(A, {'kind': 'trace'})
    assert tr(np.eye(2)) == pytest.approx(1.), 'trace state of the unit'
