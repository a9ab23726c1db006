'''gns

Collection of functions for states on finite-dimensional C*-algebras,
the GNS construction, intertwiners and the decomposition of
representations into irreducibles.

A state on an algebra A is stored through its values phi(b_k) on the
orthonormal basis of A, together with the density matrix
D = sum_k phi(b_k) b_k* in A, so that phi(x) = tr(D x) for x in A.

'''

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from . import matcore as mc
from . import calculus as calc
from . import algebra as alg

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class State:
    ''' A certified state.

    Attributes
    ----------
    algebra : FDCAlgebra
    values : array
        phi(b_k) on the basis of `algebra`.
    density : array
        D with phi(x) = tr(D x).
    gram : array
        G_ij = phi(b_i* b_j), positive semidefinite.
    '''
    algebra: alg.FDCAlgebra
    values: np.ndarray
    density: np.ndarray
    gram: np.ndarray

    def __call__(self, x):
        return complex(np.trace(self.density @ np.asarray(x)))


@dataclass(eq=False)
class Representation:
    ''' A representation of an algebra given by the images of its basis.

    Attributes
    ----------
    algebra : FDCAlgebra
    images : array
        Shape (dim A, h, h), images[k] = pi(b_k).
    '''
    algebra: alg.FDCAlgebra
    images: np.ndarray

    @property
    def hilbert_dim(self):
        return self.images.shape[1]

    def __call__(self, x):
        '''pi(x) for an element x of the algebra.'''
        return np.einsum('k,kij->ij', alg.coefficients(self.algebra, x),
                         self.images)


@dataclass(eq=False)
class GNSResult:
    ''' The GNS triple of a state.

    Attributes
    ----------
    state : State
    hilbert_dim : int
    rep : array
        pi(b_k) for every basis element, shape (dim A, h, h).
    cyclic_vector : array
        Omega, the class of the unit.
    gram : array
        The Gram matrix of the state.
    embedding : array
        The map eta from basis coefficients to the Hilbert space, shape
        (h, dim A); eta(x) is the class of x.
    reconstruction_residual : float
        max_k |phi(b_k) - <pi(b_k) Omega, Omega>|.
    tolerance : float
        Effective tolerance used to cut the null space of the Gram matrix.
    '''
    state: State
    hilbert_dim: int
    rep: np.ndarray
    cyclic_vector: np.ndarray
    gram: np.ndarray
    embedding: np.ndarray
    reconstruction_residual: float
    tolerance: float

    @property
    def representation(self):
        return Representation(self.state.algebra, self.rep)


def _gram(A, density):
    '''G_ij = tr(D b_i* b_j).'''
    return np.einsum('ab,iqb,jqa->ij', density, A.basis.conj(), A.basis,
                     optimize=True)


def make_state(A, values, tol=None):
    ''' Certify the functional with values phi(b_k) = values[k] as a state.

    Parameters
    ----------
    A : FDCAlgebra
    values : array_like
        One complex value per basis element of `A`.
    tol : Tolerance or None

    Returns
    -------
    phi : State

    Raises
    ------
    NotPositiveError
        If the Gram matrix has an eigenvalue below -tolerance.
    OperationError
        If `values` has the wrong length, or phi(1) != 1 for unital A.
    '''
    tol = mc.get_tol(tol)
    v = np.asarray(values, dtype=complex).ravel()
    if len(v) != A.dim:
        raise mc.OperationError('make_state', 'need ' + str(A.dim)
                                + ' values, got ' + str(len(v)))
    density = np.einsum('k,kji->ij', v, A.basis.conj())
    gram = _gram(A, density)
    scale = max(1., float(np.max(np.abs(gram))) if gram.size else 1.)
    eps = tol.effective(scale, max(A.dim, 1))
    herm = mc.op_norm(gram - gram.conj().T) if gram.size else 0.
    lam = linalg.eigvalsh((gram + gram.conj().T) / 2.) if gram.size \
        else np.zeros(1)
    if herm > eps or lam[0] < -eps:
        raise mc.NotPositiveError('make_state', 'Gram matrix is not positive'
                                  + ' semidefinite (smallest eigenvalue '
                                  + str(lam[0]) + ')')
    if A.unital:
        one = np.trace(density)
        if abs(one - 1.) > eps:
            raise mc.OperationError('make_state', 'phi(1) = ' + str(one)
                                    + ' != 1')
    return State(A, v, density, gram)


def state_from_density(A, density, tol=None):
    '''The state x -> tr(D x) for a density matrix D.'''
    density = mc.as_square(density, 'state_from_density')
    values = np.einsum('ij,kji->k', density, A.basis)
    return make_state(A, values, tol)


def trace_state(A, tol=None):
    '''The normalized trace tr(x) / N.'''
    n = A.ambient_dim
    return state_from_density(A, np.eye(n) / n, tol)


def vector_state(A, xi, tol=None):
    '''x -> <x xi, xi> for a unit vector xi.'''
    xi = np.asarray(xi, dtype=complex).ravel()
    xi = xi / np.linalg.norm(xi)
    return state_from_density(A, np.outer(xi, xi.conj()), tol)


def faithful_state(A, tol=None):
    ''' Normalized sum of 2^-i <x e_i, e_i> over the standard basis vectors;
    its density is diagonal with full rank, so it is faithful on every
    subalgebra.
    '''
    w = 2. ** -np.arange(A.ambient_dim)
    return state_from_density(A, np.diag(w / w.sum()), tol)


def state_from_json(A, obj, tol=None):
    ''' Parse a state. Accepted forms:
        {"values": [[re, im], ...]}
        {"density": <matrix>}
        {"kind": "trace" | "faithful"}
        {"kind": "vector", "vector": [[re, im], ...]}
    '''
    def parse(vals):
        return [complex(z[0], z[1]) if isinstance(z, (list, tuple))
                else complex(z) for z in vals]

    if 'values' in obj:
        return make_state(A, parse(obj['values']), tol)
    if 'density' in obj:
        return state_from_density(A, mc.matrix_from_json(obj['density']),
                                  tol)
    kind = obj.get('kind')
    if kind == 'trace':
        return trace_state(A, tol)
    if kind == 'faithful':
        return faithful_state(A, tol)
    if kind == 'vector':
        return vector_state(A, parse(obj['vector']), tol)
    raise mc.OperationError('state_from_json', 'need `values`, `density` or'
                            + ' a known `kind`')


def state_to_json(phi):
    return {'values': [[float(z.real), float(z.imag)] for z in phi.values]}


def left_multiplication(A):
    ''' L[m, k, j] = tr(b_k* b_m b_j), the matrix of x -> b_m x on basis
    coefficients.
    '''
    return np.einsum('kqp,mqr,jrp->mkj', A.basis.conj(), A.basis, A.basis,
                     optimize=True)


def gns_construct(phi, tol=None):
    ''' GNS construction.

    The quotient by the null space of the Gram matrix G is realized by its
    eigendecomposition G = V L V*: eigenpairs above tolerance span the
    Hilbert space, eta(c) = L+^(1/2) V+* c, and left multiplication by a
    is pushed through as pi(a) = L+^(1/2) V+* L_a V+ L+^(-1/2).

    Parameters
    ----------
    phi : State
    tol : Tolerance or None

    Returns
    -------
    result : GNSResult

    Raises
    ------
    NotUnitalError
        For a non-unital algebra.
    '''
    tol = mc.get_tol(tol)
    A = phi.algebra
    if not A.unital:
        raise mc.NotUnitalError('gns_construct', 'GNS is only built for'
                                + ' unital algebras')
    gram = (phi.gram + phi.gram.conj().T) / 2.
    lam, v = linalg.eigh(gram)
    eps = tol.effective(float(np.max(np.abs(lam))), A.dim)
    keep = lam > eps
    lam_p = lam[keep]
    v_p = v[:, keep]
    h = int(keep.sum())
    logger.info('GNS space has dimension %d (algebra dimension %d)', h,
                A.dim)
    root = np.sqrt(lam_p)
    embedding = root[:, None] * v_p.conj().T
    lmul = left_multiplication(A)
    rep = np.einsum('hk,mkj,jl->mhl', embedding, lmul,
                    v_p / root[None, :], optimize=True)
    omega = embedding @ alg.coefficients(A, np.eye(A.ambient_dim))
    recon = np.einsum('h,mhl,l->m', omega.conj(), rep, omega)
    residual = float(np.max(np.abs(phi.values - recon)))
    logger.debug('reconstruction residual %g', residual)
    return GNSResult(phi, h, rep, omega, phi.gram, embedding, residual, eps)


def cyclicity_rank(result, tol=None):
    '''Rank of {pi(b_k) Omega}; equals hilbert_dim for a cyclic Omega.'''
    vecs = np.einsum('mhl,l->hm', result.rep, result.cyclic_vector)
    return mc.numerical_rank(vecs, tol)


def gns_to_json(result):
    return {'hilbert_dim': result.hilbert_dim,
            'cyclic_vector': [[float(z.real), float(z.imag)]
                              for z in result.cyclic_vector],
            'rep': [mc.matrix_to_json(m) for m in result.rep],
            'reconstruction_residual': result.reconstruction_residual,
            'tolerance': result.tolerance}


def identity_representation(A):
    '''The defining representation x -> x.'''
    return Representation(A, A.basis.copy())


def certify_representation(rep, tol=None, raise_on_fail=True):
    ''' Check that `rep` is a *-homomorphism on basis pairs.

    Returns
    -------
    residuals : dict
        'multiplicativity': max ||pi(b_i) pi(b_j) - pi(b_i b_j)||,
        'adjoint': max ||pi(b_i)* - pi(b_i*)||.

    Raises
    ------
    CertificationError
        If a residual exceeds the tolerance and `raise_on_fail`.
    '''
    tol = mc.get_tol(tol)
    A = rep.algebra
    im = rep.images
    consts = alg.structure_constants(A)
    prod = np.einsum('iab,jbc->ijac', im, im)
    target = np.einsum('ijk,kac->ijac', consts, im)
    mult = float(np.max(np.abs(prod - target))) if im.size else 0.
    adj_coeffs = alg.adjoint_coefficients(A)
    adj = np.einsum('ik,kab->iab', adj_coeffs, im)
    star = float(np.max(np.abs(np.conj(np.transpose(im, (0, 2, 1)))
                               - adj))) if im.size else 0.
    scale = max([1.] + [float(np.max(np.abs(m))) for m in im])
    eps = tol.effective(scale ** 2, max(rep.hilbert_dim, 1))
    residuals = {'multiplicativity': mult, 'adjoint': star}
    if raise_on_fail and max(mult, star) > eps:
        raise mc.CertificationError('certify_representation', 'not a'
                                    + ' *-homomorphism (residuals '
                                    + str(residuals) + ')')
    return residuals


def is_irreducible(rep, tol=None):
    '''Schur's lemma: irreducible iff the commutant of the image is C.'''
    certify_representation(rep, tol)
    c = alg.commutant(list(rep.images), rep.hilbert_dim, tol)
    return c.dim == 1


def rep_decompose(rep, seed=0, tol=None):
    ''' Decompose a nondegenerate representation into irreducibles.

    Returns
    -------
    blocks : list of tuple
        (n_i, m_i): an irreducible of dimension n_i occurring m_i times.

    Raises
    ------
    DegenerateError
        If the unit of the image algebra is not the identity.
    '''
    tol = mc.get_tol(tol)
    certify_representation(rep, tol)
    h = rep.hilbert_dim
    image = alg.generate(h, list(rep.images), unital=False, tol=tol)
    blocks = alg.block_decompose(image, seed=seed, tol=tol)
    corner = np.eye(h) - alg.unit(image, tol)
    if not mc.is_zero(corner, tol):
        raise mc.DegenerateError('rep_decompose', 'representation is'
                                 + ' degenerate on a corner of rank '
                                 + str(mc.numerical_rank(corner, tol)))
    return [(b.block_size, b.multiplicity) for b in blocks]


def intertwiners(rep1, rep2, tol=None):
    ''' Basis of L(pi_1, pi_2) = {T : T pi_1(a) = pi_2(a) T}, shape
    (k, h2, h1).
    '''
    if rep1.images.shape[0] != rep2.images.shape[0]:
        raise mc.OperationError('intertwiners', 'representations of'
                                + ' different algebras')
    return alg.intertwiner_space(list(rep1.images), list(rep2.images), tol)


def are_disjoint(rep1, rep2, tol=None):
    '''True if no nonzero intertwiner exists.'''
    return len(intertwiners(rep1, rep2, tol)) == 0


def equivalence_unitary(rep1, rep2, seed=0, tol=None):
    ''' A unitary U with U pi_1(a) U* = pi_2(a), or None if the
    representations are inequivalent. A generic intertwiner is invertible
    exactly when one exists; U is its polar part.
    '''
    tol = mc.get_tol(tol)
    if rep1.hilbert_dim != rep2.hilbert_dim:
        return None
    space = intertwiners(rep1, rep2, tol)
    if len(space) == 0:
        return None
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(len(space)) + 1j * rng.standard_normal(len(space))
    t = np.einsum('k,kij->ij', c, space)
    try:
        return calc.polar_unitary(t, tol)
    except mc.SingularError:
        return None


def are_equivalent(rep1, rep2, seed=0, tol=None):
    return equivalence_unitary(rep1, rep2, seed, tol) is not None


def gns_unitary(r1, r2, tol=None):
    ''' The unitary U with U pi_1(a) Omega_1 = pi_2(a) Omega_2 between two
    GNS triples of the same state.

    Raises
    ------
    CertificationError
        If the triples do not come from the same state.
    '''
    tol = mc.get_tol(tol)
    x1 = np.einsum('mhl,l->hm', r1.rep, r1.cyclic_vector)
    x2 = np.einsum('mhl,l->hm', r2.rep, r2.cyclic_vector)
    u = x2 @ linalg.pinv(x1)
    square = u.shape[0] == u.shape[1]
    if not (square and mc.classify(u, tol)['unitary']) or \
       mc.op_norm(u @ x1 - x2) > tol.effective(mc.op_norm(x2), len(u)):
        raise mc.CertificationError('gns_unitary', 'cyclic vectors do not'
                                    + ' define the same state')
    return u


def cauchy_schwarz_defect(phi, samples=20, seed=0):
    ''' max over random pairs of |phi(y*x)|^2 - phi(x*x) phi(y*y), relative
    to phi(x*x) phi(y*y); nonpositive for a state.
    '''
    rng = np.random.default_rng(seed)
    d = phi.algebra.dim
    g = phi.gram
    worst = -np.inf
    for _ in range(samples):
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        xy = abs(np.vdot(y, g @ x)) ** 2
        xx = np.vdot(x, g @ x).real
        yy = np.vdot(y, g @ y).real
        worst = max(worst, (xy - xx * yy) / max(xx * yy, 1.))
    return float(worst)
