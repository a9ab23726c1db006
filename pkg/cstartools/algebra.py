'''algebra

Collection of functions to build *-subalgebras of M_N(C) from generators
and to analyse them: center, minimal central projections, the block
decomposition into matrix algebras, commutants and the double commutant.

An algebra is stored through a Hilbert-Schmidt orthonormal basis. After
`block_decompose` it additionally carries one `BlockInfo` per summand
M_n(C), listed in the order (block size, rank of the central projection,
projection entries descending).

'''

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from scipy import linalg

from . import matcore as mc

logger = logging.getLogger(__name__)


@dataclass
class BlockInfo:
    ''' One summand M_n(C) of a decomposed algebra.

    Attributes
    ----------
    block_size : int
        n, the size of the matrix block.
    multiplicity : int
        m, how often the block is repeated in the ambient representation.
    central_projection : array
        The minimal central projection z of the block; rank(z) = n m.
    '''
    block_size: int
    multiplicity: int
    central_projection: np.ndarray

    @property
    def rank(self):
        return self.block_size * self.multiplicity


@dataclass
class FDCAlgebra:
    ''' A *-subalgebra of M_N(C).

    Attributes
    ----------
    ambient_dim : int
        N.
    basis : array
        Hilbert-Schmidt orthonormal basis, shape (d, N, N).
    unital : bool
        True if the identity I_N lies in the span.
    generators : array or None
        Matrices generating the algebra as an algebra. Commutation
        problems only need these, which is much cheaper than the basis.
    blocks : list of BlockInfo or None
        Filled by `block_decompose`.
    '''
    ambient_dim: int
    basis: np.ndarray
    unital: bool
    generators: np.ndarray = None
    blocks: list = field(default=None, repr=False)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def commuting_set(self):
        return self.basis if self.generators is None else self.generators


def _check_generators(ambient_dim, matrices, operation):
    out = []
    for g in matrices:
        g = mc.as_square(g, operation)
        if g.shape[0] != ambient_dim:
            raise mc.NotSquareError(operation, 'generator of shape '
                                    + str(g.shape) + ' is not '
                                    + str(ambient_dim) + ' x '
                                    + str(ambient_dim))
        out.append(g)
    return out


def _extend(basis, candidates, tol, n):
    ''' Add the part of `candidates` outside span(`basis`) to the
    orthonormal `basis`.
    '''
    if len(candidates) == 0:
        return basis
    candidates = np.asarray(candidates)
    if len(basis):
        coeffs, _ = mc.project_onto(basis, candidates)
        rest = candidates - np.einsum('md,dij->mij', coeffs, basis)
    else:
        rest = candidates
    scale = max(1., max(np.linalg.norm(c) for c in candidates))
    flat = rest.reshape(len(rest), -1).T
    u, s, _ = linalg.svd(flat, full_matrices=False)
    keep = s > tol.effective(scale, n)
    if not keep.any():
        return basis
    new = mc.fix_phase(u[:, keep].T.reshape(-1, n, n))
    return np.concatenate([basis, new]) if len(basis) else new


def generate(ambient_dim, generators, unital=True, tol=None):
    ''' Smallest *-subalgebra of M_N(C) containing `generators` (and the
    identity if `unital`).

    The span of the generators and their adjoints is multiplied by the
    generating set until one full round adds no dimension; a last round of
    pairwise basis products certifies closure.

    Parameters
    ----------
    ambient_dim : int
        N.
    generators : sequence of arrays
        N x N matrices.
    unital : bool
        Whether to include I_N. Default is True.
    tol : Tolerance or None

    Returns
    -------
    A : FDCAlgebra
    '''
    tol = mc.get_tol(tol)
    n = int(ambient_dim)
    gens = _check_generators(n, generators, 'generate')
    gens = gens + [g.conj().T for g in gens]
    if unital:
        gens = [np.eye(n, dtype=complex)] + gens
    if len(gens) == 0:
        return FDCAlgebra(n, np.zeros((0, n, n), dtype=complex), False)
    basis = _extend(np.zeros((0, n, n), dtype=complex), gens, tol, n)
    rounds = 0
    while True:
        rounds += 1
        products = [b @ g for b in basis for g in gens]
        grown = _extend(basis, products, tol, n)
        if len(grown) > n * n:
            raise mc.CertificationError('generate', 'dimension '
                                        + str(len(grown)) + ' exceeds N^2 = '
                                        + str(n * n))
        if len(grown) == len(basis):
            break
        basis = grown
    logger.debug('generated algebra of dimension %d in %d rounds',
                 len(basis), rounds)
    A = FDCAlgebra(n, basis, _contains_identity(basis, n, tol),
                   np.array(gens))
    certify_closure(A, tol, 'generate', exhaustive=True)
    return A


def _contains_identity(basis, n, tol):
    if len(basis) == 0:
        return False
    _, res = mc.project_onto(basis, [np.eye(n)])
    return bool(res[0] <= tol.effective(np.sqrt(n), n))


def certify_closure(A, tol=None, operation='certify_closure',
                    exhaustive=False, samples=3, seed=0):
    ''' Check that span(A.basis) is closed under products and adjoints.
    With `exhaustive` all pairwise basis products are tested, otherwise
    products of `samples` random pairs of elements.
    '''
    tol = mc.get_tol(tol)
    n = A.ambient_dim
    if A.dim == 0:
        return
    if exhaustive:
        left = A.basis
        right = A.basis
        prods = np.einsum('aij,bjk->abik', left, right).reshape(-1, n, n)
    else:
        rng = np.random.default_rng(seed)
        c = (rng.standard_normal((2 * samples, A.dim))
             + 1j * rng.standard_normal((2 * samples, A.dim)))
        elems = np.einsum('md,dij->mij', c, A.basis)
        prods = np.array([elems[2 * k] @ elems[2 * k + 1]
                          for k in range(samples)])
        left = elems
    adjs = np.conj(np.transpose(left, (0, 2, 1)))
    scale = max(1., max(np.linalg.norm(p) for p in prods))
    _, res = mc.project_onto(A.basis, np.concatenate([prods, adjs]))
    worst = float(res.max())
    if worst > tol.effective(scale, n):
        raise mc.CertificationError(operation, 'span is not closed under'
                                    + ' products and adjoints (residual '
                                    + str(worst) + ')')


def span_algebra(ambient_dim, matrices, unital=None, tol=None, certify=True,
                 generators=None, seed=0):
    ''' Algebra whose underlying space is the span of `matrices`, which must
    already be closed under products and adjoints.

    Parameters
    ----------
    ambient_dim : int
        N.
    matrices : sequence of arrays
        Spanning set.
    unital : bool or None
        If None, decided by checking whether I_N lies in the span.
    certify : bool
        If True, closure is certified on random products.
    generators : sequence of arrays or None
        Algebra generators, kept for commutation problems.
    seed : int
        Seed of the random certification.

    Returns
    -------
    A : FDCAlgebra
    '''
    tol = mc.get_tol(tol)
    n = int(ambient_dim)
    mats = _check_generators(n, matrices, 'span_algebra')
    basis = mc.orthonormal_span(mats, tol, dim=n)
    if unital is None:
        unital = _contains_identity(basis, n, tol)
    gens = None if generators is None else np.array(generators,
                                                     dtype=complex)
    A = FDCAlgebra(n, basis, bool(unital), gens)
    if certify:
        certify_closure(A, tol, 'span_algebra', seed=seed)
    return A


def standard_algebra(sizes, multiplicities=None):
    ''' The algebra of block-diagonal matrices
    M_{n_1} (x) I_{m_1} + ... + M_{n_r} (x) I_{m_r} inside M_N with
    N = sum n_i m_i, with the (normalized) matrix units as basis.
    '''
    sizes = [int(s) for s in sizes]
    if multiplicities is None:
        multiplicities = [1] * len(sizes)
    mults = [int(m) for m in multiplicities]
    n = sum(s * m for s, m in zip(sizes, mults))
    basis = []
    offset = 0
    for s, m in zip(sizes, mults):
        for j in range(s):
            for k in range(s):
                e = np.zeros((s, s), dtype=complex)
                e[j, k] = 1.
                b = np.zeros((n, n), dtype=complex)
                b[offset:offset + s * m, offset:offset + s * m] = \
                    np.kron(e, np.eye(m)) / np.sqrt(m)
                basis.append(b)
        offset += s * m
    return FDCAlgebra(n, np.array(basis), True, np.array(basis))


def full_algebra(n):
    '''M_n(C) itself.'''
    return standard_algebra([n])


def diagonal_algebra(n):
    '''The commutative algebra of diagonal n x n matrices.'''
    return standard_algebra([1] * n)


def coefficients(A, x):
    '''Coefficients c_k = <x, b_k> of `x` on the basis of `A`.'''
    coeffs, _ = mc.project_onto(A.basis, [np.asarray(x, dtype=complex)])
    return coeffs[0]


def element(A, c):
    '''The element sum_k c_k b_k of `A`.'''
    return np.einsum('d,dij->ij', np.asarray(c, dtype=complex), A.basis)


def membership_residual(A, x):
    _, res = mc.project_onto(A.basis, [np.asarray(x, dtype=complex)])
    return float(res[0])


def contains(A, x, tol=None):
    '''True if `x` lies in the span of `A` within tolerance.'''
    tol = mc.get_tol(tol)
    x = np.asarray(x, dtype=complex)
    return membership_residual(A, x) <= tol.effective(
        np.linalg.norm(x), A.ambient_dim)


def random_element(A, seed=0):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(A.dim) + 1j * rng.standard_normal(A.dim)
    return element(A, c)


def _null_combinations(constraint, size, tol, scale, n):
    ''' Intersect null spaces: `constraint(X)` maps an orthonormal set of
    coefficient vectors X (size x k) to a list of matrices, each of shape
    (rows, k). Returns an orthonormal basis of the common null space.
    '''
    x = np.eye(size, dtype=complex)
    for k_mat in constraint:
        if x.shape[1] == 0:
            break
        kx = k_mat(x)
        _, s, vh = linalg.svd(kx, full_matrices=True)
        thr = tol.effective(scale, n)
        rank = int(np.sum(s > thr))
        x = x @ vh[rank:].conj().T
    return x


def intertwiner_space(first, second, tol=None):
    ''' Basis of {T : T s1 = s2 T for all pairs (s1, s2)}.

    Parameters
    ----------
    first : sequence of arrays
        Matrices s1 of size n1 x n1.
    second : sequence of arrays
        Matrices s2 of size n2 x n2, paired with `first`.

    Returns
    -------
    space : array
        Shape (k, n2, n1), orthonormal in the Hilbert-Schmidt inner product.
    '''
    tol = mc.get_tol(tol)
    first = [np.asarray(s, dtype=complex) for s in first]
    second = [np.asarray(s, dtype=complex) for s in second]
    n1 = first[0].shape[0] if first else 0
    n2 = second[0].shape[0] if second else 0
    scale = max([1.] + [mc.op_norm(s) for s in first + second])

    def constraint(s1, s2):
        # row-major vec: vec(T s1) = (I (x) s1^T) vec(T)
        k = np.kron(np.eye(n2), s1.T) - np.kron(s2, np.eye(n1))
        return lambda x: k @ x

    x = _null_combinations([constraint(s1, s2)
                            for s1, s2 in zip(first, second)],
                           n1 * n2, tol, scale, max(n1, n2))
    space = x.T.reshape(-1, n2, n1)
    return mc.fix_phase(space) if len(space) else space


def commutant(S, ambient_dim, tol=None):
    ''' The commutant {T in M_N : T s = s T for all s in S}.

    Parameters
    ----------
    S : sequence of arrays
        N x N matrices.
    ambient_dim : int
        N.

    Returns
    -------
    C : FDCAlgebra
        The commutant; *-closed whenever S is.
    '''
    tol = mc.get_tol(tol)
    n = int(ambient_dim)
    S = _check_generators(n, S, 'commutant')
    if len(S) == 0:
        return full_algebra(n)
    space = intertwiner_space(S, S, tol)
    return FDCAlgebra(n, space, True)


def center(A, tol=None):
    ''' Center Z(A) = {z in A : z b = b z for all b in A}, solved as a
    homogeneous linear system on the coefficients of A.

    Returns
    -------
    Z : FDCAlgebra
    '''
    tol = mc.get_tol(tol)
    n = A.ambient_dim
    if A.dim == 0:
        return A
    scale = max([1.] + [mc.op_norm(g) for g in A.commuting_set])

    def constraint(g):
        comms = np.einsum('dij,jk->dik', A.basis, g) \
            - np.einsum('ij,djk->dik', g, A.basis)
        k = comms.reshape(A.dim, -1).T
        return lambda x: k @ x

    x = _null_combinations([constraint(g) for g in A.commuting_set],
                           A.dim, tol, scale, n)
    elems = np.einsum('dk,dij->kij', x, A.basis)
    basis = mc.orthonormal_span(list(elems), tol, dim=n)
    return FDCAlgebra(n, basis, A.unital)


def hermitian_basis(matrices, tol=None):
    ''' Real-orthonormal basis of self-adjoint matrices spanning (over C)
    the same space as the *-closed span of `matrices`.
    '''
    tol = mc.get_tol(tol)
    herm = []
    for m in matrices:
        herm.append((m + m.conj().T) / 2.)
        herm.append((m - m.conj().T) / 2j)
    n = matrices[0].shape[0]
    flat = np.array([np.concatenate([h.real.ravel(), h.imag.ravel()])
                     for h in herm]).T
    u, s, _ = linalg.svd(flat, full_matrices=False)
    keep = s > tol.effective(1., n)
    vecs = u[:, keep].T
    out = vecs[:, :n * n] + 1j * vecs[:, n * n:]
    return out.reshape(-1, n, n)


def _block_key(block):
    z = np.round(block.central_projection.real, 8).ravel()
    return (block.block_size, block.rank, tuple(-z))


def block_decompose(A, seed=0, retries=8, tol=None):
    ''' Decompose A into matrix blocks via its minimal central projections.

    A generic self-adjoint element of the center (random real combination
    of a self-adjoint center basis) is diagonalized; its spectral
    projections lying in A are the minimal central projections. The draw
    is repeated with fresh randomness until the eigenvalues are certified
    distinct and their number equals dim Z(A).

    Parameters
    ----------
    A : FDCAlgebra
    seed : int
        Seed of the first draw, later draws use seed + 1, seed + 2, ...
    retries : int
        Number of draws before giving up. Default is 8.
    tol : Tolerance or None

    Returns
    -------
    blocks : list of BlockInfo
        Also stored in `A.blocks`.
    '''
    tol = mc.get_tol(tol)
    n = A.ambient_dim
    logger.info('decomposing algebra of dimension %d in M_%d', A.dim, n)
    Z = center(A, tol)
    r = Z.dim
    if r == 0:
        A.blocks = []
        return A.blocks
    herm = hermitian_basis(list(Z.basis), tol)
    eps = tol.effective(1., n)
    for attempt in range(retries):
        rng = np.random.default_rng(seed + attempt)
        h = np.einsum('k,kij->ij', rng.standard_normal(len(herm)), herm)
        lam, u = linalg.eigh((h + h.conj().T) / 2.)
        groups = mc.clusters(lam, eps)
        means = np.array([lam[g].mean() for g in groups])
        if len(means) > 1 and np.min(np.diff(np.sort(means))) < 1e3 * eps:
            logger.warning('central eigenvalues not separated, retrying'
                           + ' (attempt %d)', attempt + 1)
            continue
        projections = []
        outside = 0
        for g in groups:
            p = u[:, g] @ u[:, g].conj().T
            if contains(A, p, tol):
                projections.append(p)
            else:
                outside += 1
        if len(projections) != r or outside > 1:
            logger.warning('found %d central projections for a center of'
                           + ' dimension %d, retrying (attempt %d)',
                           len(projections), r, attempt + 1)
            continue
        blocks = []
        for p in projections:
            rank = mc.numerical_rank(p, tol, gap=1e3,
                                     operation='block_decompose')
            compressed = np.einsum('ij,djk,kl->dil', p, A.basis, p)
            dim_block = mc.numerical_rank(
                compressed.reshape(A.dim, -1), tol,
                operation='block_decompose')
            size = int(round(np.sqrt(dim_block)))
            if size * size != dim_block or rank % size != 0:
                raise mc.CertificationError(
                    'block_decompose', 'block of dimension '
                    + str(dim_block) + ' and rank ' + str(rank)
                    + ' is not a matrix block')
            blocks.append(BlockInfo(size, rank // size, p))
        blocks.sort(key=_block_key)
        total = sum(b.block_size ** 2 for b in blocks)
        if total != A.dim:
            raise mc.CertificationError('block_decompose', 'sum of squared'
                                        + ' block sizes ' + str(total)
                                        + ' != dim(A) = ' + str(A.dim))
        A.blocks = blocks
        logger.info('found blocks %s', [(b.block_size, b.multiplicity)
                                         for b in blocks])
        return blocks
    raise mc.RetryBudgetError('block_decompose', 'no generic central element'
                              + ' found in ' + str(retries) + ' draws')


def decomposed(A, seed=0, tol=None):
    '''Return `A` after making sure its blocks are computed.'''
    if A.blocks is None:
        block_decompose(A, seed=seed, tol=tol)
    return A


def unit(A, tol=None):
    '''The unit of A, i.e. the sum of its minimal central projections.'''
    A = decomposed(A, tol=tol)
    n = A.ambient_dim
    return sum((b.central_projection for b in A.blocks),
               np.zeros((n, n), dtype=complex))


def double_commutant_check(A, tol=None):
    ''' Finite-dimensional double commutant theorem: A'' = A.

    Returns
    -------
    holds : bool
        True iff dim A'' = dim A and A lies in A'' within tolerance.

    Raises
    ------
    NotUnitalError
        For non-unital A.
    '''
    tol = mc.get_tol(tol)
    if not A.unital:
        raise mc.NotUnitalError('double_commutant_check', 'the double'
                                + ' commutant theorem needs a unital algebra')
    n = A.ambient_dim
    first = commutant(list(A.commuting_set), n, tol)
    second = commutant(list(first.basis), n, tol)
    _, res = mc.project_onto(second.basis, A.basis)
    worst = float(res.max()) if len(res) else 0.
    logger.debug("dim A = %d, dim A' = %d, dim A'' = %d, residual %g",
                 A.dim, first.dim, second.dim, worst)
    return bool(second.dim == A.dim and worst <= tol.effective(1., n))


def commutant_duality_check(A, tol=None):
    ''' True iff dim A' equals the sum of squared multiplicities of A plus
    (N - rank 1_A)^2, the full matrix algebra on the complement of the unit.
    '''
    tol = mc.get_tol(tol)
    A = decomposed(A, tol=tol)
    n = A.ambient_dim
    first = commutant(list(A.commuting_set), n, tol)
    complement = n - mc.numerical_rank(unit(A, tol), tol)
    expected = sum(b.multiplicity ** 2 for b in A.blocks) + complement ** 2
    logger.debug("dim A' = %d, expected %d", first.dim, expected)
    return first.dim == expected


def _range_basis(p, tol):
    lam, u = linalg.eigh((p + p.conj().T) / 2.)
    return u[:, lam > 0.5]


def minimal_projections(A, block=0, seed=0, retries=8, tol=None):
    ''' Orthogonal minimal projections p_1, ..., p_n of A summing to the
    central projection of block `block`.

    They are the spectral projections of a generic self-adjoint element of
    z A z restricted to the range of z, sorted by decreasing eigenvalue.

    Returns
    -------
    projections : array
        Shape (n, N, N).
    '''
    tol = mc.get_tol(tol)
    A = decomposed(A, tol=tol)
    info = A.blocks[block]
    z = info.central_projection
    if info.block_size == 1:
        return np.array([z])
    v = _range_basis(z, tol)
    compressed = np.einsum('ij,djk,kl->dil', z, A.basis, z)
    for attempt in range(retries):
        rng = np.random.default_rng(seed + attempt)
        c = rng.standard_normal(A.dim) + 1j * rng.standard_normal(A.dim)
        x = np.einsum('d,dij->ij', c, compressed)
        h = v.conj().T @ (x + x.conj().T) @ v
        lam, u = linalg.eigh((h + h.conj().T) / 2.)
        groups = mc.clusters(lam[::-1], tol.effective(mc.op_norm(h),
                                                      A.ambient_dim))
        sizes = [len(g) for g in groups]
        if len(groups) == info.block_size and \
           all(s == info.multiplicity for s in sizes):
            u = u[:, ::-1]
            return np.array([v @ u[:, g] @ u[:, g].conj().T @ v.conj().T
                             for g in groups])
        logger.warning('degenerate element in block %d, retrying', block)
    raise mc.RetryBudgetError('minimal_projections', 'no generic element'
                              + ' found in ' + str(retries) + ' draws')


def _polar_part(w, tol):
    u, s, vh = linalg.svd(w)
    keep = s > tol.effective(s[0] if len(s) else 0., w.shape[0])
    return u[:, keep] @ vh[keep]


def matrix_units(A, block=0, seed=0, tol=None):
    ''' Explicit matrix units e_jk of block `block`, built from the polar
    decomposition of p_1 x p_k for minimal projections p_1, ..., p_n and a
    generic element x of A.

    Returns
    -------
    units : array
        Shape (n, n, N, N) with e_jk e_lm = delta_kl e_jm, e_jk* = e_kj and
        sum_j e_jj = z.
    '''
    tol = mc.get_tol(tol)
    ps = minimal_projections(A, block, seed, tol=tol)
    size = len(ps)
    x = random_element(A, seed)
    first_row = [ps[0]] + [_polar_part(ps[0] @ x @ ps[k], tol)
                           for k in range(1, size)]
    units = np.zeros((size, size) + ps[0].shape, dtype=complex)
    for j in range(size):
        for k in range(size):
            units[j, k] = first_row[j].conj().T @ first_row[k]
    return units


def unitize(A, tol=None):
    ''' Unitisation A+ = A (+) C realized in M_{N+1} as
    (a, lambda) -> diag(a, 0) + lambda I.
    '''
    tol = mc.get_tol(tol)
    n = A.ambient_dim
    mats = [mc.direct_sum(b, np.zeros((1, 1))) for b in A.basis]
    mats.append(np.eye(n + 1, dtype=complex))
    return span_algebra(n + 1, mats, unital=True, tol=tol, generators=mats)


def block_table(blocks):
    '''Tabulate blocks as a pandas DataFrame.'''
    return pd.DataFrame({'block_size': [b.block_size for b in blocks],
                         'multiplicity': [b.multiplicity for b in blocks],
                         'rank': [b.rank for b in blocks]},
                        index=pd.RangeIndex(len(blocks), name='block'))


def blocks_summary(blocks):
    return [{'block_size': b.block_size, 'multiplicity': b.multiplicity,
             'rank': b.rank} for b in blocks]


def algebra_to_json(A):
    out = {'ambient_dim': A.ambient_dim, 'unital': A.unital,
           'basis': [mc.matrix_to_json(b) for b in A.basis]}
    if A.blocks is not None:
        out['blocks'] = blocks_summary(A.blocks)
    return out


def algebra_from_json(obj, tol=None):
    ''' Build an algebra from JSON. Accepted forms:
        {"ambient_dim": N, "generators": [...], "unital": true}
        {"ambient_dim": N, "basis": [...]}
        {"standard": {"sizes": [...], "multiplicities": [...]}}
    '''
    if 'standard' in obj:
        std = obj['standard']
        return standard_algebra(std['sizes'], std.get('multiplicities'))
    if 'ambient_dim' not in obj:
        raise mc.OperationError('algebra_from_json', 'missing field'
                                + ' `ambient_dim`')
    n = int(obj['ambient_dim'])
    if 'generators' in obj:
        gens = [mc.matrix_from_json(g) for g in obj['generators']]
        return generate(n, gens, bool(obj.get('unital', True)), tol)
    if 'basis' in obj:
        mats = [mc.matrix_from_json(b) for b in obj['basis']]
        return span_algebra(n, mats, tol=tol)
    raise mc.OperationError('algebra_from_json', 'need `generators` or'
                            + ' `basis`')


def structure_constants(A):
    '''C[i, j, k] = <b_i b_j, b_k>.'''
    return np.einsum('iab,jbc,kac->ijk', A.basis, A.basis, A.basis.conj(),
                     optimize=True)


def adjoint_coefficients(A):
    '''adj[i, k] = <b_i*, b_k>.'''
    return np.einsum('iba,kab->ik', A.basis.conj(), A.basis.conj())
