'''groups

Collection of functions for finite groups given by multiplication tables,
their group *-algebras with the convolution product, the left regular
representation, the decomposition of C*(G) into matrix blocks, and the
dual group and Fourier transform of finite abelian groups.

Group elements are the indices 0, ..., |G| - 1 with the identity at index
0. A table is read as table[s][t] = s t.

'''

import logging
import itertools
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg
from sympy.combinatorics.named_groups import SymmetricGroup, DihedralGroup

from . import matcore as mc
from . import algebra as alg

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    ''' A finite group.

    Attributes
    ----------
    table : array
        Integer array of shape (n, n) with table[s, t] = s t.
    inverse : array
        inverse[s] = s^-1.
    name : str
    '''
    table: np.ndarray
    inverse: np.ndarray
    name: str = ''

    @property
    def order(self):
        return len(self.table)

    @property
    def identity(self):
        return 0

    def mul(self, s, t):
        return int(self.table[s, t])


@dataclass(eq=False)
class GroupAlgebraElement:
    '''A function f on G, i.e. the element sum_s f(s) delta_s of C*(G).'''
    group: FiniteGroup
    coeffs: np.ndarray


@dataclass(eq=False)
class Character:
    '''A homomorphism G -> T, stored by its values.'''
    group: FiniteGroup
    values: np.ndarray


def from_table(table, name=''):
    ''' Certify a multiplication table and wrap it as a FiniteGroup.

    Parameters
    ----------
    table : array_like
        Square array of element indices, identity at index 0.
    name : str

    Raises
    ------
    InvalidTableError
        If the table is not square, has entries out of range, index 0 is
        not a two-sided identity, some element has no inverse, or the
        product is not associative.
    '''
    try:
        t = np.array(table, dtype=int)
    except (TypeError, ValueError) as err:
        raise mc.InvalidTableError('from_table', 'table is not an integer'
                                   + ' array') from err
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
        raise mc.InvalidTableError('from_table', 'table must be square, got'
                                   + ' shape ' + str(t.shape))
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise mc.InvalidTableError('from_table', 'entries must lie in'
                                   + ' [0, ' + str(n) + ')')
    idx = np.arange(n)
    if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
        raise mc.InvalidTableError('from_table', 'index 0 is not a two-sided'
                                   + ' identity')
    left, right = np.nonzero(t == 0)
    inverse = np.full(n, -1)
    inverse[left] = right
    if (inverse < 0).any() or not np.array_equal(t[inverse, idx],
                                                 np.zeros(n, dtype=int)):
        raise mc.InvalidTableError('from_table', 'not every element has a'
                                   + ' two-sided inverse')
    # (st)u == s(tu) for all triples
    if not np.array_equal(t[t[:, :, None], idx[None, None, :]],
                          t[idx[:, None, None], t[None, :, :]]):
        raise mc.InvalidTableError('from_table', 'product is not'
                                   + ' associative')
    return FiniteGroup(t, inverse, name)


def from_sympy(pgroup, name=''):
    '''Table of a sympy permutation group, elements sorted by array form.'''
    elements = sorted(pgroup.generate(), key=lambda p: p.array_form)
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=int)
    for (i, a), (j, b) in itertools.product(enumerate(elements), repeat=2):
        table[i, j] = index[tuple((a * b).array_form)]
    return from_table(table, name)


def from_matrices(generators, name='', decimals=8):
    ''' Table of the finite matrix group generated by `generators`,
    elements enumerated breadth first starting at the identity.
    '''
    gens = [np.asarray(g, dtype=complex) for g in generators]
    n = gens[0].shape[0]

    def key(m):
        return tuple(np.round(m, decimals).ravel().tolist())

    elements = [np.eye(n, dtype=complex)]
    index = {key(elements[0]): 0}
    k = 0
    while k < len(elements):
        for g in gens:
            m = elements[k] @ g
            if key(m) not in index:
                index[key(m)] = len(elements)
                elements.append(m)
        k += 1
    size = len(elements)
    table = np.zeros((size, size), dtype=int)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[key(a @ b)]
    return from_table(table, name)


def trivial():
    return from_table([[0]], '1')


def cyclic(n):
    '''Z/n with table[a, b] = a + b mod n.'''
    if n < 1:
        raise mc.OperationError('cyclic', '`n` must be >= 1, got ' + str(n))
    idx = np.arange(n)
    return from_table((idx[:, None] + idx[None, :]) % n, 'Z' + str(n))


def direct_product(G, H):
    ''' G x H with (g, h) stored at index g |H| + h. '''
    m = H.order
    gi, hi = np.divmod(np.arange(G.order * m), m)
    table = G.table[gi[:, None], gi[None, :]] * m \
        + H.table[hi[:, None], hi[None, :]]
    return from_table(table, G.name + 'x' + H.name)


def symmetric(n):
    '''The symmetric group S_n for n <= 5.'''
    if n < 1 or n > 5:
        raise mc.OperationError('symmetric', '`n` must lie in 1..5, got '
                                + str(n))
    if n == 1:
        return trivial()
    return from_sympy(SymmetricGroup(n), 'S' + str(n))


def dihedral(n):
    '''The dihedral group of order 2 n, the symmetries of a regular n-gon.'''
    if n < 1:
        raise mc.OperationError('dihedral', '`n` must be >= 1, got '
                                + str(n))
    return from_sympy(DihedralGroup(n), 'D' + str(n))


def quaternion():
    '''The quaternion group Q8 generated by i and j in SU(2).'''
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]])
    return from_matrices([i, j], 'Q8')


def from_name(name):
    ''' Built-in group by name: '1', 'Z<n>', 'S<n>', 'D<n>' (order 2n),
    'Q8', and direct products joined by 'x' such as 'Z2xZ2'.
    '''
    parts = str(name).split('x')
    if len(parts) > 1:
        G = from_name(parts[0])
        for p in parts[1:]:
            G = direct_product(G, from_name(p))
        return G
    name = parts[0]
    if name in ('1', 'trivial'):
        return trivial()
    if name == 'Q8':
        return quaternion()
    builders = {'Z': cyclic, 'S': symmetric, 'D': dihedral}
    if len(name) > 1 and name[0] in builders and name[1:].isdigit():
        return builders[name[0]](int(name[1:]))
    raise mc.OperationError('from_name', 'unknown group `' + name + '`')


def group_to_json(G):
    return {'order': G.order, 'table': G.table.tolist()}


def group_from_json(obj):
    '''Parse `{"order": n, "table": [[...], ...]}`.'''
    if 'table' not in obj:
        raise mc.InvalidTableError('group_from_json', 'missing field'
                                   + ' `table`')
    G = from_table(obj['table'], obj.get('name', ''))
    if 'order' in obj and int(obj['order']) != G.order:
        raise mc.InvalidTableError('group_from_json', '`order` '
                                   + str(obj['order']) + ' does not match'
                                   + ' the table size ' + str(G.order))
    return G


def is_abelian(G):
    return bool(np.array_equal(G.table, G.table.T))


def conjugacy_classes(G):
    ''' Conjugacy classes as sorted index lists, ordered by their smallest
    element (so the class of the identity comes first).
    '''
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for s in range(G.order):
        if seen[s]:
            continue
        g = np.arange(G.order)
        conj = np.unique(G.table[G.table[g, s], G.inverse[g]])
        seen[conj] = True
        classes.append(conj.tolist())
    return classes


def generated_subgroup(G, elements):
    '''Smallest subgroup containing `elements`, as a sorted tuple.'''
    current = set([0]) | set(int(e) for e in elements)
    while True:
        grown = current | set(int(G.table[a, b]) for a in current
                              for b in current)
        if grown == current:
            return tuple(sorted(current))
        current = grown


def is_subgroup(G, H):
    ''' True if the index set `H` contains the identity and is closed under
    products and inverses.
    '''
    H = set(int(h) for h in H)
    if 0 not in H or not H <= set(range(G.order)):
        return False
    closed = all(int(G.table[a, b]) in H for a in H for b in H)
    return closed and all(int(G.inverse[h]) in H for h in H)


def check_subgroup(G, H, operation='check_subgroup'):
    if not is_subgroup(G, H):
        raise mc.NotSubgroupError(operation, str(sorted(H)) + ' is not a'
                                  + ' subgroup of ' + (G.name or 'G'))
    return tuple(sorted(int(h) for h in H))


def subgroups(G):
    ''' All subgroups of G sorted by (order, elements): joins of cyclic
    subgroups until no new subgroup appears.
    '''
    found = set(generated_subgroup(G, [s]) for s in range(G.order))
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in found:
                c = generated_subgroup(G, a + b)
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return sorted(found, key=lambda h: (len(h), h))


def left_cosets(G, H):
    ''' Left cosets sH with the minimal index as representative.

    Returns
    -------
    representatives : list of int
    cosets : list of lists of int
    labels : array
        labels[s] = number of the coset containing s.
    '''
    H = check_subgroup(G, H, 'left_cosets')
    labels = np.full(G.order, -1)
    reps = []
    cosets = []
    for s in range(G.order):
        if labels[s] >= 0:
            continue
        coset = sorted(int(G.table[s, h]) for h in H)
        labels[coset] = len(reps)
        reps.append(s)
        cosets.append(coset)
    return reps, cosets, labels


def delta(G, s):
    '''The point mass delta_s.'''
    c = np.zeros(G.order, dtype=complex)
    c[s] = 1.
    return GroupAlgebraElement(G, c)


def element(G, coeffs):
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != (G.order,):
        raise mc.OperationError('element', 'need ' + str(G.order)
                                + ' coefficients, got ' + str(c.shape))
    return GroupAlgebraElement(G, c)


def same_group(G, H):
    return G is H or np.array_equal(G.table, H.table)


def convolve(f, g):
    ''' Convolution f*g(s) = sum_t f(st) g(t^-1), computed as
    (f*g)(u) = sum over ab = u of f(a) g(b).

    Raises
    ------
    GroupMismatchError
        If `f` and `g` live on different groups.
    '''
    if not same_group(f.group, g.group):
        raise mc.GroupMismatchError('convolve', 'elements live on different'
                                    + ' groups')
    G = f.group
    out = np.zeros(G.order, dtype=complex)
    np.add.at(out, G.table.ravel(), np.outer(f.coeffs, g.coeffs).ravel())
    return GroupAlgebraElement(G, out)


def star(f):
    '''Involution f*(s) = conj(f(s^-1)).'''
    return GroupAlgebraElement(f.group, np.conj(f.coeffs[f.group.inverse]))


def left_regular(G):
    ''' Permutation matrices lambda_s e_t = e_{st}, shape (n, n, n). '''
    n = G.order
    lam = np.zeros((n, n, n), dtype=complex)
    s, t = np.meshgrid(np.arange(n), np.arange(n), indexing='ij')
    lam[s, G.table[s, t], t] = 1.
    return lam


def to_matrix(f):
    '''Image sum_s f(s) lambda_s of `f` in the regular representation.'''
    return np.einsum('s,sij->ij', f.coeffs, left_regular(f.group))


def regular_representation(G, tol=None):
    ''' C*(G) realized as span{lambda_s} inside M_|G|.

    The normalized permutation matrices lambda_s / sqrt(|G|) are already
    Hilbert-Schmidt orthonormal and form the stored basis, so basis
    coefficients are sqrt(|G|) f(s).

    Returns
    -------
    A : FDCAlgebra
    '''
    lam = left_regular(G)
    A = alg.FDCAlgebra(G.order, lam / np.sqrt(G.order), True, lam)
    alg.certify_closure(A, tol, 'regular_representation')
    return A


def decompose_group_algebra(G, seed=0, tol=None):
    ''' Block decomposition of C*(G), cross-checked against the number of
    conjugacy classes and sum n_i^2 = |G|.

    Returns
    -------
    blocks : list of BlockInfo
    '''
    A = regular_representation(G, tol)
    blocks = alg.block_decompose(A, seed=seed, tol=tol)
    classes = len(conjugacy_classes(G))
    if len(blocks) != classes:
        raise mc.CertificationError('decompose_group_algebra', str(len(blocks))
                                    + ' blocks but ' + str(classes)
                                    + ' conjugacy classes')
    total = sum(b.block_size ** 2 for b in blocks)
    if total != G.order:
        raise mc.CertificationError('decompose_group_algebra', 'sum n_i^2 = '
                                    + str(total) + ' != |G| = '
                                    + str(G.order))
    logger.info('C*(%s) has blocks %s', G.name or 'G',
                [b.block_size for b in blocks])
    return blocks


def _character_key(values):
    angles = np.mod(np.angle(values), 2 * np.pi)
    angles[np.isclose(angles, 2 * np.pi, atol=1e-8)] = 0.
    return tuple(np.round(angles, 8))


def dual_group(G, seed=0, retries=8, tol=None):
    ''' The characters of a finite abelian group, read off the simultaneous
    eigenvectors of the lambda_s. These are the eigenvectors of the generic
    self-adjoint combination
        sum_s c_s (lambda_s + lambda_s*) + i d_s (lambda_s - lambda_s*)
    whose eigenvalues are all simple.

    Returns
    -------
    characters : list of Character
        Sorted by the angles of their values; the trivial character first.

    Raises
    ------
    NotAbelianError
    '''
    tol = mc.get_tol(tol)
    if not is_abelian(G):
        raise mc.NotAbelianError('dual_group', (G.name or 'G')
                                 + ' is not abelian')
    n = G.order
    lam = left_regular(G)
    eps = tol.effective(1., n)
    for attempt in range(retries):
        rng = np.random.default_rng(seed + attempt)
        c = rng.standard_normal(n)
        d = rng.standard_normal(n)
        adj = np.conj(np.transpose(lam, (0, 2, 1)))
        h = np.einsum('s,sij->ij', c, lam + adj) \
            + 1j * np.einsum('s,sij->ij', d, lam - adj)
        ev, u = linalg.eigh((h + h.conj().T) / 2.)
        if n > 1 and np.min(np.diff(ev)) < 1e3 * eps:
            logger.warning('degenerate combination, retrying (attempt %d)',
                           attempt + 1)
            continue
        values = np.einsum('ik,sij,jk->ks', u.conj(), lam, u)
        break
    else:
        raise mc.RetryBudgetError('dual_group', 'no generic combination'
                                  + ' found in ' + str(retries) + ' draws')
    # lambda_s u = chi(s) u and lambda_s is unitary
    values = values / np.abs(values)
    order = sorted(range(n), key=lambda k: _character_key(values[k]))
    chars = [Character(G, values[k]) for k in order]
    _certify_dual(G, chars, eps)
    return chars


def _find_character(chars, values, eps):
    for k, c in enumerate(chars):
        if np.max(np.abs(c.values - values)) <= eps:
            return k
    return None


def _certify_dual(G, chars, eps):
    for c in chars:
        defect = np.max(np.abs(c.values[G.table]
                               - np.outer(c.values, c.values)))
        if defect > eps:
            raise mc.CertificationError('dual_group', 'character is not'
                                        + ' multiplicative (defect '
                                        + str(defect) + ')')
    for a in chars:
        if _find_character(chars, np.conj(a.values), eps) is None:
            raise mc.CertificationError('dual_group', 'dual group not closed'
                                        + ' under conjugation')
        for b in chars:
            if _find_character(chars, a.values * b.values, eps) is None:
                raise mc.CertificationError('dual_group', 'dual group not'
                                            + ' closed under products')


def fourier_matrix(chars):
    '''F[chi, s] = chi(s).'''
    return np.array([c.values for c in chars])


def fourier_transform(f, chars):
    '''(sum_s f(s) chi(s))_chi.'''
    return fourier_matrix(chars) @ f.coeffs


def fourier_iso_check(G, samples=5, seed=0, tol=None):
    ''' Check that the Fourier transform is a *-isomorphism of C*(G) onto
    the functions on the dual group.

    Multiplicativity and *-compatibility are checked on all pairs of point
    masses and on `samples` random pairs; bijectivity is the distance of
    F / sqrt(|G|) from a unitary.

    Returns
    -------
    report : dict
        Defects 'multiplicativity', 'star', 'bijectivity', and their
        maximum 'max_residual'.
    '''
    chars = dual_group(G, seed=seed, tol=tol)
    F = fourier_matrix(chars)
    n = G.order
    mult = 0.
    for s in range(n):
        for t in range(n):
            fg = F[:, G.table[s, t]]
            mult = max(mult, float(np.max(np.abs(fg - F[:, s] * F[:, t]))))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        f = element(G, rng.standard_normal(n) + 1j * rng.standard_normal(n))
        g = element(G, rng.standard_normal(n) + 1j * rng.standard_normal(n))
        lhs = fourier_transform(convolve(f, g), chars)
        rhs = fourier_transform(f, chars) * fourier_transform(g, chars)
        mult = max(mult, float(np.max(np.abs(lhs - rhs))
                               / max(1., np.max(np.abs(rhs)))))
    star_defect = float(np.max(np.abs(F[:, G.inverse] - np.conj(F))))
    sv = linalg.svdvals(F / np.sqrt(n))
    bij = float(np.max(np.abs(sv - 1.)))
    report = {'multiplicativity': mult, 'star': star_defect,
              'bijectivity': bij}
    report['max_residual'] = max(report.values())
    return report


def character_table(G, seed=0, tol=None):
    ''' Irreducible characters chi_i(s) = tr(z_i lambda_s) / m_i read off
    the block decomposition of C*(G), one row per block and one column per
    conjugacy class (labelled by its smallest element).

    Returns
    -------
    table : pandas.DataFrame
    '''
    A = regular_representation(G, tol)
    blocks = alg.block_decompose(A, seed=seed, tol=tol)
    lam = left_regular(G)
    classes = conjugacy_classes(G)
    rows = []
    for b in blocks:
        z = b.central_projection
        rows.append([np.trace(z @ lam[c[0]]) / b.multiplicity
                     for c in classes])
    values = np.round(np.array(rows), 10) + 0.
    return pd.DataFrame(values,
                        index=pd.Index([b.block_size for b in blocks],
                                       name='dimension'),
                        columns=pd.Index([c[0] for c in classes],
                                         name='class'))


def separates_points(G, seed=0, tol=None):
    ''' True if for every s != e some block of C*(G) sees lambda_s as
    different from the identity.
    '''
    tol = mc.get_tol(tol)
    A = regular_representation(G, tol)
    blocks = alg.block_decompose(A, seed=seed, tol=tol)
    lam = left_regular(G)
    eps = tol.effective(1., G.order)
    for s in range(1, G.order):
        if all(mc.op_norm(b.central_projection @ lam[s]
                          - b.central_projection) <= eps for b in blocks):
            logger.debug('element %d acts trivially in every block', s)
            return False
    return True
