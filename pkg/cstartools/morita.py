'''morita

Collection of functions for the discrete imprimitivity bimodule
E_0 = C(G) between A_0 = C(G/H) x| G and B_0 = C*(H), for a finite group G
and a subgroup H.

On the basis {eps_s} of E_0,
    <eps_s|eps_t>_B = 1_H(s^-1 t) v_{s^-1 t},
    <eps_s|eps_t>_A = e_{sH} (x) delta_{st^-1},
    (e_{rH} (x) delta_s) eps_t = 1_{rH}(st) eps_{st},
    eps_t v_h = eps_{th}.
Module vectors are coefficient arrays of length |G|. Elements of A_0 are
crossed product coefficient arrays c[s, r] for e_{rH} (x) delta_s, r the
coset number of `groups.left_cosets`. Elements of B_0 are coefficient
arrays over the sorted subgroup.

'''

import logging
import itertools
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import linalg
try:
    import multiprocessing as mp
except ImportError:
    mp = None
try:
    from dask import bag as dask_bag
except ImportError:
    dask_bag = None

from . import matcore as mc
from . import algebra as alg
from . import groups as grp
from . import crossed as cr

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class ImprimitivityBimodule:
    ''' E_0 = C(G) as an A_0-B_0 bimodule.

    Attributes
    ----------
    group : FiniteGroup
    subgroup : tuple of int
        Sorted indices of H in G, identity first.
    subgroup_group : FiniteGroup
        H with its own table, element i being subgroup[i].
    labels : array
        labels[s] = coset number of sH.
    crossed : CrossedProduct
        A_0 realized through `crossed.build_crossed`.
    right_algebra : FDCAlgebra
        B_0 realized by the regular representation of H.
    inner_b_table : array
        Shape (|G|, |G|, |H|), coefficients of <eps_s|eps_t>_B.
    inner_a_table : array
        Shape (|G|, |G|, |G|, |G/H|), coefficients of <eps_s|eps_t>_A.
    left_ops : array
        Shape (|G|, |G/H|, |G|, |G|), the matrix of e_{rH} (x) delta_s on
        E_0 stored at [s, r].
    right_ops : array
        Shape (|H|, |G|, |G|), the matrix of x -> x v_h.
    '''
    group: grp.FiniteGroup
    subgroup: tuple
    subgroup_group: grp.FiniteGroup
    labels: np.ndarray
    crossed: cr.CrossedProduct
    right_algebra: alg.FDCAlgebra
    inner_b_table: np.ndarray
    inner_a_table: np.ndarray
    left_ops: np.ndarray
    right_ops: np.ndarray

    @property
    def left_algebra(self):
        return self.crossed.algebra

    @property
    def module_dim(self):
        return self.group.order

    @property
    def cosets(self):
        return int(self.labels.max()) + 1


def _subgroup_group(G, H):
    pos = {h: i for i, h in enumerate(H)}
    table = [[pos[int(G.table[a, b])] for b in H] for a in H]
    return grp.from_table(table, (G.name or 'G') + '|H')


def build_bimodule(G, H, tol=None):
    ''' Build E_0 with all tables, and certify that both inner products are
    positive through their big Gram matrices.

    Parameters
    ----------
    G : FiniteGroup
    H : iterable of int
        Indices of a subgroup of G.
    tol : Tolerance or None

    Returns
    -------
    bm : ImprimitivityBimodule

    Raises
    ------
    NotSubgroupError
        If `H` is not closed under products and inverses or misses e.
    CertificationError
        If a Gram matrix has a negative eigenvalue beyond tolerance.
    '''
    tol = mc.get_tol(tol)
    H = grp.check_subgroup(G, H, 'build_bimodule')
    n = G.order
    _, _, labels = grp.left_cosets(G, H)
    k = int(labels.max()) + 1
    hg = _subgroup_group(G, H)
    pos = {h: i for i, h in enumerate(H)}

    ib = np.zeros((n, n, len(H)), dtype=complex)
    ia = np.zeros((n, n, n, k), dtype=complex)
    for s, t in itertools.product(range(n), repeat=2):
        u = int(G.table[G.inverse[s], t])
        if u in pos:
            ib[s, t, pos[u]] = 1.
        ia[s, t, G.table[s, G.inverse[t]], labels[s]] = 1.

    lam = grp.left_regular(G)
    proj = np.array([np.diag((labels == r).astype(complex))
                     for r in range(k)])
    left = np.einsum('rij,sjk->srik', proj, lam)
    right = np.zeros((len(H), n, n), dtype=complex)
    for i, h in enumerate(H):
        right[i, G.table[np.arange(n), h], np.arange(n)] = 1.

    cp = cr.build_crossed(cr.coset_system(G, H, tol), tol)
    b0 = grp.regular_representation(hg, tol)
    bm = ImprimitivityBimodule(G, H, hg, labels, cp, b0, ib, ia, left, right)
    forms = gram_forms(bm)
    for side in ['a', 'b']:
        gram = forms['gram_' + side]
        if forms['min_' + side] < -tol.effective(mc.op_norm(gram),
                                                 gram.shape[0]):
            raise mc.CertificationError('build_bimodule', side.upper()
                                        + '-valued Gram matrix is not'
                                        + ' positive semidefinite')
    logger.info('imprimitivity bimodule for |G| = %d, |H| = %d: dim A_0 = %d,'
                + ' dim B_0 = %d', n, len(H), cp.algebra.dim, b0.dim)
    return bm


def inner_a(bm, x, y):
    '''<x|y>_A, linear in x and conjugate linear in y.'''
    return np.einsum('s,t,stuc->uc', np.asarray(x, dtype=complex),
                     np.conj(y), bm.inner_a_table)


def inner_b(bm, x, y):
    '''<x|y>_B, conjugate linear in x and linear in y.'''
    return np.einsum('s,t,sth->h', np.conj(x), np.asarray(y, dtype=complex),
                     bm.inner_b_table)


def left_operator(bm, a):
    return np.einsum('sr,srij->ij', np.asarray(a, dtype=complex),
                     bm.left_ops)


def right_operator(bm, b):
    return np.einsum('h,hij->ij', np.asarray(b, dtype=complex), bm.right_ops)


def left_action(bm, a, x):
    '''a x for a in A_0.'''
    return left_operator(bm, a) @ np.asarray(x, dtype=complex)


def right_action(bm, x, b):
    '''x b for b in B_0.'''
    return right_operator(bm, b) @ np.asarray(x, dtype=complex)


def a_matrix(bm, c):
    '''The matrix of c in the realization of A_0.'''
    return cr.to_matrix(bm.crossed, c)


def b_matrix(bm, beta):
    '''The matrix of beta in the regular representation of H.'''
    return grp.to_matrix(grp.element(bm.subgroup_group, beta))


def a_star(bm, c):
    return cr.star(bm.crossed, c)


def b_star(bm, beta):
    return grp.star(grp.element(bm.subgroup_group, beta)).coeffs


def gram_forms(bm):
    ''' The big Gram matrices whose (s, t) blocks are the matrices of
    <eps_s|eps_t>_A and <eps_s|eps_t>_B. Both inner products are positive
    exactly when these are positive semidefinite.

    Returns
    -------
    forms : dict
        'gram_a', 'gram_b', and their smallest eigenvalues 'min_a', 'min_b'.
    '''
    n = bm.module_dim
    ga = np.block([[a_matrix(bm, bm.inner_a_table[s, t]) for t in range(n)]
                   for s in range(n)])
    gb = np.block([[b_matrix(bm, bm.inner_b_table[s, t]) for t in range(n)]
                   for s in range(n)])
    return {'gram_a': ga, 'gram_b': gb,
            'min_a': float(linalg.eigvalsh(ga)[0]),
            'min_b': float(linalg.eigvalsh(gb)[0])}


def _axioms_core(bm, q):
    ''' Worst residuals of the basis identities with x = eps_q:
        <a x|y>_B = <x|a* y>_B,
        <x b|y>_A = <x|y b*>_A,
        <x|y>_A z = x <y|z>_B.
    '''
    n = bm.module_dim
    k = bm.cosets
    ib = bm.inner_b_table
    ia = bm.inner_a_table
    left = bm.left_ops
    stars = np.zeros_like(left)
    for s, r in itertools.product(range(n), range(k)):
        unit = cr.unit_element(bm.crossed, s, r)
        stars[s, r] = left_operator(bm, a_star(bm, unit))
    # a x with x = eps_q is column q of the operator of a
    lhs = np.einsum('srU,Uth->srth', np.conj(left[:, :, :, q]), ib)
    rhs = np.einsum('srUt,Uh->srth', stars, ib[q])
    adj_a = float(np.max(np.abs(lhs - rhs)))

    right = bm.right_ops
    hinv = bm.subgroup_group.inverse
    lhs = np.einsum('hU,Utuc->htuc', right[:, :, q], ia)
    rhs = np.einsum('hUt,Uuc->htuc', np.conj(right[hinv]), ia[q])
    adj_b = float(np.max(np.abs(lhs - rhs)))

    acts = np.einsum('ruc,ucij->rij', ia[q], left)
    rhs = np.einsum('rsh,hi->ris', ib, right[:, :, q])
    assoc = float(np.max(np.abs(acts - rhs)))
    return adj_a, adj_b, assoc


def _module_residual(bm):
    ''' Defects of x -> a x being a representation of A_0 and of
    x -> x b being a right representation of B_0. The left action is
    checked through its covariant pair: projections P_r = e_{rH} (x) delta_e
    and unitaries U_s = sum_r e_{rH} (x) delta_s.
    '''
    G = bm.group
    k = bm.cosets
    left = bm.left_ops
    proj = left[0]
    unitaries = left.sum(axis=1)
    reps = [int(np.argmax(bm.labels == r)) for r in range(k)]
    worst = float(np.max(np.abs(proj.sum(axis=0) - np.eye(G.order))))
    for r, r2 in itertools.product(range(k), repeat=2):
        target = proj[r] if r == r2 else 0.
        worst = max(worst, float(np.max(np.abs(proj[r] @ proj[r2]
                                               - target))))
    for s in range(G.order):
        u = unitaries[s]
        for r in range(k):
            moved = proj[bm.labels[G.table[s, reps[r]]]]
            worst = max(worst, float(np.max(np.abs(
                u @ proj[r] @ u.conj().T - moved))))
            worst = max(worst, float(np.max(np.abs(proj[r] @ u
                                                   - left[s, r]))))
        for t in range(G.order):
            worst = max(worst, float(np.max(np.abs(
                u @ unitaries[t] - unitaries[G.table[s, t]]))))
    hg = bm.subgroup_group
    right = bm.right_ops
    for g, h in itertools.product(range(hg.order), repeat=2):
        worst = max(worst, float(np.max(np.abs(
            right[h] @ right[g] - right[hg.table[g, h]]))))
    return worst


def _psd_defect(m):
    m = (m + m.conj().T) / 2.
    low = linalg.eigvalsh(m)[0]
    return max(0., -float(low)) / max(1., mc.op_norm(m))


def verify_axioms(bm, samples=20, seed=0, tol=None, use_bags=False,
                  use_mp=False, mp_cpu=2):
    ''' Check the pre-imprimitivity bimodule axioms for E_0.

    Axioms with three module arguments are checked exhaustively on basis
    triples and, like the others, on `samples` random combinations.

    Parameters
    ----------
    bm : ImprimitivityBimodule
    samples : int
        Number of random combinations. Default is 20.
    seed : int
    tol : Tolerance or None
    use_bags : bool
        If True, dask bags split the basis checks over eps_q.
        Default is False.
    use_mp : bool
        If True, multiprocessing is used instead. Default is False.
    mp_cpu : int
        Number of processes for `use_mp`. Default is 2.

    Returns
    -------
    report : dict
        'axioms' maps each axiom to its worst residual:
            'sesquilinear_a'  <., .>_A linear / conjugate linear,
            'sesquilinear_b'  <., .>_B conjugate linear / linear,
            'adjoint_a'       <a x|y>_B = <x|a* y>_B,
            'adjoint_b'       <x b|y>_A = <x|y b*>_A,
            'associativity'   <x|y>_A z = x <y|z>_B,
            'contractivity'   <a x|a x>_B <= ||a||^2 <x|x>_B and
                              <x b|x b>_A <= ||b||^2 <x|x>_A,
            'fullness'        0 if both inner products span their algebra,
            'norm'            | ||<x|x>_A|| - ||<x|x>_B|| |,
            'module'          the actions are representations;
        'full_a', 'full_b', 'min_gram_a', 'min_gram_b', 'psd',
        'max_residual' and 'tolerance'.
    '''
    if use_bags and use_mp:
        raise ValueError('Cannot use dask_bags and multiprocessing at the'
                         + ' same time. Set either `use_bags` or `use_mp`'
                         + ' to `False`.')
    tol = mc.get_tol(tol)
    n = bm.module_dim
    k = bm.cosets
    nh = len(bm.subgroup)
    steps = range(n)
    if use_mp:
        if mp_cpu > mp.cpu_count():
            mp_cpu = mp.cpu_count()
        with mp.Pool(mp_cpu) as p:
            parts = p.starmap(_axioms_core, zip(itertools.repeat(bm), steps))
    elif use_bags:
        steps_bag = dask_bag.from_sequence(steps)
        parts = dask_bag.map(lambda q: _axioms_core(bm, q),
                             steps_bag).compute()
    else:
        parts = [_axioms_core(bm, q) for q in steps]
    adj_a = max(p[0] for p in parts)
    adj_b = max(p[1] for p in parts)
    assoc = max(p[2] for p in parts)

    rng = np.random.default_rng(seed)

    def rand(*shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    def rel(a, b):
        return float(np.max(np.abs(a - b)) / max(1., np.max(np.abs(b))))

    ses_a = ses_b = contr = norm = 0.
    for _ in range(samples):
        x, y, z = rand(n), rand(n), rand(n)
        alpha = complex(rand(1)[0])
        a = rand(n, k)
        b = rand(nh)
        ses_a = max(ses_a,
                    rel(inner_a(bm, alpha * x + y, z),
                        alpha * inner_a(bm, x, z) + inner_a(bm, y, z)),
                    rel(inner_a(bm, x, alpha * y + z),
                        np.conj(alpha) * inner_a(bm, x, y)
                        + inner_a(bm, x, z)))
        ses_b = max(ses_b,
                    rel(inner_b(bm, x, alpha * y + z),
                        alpha * inner_b(bm, x, y) + inner_b(bm, x, z)),
                    rel(inner_b(bm, alpha * x + y, z),
                        np.conj(alpha) * inner_b(bm, x, z)
                        + inner_b(bm, y, z)))
        adj_a = max(adj_a, rel(inner_b(bm, left_action(bm, a, x), y),
                               inner_b(bm, x, left_action(bm, a_star(bm, a),
                                                          y))))
        adj_b = max(adj_b, rel(inner_a(bm, right_action(bm, x, b), y),
                               inner_a(bm, x, right_action(bm, y,
                                                           b_star(bm, b)))))
        assoc = max(assoc, rel(left_action(bm, inner_a(bm, x, y), z),
                               right_action(bm, x, inner_b(bm, y, z))))
        ax = left_action(bm, a, x)
        xb = right_action(bm, x, b)
        a_norm = mc.op_norm(a_matrix(bm, a))
        b_norm = mc.op_norm(b_matrix(bm, b))
        contr = max(contr,
                    _psd_defect(a_norm ** 2 * b_matrix(bm, inner_b(bm, x, x))
                                - b_matrix(bm, inner_b(bm, ax, ax))),
                    _psd_defect(b_norm ** 2 * a_matrix(bm, inner_a(bm, x, x))
                                - a_matrix(bm, inner_a(bm, xb, xb))))
        na = mc.op_norm(a_matrix(bm, inner_a(bm, x, x)))
        nb = mc.op_norm(b_matrix(bm, inner_b(bm, x, x)))
        norm = max(norm, abs(na - nb) / max(1., nb))

    rank_a = mc.numerical_rank(bm.inner_a_table.reshape(n * n, -1), tol)
    rank_b = mc.numerical_rank(bm.inner_b_table.reshape(n * n, -1), tol)
    full_a = rank_a == bm.left_algebra.dim
    full_b = rank_b == bm.right_algebra.dim
    forms = gram_forms(bm)
    eps = tol.effective(1., n * n * k)
    axioms = {'sesquilinear_a': ses_a, 'sesquilinear_b': ses_b,
              'adjoint_a': adj_a, 'adjoint_b': adj_b,
              'associativity': assoc, 'contractivity': contr,
              'fullness': 0. if full_a and full_b else 1., 'norm': norm,
              'module': _module_residual(bm)}
    report = {'axioms': axioms, 'full_a': bool(full_a),
              'full_b': bool(full_b), 'min_gram_a': forms['min_a'],
              'min_gram_b': forms['min_b'],
              'psd': bool(min(forms['min_a'], forms['min_b']) >= -eps),
              'max_residual': max(axioms.values()), 'tolerance': eps}
    logger.debug('axiom residuals: %s', axioms)
    return report


def axiom_table(report):
    ''' Per-axiom residuals as a DataFrame indexed by axiom, with a `passed`
    column judged against the report tolerance.
    '''
    df = pd.DataFrame({'residual': pd.Series(report['axioms'])})
    df['passed'] = df['residual'] <= report['tolerance']
    df.index.name = 'axiom'
    return df


def block_correspondence(bm, seed=0, tol=None):
    ''' Compare the block decompositions of A_0 and B_0.

    For every block of B_0 with central projection z, the rank of the
    module E_0 z is reported as well; it equals |G/H| n^2 for a block
    of size n.

    Returns
    -------
    report : dict
        'blocks_A', 'blocks_B', 'matched', 'sizes_A', 'sizes_B',
        'induced_ranks' and 'irreps_H'.
    '''
    tol = mc.get_tol(tol)
    blocks_a = alg.block_decompose(bm.left_algebra, seed=seed, tol=tol)
    blocks_b = alg.block_decompose(bm.right_algebra, seed=seed, tol=tol)
    scale = np.sqrt(bm.subgroup_group.order)
    ranks = []
    for b in blocks_b:
        beta = alg.coefficients(bm.right_algebra, b.central_projection) \
            / scale
        ranks.append(mc.numerical_rank(right_operator(bm, beta), tol))
    report = {'blocks_A': len(blocks_a), 'blocks_B': len(blocks_b),
              'matched': len(blocks_a) == len(blocks_b),
              'sizes_A': [b.block_size for b in blocks_a],
              'sizes_B': [b.block_size for b in blocks_b],
              'induced_ranks': ranks,
              'irreps_H': len(grp.conjugacy_classes(bm.subgroup_group))}
    logger.info('block correspondence: %d A_0 blocks, %d B_0 blocks',
                report['blocks_A'], report['blocks_B'])
    return report


def bimodule_summary(bm):
    return {'group_order': bm.group.order, 'subgroup': list(bm.subgroup),
            'cosets': bm.cosets, 'module_dim': bm.module_dim,
            'dim_A': bm.left_algebra.dim, 'dim_B': bm.right_algebra.dim}
