'''crossed

Collection of functions for discrete C*-dynamical systems (A, G, alpha)
with A a concrete algebra in M_d and G a finite group: the crossed product
through the regular covariant representation on C^d (x) C^|G|, integration
of covariant pairs, the dual action and conditional expectation for
abelian G, the discrete Stone-von Neumann theorem, and the clock and shift
generators of the rational rotation algebras.

Crossed product elements are coefficient arrays x of shape (|G|, dim A)
standing for sum_{s, i} x[s, i] b_i (x) delta_s.

'''

import logging
import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np
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

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class DynamicalSystem:
    ''' A finite C*-dynamical system.

    Attributes
    ----------
    algebra : FDCAlgebra
        A inside M_d.
    group : FiniteGroup
    maps : array
        Shape (|G|, dim A, dim A); maps[s] is alpha_s on basis coefficients,
        maps[s][k, j] = <alpha_s(b_j), b_k>.
    unitaries : array or None
        Implementing unitaries w_s with alpha_s(a) = w_s a w_s*, if the
        action was given that way.
    '''
    algebra: alg.FDCAlgebra
    group: grp.FiniteGroup
    maps: np.ndarray
    unitaries: np.ndarray = None


@dataclass(eq=False)
class CrossedProduct:
    ''' The crossed product A x| G in its regular covariant representation.

    Attributes
    ----------
    system : DynamicalSystem
    algebra : FDCAlgebra
        The realized algebra inside M_{d |G|}.
    pi : array
        pi~(b_i), shape (dim A, d |G|, d |G|).
    lambdas : array
        lambda~_s, shape (|G|, d |G|, d |G|).
    products : array
        pi~(b_i) lambda~_s, the image of b_i (x) delta_s, stored as
        products[s, i].
    '''
    system: DynamicalSystem
    algebra: alg.FDCAlgebra
    pi: np.ndarray
    lambdas: np.ndarray
    products: np.ndarray

    @property
    def shape(self):
        return self.products.shape[:2]


def _certify_maps(A, G, maps, tol):
    consts = alg.structure_constants(A)
    adj = alg.adjoint_coefficients(A)
    n = G.order
    eps = tol.effective(1., max(A.dim, 1))
    if np.max(np.abs(maps[0] - np.eye(A.dim))) > eps:
        raise mc.CertificationError('make_system', 'alpha_e is not the'
                                    + ' identity')
    for s in range(n):
        m = maps[s]
        # alpha_s(b_i b_j) = alpha_s(b_i) alpha_s(b_j)
        lhs = np.einsum('ijk,lk->ijl', consts, m)
        rhs = np.einsum('ai,bj,abl->ijl', m, m, consts)
        if np.max(np.abs(lhs - rhs)) > eps:
            raise mc.CertificationError('make_system', 'alpha_' + str(s)
                                        + ' is not multiplicative')
        # alpha_s(b_i*) = alpha_s(b_i)*
        lhs = adj @ m.T
        rhs = np.conj(m.T) @ adj
        if np.max(np.abs(lhs - rhs)) > eps:
            raise mc.CertificationError('make_system', 'alpha_' + str(s)
                                        + ' does not preserve adjoints')
        for t in range(n):
            if np.max(np.abs(m @ maps[t] - maps[G.table[s, t]])) > eps:
                raise mc.CertificationError('make_system', 'alpha_' + str(s)
                                            + ' alpha_' + str(t) + ' != alpha_'
                                            + str(G.table[s, t]))


def make_system(A, G, unitaries=None, maps=None, tol=None):
    ''' Certify an action of G on A, given either by implementing unitaries
    or by linear maps on the basis coefficients of A.

    Parameters
    ----------
    A : FDCAlgebra
    G : FiniteGroup
    unitaries : array or None
        Shape (|G|, d, d).
    maps : array or None
        Shape (|G|, dim A, dim A).
    tol : Tolerance or None

    Returns
    -------
    sys : DynamicalSystem
        With the action canonicalized to `maps`.

    Raises
    ------
    CertificationError
        If alpha_s(A) is not contained in A, or alpha is not an action by
        *-automorphisms.
    '''
    tol = mc.get_tol(tol)
    if (unitaries is None) == (maps is None):
        raise mc.OperationError('make_system', 'give exactly one of'
                                + ' `unitaries` and `maps`')
    if unitaries is not None:
        w = np.asarray(unitaries, dtype=complex)
        if w.shape != (G.order, A.ambient_dim, A.ambient_dim):
            raise mc.OperationError('make_system', '`unitaries` must have'
                                    + ' shape ' + str((G.order,
                                                       A.ambient_dim,
                                                       A.ambient_dim)))
        for s in range(G.order):
            if not mc.classify(w[s], tol)['unitary']:
                raise mc.CertificationError('make_system', 'w_' + str(s)
                                            + ' is not unitary')
        moved = np.einsum('sab,jbc,sdc->sjad', w, A.basis, w.conj())
        coeffs, res = mc.project_onto(A.basis,
                                      moved.reshape(-1, A.ambient_dim,
                                                    A.ambient_dim))
        if len(res) and res.max() > tol.effective(1., A.ambient_dim):
            raise mc.CertificationError('make_system', 'alpha_s(A) is not'
                                        + ' contained in A (residual '
                                        + str(res.max()) + ')')
        m = np.transpose(coeffs.reshape(G.order, A.dim, A.dim), (0, 2, 1))
    else:
        w = None
        m = np.asarray(maps, dtype=complex)
        if m.shape != (G.order, A.dim, A.dim):
            raise mc.OperationError('make_system', '`maps` must have shape '
                                    + str((G.order, A.dim, A.dim)))
    _certify_maps(A, G, m, tol)
    return DynamicalSystem(A, G, m, w)


def trivial_system(A, G):
    '''The trivial action alpha_s = id.'''
    maps = np.broadcast_to(np.eye(A.dim, dtype=complex),
                           (G.order, A.dim, A.dim)).copy()
    return DynamicalSystem(A, G, maps)


def translation_system(G, tol=None):
    ''' C(G) as the diagonal algebra of M_|G| with the left translation
    alpha_s(chi_t) = chi_{st}, implemented by lambda_s.
    '''
    A = alg.diagonal_algebra(G.order)
    return make_system(A, G, unitaries=grp.left_regular(G), tol=tol)


def coset_system(G, H, tol=None):
    ''' C(G/H) as the diagonal algebra of M_|G/H| with G permuting the
    cosets, s (tH) = (st)H. Cosets are numbered as in `groups.left_cosets`.
    '''
    reps, _, labels = grp.left_cosets(G, H)
    k = len(reps)
    w = np.zeros((G.order, k, k), dtype=complex)
    for s in range(G.order):
        for c, r in enumerate(reps):
            w[s, labels[G.table[s, r]], c] = 1.
    return make_system(alg.diagonal_algebra(k), G, unitaries=w, tol=tol)


def apply_action(sys, s, a):
    '''alpha_s(a) for an element a of the algebra.'''
    c = alg.coefficients(sys.algebra, a)
    return alg.element(sys.algebra, sys.maps[s] @ c)


def build_crossed(sys, tol=None):
    ''' Realize A x| G through the regular covariant representation
        pi~(a) = sum_t alpha_{t^-1}(a) (x) E_tt,  lambda~_s = I (x) lambda_s
    on C^d (x) C^|G|.

    Returns
    -------
    cp : CrossedProduct

    Raises
    ------
    CertificationError
        If the d |G| images pi~(b_i) lambda~_s are linearly dependent.
    '''
    tol = mc.get_tol(tol)
    A = sys.algebra
    G = sys.group
    d = A.ambient_dim
    n = G.order
    big = d * n
    units = np.zeros((n, n, n))
    units[np.arange(n), np.arange(n), np.arange(n)] = 1.
    pi = np.zeros((A.dim, big, big), dtype=complex)
    for t in range(n):
        # alpha_{t^-1}(b_i) as d x d matrices
        moved = np.einsum('ki,kab->iab', sys.maps[G.inverse[t]], A.basis)
        pi += np.einsum('iab,cd->iacbd', moved,
                        units[t]).reshape(A.dim, big, big)
    lam = grp.left_regular(G)
    lambdas = np.array([np.kron(np.eye(d), lam[s]) for s in range(n)])
    products = np.einsum('iab,sbc->siac', pi, lambdas)
    flat = products.reshape(n * A.dim, -1)
    rank = mc.numerical_rank(flat, tol, operation='build_crossed')
    if rank != n * A.dim:
        raise mc.CertificationError('build_crossed', 'images of b_i (x)'
                                    + ' delta_s span dimension ' + str(rank)
                                    + ' < ' + str(n * A.dim))
    gens = np.concatenate([pi, lambdas])
    realized = alg.span_algebra(big, list(flat.reshape(-1, big, big)),
                                unital=A.unital, tol=tol, generators=gens)
    logger.info('crossed product of dimension %d in M_%d', realized.dim, big)
    return CrossedProduct(sys, realized, pi, lambdas, products)


def to_matrix(cp, x):
    '''The image sum x[s, i] pi~(b_i) lambda~_s.'''
    return np.einsum('si,siab->ab', np.asarray(x, dtype=complex),
                     cp.products)


def unit_element(cp, s, i):
    '''The coefficient array of b_i (x) delta_s.'''
    x = np.zeros(cp.shape, dtype=complex)
    x[s, i] = 1.
    return x


def multiply(cp, x, y):
    '''Twisted convolution (x y)_u = sum over st = u of x_s alpha_s(y_t).'''
    sys = cp.system
    G = sys.group
    consts = alg.structure_constants(sys.algebra)
    z = np.zeros(cp.shape, dtype=complex)
    for s, t in itertools.product(range(G.order), repeat=2):
        w = sys.maps[s] @ y[t]
        z[G.table[s, t]] += np.einsum('i,j,ijk->k', x[s], w, consts)
    return z


def star(cp, x):
    '''Involution (x*)_s = alpha_s((x_{s^-1})*).'''
    sys = cp.system
    adj = alg.adjoint_coefficients(sys.algebra)
    z = np.zeros(cp.shape, dtype=complex)
    for s in range(sys.group.order):
        z[s] = sys.maps[s] @ (adj.T @ np.conj(x[sys.group.inverse[s]]))
    return z


def _relations_core(cp, s):
    ''' Worst product and adjoint residual over the basis elements
    b_i (x) delta_s with fixed first index s.
    '''
    sys = cp.system
    G = sys.group
    n, r = cp.shape
    consts = alg.structure_constants(sys.algebra)
    adj = alg.adjoint_coefficients(sys.algebra)
    # b_i alpha_s(b_j) = sum_k twisted[i, j, k] b_k
    twisted = np.einsum('ilk,lj->ijk', consts, sys.maps[s])
    shifted = cp.products[G.table[s]]
    s_inv = G.inverse[s]
    prod = 0.
    star_res = 0.
    for i in range(r):
        lhs = np.einsum('ab,tjbc->tjac', cp.products[s, i], cp.products)
        rhs = np.einsum('jk,tkac->tjac', twisted[i], shifted)
        prod = max(prod, float(np.max(np.abs(lhs - rhs))))
        coeffs = sys.maps[s_inv] @ adj[i]
        target = np.einsum('k,kab->ab', coeffs, cp.products[s_inv])
        star_res = max(star_res, float(np.max(np.abs(
            cp.products[s, i].conj().T - target))))
    return prod, star_res


def verify_relations(cp, use_bags=False, use_mp=False, mp_cpu=2):
    ''' Exhaustive check of
        (a (x) delta_s)(b (x) delta_t) = a alpha_s(b) (x) delta_st,
        (a (x) delta_s)* = alpha_{s^-1}(a*) (x) delta_{s^-1}
    on all pairs of basis elements, comparing the matrix realization with
    the structure constants of A twisted by the action.

    Parameters
    ----------
    cp : CrossedProduct
    use_bags : bool
        If True, dask bags are used to split the work over group elements.
        Default is False.
    use_mp : bool
        If True, multiprocessing is used instead. Default is False.
    mp_cpu : int
        Number of processes for `use_mp`. Default is 2.

    Returns
    -------
    report : dict
        'product', 'star' and 'max_residual'.
    '''
    if use_bags and use_mp:
        raise ValueError('Cannot use dask_bags and multiprocessing at the'
                         + ' same time. Set either `use_bags` or `use_mp`'
                         + ' to `False`.')
    steps = range(cp.system.group.order)
    if use_mp:
        if mp_cpu > mp.cpu_count():
            mp_cpu = mp.cpu_count()
        with mp.Pool(mp_cpu) as p:
            parts = p.starmap(_relations_core,
                              zip(itertools.repeat(cp), steps))
    elif use_bags:
        seeds_bag = dask_bag.from_sequence(steps)
        parts = dask_bag.map(lambda s: _relations_core(cp, s),
                             seeds_bag).compute()
    else:
        parts = [_relations_core(cp, s) for s in steps]
    prod = max(p[0] for p in parts)
    adj = max(p[1] for p in parts)
    return {'product': prod, 'star': adj, 'max_residual': max(prod, adj)}


def integrate_covariant(sys, pi, U, tol=None):
    ''' Integrated form (pi x| U)(a (x) delta_s) = pi(a) U_s of a covariant
    pair.

    Parameters
    ----------
    sys : DynamicalSystem
    pi : array
        Images pi(b_i) of the basis of A, shape (dim A, k, k).
    U : array
        Unitaries U_s, shape (|G|, k, k).

    Returns
    -------
    images : array
        Shape (|G|, dim A, k, k), images[s, i] = pi(b_i) U_s.

    Raises
    ------
    CovarianceError
        If U_s pi(a) U_s* != pi(alpha_s(a)); reports the worst pair.
    DegenerateError
        If pi(1) != 1 for unital A.
    CertificationError
        If the integrated form is not a *-homomorphism or some U_s
        is not unitary.
    '''
    tol = mc.get_tol(tol)
    A = sys.algebra
    G = sys.group
    pi = np.asarray(pi, dtype=complex)
    U = np.asarray(U, dtype=complex)
    k = pi.shape[1]
    eps = tol.effective(1., k)
    unitarity = max((mc.op_norm(u @ u.conj().T - np.eye(k)) for u in U),
                    default=0.)
    if unitarity > eps:
        raise mc.CertificationError('integrate_covariant', 'U_s is not'
                                    + ' unitary (defect ' + str(unitarity)
                                    + ')')
    lhs = np.einsum('sab,jbc,sdc->sjad', U, pi, U.conj())
    rhs = np.einsum('skj,kab->sjab', sys.maps, pi)
    defect = np.abs(lhs - rhs).reshape(G.order, A.dim, -1).max(axis=2)
    worst = np.unravel_index(np.argmax(defect), defect.shape)
    if defect[worst] > eps:
        raise mc.CovarianceError('integrate_covariant', 'U_s pi(b_j) U_s* !='
                                 + ' pi(alpha_s(b_j)), worst pair (s, j) = '
                                 + str(tuple(int(w) for w in worst))
                                 + ' with defect ' + str(defect[worst]))
    if A.unital:
        one = np.einsum('k,kab->ab',
                        alg.coefficients(A, np.eye(A.ambient_dim)), pi)
        if mc.op_norm(one - np.eye(k)) > eps:
            raise mc.DegenerateError('integrate_covariant', 'pi(1) is not'
                                     + ' the identity')
    images = np.einsum('iab,sbc->siac', pi, U)
    cp_like = CrossedProduct(sys, None, pi, U, images)
    parts = [_relations_core(cp_like, s) for s in range(G.order)]
    prod = max(p[0] for p in parts)
    adj = max(p[1] for p in parts)
    if max(prod, adj) > eps * max(1, A.dim):
        raise mc.CertificationError('integrate_covariant', 'integrated form'
                                    + ' is not a *-homomorphism (product'
                                    + ' residual ' + str(prod) + ', star'
                                    + ' residual ' + str(adj) + ')')
    return images


def integrated_image(images, tol=None):
    '''The algebra spanned by an integrated representation.'''
    images = np.asarray(images)
    k = images.shape[-1]
    flat = list(images.reshape(-1, k, k))
    return alg.span_algebra(k, flat, tol=tol, generators=flat)


def stone_von_neumann_check(G, seed=0, tol=None):
    ''' Discrete Stone-von Neumann theorem: C(G) x| G is M_|G|.

    The matrix units e_{s,t} = pi~(chi_s) lambda~_{st^-1} are checked on all
    index quadruples; the realized algebra must be a single block of size
    |G|. The regular realization on C^|G| (x) C^|G| repeats that block |G|
    times; the multiplicity reported is that of the integrated
    multiplication/translation pair on l^2(G), which is 1.

    Returns
    -------
    report : dict
        'is_single_block', 'block_size', 'multiplicity',
        'regular_multiplicity', 'matrix_unit_residual', 'tolerance'.
    '''
    tol = mc.get_tol(tol)
    n = G.order
    sys = translation_system(G, tol)
    cp = build_crossed(sys, tol)
    # chi_s is the diagonal matrix unit, basis element s of C(G)
    e = np.array([[cp.pi[s] @ cp.lambdas[G.table[s, G.inverse[t]]]
                   for t in range(n)] for s in range(n)])
    residual = 0.
    for q, r, s, t in itertools.product(range(n), repeat=4):
        target = e[q, t] if r == s else 0.
        residual = max(residual, float(np.max(np.abs(e[q, r] @ e[s, t]
                                                     - target))))
    for s, t in itertools.product(range(n), repeat=2):
        residual = max(residual, float(np.max(np.abs(e[s, t].conj().T
                                                     - e[t, s]))))
    blocks = alg.block_decompose(cp.algebra, seed=seed, tol=tol)
    images = integrate_covariant(sys, sys.algebra.basis, grp.left_regular(G),
                                 tol)
    image = integrated_image(images, tol)
    image_blocks = alg.block_decompose(image, seed=seed, tol=tol)
    single = (len(blocks) == 1 and blocks[0].block_size == n
              and len(image_blocks) == 1
              and image_blocks[0].block_size == n)
    report = {'is_single_block': bool(single),
              'block_size': blocks[0].block_size if blocks else 0,
              'multiplicity': image_blocks[0].multiplicity
              if image_blocks else 0,
              'regular_multiplicity': blocks[0].multiplicity
              if blocks else 0,
              'matrix_unit_residual': residual,
              'tolerance': tol.effective(1., n * n)}
    logger.info('Stone-von Neumann for %s: %s', G.name or 'G', report)
    return report


def dual_action(cp, chi, x):
    '''beta_chi(a (x) delta_s) = chi(s) a (x) delta_s.'''
    return np.asarray(x) * chi.values[:, None]


def conditional_expectation(cp, x, chars=None, seed=0, tol=None):
    ''' E(x) = average of beta_chi(x) over the dual group, for abelian G.

    Returns
    -------
    a : array
        Basis coefficients of E(x) in A.

    Raises
    ------
    NotAbelianError
    '''
    if chars is None:
        chars = grp.dual_group(cp.system.group, seed=seed, tol=tol)
    avg = np.mean([dual_action(cp, c, x) for c in chars], axis=0)
    return avg[0]


def _embed(cp, a):
    x = np.zeros(cp.shape, dtype=complex)
    x[0] = a
    return x


def expectation_report(cp, samples=50, seed=0, tol=None):
    ''' Properties of the conditional expectation E onto A.

    Returns
    -------
    report : dict
        'averaging_vs_extraction': max distance between the dual-group
        average and the coefficient a_e;
        'idempotence', 'bimodularity': defects of E(E(x)) = E(x) and
        E(a x b) = a E(x) b;
        'positivity': largest negative eigenvalue of E(x* x);
        'faithfulness_rank' and 'full_rank': rank of the Gram matrix of
        (x, y) -> tau(E(x* y)) for the normalized trace tau of A;
        'max_residual'.
    '''
    tol = mc.get_tol(tol)
    G = cp.system.group
    A = cp.system.algebra
    chars = grp.dual_group(G, seed=seed, tol=tol)
    rng = np.random.default_rng(seed)
    n, r = cp.shape

    def rand(shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    def expect(x):
        return conditional_expectation(cp, x, chars)

    avg = idem = bimod = pos = 0.
    for _ in range(samples):
        x = rand(cp.shape)
        full = np.mean([dual_action(cp, c, x) for c in chars], axis=0)
        avg = max(avg, float(np.max(np.abs(full - _embed(cp, x[0])))))
        ex = expect(x)
        idem = max(idem, float(np.max(np.abs(expect(_embed(cp, ex)) - ex))))
        a = _embed(cp, rand(r))
        b = _embed(cp, rand(r))
        lhs = expect(multiply(cp, multiply(cp, a, x), b))
        rhs = multiply(cp, multiply(cp, a, _embed(cp, ex)), b)[0]
        bimod = max(bimod, float(np.max(np.abs(lhs - rhs))
                                 / max(1., np.max(np.abs(rhs)))))
        pos_el = alg.element(A, expect(multiply(cp, star(cp, x), x)))
        low = linalg.eigvalsh((pos_el + pos_el.conj().T) / 2.)[0]
        scale = max(1., mc.op_norm(pos_el))
        pos = max(pos, float(-low / scale))
    trace = np.einsum('kaa->k', A.basis) / A.ambient_dim
    units = [unit_element(cp, s, i) for s in range(n) for i in range(r)]
    gram = np.array([[trace @ expect(multiply(cp, star(cp, x), y))
                      for y in units] for x in units])
    rank = mc.numerical_rank(gram, tol)
    report = {'averaging_vs_extraction': avg, 'idempotence': idem,
              'bimodularity': bimod, 'positivity': max(pos, 0.),
              'faithfulness_rank': rank, 'full_rank': rank == n * r}
    report['max_residual'] = max(avg, idem, bimod, max(pos, 0.))
    return report


def clock_shift(q, p=1):
    ''' Clock u = diag(1, w, ..., w^(q-1)) with w = exp(2 pi i p / q) and
    cyclic shift v e_k = e_{k+1}, so that u v = w v u.

    A pair with gcd(p, q) != 1 is returned too, but a warning is logged
    since it does not generate all of M_q.
    '''
    q = int(q)
    p = int(p)
    if q < 2:
        raise mc.OperationError('clock_shift', '`q` must be >= 2, got '
                                + str(q))
    if gcd(p, q) != 1:
        logger.warning('gcd(%d, %d) = %d: the clock and shift pair does not'
                       + ' generate M_%d', p, q, gcd(p, q), q)
    omega = np.exp(2j * np.pi * p / q)
    u = np.diag(omega ** np.arange(q))
    v = np.roll(np.eye(q, dtype=complex), 1, axis=0)
    return u, v


def commutation_residual(u, v, theta):
    '''||u v - exp(2 pi i theta) v u||.'''
    return mc.op_norm(u @ v - np.exp(2j * np.pi * theta) * (v @ u))


def rotation_algebra(q, p=1, tol=None):
    '''The algebra generated by the clock and shift pair.'''
    u, v = clock_shift(q, p)
    return alg.generate(q, [u, v], unital=True, tol=tol)


def system_from_json(obj, tol=None):
    ''' Parse a dynamical system. Accepted forms:
        {"kind": "translation", "group": G}
        {"kind": "coset", "group": G, "subgroup": [...]}
        {"kind": "trivial", "group": G, "algebra": <algebra>}
        {"group": G, "algebra": <algebra>, "unitaries": [<matrix>, ...]}
        {"group": G, "algebra": <algebra>, "maps": [<matrix>, ...]}
    where G is a built-in group name or a table object.
    '''
    G = parse_group(obj.get('group'))
    kind = obj.get('kind')
    if kind == 'translation':
        return translation_system(G, tol)
    if kind == 'coset':
        return coset_system(G, obj['subgroup'], tol)
    A = alg.algebra_from_json(obj['algebra'], tol)
    if kind == 'trivial':
        return trivial_system(A, G)
    if 'unitaries' in obj:
        w = np.array([mc.matrix_from_json(m) for m in obj['unitaries']])
        return make_system(A, G, unitaries=w, tol=tol)
    if 'maps' in obj:
        m = np.array([mc.matrix_from_json(x) for x in obj['maps']])
        return make_system(A, G, maps=m, tol=tol)
    raise mc.OperationError('system_from_json', 'need `kind`, `unitaries`'
                            + ' or `maps`')


def parse_group(obj):
    '''A group from a built-in name or a table object.'''
    if obj is None:
        raise mc.InvalidTableError('parse_group', 'missing group')
    if isinstance(obj, str):
        return grp.from_name(obj)
    return grp.group_from_json(obj)


def crossed_summary(cp):
    return {'group_order': cp.system.group.order,
            'algebra_dim': cp.system.algebra.dim,
            'dim': cp.algebra.dim,
            'ambient_dim': cp.algebra.ambient_dim}
