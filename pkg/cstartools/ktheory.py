'''ktheory

Collection of functions for K_0 of finite-dimensional C*-algebras and of
AF algebras given by Bratteli diagrams.

A projection p in M_k(A) over a decomposed algebra A is classified by its
dimension vector: entry i is rank(z_i p z_i) / m_i, with z_i the minimal
central projection and m_i the ambient multiplicity of block i (both
amplified to M_k). Murray-von Neumann equivalence is equality of dimension
vectors, and a *-homomorphism acts on K_0 by an integer multiplicity
matrix.

Bratteli levels are numbered from 1. All integer arithmetic is exact.

'''

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy import linalg
import sympy

from . import matcore as mc
from . import calculus as calc
from . import algebra as alg
from . import gns

logger = logging.getLogger(__name__)

# GL_n(C) is connected, so every finite-dimensional algebra has K_1 = 0
K1_FINITE_DIMENSIONAL = 0

DEFAULT_HORIZON = 8


class Verdict(str, Enum):
    EQUAL = 'equal'
    DISTINCT = 'distinct'
    POSITIVE = 'positive'
    NOT_POSITIVE = 'not_positive'
    UNDECIDED = 'undecided_at_horizon'


@dataclass(frozen=True)
class K0Class:
    ''' A formal difference of projection classes, stored as an integer
    vector with one entry per block (of an algebra or a Bratteli level).
    '''
    vector: tuple
    level: int = None

    def __post_init__(self):
        object.__setattr__(self, 'vector',
                           tuple(int(v) for v in self.vector))

    def _check(self, other, operation):
        if len(self.vector) != len(other.vector) or self.level != other.level:
            raise mc.LevelError(operation, 'classes live at different levels'
                                + ' or on different block counts')

    def __add__(self, other):
        self._check(other, 'K0Class.add')
        return K0Class([a + b for a, b in zip(self.vector, other.vector)],
                       self.level)

    def __sub__(self, other):
        self._check(other, 'K0Class.sub')
        return K0Class([a - b for a, b in zip(self.vector, other.vector)],
                       self.level)

    def __neg__(self):
        return K0Class([-a for a in self.vector], self.level)

    def __mul__(self, k):
        return K0Class([int(k) * a for a in self.vector], self.level)

    __rmul__ = __mul__

    def to_json(self):
        return {'level': self.level, 'vector': list(self.vector)}


def k0_from_json(obj):
    return K0Class(obj['vector'], obj.get('level'))


def idempotent_to_projection(e, tol=None):
    ''' The projection p = e e* z^-1 with z = 1 + (e - e*)(e* - e), which
    has the same range as the idempotent `e`.

    Raises
    ------
    NotIdempotentError
        If ||e^2 - e|| exceeds the tolerance.
    SingularError
        If z is numerically singular.
    '''
    tol = mc.get_tol(tol)
    e = mc.as_square(e, 'idempotent_to_projection')
    n = e.shape[0]
    norm = mc.op_norm(e)
    if mc.op_norm(e @ e - e) > tol.effective(norm ** 2, n):
        raise mc.NotIdempotentError('idempotent_to_projection', 'input is'
                                    + ' not idempotent')
    es = e.conj().T
    z = np.eye(n) + (e - es) @ (es - e)
    s = linalg.svdvals(z)
    if s[-1] <= tol.effective(s[0], n):
        raise mc.SingularError('idempotent_to_projection', 'z is singular')
    p = linalg.solve(z.T, (e @ es).T).T
    return (p + p.conj().T) / 2.


def equivalence_residuals(e, p):
    ''' With x = e and y = p: the defects of x y = p and y x = e. '''
    return {'xy': mc.op_norm(e @ p - p), 'yx': mc.op_norm(p @ e - e)}


def _amplified(z, k):
    return np.kron(np.eye(k), z)


def _check_projection(p, A, tol, operation):
    p = mc.as_square(p, operation)
    n = A.ambient_dim
    if p.shape[0] % n:
        raise mc.NotMemberError(operation, 'size ' + str(p.shape[0])
                                + ' is not a multiple of ' + str(n))
    if not mc.is_projection(p, tol):
        raise mc.NotProjectionError(operation, 'input is not a projection')
    k = p.shape[0] // n
    for i in range(k):
        for j in range(k):
            entry = p[i * n:(i + 1) * n, j * n:(j + 1) * n]
            if not alg.contains(A, entry, tol):
                raise mc.NotMemberError(operation, 'entry (' + str(i) + ', '
                                        + str(j) + ') is not in the algebra')
    return p, k


def dimension_vector(p, A, tol=None):
    ''' Per-block ranks rank(z_i p z_i) / m_i of a projection p in M_k(A).

    Returns
    -------
    vector : tuple of int

    Raises
    ------
    NotProjectionError, NotMemberError
    CertificationError
        If a rank falls into the rank gap or is not divisible by the
        multiplicity.
    '''
    tol = mc.get_tol(tol)
    A = alg.decomposed(A, tol=tol)
    p, k = _check_projection(p, A, tol, 'dimension_vector')
    out = []
    for b in A.blocks:
        z = _amplified(b.central_projection, k)
        r = mc.numerical_rank(z @ p @ z, tol, gap=1e3,
                              operation='dimension_vector')
        if r % b.multiplicity:
            raise mc.CertificationError('dimension_vector', 'rank ' + str(r)
                                        + ' is not a multiple of '
                                        + str(b.multiplicity))
        out.append(r // b.multiplicity)
    return tuple(out)


def k0_class(p, A, tol=None):
    return K0Class(dimension_vector(p, A, tol))


def mvn_equivalent(p, q, A, tol=None):
    ''' Murray-von Neumann equivalence of projections over A, possibly in
    different matrix amplifications.
    '''
    return dimension_vector(p, A, tol) == dimension_vector(q, A, tol)


def homotopy_partial_isometry(e, f, tol=None):
    ''' For projections with ||e - f|| < 1: the polar part u of f e, with
    u* u = e and u u* = f.
    '''
    tol = mc.get_tol(tol)
    e = mc.as_square(e, 'homotopy_partial_isometry')
    f = mc.as_square(f, 'homotopy_partial_isometry')
    dist = mc.op_norm(e - f)
    if dist >= 1.:
        raise mc.OperationError('homotopy_partial_isometry', '||e - f|| = '
                                + str(dist) + ' is not < 1')
    w = f @ e
    u, s, vh = linalg.svd(w)
    keep = s > tol.effective(1., len(s))
    return u[:, keep] @ vh[keep]


def nearby_projection(a, A=None, tol=None):
    ''' The projection h(a) for self-adjoint a with spectrum in
    (-1/4, 1/4) u (3/4, 5/4), h the indicator of the upper interval.

    Raises
    ------
    DomainError
        If the spectrum meets the excluded region.
    NotMemberError
        If `A` is given and h(a) is not in A.
    '''
    tol = mc.get_tol(tol)
    a = mc.as_square(a, 'nearby_projection')
    if not mc.is_selfadjoint(a, tol):
        raise mc.NotNormalError('nearby_projection', 'input is not'
                                + ' self-adjoint')
    h = (a + a.conj().T) / 2.
    lam = linalg.eigvalsh(h)
    low = (lam > -0.25) & (lam < 0.25)
    high = (lam > 0.75) & (lam < 1.25)
    if not np.all(low | high):
        raise mc.DomainError('nearby_projection', 'spectrum is not inside'
                             + ' (-1/4, 1/4) u (3/4, 5/4)')
    p = calc.func_calc(h, calc.indicator(interval=(0.75, 1.25)), tol)
    p = (p + p.conj().T) / 2.
    if A is not None and not alg.contains(A, p, tol):
        raise mc.NotMemberError('nearby_projection', 'h(a) is not in the'
                                + ' algebra')
    return p


@dataclass(eq=False)
class Homomorphism:
    ''' A map A -> B given by the images of the basis of A.

    Attributes
    ----------
    source, target : FDCAlgebra
    images : array
        Shape (dim A, N_B, N_B).
    '''
    source: alg.FDCAlgebra
    target: alg.FDCAlgebra
    images: np.ndarray


def certify(hom, tol=None, unital=True):
    ''' Check that `hom` is a *-homomorphism into its target, unital if
    requested.

    Raises
    ------
    CertificationError
    '''
    tol = mc.get_tol(tol)
    gns.certify_representation(gns.Representation(hom.source, hom.images),
                               tol)
    for m in hom.images:
        if not alg.contains(hom.target, m, tol):
            raise mc.CertificationError('certify', 'an image is outside the'
                                        + ' target algebra')
    if unital:
        one = apply(hom, np.eye(hom.source.ambient_dim))
        if not mc.is_zero(one - alg.unit(hom.target, tol), tol):
            raise mc.CertificationError('certify', 'homomorphism does not'
                                        + ' respect units')
    return hom


def apply(hom, x):
    c = alg.coefficients(hom.source, x)
    return np.einsum('k,kij->ij', c, hom.images)


def compose(psi, phi):
    '''psi o phi.'''
    return Homomorphism(phi.source, psi.target,
                        np.array([apply(psi, m) for m in phi.images]))


def identity_homomorphism(A):
    return Homomorphism(A, A, A.basis.copy())


def block_homomorphism(source_sizes, target_sizes, multiplicities, seed=0):
    ''' A unital homomorphism between standard algebras with the given
    multiplicity matrix M (shape len(target) x len(source)): target block j
    receives M[j, i] copies of source block i, conjugated by a random
    unitary.

    Raises
    ------
    OperationError
        If target_sizes != M source_sizes.
    '''
    mult = np.asarray(multiplicities, dtype=int).reshape(len(target_sizes),
                                                         len(source_sizes))
    src = [int(s) for s in source_sizes]
    tgt = [int(t) for t in target_sizes]
    if list(mult @ np.array(src)) != tgt:
        raise mc.OperationError('block_homomorphism', 'target sizes '
                                + str(tgt) + ' != M source sizes '
                                + str(list(mult @ np.array(src))))
    A = alg.standard_algebra(src)
    B = alg.standard_algebra(tgt)
    offsets_a = np.concatenate([[0], np.cumsum(src)])
    offsets_b = np.concatenate([[0], np.cumsum(tgt)])
    rng = np.random.default_rng(seed)
    unitaries = [mc.random_unitary(t, int(rng.integers(2 ** 31)))
                 for t in tgt]

    def image(a):
        out = np.zeros((B.ambient_dim, B.ambient_dim), dtype=complex)
        for j, t in enumerate(tgt):
            parts = []
            for i, s in enumerate(src):
                blk = a[offsets_a[i]:offsets_a[i + 1],
                        offsets_a[i]:offsets_a[i + 1]]
                parts.extend([blk] * mult[j, i])
            d = mc.direct_sum(*parts) if parts else np.zeros((0, 0))
            w = unitaries[j]
            out[offsets_b[j]:offsets_b[j + 1],
                offsets_b[j]:offsets_b[j + 1]] = w @ d @ w.conj().T
        return out

    return Homomorphism(A, B, np.array([image(b) for b in A.basis]))


def k0_of_hom(phi, seed=0, tol=None):
    ''' Multiplicity matrix of a unital *-homomorphism: column i is the
    dimension vector of phi(p_i) for a minimal projection p_i of block i.

    Returns
    -------
    matrix : array of int
        Shape (blocks of target, blocks of source).
    '''
    tol = mc.get_tol(tol)
    certify(phi, tol)
    A = alg.decomposed(phi.source, seed=seed, tol=tol)
    B = alg.decomposed(phi.target, seed=seed, tol=tol)
    cols = []
    for i in range(len(A.blocks)):
        p = alg.minimal_projections(A, i, seed=seed, tol=tol)[0]
        cols.append(dimension_vector(apply(phi, p), B, tol))
    return np.array(cols, dtype=int).T.reshape(len(B.blocks), len(A.blocks))


@dataclass(eq=False)
class BratteliDiagram:
    ''' An AF inductive system at the level of K_0.

    Attributes
    ----------
    levels : list of tuple
        Block sizes per level, level 1 first.
    maps : list of array
        maps[n - 1] is the multiplicity matrix from level n to level n + 1,
        of shape (len(level n + 1), len(level n)).
    unital : bool
        If True, sizes(n + 1) = M_n sizes(n) is required.
    stationary : bool
        If True, the last map repeats forever and levels beyond the stored
        ones are generated from it.
    '''
    levels: list
    maps: list
    unital: bool = False
    stationary: bool = False
    name: str = field(default='')

    def __post_init__(self):
        self.levels = [tuple(int(s) for s in lvl) for lvl in self.levels]
        self.maps = [np.array(m, dtype=object).reshape(
            len(self.levels[k + 1]) if k + 1 < len(self.levels)
            else np.shape(m)[0], -1) for k, m in enumerate(self.maps)]
        if len(self.maps) != len(self.levels) - 1 and not (
                self.stationary and len(self.maps) == len(self.levels)):
            raise mc.LevelError('BratteliDiagram', 'need one map between'
                                + ' consecutive levels')
        for k, m in enumerate(self.maps[:len(self.levels) - 1]):
            if m.shape != (len(self.levels[k + 1]), len(self.levels[k])):
                raise mc.LevelError('BratteliDiagram', 'map ' + str(k + 1)
                                    + ' has shape ' + str(m.shape))
            if np.any(m < 0):
                raise mc.OperationError('BratteliDiagram', 'multiplicities'
                                        + ' must be nonnegative')
            if self.unital and list(m.dot(np.array(self.levels[k],
                                                   dtype=object))) \
                    != list(self.levels[k + 1]):
                raise mc.CertificationError('BratteliDiagram', 'map '
                                            + str(k + 1) + ' is not unital')

    @property
    def depth(self):
        '''Number of levels, None if the diagram is stationary.'''
        return None if self.stationary else len(self.levels)

    def map_at(self, n):
        '''Multiplicity matrix from level n to level n + 1.'''
        if n < 1 or (self.depth is not None and n >= self.depth):
            raise mc.LevelError('map_at', 'no map leaves level ' + str(n))
        return self.maps[min(n - 1, len(self.maps) - 1)]

    def block_count(self, n):
        self.check_level(n)
        if n <= len(self.levels):
            return len(self.levels[n - 1])
        return self.map_at(n - 1).shape[0]

    def check_level(self, n):
        if n < 1 or (self.depth is not None and n > self.depth):
            raise mc.LevelError('BratteliDiagram', 'level ' + str(n)
                                + ' out of range')


def car_diagram(levels=8):
    '''M_1 -> M_2 -> M_4 -> ..., a -> diag(a, a); K_0 = Z[1/2].'''
    return BratteliDiagram([(2 ** k,) for k in range(levels)],
                           [[[2]]] * (levels - 1), unital=True,
                           stationary=True, name='CAR')


def compacts_diagram(levels=8):
    '''M_1 -> M_2 -> M_3 -> ... by corner embeddings; K_0 = Z.'''
    return BratteliDiagram([(k + 1,) for k in range(levels)],
                           [[[1]]] * (levels - 1), unital=False,
                           stationary=True, name='compacts')


def cantor_diagram(levels=6):
    ''' C({0,1}^(n-1)) at level n, each point splitting in two; K_0 of the
    limit is the group of locally constant integer functions on the Cantor
    set.
    '''
    sizes = [(1,) * 2 ** k for k in range(levels)]
    maps = []
    for k in range(levels - 1):
        m = np.zeros((2 ** (k + 1), 2 ** k), dtype=int)
        m[np.arange(2 ** (k + 1)), np.arange(2 ** (k + 1)) // 2] = 1
        maps.append(m)
    return BratteliDiagram(sizes, maps, unital=True, name='cantor')


def bratteli_to_json(d):
    return {'levels': [list(lvl) for lvl in d.levels],
            'maps': [[[int(v) for v in row] for row in m] for m in d.maps],
            'unital': d.unital, 'stationary': d.stationary}


def bratteli_from_json(obj):
    ''' Parse `{"levels": [[sizes], ...], "maps": [[[ints]], ...]}` with
    optional "unital" and "stationary" flags, or a built-in
    `{"kind": "car" | "compacts" | "cantor", "levels": L}`.
    '''
    kind = obj.get('kind')
    builders = {'car': car_diagram, 'compacts': compacts_diagram,
                'cantor': cantor_diagram}
    if kind is not None:
        if kind not in builders:
            raise mc.OperationError('bratteli_from_json', 'unknown diagram `'
                                    + str(kind) + '`')
        return builders[kind](int(obj.get('levels', 8)))
    try:
        return BratteliDiagram(obj['levels'], obj['maps'],
                               bool(obj.get('unital', False)),
                               bool(obj.get('stationary', False)))
    except KeyError as err:
        raise mc.OperationError('bratteli_from_json', 'missing field '
                                + str(err)) from err


def _check_class(d, x, operation):
    if x.level is None:
        raise mc.LevelError(operation, 'class has no level')
    d.check_level(x.level)
    if len(x.vector) != d.block_count(x.level):
        raise mc.LevelError(operation, 'vector of length '
                            + str(len(x.vector)) + ' at level '
                            + str(x.level) + ' with '
                            + str(d.block_count(x.level)) + ' blocks')


def propagate(d, x, level):
    ''' Image of the class `x` at a later `level`. '''
    _check_class(d, x, 'propagate')
    d.check_level(level)
    if level < x.level:
        raise mc.LevelError('propagate', 'cannot propagate from level '
                            + str(x.level) + ' back to ' + str(level))
    v = np.array(x.vector, dtype=object)
    for n in range(x.level, level):
        v = d.map_at(n).dot(v)
    return K0Class([int(a) for a in v], level)


def _injective(m):
    return sympy.Matrix(m.tolist()).rank() == m.shape[1]


def _injective_from(d, n):
    ''' True if every map leaving a level >= n is injective. '''
    if d.depth is not None:
        return all(_injective(d.map_at(k)) for k in range(n, d.depth))
    stored = range(min(n, len(d.maps)), len(d.maps) + 1)
    return all(_injective(d.map_at(k)) for k in stored)


def _last_level(d, start, horizon):
    end = start + horizon
    return end if d.depth is None else min(end, d.depth)


def bratteli_k0_equal(d, x, y, horizon=DEFAULT_HORIZON):
    ''' Decide whether two classes agree in K_0 of the inductive limit.

    Both are propagated to level max(m, n) and onward. `equal` is returned
    at the first level where they coincide. `distinct` needs a certificate:
    every map from the current level onward injective (then the classes can
    never meet), or the last level of a finite diagram reached.

    Returns
    -------
    verdict : Verdict
    '''
    _check_class(d, x, 'bratteli_k0_equal')
    _check_class(d, y, 'bratteli_k0_equal')
    start = max(x.level, y.level)
    for n in range(start, _last_level(d, start, horizon) + 1):
        a = propagate(d, x, n)
        b = propagate(d, y, n)
        if a.vector == b.vector:
            return Verdict.EQUAL
        if (d.depth is not None and n == d.depth) or _injective_from(d, n):
            return Verdict.DISTINCT
    logger.info('no decision within %d levels', horizon)
    return Verdict.UNDECIDED


def bratteli_k0_positive(d, x, horizon=DEFAULT_HORIZON):
    ''' Decide whether a class lies in the positive cone of the limit.

    `positive` if some image is componentwise >= 0; `not_positive` if an
    image is nonzero and <= 0 with injective maps onward (nonnegative
    injective maps keep it so), or the last level of a finite diagram is
    reached.
    '''
    _check_class(d, x, 'bratteli_k0_positive')
    for n in range(x.level, _last_level(d, x.level, horizon) + 1):
        v = propagate(d, x, n).vector
        if all(a >= 0 for a in v):
            return Verdict.POSITIVE
        if d.depth is not None and n == d.depth:
            return Verdict.NOT_POSITIVE
        if all(a <= 0 for a in v) and _injective_from(d, n):
            return Verdict.NOT_POSITIVE
    return Verdict.UNDECIDED


def car_value(x):
    ''' The image k / 2^(level - 1) of a CAR class in Z[1/2]. '''
    if x.level is None or len(x.vector) != 1:
        raise mc.LevelError('car_value', 'need a CAR class with a level')
    return Fraction(x.vector[0], 2 ** (x.level - 1))


def index_map(defect_ker, defect_coker):
    ''' The index map on formal data: [1 - v* v] - [1 - v v*]. '''
    return defect_ker - defect_coker


@dataclass(eq=False)
class Extension:
    ''' A finite-dimensional extension 0 -> I -> E -> E/I -> 0 with the
    ideal I the sum of the blocks `ideal_blocks` of E.
    '''
    algebra: alg.FDCAlgebra
    ideal_blocks: tuple

    def __post_init__(self):
        self.algebra = alg.decomposed(self.algebra)
        self.ideal_blocks = tuple(sorted(int(i) for i in self.ideal_blocks))
        count = len(self.algebra.blocks)
        if any(i < 0 or i >= count for i in self.ideal_blocks):
            raise mc.OperationError('Extension', 'ideal blocks must lie in'
                                    + ' 0..' + str(count - 1))

    def projection(self, quotient=False):
        n = self.algebra.ambient_dim
        out = np.zeros((n, n), dtype=complex)
        for i, b in enumerate(self.algebra.blocks):
            if (i in self.ideal_blocks) != quotient:
                out += b.central_projection
        return out


def index_map_matrix(v, ext, tol=None):
    ''' [1 - v* v] - [1 - v v*] in K_0 of the ideal, for a partial isometry
    v in M_k(E) whose image in M_k(E/I) is unitary.

    Returns
    -------
    cls : K0Class
        One entry per ideal block.

    Raises
    ------
    CertificationError
        If v is not a partial isometry or its quotient image is not unitary.
    '''
    tol = mc.get_tol(tol)
    v = mc.as_square(v, 'index_map_matrix')
    E = ext.algebra
    n = E.ambient_dim
    if v.shape[0] % n:
        raise mc.NotMemberError('index_map_matrix', 'size is not a multiple'
                                + ' of ' + str(n))
    k = v.shape[0] // n
    if not mc.classify(v, tol)['partial_isometry']:
        raise mc.CertificationError('index_map_matrix', 'v is not a partial'
                                    + ' isometry')
    zq = _amplified(ext.projection(quotient=True), k)
    vq = zq @ v @ zq
    if not (mc.is_zero(vq.conj().T @ vq - zq, tol)
            and mc.is_zero(vq @ vq.conj().T - zq, tol)):
        raise mc.CertificationError('index_map_matrix', 'quotient image of v'
                                    + ' is not unitary')
    one = _amplified(alg.unit(E, tol), k)
    ker = dimension_vector(one - v.conj().T @ v, E, tol)
    coker = dimension_vector(one - v @ v.conj().T, E, tol)
    return K0Class([ker[i] - coker[i] for i in ext.ideal_blocks])
