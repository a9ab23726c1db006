'''dummy_alg

Create small test algebras, groups and K-theory data together with the
values expected from them, e.g. the block sizes of a group algebra.

'''
import numpy as np
from scipy import linalg

from . import matcore as mc
from . import algebra as alg
from . import groups as grp
from . import ktheory as kt


def _hidden(mats, seed):
    '''Conjugate `mats` by a random unitary so that no block structure
    is visible in the standard basis.'''
    n = mats[0].shape[0]
    u = mc.random_unitary(n, seed)
    return [u @ m @ u.conj().T for m in mats]


def algebras():
    ''' Generated algebras with their expected block structure.

    Returns
    -------
    fixtures : dict
        Maps a name to (A, expected) where expected holds 'dim', 'sizes'
        and 'multiplicities', sorted by block size.
    '''
    a2 = mc.random_matrix(2, seed=1)
    out = {}
    out['M2'] = (alg.generate(2, [a2]),
                 {'dim': 4, 'sizes': [2], 'multiplicities': [1]})
    out['C2'] = (alg.generate(2, _hidden([np.diag([1., 2.])], 2)),
                 {'dim': 2, 'sizes': [1, 1], 'multiplicities': [1, 1]})
    out['M3'] = (alg.generate(3, [mc.random_matrix(3, seed=3)]),
                 {'dim': 9, 'sizes': [3], 'multiplicities': [1]})
    gen = mc.direct_sum(np.array([[3.]]), a2)
    out['C+M2'] = (alg.generate(3, _hidden([gen], 4)),
                   {'dim': 5, 'sizes': [1, 2], 'multiplicities': [1, 1]})
    out['M2xI2'] = (alg.generate(4, _hidden([np.kron(a2, np.eye(2))], 5)),
                    {'dim': 4, 'sizes': [2], 'multiplicities': [2]})
    gen = mc.direct_sum(np.kron(np.array([[2.]]), np.eye(2)), a2)
    out['C2+M2'] = (alg.generate(4, _hidden([gen], 6)),
                    {'dim': 5, 'sizes': [1, 2], 'multiplicities': [2, 1]})
    return out


def groups():
    ''' Built-in groups with the expected sizes of the irreducible
    representations, in increasing order.
    '''
    return {'Z3': (grp.cyclic(3), [1, 1, 1]),
            'Z4': (grp.cyclic(4), [1, 1, 1, 1]),
            'Z2xZ2': (grp.from_name('Z2xZ2'), [1, 1, 1, 1]),
            'S3': (grp.symmetric(3), [1, 1, 2]),
            'D4': (grp.dihedral(4), [1, 1, 1, 1, 2]),
            'Q8': (grp.quaternion(), [1, 1, 1, 1, 2])}


def idempotent(n, rank, seed=0, cond=1e3):
    ''' S diag(1, ..., 1, 0, ..., 0) S^-1 with a random invertible S whose
    condition number is at most `cond`.
    '''
    rng = np.random.default_rng(seed)
    u = mc.random_unitary(n, int(rng.integers(2 ** 31)))
    v = mc.random_unitary(n, int(rng.integers(2 ** 31)))
    s = u @ np.diag(np.geomspace(1., cond, n) ** rng.uniform(0., 1.)) @ v
    d = np.diag([1.] * rank + [0.] * (n - rank))
    return s @ d @ linalg.inv(s)


def projection(n, rank, seed=0):
    '''A random orthogonal projection of the given rank.'''
    u = mc.random_unitary(n, seed)[:, :rank]
    return u @ u.conj().T


def extension(seed=0):
    ''' The extension 0 -> M_3 -> M_2 (+) M_3 -> M_2 -> 0 with a random
    partial isometry v = w (+) x, w unitary in M_2 and x a partial isometry
    of random rank in M_3.

    Returns
    -------
    ext : Extension
    v : array
    expected : K0Class
        The index of v, always 0 in finite dimension.
    '''
    rng = np.random.default_rng(seed)
    E = alg.standard_algebra([2, 3])
    ext = kt.Extension(E, (1,))
    w = mc.random_unitary(2, int(rng.integers(2 ** 31)))
    rank = int(rng.integers(0, 4))
    left = mc.random_unitary(3, int(rng.integers(2 ** 31)))
    right = mc.random_unitary(3, int(rng.integers(2 ** 31)))
    x = left @ np.diag([1.] * rank + [0.] * (3 - rank)) @ right
    return ext, mc.direct_sum(w, x), kt.K0Class((0,))


def toeplitz():
    ''' Formal index data of the unilateral shift: 1 - S* S = 0 and
    1 - S S* = p, a rank one projection in the compacts, so the index is
    -[p].
    '''
    return kt.K0Class((0,)), kt.K0Class((1,)), kt.K0Class((-1,))
