'''calculus

Collection of functions for the spectral radius, positivity, square roots,
polar decomposition and the continuous functional calculus of normal
matrices. All of them go through the unitary diagonalization of
`matcore.diagonalize_normal`.

'''

import logging

import numpy as np

from . import matcore as mc

logger = logging.getLogger(__name__)


class ScalarFunction:
    ''' A map from complex numbers to complex numbers, evaluated on the
    spectrum of a matrix.

    Parameters
    ----------
    func : callable
        Vectorized function of a complex array.
    name : str
        Name used in reports.
    domain : callable or None
        Predicate on a single complex number; the functional calculus
        refuses to evaluate outside of it.
    '''

    def __init__(self, func, name='f', domain=None):
        self.func = func
        self.name = name
        self.domain = domain

    def __call__(self, z):
        return self.func(z)

    def __repr__(self):
        return 'ScalarFunction(' + self.name + ')'


def _principal_log_domain(eps):
    return lambda z: not (z.real <= eps and abs(z.imag) <= eps)


def indicator(points=None, interval=None, radius=1e-8):
    ''' Indicator function of a finite set of points and/or a real
    interval (open, given as (low, high)).
    '''
    points = [] if points is None else [complex(p) for p in points]

    def func(z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for p in points:
            out[np.abs(z - p) <= radius] = 1.
        if interval is not None:
            inside = ((z.real > interval[0]) & (z.real < interval[1])
                      & (np.abs(z.imag) <= radius))
            out[inside] = 1.
        return out
    return ScalarFunction(func, 'indicator')


def get_function(name, t=1., points=None, interval=None, eps=0.):
    ''' Resolve a built-in function by name.

    Parameters
    ----------
    name : str
        One of 'identity', 'one', 'conj', 'sqrt', 'exp', 'log', 'abs',
        'expi' (z -> exp(i t z)) and 'indicator'.
    t : float
        Parameter of 'expi'.
    points, interval
        Parameters of 'indicator'.
    eps : float
        Distance to the cut (-inf, 0] that 'log' refuses.
    '''
    if name == 'identity':
        return ScalarFunction(lambda z: np.asarray(z, dtype=complex), name)
    if name == 'one':
        return ScalarFunction(lambda z: np.ones(np.shape(z), dtype=complex),
                              name)
    if name == 'conj':
        return ScalarFunction(np.conj, name)
    if name == 'sqrt':
        return ScalarFunction(
            lambda z: np.sqrt(np.clip(np.real(z), 0., None)) + 0j, name,
            domain=lambda z: abs(z.imag) <= max(eps, 1e-12)
            and z.real >= -max(eps, 1e-12))
    if name == 'exp':
        return ScalarFunction(np.exp, name)
    if name == 'log':
        return ScalarFunction(np.log, name,
                              domain=_principal_log_domain(eps))
    if name == 'abs':
        return ScalarFunction(lambda z: np.abs(z) + 0j, name)
    if name == 'expi':
        return ScalarFunction(lambda z: np.exp(1j * t * np.asarray(z)),
                              'expi')
    if name == 'indicator':
        return indicator(points, interval)
    raise mc.OperationError('get_function', 'unknown function `' + str(name)
                            + '`')


def spectral_radius(a, method='eig', n_max=32, tol=None):
    ''' Spectral radius of a square matrix.

    Parameters
    ----------
    a : array
        Square matrix.
    method : str
        'eig' for max |lambda| over the eigenvalues, 'power_norm' for
        ||a^n_max||^(1/n_max) computed by repeated squaring.
    n_max : int
        Power used by 'power_norm', must be a power of two.
    tol : Tolerance or None

    Returns
    -------
    r : float
    '''
    a = mc.as_square(a, 'spectral_radius')
    if method == 'eig':
        lam = mc.spectrum(a, tol).eigenvalues
        return float(np.max(np.abs(lam)))
    if method != 'power_norm':
        raise mc.OperationError('spectral_radius', 'unknown method `'
                                + str(method) + '`')
    if n_max < 1:
        raise mc.OperationError('spectral_radius', '`n_max` must be >= 1,'
                                + ' got ' + str(n_max))
    k = int(round(np.log2(n_max)))
    if 2 ** k != n_max:
        raise mc.OperationError('spectral_radius', '`n_max` must be a power'
                                + ' of two, got ' + str(n_max))
    scale = mc.op_norm(a)
    if scale == 0.:
        return 0.
    # work with a / ||a|| so that the powers neither overflow nor underflow
    b = a / scale
    for _ in range(k):
        b = b @ b
        nb = mc.op_norm(b)
        if nb == 0.:
            return 0.
    return float(scale * nb ** (1. / n_max)) if k > 0 else scale


def is_positive(a, tol=None):
    ''' True iff `a` is self-adjoint and its smallest eigenvalue is
    >= -tolerance.
    '''
    tol = mc.get_tol(tol)
    a = mc.as_square(a, 'is_positive')
    if not mc.is_selfadjoint(a, tol):
        return False
    h = (a + a.conj().T) / 2.
    lam = np.linalg.eigvalsh(h)
    return bool(lam[0] >= -tol.effective(mc.op_norm(a), a.shape[0]))


def func_calc(a, f, tol=None):
    ''' Continuous functional calculus f(a) = U f(Lambda) U* of a normal
    matrix.

    Eigenvalues are clustered within the effective tolerance and `f` is
    evaluated once per cluster at the cluster mean.

    Parameters
    ----------
    a : array
        Normal square matrix.
    f : ScalarFunction, callable or str
        Function to apply; strings are resolved with `get_function`.
    tol : Tolerance or None

    Returns
    -------
    fa : array
    '''
    tol = mc.get_tol(tol)
    a = mc.as_square(a, 'func_calc')
    n = a.shape[0]
    eps = tol.effective(mc.op_norm(a), n)
    if isinstance(f, str):
        f = get_function(f, eps=eps)
    elif not isinstance(f, ScalarFunction):
        f = ScalarFunction(f)
    if not mc.is_normal(a, tol):
        raise mc.NotNormalError('func_calc', 'functional calculus needs a'
                                + ' normal matrix')
    lam, u = mc.diagonalize_normal(a, tol)
    values = np.zeros(n, dtype=complex)
    logger.debug('applying %r to %d eigenvalues', f, n)
    selfadjoint = mc.is_selfadjoint(a, tol)
    for cluster in mc.clusters(lam, eps):
        rep = complex(np.mean(lam[cluster]))
        if selfadjoint:
            rep = complex(rep.real, 0.)
        if f.domain is not None and not f.domain(rep):
            raise mc.DomainError('func_calc', repr(f) + ' is undefined at'
                                 + ' eigenvalue ' + str(rep))
        val = complex(np.asarray(f(np.array([rep])))[0])
        if not np.isfinite(val):
            raise mc.DomainError('func_calc', repr(f) + ' is not finite at'
                                 + ' eigenvalue ' + str(rep))
        values[cluster] = val
    return (u * values[np.newaxis, :]) @ u.conj().T


def sqrt_positive(a, tol=None):
    ''' The unique positive square root of a positive matrix. Eigenvalues
    in [-tolerance, 0) are clamped to 0.

    Raises
    ------
    NotPositiveError
        If `a` is not positive within tolerance.
    '''
    tol = mc.get_tol(tol)
    a = mc.as_square(a, 'sqrt_positive')
    if not is_positive(a, tol):
        raise mc.NotPositiveError('sqrt_positive', 'input is not positive')
    h = (a + a.conj().T) / 2.
    b = func_calc(h, get_function('sqrt', eps=tol.effective(
        mc.op_norm(a), a.shape[0])), tol)
    return (b + b.conj().T) / 2.


def polar_unitary(a, tol=None):
    ''' Unitary part u = a (a* a)^(-1/2) of an invertible matrix.

    Raises
    ------
    SingularError
        If the smallest singular value of `a` is below tolerance.
    '''
    return polar_path(a, 1., tol, operation='polar_unitary')


def polar_path(a, t, tol=None, operation='polar_path'):
    ''' The point a |a|^(-t) of the path of invertibles joining `a`
    (t = 0) to its polar unitary (t = 1).
    '''
    tol = mc.get_tol(tol)
    a = mc.as_square(a, operation)
    n = a.shape[0]
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= tol.effective(s[0], n):
        raise mc.SingularError(operation, 'input is singular (smallest'
                               + ' singular value ' + str(s[-1]) + ')')
    ata = a.conj().T @ a
    ata = (ata + ata.conj().T) / 2.
    inv_root = func_calc(ata, ScalarFunction(
        lambda z: np.real(z) ** (-t / 2.) + 0j, 'abs^-t'), tol)
    return a @ inv_root


def exp_unitary(h, t=1., tol=None):
    '''The unitary exp(i t h) of a self-adjoint matrix `h`.'''
    tol = mc.get_tol(tol)
    h = mc.as_square(h, 'exp_unitary')
    if not mc.is_selfadjoint(h, tol):
        raise mc.OperationError('exp_unitary', 'generator must be'
                                + ' self-adjoint')
    return func_calc((h + h.conj().T) / 2., get_function('expi', t=t), tol)
