'''matcore

Collection of functions for dense complex matrix arithmetic, norms,
eigendecompositions and the shared tolerance policy. Every other module of
this package builds on the functions defined here.

Matrices are plain `numpy.ndarray` objects of dtype complex128. The JSON
interchange format is
    {"rows": N, "cols": M, "data": [[re, im], ...]}
with the entries listed in row-major order.

'''

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

logger = logging.getLogger(__name__)


class OperationError(ValueError):
    ''' Base class of all domain errors. `operation` names the library
    operation that raised the error.
    '''

    def __init__(self, operation, message):
        self.operation = operation
        super().__init__('`' + operation + '`: ' + message)


class NotSquareError(OperationError):
    pass


class NotNormalError(OperationError):
    pass


class NotPositiveError(OperationError):
    pass


class SingularError(OperationError):
    pass


class DomainError(OperationError):
    pass


class CertificationError(OperationError):
    pass


class RetryBudgetError(OperationError):
    pass


class NotUnitalError(OperationError):
    pass


class NotMemberError(OperationError):
    pass


class NotProjectionError(OperationError):
    pass


class NotIdempotentError(OperationError):
    pass


class DegenerateError(OperationError):
    pass


class GroupMismatchError(OperationError):
    pass


class NotAbelianError(OperationError):
    pass


class NotSubgroupError(OperationError):
    pass


class InvalidTableError(OperationError):
    pass


class CovarianceError(OperationError):
    pass


class LevelError(OperationError):
    pass


@dataclass(frozen=True)
class Tolerance:
    ''' Tolerance policy shared by all modules.

    Parameters
    ----------
    base_eps : float
        Base tolerance, must be positive. Default is 1e-10.

    The effective tolerance used for a decision about an input of norm
    `norm` living in dimension `dim` is
        base_eps * max(1, norm) * dim
    '''
    base_eps: float = 1e-10

    def __post_init__(self):
        if not self.base_eps > 0:
            raise OperationError('Tolerance', '`base_eps` must be positive,'
                                 + ' got ' + str(self.base_eps))

    def effective(self, norm=1., dim=1):
        return self.base_eps * max(1., float(norm)) * max(1, int(dim))


DEFAULT_TOL = Tolerance()


def get_tol(tol=None):
    '''Return `tol` or the default tolerance if `tol` is None. Floats are
    accepted as a shorthand for `Tolerance(base_eps=tol)`.
    '''
    if tol is None:
        return DEFAULT_TOL
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


@dataclass(frozen=True)
class SpectrumResult:
    ''' Eigenvalues of a square matrix.

    Attributes
    ----------
    eigenvalues : array
        Eigenvalues with multiplicity, sorted by (real, imag) part.
    residuals : array
        Residual per eigenvalue. For normal input ||a u - lambda u|| of the
        unit eigenvector u, otherwise the smallest singular value of
        a - lambda.
    eigenvectors : array or None
        Unitary diagonalizer (columns ordered like `eigenvalues`) for normal
        input, None otherwise.
    tolerance : float
        Effective tolerance the result was accepted with.
    '''
    eigenvalues: np.ndarray
    residuals: np.ndarray
    eigenvectors: np.ndarray = None
    tolerance: float = 0.

    @property
    def accepted(self):
        return bool(np.all(self.residuals <= self.tolerance))


def as_matrix(a, operation='as_matrix'):
    '''Convert `a` to a finite 2D complex array.'''
    a = np.array(a, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise OperationError(operation, 'input must be a non-empty 2D'
                             + ' matrix, got shape ' + str(a.shape))
    if not np.all(np.isfinite(a)):
        raise OperationError(operation, 'input contains NaN or Inf entries')
    return a


def as_square(a, operation='as_square'):
    a = as_matrix(a, operation)
    if a.shape[0] != a.shape[1]:
        raise NotSquareError(operation, 'input must be square, got shape '
                             + str(a.shape))
    return a


def adjoint(a):
    ''' Conjugate transpose of `a`.

    Parameters
    ----------
    a : array
        Complex matrix.

    Returns
    -------
    a_star : array
        The adjoint a*; adjoint(adjoint(a)) equals `a` exactly.
    '''
    return as_matrix(a, 'adjoint').conj().T


def op_norm(a):
    '''Operator norm (largest singular value) of `a`.'''
    a = as_matrix(a, 'op_norm')
    return float(linalg.svdvals(a)[0])


def hs_inner(a, b):
    '''Hilbert-Schmidt inner product tr(b* a), linear in `a`.'''
    return complex(np.vdot(np.asarray(b), np.asarray(a)))


def is_zero(a, tol=None, norm=1., dim=None):
    '''True if the operator norm of `a` is below the effective tolerance.'''
    tol = get_tol(tol)
    a = np.asarray(a)
    if dim is None:
        dim = a.shape[0]
    return op_norm(a) <= tol.effective(norm, dim)


def numerical_rank(a, tol=None, gap=None, operation='numerical_rank'):
    ''' Rank of `a` judged by singular values.

    Parameters
    ----------
    a : array
        Matrix.
    tol : Tolerance or None
        Tolerance policy; the threshold is the effective tolerance of `a`.
    gap : float or None
        If given, every singular value must be either below the threshold
        or above `gap` times the threshold. Otherwise a
        `CertificationError` is raised.

    Returns
    -------
    rank : int
    '''
    tol = get_tol(tol)
    a = as_matrix(a, operation)
    s = linalg.svdvals(a)
    thr = tol.effective(s[0] if len(s) else 0., max(a.shape))
    if gap is not None:
        ambiguous = (s > thr) & (s < gap * thr)
        if ambiguous.any():
            raise CertificationError(operation, 'singular values '
                                     + str(s[ambiguous]) + ' fall inside the'
                                     + ' rank gap (' + str(thr) + ', '
                                     + str(gap * thr) + ')')
    return int(np.sum(s > thr))


def orthonormal_span(matrices, tol=None, dim=None):
    ''' Hilbert-Schmidt orthonormal basis of the span of `matrices`.

    Parameters
    ----------
    matrices : sequence of arrays
        Matrices of equal shape (N, N).
    tol : Tolerance or None
        Singular values below the effective tolerance are dropped.
    dim : int or None
        Ambient dimension N, only needed if `matrices` is empty.

    Returns
    -------
    basis : array
        Array of shape (d, N, N) with d the dimension of the span.
    '''
    tol = get_tol(tol)
    matrices = [np.asarray(m, dtype=complex) for m in matrices]
    if len(matrices) == 0:
        return np.zeros((0, dim, dim), dtype=complex)
    n = matrices[0].shape[0]
    stack = np.array([m.ravel() for m in matrices]).T
    u, s, _ = linalg.svd(stack, full_matrices=False)
    scale = max(np.max(np.abs(stack)), 1.)
    keep = s > tol.effective(scale, n)
    basis = u[:, keep].T.reshape(-1, n, n)
    return fix_phase(basis)


def fix_phase(basis):
    '''Rotate every basis matrix so that its largest entry is real positive.
    This makes orthonormal bases reproducible across LAPACK builds.
    '''
    out = basis.copy()
    for k in range(len(out)):
        flat = out[k].ravel()
        j = np.argmax(np.abs(flat) > np.abs(flat).max() * (1 - 1e-8))
        out[k] = out[k] * (abs(flat[j]) / flat[j])
    return out


def project_onto(basis, matrices):
    ''' Orthogonal projection of `matrices` onto the span of an orthonormal
    `basis`.

    Returns
    -------
    coeffs : array
        Coefficients of shape (len(matrices), d).
    residuals : array
        Hilbert-Schmidt norm of the part of each matrix outside the span.
    '''
    flat_b = basis.reshape(len(basis), -1)
    flat_m = np.asarray(matrices, dtype=complex).reshape(len(matrices), -1)
    coeffs = flat_m @ flat_b.conj().T
    rest = flat_m - coeffs @ flat_b
    return coeffs, np.linalg.norm(rest, axis=1)


def diagonalize_normal(a, tol=None):
    ''' Unitary diagonalization of a normal matrix via the complex Schur
    form.

    Eigenvalues closer than the effective tolerance form a cluster; the
    Schur vectors of every cluster are re-orthonormalized so that the
    returned diagonalizer is unitary to working precision.

    Parameters
    ----------
    a : array
        Normal square matrix.
    tol : Tolerance or None

    Returns
    -------
    eigenvalues : array
        Eigenvalues sorted by (real, imag) part.
    unitary : array
        Unitary matrix U with a U = U diag(eigenvalues).
    '''
    tol = get_tol(tol)
    a = as_square(a, 'diagonalize_normal')
    n = a.shape[0]
    norm = op_norm(a)
    eps = tol.effective(norm, n)
    if not is_normal(a, tol):
        raise NotNormalError('diagonalize_normal', 'input is not normal'
                             + ' within tolerance ' + str(eps))
    t, z = linalg.schur(a, output='complex')
    lam = np.diag(t).copy()
    order = np.lexsort((np.round(lam.imag / eps), np.round(lam.real / eps)))
    lam = lam[order]
    z = z[:, order]
    for cluster in clusters(lam, eps):
        if len(cluster) > 1:
            logger.debug('re-orthonormalizing a cluster of %d eigenvalues',
                         len(cluster))
            q, _ = linalg.qr(z[:, cluster], mode='economic')
            z[:, cluster] = q
    return lam, z


def clusters(values, radius):
    ''' Group `values` into clusters: consecutive values (in the given
    order) are merged while they lie within `radius` of the running cluster
    mean.

    Returns
    -------
    clusters : list of lists of int
        Index lists, one per cluster.
    '''
    values = np.asarray(values)
    remaining = list(range(len(values)))
    out = []
    while remaining:
        i = remaining.pop(0)
        group = [i]
        for j in list(remaining):
            if abs(values[j] - np.mean(values[group])) <= radius:
                group.append(j)
                remaining.remove(j)
        out.append(group)
    return out


def spectrum(a, tol=None):
    ''' Eigenvalues of a square matrix with multiplicity.

    For normal input the unitary diagonalizer is kept in the result so
    that `calculus` can reuse it.

    Parameters
    ----------
    a : array
        Square matrix.
    tol : Tolerance or None

    Returns
    -------
    result : SpectrumResult
    '''
    tol = get_tol(tol)
    a = as_square(a, 'spectrum')
    n = a.shape[0]
    eps = tol.effective(op_norm(a), n)
    if is_normal(a, tol):
        lam, u = diagonalize_normal(a, tol)
        residuals = np.linalg.norm(a @ u - u * lam[np.newaxis, :], axis=0)
        if is_selfadjoint(a, tol):
            lam = lam.real + 0j
        return SpectrumResult(lam, residuals, u, eps)
    lam = linalg.eigvals(a)
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    residuals = np.array([linalg.svdvals(a - l * np.eye(n))[-1]
                          for l in lam])
    logger.info('spectrum of a non-normal matrix, largest residual %g',
                float(residuals.max()) if n else 0.)
    # non-normal eigenvalues are ill-conditioned; accept at sqrt scale
    return SpectrumResult(lam, residuals, None, max(eps, np.sqrt(eps)))


def resolvent(a, lam, tol=None):
    ''' Resolvent (a - lam)^{-1}.

    Raises
    ------
    SingularError
        If `lam` lies within tolerance of the spectrum of `a`.
    '''
    tol = get_tol(tol)
    a = as_square(a, 'resolvent')
    n = a.shape[0]
    shifted = a - lam * np.eye(n)
    smin = linalg.svdvals(shifted)[-1]
    if smin <= tol.effective(op_norm(a), n):
        raise SingularError('resolvent', str(lam) + ' lies in the spectrum')
    return linalg.solve(shifted, np.eye(n))


def _defect(x, y):
    return op_norm(x - y)


def is_selfadjoint(a, tol=None):
    tol = get_tol(tol)
    a = as_square(a, 'classify')
    return _defect(a, a.conj().T) <= tol.effective(op_norm(a), a.shape[0])


def is_normal(a, tol=None):
    tol = get_tol(tol)
    a = as_square(a, 'classify')
    ah = a.conj().T
    nrm = op_norm(a)
    return _defect(a @ ah, ah @ a) <= tol.effective(nrm ** 2, a.shape[0])


def is_projection(a, tol=None):
    tol = get_tol(tol)
    a = as_square(a, 'classify')
    eps = tol.effective(op_norm(a) ** 2, a.shape[0])
    return (_defect(a @ a, a) <= eps) and (_defect(a, a.conj().T) <= eps)


def classify(a, tol=None):
    ''' Classify a square matrix.

    Parameters
    ----------
    a : array
        Square matrix.
    tol : Tolerance or None

    Returns
    -------
    flags : dict
        Booleans for 'selfadjoint', 'normal', 'unitary', 'projection',
        'isometry' and 'partial_isometry', each true iff the defining
        identity holds within the effective tolerance.
    '''
    tol = get_tol(tol)
    a = as_square(a, 'classify')
    n = a.shape[0]
    ah = a.conj().T
    eye = np.eye(n)
    eps = tol.effective(op_norm(a) ** 2, n)
    ata = ah @ a
    isometry = _defect(ata, eye) <= eps
    return {'selfadjoint': is_selfadjoint(a, tol),
            'normal': is_normal(a, tol),
            'unitary': bool(isometry and _defect(a @ ah, eye) <= eps),
            'projection': is_projection(a, tol),
            'isometry': bool(isometry),
            'partial_isometry': is_projection(ata, tol)}


def kron_all(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def direct_sum(*mats):
    return linalg.block_diag(*[np.asarray(m, dtype=complex) for m in mats])


def random_matrix(n, seed=0, m=None):
    '''Random complex n x m matrix with standard normal entries.'''
    rng = np.random.default_rng(seed)
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_unitary(n, seed=0):
    '''Haar random unitary from the QR decomposition of a Gaussian matrix.'''
    q, r = linalg.qr(random_matrix(n, seed))
    d = np.diag(r)
    return q * (d / np.abs(d))[np.newaxis, :]


def matrix_to_json(a):
    a = as_matrix(a, 'matrix_to_json')
    return {'rows': int(a.shape[0]), 'cols': int(a.shape[1]),
            'data': [[float(z.real), float(z.imag)] for z in a.ravel()]}


def matrix_from_json(obj):
    ''' Parse the JSON matrix format. Entries may be given as [re, im]
    pairs or as plain real numbers.
    '''
    try:
        rows = int(obj['rows'])
        cols = int(obj['cols'])
        data = obj['data']
    except (KeyError, TypeError) as err:
        raise OperationError('matrix_from_json', 'missing field '
                             + str(err)) from err
    if len(data) != rows * cols:
        raise OperationError('matrix_from_json', 'entries length '
                             + str(len(data)) + ' != rows x cols = '
                             + str(rows * cols))
    vals = [complex(d[0], d[1]) if isinstance(d, (list, tuple))
            else complex(d) for d in data]
    return as_matrix(np.array(vals).reshape(rows, cols), 'matrix_from_json')
