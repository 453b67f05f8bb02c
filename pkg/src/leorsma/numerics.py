"""
Small dense complex linear algebra used by the precoders.

Every function accepts stacked inputs: the trailing one (vectors) or two
(matrices) axes carry the data and any leading axes are treated as a batch.
This lets the Monte Carlo engine process thousands of channel realizations
in one call while the single-realization API stays the same.
"""

import numpy as np

__all__ = ['as_complex_vector', 'as_complex_matrix', 'matmul',
           'hermitian_transpose', 'solve_regularized', 'vector_norm']


def as_complex_vector(v):
    """Return `v` as a complex128 array, validating shape and finiteness.

    Parameters
    ----------
    v : array_like
        Vector (or stack of vectors along the last axis).

    Returns
    -------
    numpy.ndarray
        complex128 array with at least one dimension.

    Raises
    ------
    ValueError
        If `v` is empty or contains NaN/Inf.
    """
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.shape[-1] == 0:
        raise ValueError("vector must have at least one element")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector contains non-finite elements")
    return v


def as_complex_matrix(a):
    """Return `a` as a complex128 array with at least two dimensions.

    Raises
    ------
    ValueError
        If `a` has fewer than two dimensions, an empty axis or
        non-finite entries.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim < 2:
        raise ValueError("matrix must have at least two dimensions, got "
                         "shape {0}".format(a.shape))
    if a.shape[-1] == 0 or a.shape[-2] == 0:
        raise ValueError("matrix must not have an empty axis")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains non-finite elements")
    return a


def matmul(a, b):
    """Matrix product `a @ b` with an explicit inner-dimension check."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if a.shape[-1] != b.shape[-2]:
        raise ValueError("dimension mismatch: {0} x {1}".format(
            a.shape[-2:], b.shape[-2:]))
    return a @ b


def hermitian_transpose(a):
    """Conjugate transpose over the last two axes."""
    a = as_complex_matrix(a)
    return np.conj(np.swapaxes(a, -1, -2))


def solve_regularized(g, c, rhs):
    """Solve ``(G + c*I) X = RHS`` for X.

    `G` is expected to be Hermitian positive semidefinite (a Gram matrix),
    so the shifted system is positive definite for any ``c > 0`` and an
    LU factorization with partial pivoting is stable.

    Parameters
    ----------
    g : array_like, shape (..., M, M)
        Gram matrix (or batch of them).
    c : float or array_like
        Positive diagonal loading. An array must broadcast against the
        batch shape of `g`.
    rhs : array_like, shape (..., M, L)
        Right-hand side(s).

    Returns
    -------
    numpy.ndarray, shape (..., M, L)
    """
    g = as_complex_matrix(g)
    rhs = as_complex_matrix(rhs)
    m = g.shape[-1]
    if g.shape[-2] != m:
        raise ValueError("G must be square, got shape {0}".format(g.shape[-2:]))
    if rhs.shape[-2] != m:
        raise ValueError("RHS has {0} rows, expected {1}".format(
            rhs.shape[-2], m))
    c = np.asarray(c, dtype=float)
    if not np.all(np.isfinite(c)) or np.any(c <= 0):
        raise ValueError("regularization constant must be > 0")
    shifted = g + c[..., None, None] * np.eye(m)
    return np.linalg.solve(shifted, rhs)


def vector_norm(v):
    """Euclidean norm over the last axis."""
    v = as_complex_vector(v)
    return np.sqrt(np.sum(v.real ** 2 + v.imag ** 2, axis=-1))
