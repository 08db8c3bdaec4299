"""Small dense matrix helpers used throughout the package.

Matrices are plain ``numpy`` arrays of shape ``(n, n)``.  Two number systems
are supported:

* ``float64`` arrays, the default;
* ``object`` arrays holding :class:`fractions.Fraction` (or ``int``) entries.
  Every quantity computed here is a rational function of the cone parameter,
  so this exact mode lets the verification oracles compare tables without
  any rounding.

Equality between matrices is always entrywise within a tolerance tier.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np
import scipy.linalg

from .errors import DomainError, SingularityError

#: Algebraic identities (brackets, pairings, involutions).
ALGEBRAIC_TOL = 1e-12
#: Quadrature against closed forms.
QUADRATURE_TOL = 1e-8
#: Finite-difference derivatives.
FD_TOL = 1e-6


@dataclass(frozen=True)
class PairingConvention:
    """Trace pairing ``<X, Y> = scale * tr(X^T Y)``.

    ``scale=1/2`` gives ``<beta, beta> = a**2`` for ``beta = a*u``; ``scale=1``
    is the plain Frobenius inner product.
    """

    scale: Fraction
    label: str

    def __post_init__(self):
        if Fraction(self.scale) not in (Fraction(1, 2), Fraction(1)):
            raise DomainError(f"pairing scale must be 1/2 or 1, got {self.scale}")
        object.__setattr__(self, "scale", Fraction(self.scale))


HALF = PairingConvention(Fraction(1, 2), "half")
ONE = PairingConvention(Fraction(1), "one")
PAIRINGS = (HALF, ONE)


def is_exact(X):
    return np.asarray(X).dtype == object


def as_matrix(X):
    """Validate ``X`` as a finite square matrix and return it as an array."""
    A = np.asarray(X)
    if A.dtype != object:
        A = A.astype(float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DomainError(f"expected a non-empty square matrix, got shape {A.shape}")
    if A.dtype != object and not np.all(np.isfinite(A)):
        raise DomainError("matrix has non-finite entries")
    return A


def exact(X):
    """Convert an integer/rational matrix to an object array of Fractions."""
    A = np.asarray(X)
    out = np.empty(A.shape, dtype=object)
    for idx, v in np.ndenumerate(A):
        out[idx] = Fraction(int(v)) if isinstance(v, (int, np.integer)) else Fraction(v)
    return out


def to_float(X):
    return np.asarray(X, dtype=float)


def identity(n, exact_mode=False):
    if exact_mode:
        return exact(np.eye(n, dtype=int))
    return np.eye(n)


def zeros(n, exact_mode=False):
    if exact_mode:
        return exact(np.zeros((n, n), dtype=int))
    return np.zeros((n, n))


def _check_same_dim(X, Y):
    if X.shape != Y.shape:
        raise DomainError(f"dimension mismatch: {X.shape} vs {Y.shape}")


def commutator(X, Y):
    """Return the matrix commutator ``XY - YX``."""
    X, Y = as_matrix(X), as_matrix(Y)
    _check_same_dim(X, Y)
    return X @ Y - Y @ X


def pairing(X, Y, conv=HALF):
    """Trace pairing ``conv.scale * tr(X^T Y)``.

    Returns a :class:`~fractions.Fraction` when both arguments are exact,
    otherwise a float.
    """
    X, Y = as_matrix(X), as_matrix(Y)
    _check_same_dim(X, Y)
    t = np.sum(X * Y)  # tr(X^T Y) without forming the product
    if is_exact(X) and is_exact(Y):
        return conv.scale * Fraction(t)
    return float(conv.scale) * float(t)


def frobenius(X):
    A = np.asarray(X)
    if A.dtype == object:
        return math.sqrt(float(sum(Fraction(v) ** 2 for v in A.flat)))
    return float(np.linalg.norm(A))


def max_abs(X):
    A = np.asarray(X)
    if A.size == 0:
        return 0.0
    if A.dtype == object:
        return float(max(abs(Fraction(v)) for v in A.flat))
    return float(np.max(np.abs(A)))


def matrices_close(X, Y, tol=ALGEBRAIC_TOL):
    """Entrywise equality within ``tol``."""
    X, Y = np.asarray(X), np.asarray(Y)
    return X.shape == Y.shape and max_abs(X - Y) <= tol


def is_skew(X, tol=ALGEBRAIC_TOL):
    X = np.asarray(X)
    return max_abs(X + X.T) <= tol


def matrix_exp(X):
    """Matrix exponential.

    Skew-symmetric 2x2 and 3x3 inputs use the closed planar-rotation and
    Rodrigues formulas, so their images are rotations to machine precision.
    Everything else is delegated to :func:`scipy.linalg.expm`.
    """
    X = to_float(as_matrix(X))
    n = X.shape[0]
    if n == 2 and is_skew(X, 0.0):
        t = X[1, 0]
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, -s], [s, c]])
    if n == 3 and is_skew(X, 0.0):
        w = np.array([X[2, 1], X[0, 2], X[1, 0]])
        theta = float(np.linalg.norm(w))
        if theta == 0.0:
            return np.eye(3)
        K = X / theta
        return np.eye(3) + math.sin(theta) * K + (1.0 - math.cos(theta)) * (K @ K)
    return scipy.linalg.expm(X)


def det2or3(X):
    X = as_matrix(X)
    n = X.shape[0]
    if n == 2:
        return X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]
    if n == 3:
        return (
            X[0, 0] * (X[1, 1] * X[2, 2] - X[1, 2] * X[2, 1])
            - X[0, 1] * (X[1, 0] * X[2, 2] - X[1, 2] * X[2, 0])
            + X[0, 2] * (X[1, 0] * X[2, 1] - X[1, 1] * X[2, 0])
        )
    raise DomainError(f"determinant helper supports dim 2 or 3, got {n}")


def inverse2or3(X):
    """Inverse of a 2x2 or 3x3 matrix by the adjugate formula.

    Exact inputs give exact inverses.

    Raises
    ------
    SingularityError
        If ``|det X| <= 1e-12 * ||X||**dim`` (or ``det X == 0`` in exact mode).
    """
    X = as_matrix(X)
    n = X.shape[0]
    if n not in (2, 3):
        raise DomainError(f"inverse2or3 supports dim 2 or 3, got {n}")
    d = det2or3(X)
    if is_exact(X):
        if d == 0:
            raise SingularityError("matrix is singular", det=0.0)
    elif abs(d) <= ALGEBRAIC_TOL * frobenius(X) ** n:
        raise SingularityError(f"matrix is singular (det={d:.3e})", det=float(d))
    if n == 2:
        adj = np.array([[X[1, 1], -X[0, 1]], [-X[1, 0], X[0, 0]]], dtype=X.dtype)
    else:
        adj = np.empty((3, 3), dtype=X.dtype)
        for i in range(3):
            for j in range(3):
                minor = np.delete(np.delete(X, j, axis=0), i, axis=1)
                adj[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
    if is_exact(X):
        return adj * Fraction(1) / Fraction(d)
    return adj / d
