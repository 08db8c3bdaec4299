"""Thermodynamics on the one-parameter cone of so(2) / so(3).

The cone is ``{beta = a * G : a > 0}`` with ``G`` the rotation generator
(``u`` in so(2), ``Z3`` in so(3)); its dual is the ray ``{x * G : x > 0}``.
Integrals over the dual cone are one-dimensional integrals in ``x`` with the
identification ``<beta, xi> = 2 a x``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import math

import numpy as np
from scipy import integrate

from . import lie, linalg
from .errors import DomainError, NumericError
from .linalg import HALF, PAIRINGS, PairingConvention

_GENERATORS = {"so2": lie.U, "so3": lie.Z3}


def generator(algebra="so2", exact=False):
    """Rotation generator of the cone for ``algebra``."""
    if algebra not in _GENERATORS:
        raise DomainError(f"cone defined only on so2/so3, got {algebra!r}")
    G = _GENERATORS[algebra]
    return linalg.exact(G) if exact else linalg.to_float(G)


def _positive(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float, Fraction, np.floating)):
        raise DomainError(f"{name} must be a real number")
    if not (value > 0) or (isinstance(value, float) and not math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True, eq=False)
class ConeElement:
    """``beta = a * generator`` with ``a > 0``.

    Pass a :class:`~fractions.Fraction` ``a`` together with ``exact=True`` to
    get exact matrices.
    """

    a: float
    algebra: str = "so2"
    exact: bool = False

    def __post_init__(self):
        _positive(self.a, "cone parameter a")
        generator(self.algebra)

    @property
    def matrix(self):
        a = Fraction(self.a) if self.exact else float(self.a)
        return a * generator(self.algebra, self.exact)

    def with_a(self, a):
        return ConeElement(a, self.algebra, self.exact)


@dataclass(frozen=True, eq=False)
class DualElement:
    """``xi = x * generator`` with ``x > 0``."""

    x: float
    algebra: str = "so2"

    def __post_init__(self):
        _positive(self.x, "dual coordinate x")
        generator(self.algebra)

    @property
    def matrix(self):
        return float(self.x) * generator(self.algebra)


def _cone_a(beta):
    if isinstance(beta, ConeElement):
        return beta.a
    _positive(beta, "cone parameter a")
    return beta


# ---------------------------------------------------------------------------
# conventions for the dual variable eta


@dataclass(frozen=True)
class EtaConvention:
    """How the dual (heat) variable ``eta`` is attached to ``beta``.

    ``grad_phi``: ``eta = beta / <beta, beta>`` (gradient of the potential);
    ``minus_beta``: ``eta = -beta``; ``plus_beta``: ``eta = beta``.
    """

    mode: str
    label: str

    def __post_init__(self):
        if self.mode not in ("grad_phi", "minus_beta", "plus_beta"):
            raise DomainError(f"unknown eta convention {self.mode!r}")


GRAD_PHI = EtaConvention("grad_phi", "grad")
MINUS_BETA = EtaConvention("minus_beta", "minus")
PLUS_BETA = EtaConvention("plus_beta", "plus")
ETA_CONVENTIONS = (GRAD_PHI, MINUS_BETA, PLUS_BETA)


def eta_matrix(beta_matrix, conv=GRAD_PHI, pairing=HALF):
    """Dual variable for an arbitrary (nonzero) algebra element.

    ``pairing`` only matters for ``grad_phi``; it fixes the inner product in
    which the gradient is taken.
    """
    B = linalg.as_matrix(beta_matrix)
    if conv.mode == "minus_beta":
        return -B
    if conv.mode == "plus_beta":
        return B
    norm2 = linalg.pairing(B, B, pairing)
    if norm2 == 0:
        raise DomainError("grad_phi eta undefined at beta = 0")
    return B / norm2 if not linalg.is_exact(B) else B * (Fraction(1) / norm2)


# ---------------------------------------------------------------------------
# characteristic function, potentials, density


def _tail_cutoff(a):
    # integrand exp(-2 a x) drops below 1e-16 beyond this point
    return math.log(1e16) / (2.0 * a)


def _quad(f, a):
    val, err = integrate.quad(f, 0.0, _tail_cutoff(a), epsabs=1e-10, epsrel=1e-10, limit=200)
    if not math.isfinite(val) or err > linalg.QUADRATURE_TOL:
        raise NumericError(f"quadrature did not converge (estimate {val}, error {err})")
    return val


def koszul_chi(beta, method="closed_form"):
    """Koszul characteristic function ``chi(a) = int_0^inf exp(-2 a x) dx = 1/(2a)``."""
    a = float(_cone_a(beta))
    if method == "closed_form":
        return 1.0 / (2.0 * a)
    if method == "quadrature":
        return _quad(lambda x: math.exp(-2.0 * a * x), a)
    raise DomainError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class ThermoPotentials:
    chi: float
    phi: float
    psi: float
    eta: np.ndarray
    convention: EtaConvention
    legendre_residual: float


def potentials(beta, conv=GRAD_PHI):
    """Potential ``log(2a)``, dual potential ``1 - log(2a)`` and ``eta``.

    ``legendre_residual`` is ``psi + phi - <beta, eta>`` under the half-trace
    pairing; it vanishes only for ``grad_phi``.
    """
    if not isinstance(beta, ConeElement):
        beta = ConeElement(beta)
    a = float(beta.a)
    B = linalg.to_float(beta.matrix)
    eta = eta_matrix(B, conv)
    phi = math.log(2.0 * a)
    psi = 1.0 - math.log(2.0 * a)
    return ThermoPotentials(
        chi=1.0 / (2.0 * a),
        phi=phi,
        psi=psi,
        eta=eta,
        convention=conv,
        legendre_residual=psi + phi - linalg.pairing(B, eta, HALF),
    )


def phi(a):
    _positive(a, "cone parameter a")
    return math.log(2.0 * a)


def density_eval(beta, xi):
    """Normalized density ``2a exp(-2 a x)`` on the dual ray."""
    a = float(_cone_a(beta))
    if isinstance(xi, DualElement):
        x = float(xi.x)
    else:
        _positive(xi, "dual coordinate x")
        x = float(xi)
    return 2.0 * a * math.exp(-2.0 * a * x)


def density_normalization(beta):
    a = float(_cone_a(beta))
    return _quad(lambda x: density_eval(a, x) if x > 0 else 2.0 * a, a)


@dataclass(frozen=True, eq=False)
class DensityMoments:
    """Quadrature moments of the dual coordinate and their eta identification.

    ``identification`` maps ``"<pairing>/<eta>"`` labels to whether
    ``mean_x * generator`` equals ``eta`` under that convention.
    ``eta_coordinates`` holds the ray coordinate of each candidate ``eta``.
    """

    mean_x: float
    var_x: float
    eta_coordinates: dict = field(default_factory=dict)
    identification: dict = field(default_factory=dict)

    def __iter__(self):
        return iter((self.mean_x, self.var_x))


def density_moments(beta):
    """Mean and variance of ``x`` under the density, by quadrature."""
    if not isinstance(beta, ConeElement):
        beta = ConeElement(beta)
    a = float(beta.a)
    mean = _quad(lambda x: x * density_eval(a, x) if x > 0 else 0.0, a)
    second = _quad(lambda x: x * x * density_eval(a, x) if x > 0 else 0.0, a)
    G = generator(beta.algebra)
    B = linalg.to_float(beta.matrix)
    coords, ident = {}, {}
    for pconv, econv in itertools.product(PAIRINGS, ETA_CONVENTIONS):
        key = f"{pconv.label}/{econv.label}"
        c = linalg.pairing(G, eta_matrix(B, econv, pconv), HALF) / linalg.pairing(G, G, HALF)
        coords[key] = c
        ident[key] = abs(c - mean) <= linalg.FD_TOL * max(1.0, abs(mean))
    # coordinate printed in the matrix of the expectation computation
    coords["printed_expectation"] = 1.0 / a**2
    ident["printed_expectation"] = abs(1.0 / a**2 - mean) <= linalg.FD_TOL * max(1.0, abs(mean))
    return DensityMoments(mean_x=mean, var_x=second - mean * mean, eta_coordinates=coords, identification=ident)


def scalar_fisher(beta, method="closed_form"):
    """Scalar Fisher information of the family in ``a``; exactly ``1/a**2``.

    ``finite_difference`` differentiates the potential twice with central
    step ``1e-4 * a``; ``statistical`` evaluates ``E[(d/da log p)^2]``.
    """
    a = float(_cone_a(beta))
    if method == "closed_form":
        return 1.0 / a**2
    if method == "finite_difference":
        h = 1e-4 * a
        return -(phi(a + h) - 2.0 * phi(a) + phi(a - h)) / h**2
    if method == "statistical":
        return _quad(lambda x: (1.0 / a - 2.0 * x) ** 2 * 2.0 * a * math.exp(-2.0 * a * x), a)
    raise DomainError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True, eq=False)
class AlgebraCocycle:
    """Involutive algebra map: ``X -> -X^{-1}`` or ``X -> J X J^{-1}``."""

    kind: str
    J: lie.GroupElement = None

    def __post_init__(self):
        if self.kind not in ("neg_inverse", "ad_J"):
            raise DomainError(f"unknown cocycle kind {self.kind!r}")
        if self.kind == "ad_J" and self.J is None:
            object.__setattr__(self, "J", lie.GroupElement(lie.J, "O3"))

    def __call__(self, X):
        return apply_cocycle(self, X)


NEG_INVERSE = AlgebraCocycle("neg_inverse")
AD_J = AlgebraCocycle("ad_J")


def apply_cocycle(theta, X):
    X = linalg.as_matrix(X)
    if theta.kind == "neg_inverse":
        return -linalg.inverse2or3(X)
    if X.shape[0] != 3:
        raise DomainError("ad_J acts on 3x3 matrices")
    Jm = theta.J.matrix
    if linalg.is_exact(X):
        Jm = linalg.exact(np.rint(linalg.to_float(Jm)).astype(int))
    return Jm @ X @ Jm.T


def default_algebra(theta, dim_matrix):
    if theta.kind == "ad_J":
        return "so3"
    return "sl2" if dim_matrix == 2 else None


@dataclass(frozen=True, eq=False)
class TwoCocycle:
    """Antisymmetrized form ``(X, Y) -> 1/2 (<Theta X, Y> - <Theta Y, X>)``.

    ``Theta`` is applied to the basis of ``algebra`` and extended linearly,
    which keeps the form bilinear (``-X^{-1}`` itself is not linear).
    """

    base: AlgebraCocycle
    convention: PairingConvention = HALF
    algebra: str = None

    def linear_image(self, X):
        X = linalg.as_matrix(X)
        name = self.algebra or default_algebra(self.base, X.shape[0])
        alg = lie.builtin_algebra(name, exact=linalg.is_exact(X))
        if alg.dim_matrix != X.shape[0]:
            raise DomainError("matrix dimension does not match the cocycle's algebra")
        coords = alg.coordinates(X)
        out = linalg.zeros(alg.dim_matrix, alg.exact)
        for c, B in zip(coords, alg.basis):
            if c != 0:
                out = out + c * apply_cocycle(self.base, B)
        return out

    def raw(self, X, Y):
        """Non-antisymmetrized ``<Theta X, Y>``."""
        return linalg.pairing(self.linear_image(X), Y, self.convention)

    def __call__(self, X, Y):
        return two_cocycle_eval(self, X, Y)


def two_cocycle_eval(tc, X, Y):
    X, Y = linalg.as_matrix(X), linalg.as_matrix(Y)
    return (tc.raw(X, Y) - tc.raw(Y, X)) / 2


def cocycle_identity_residual(tc, basis):
    """Max ``|c([X,Y],Z) + c([Y,Z],X) + c([Z,X],Y)|`` over basis triples."""
    br = linalg.commutator
    worst = 0.0
    for X, Y, Z in itertools.product(basis, repeat=3):
        s = tc(br(X, Y), Z) + tc(br(Y, Z), X) + tc(br(Z, X), Y)
        worst = max(worst, abs(float(s)))
    return worst


def group_cocycle_residual(beta, conv, group_samples, pairing=HALF):
    """Max over samples of ``||eta(Ad_g beta) - Ad*_g eta(beta)||``.

    This is the norm of the group 1-cocycle measuring non-equivariance.
    """
    if not isinstance(beta, ConeElement):
        beta = ConeElement(beta)
    B = linalg.to_float(beta.matrix)
    eta0 = eta_matrix(B, conv, pairing)
    worst = 0.0
    for g in group_samples:
        lhs = eta_matrix(lie.adjoint_group(g, B), conv, pairing)
        rhs = lie.coadjoint_group(g, eta0)
        worst = max(worst, linalg.frobenius(lhs - rhs))
    return worst
