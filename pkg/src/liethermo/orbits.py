"""Coadjoint orbits, the KKS form and (affine) Lie-Poisson brackets.

Dual elements are matrices: a functional on the algebra is represented by
the matrix it pairs with, so ``Ad*_g xi = g^{-1} xi g``.
"""

from dataclasses import dataclass

import numpy as np

from . import lie, linalg, thermo
from .errors import DomainError, NumericError
from .linalg import ALGEBRAIC_TOL, HALF

FD_STEP = 1e-3

_GROUP_ALGEBRA = {"SO2": "so2", "SO3": "so3", "O3": "so3"}


@dataclass(frozen=True, eq=False)
class OrbitSample:
    seed: np.ndarray
    group: str
    points: list
    max_spread: float


def _check_group(xi, group):
    if group not in _GROUP_ALGEBRA:
        raise DomainError(f"unknown group {group!r}")
    n = 2 if group == "SO2" else 3
    xi = linalg.to_float(linalg.as_matrix(xi))
    if xi.shape[0] != n:
        raise DomainError(f"{group} acts on {n}x{n} matrices, got {xi.shape}")
    return xi


def orbit_sample(xi, group, n=100, elements=None):
    """Conjugate ``xi`` by sampled group elements and measure the spread.

    ``elements`` overrides the default sweep (``lie.group_sweep``).  For
    ``"O3"`` the default is the stabilizer sweep generated by ``J`` and the
    z-axis rotations.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    xi = _check_group(xi, group)
    if not linalg.is_skew(xi):
        raise DomainError("seed must be skew-symmetric")
    gs = elements if elements is not None else lie.group_sweep(group, n)
    points = [lie.coadjoint_group(g, xi) for g in gs]
    flat = np.array([p.ravel() for p in [xi] + points])
    diff = flat[:, None, :] - flat[None, :, :]
    spread = float(np.max(np.linalg.norm(diff, axis=2)))
    return OrbitSample(seed=xi, group=group, points=points, max_spread=spread)


def leaf_membership(xi, group):
    """Is ``xi`` on the open ray ``{x * G : x > 0}``?  Returns ``(on_leaf, x)``."""
    xi = _check_group(xi, group)
    G = thermo.generator(_GROUP_ALGEBRA[group])
    x = linalg.pairing(xi, G) / linalg.pairing(G, G)
    on_ray = linalg.max_abs(xi - x * G) <= ALGEBRAIC_TOL
    return bool(on_ray and x > 0), float(x)


def kks_form(F, X, Y, conv=HALF):
    """KKS 2-form on the orbit through ``F``: ``<F, [X, Y]>``."""
    return linalg.pairing(F, linalg.commutator(X, Y), conv)


# ---------------------------------------------------------------------------
# Poisson brackets


@dataclass(frozen=True, eq=False)
class LinearFunctional:
    """``X -> <X, A>``; its gradient is ``A``."""

    A: np.ndarray
    convention: linalg.PairingConvention = HALF

    def __call__(self, X):
        return linalg.pairing(X, self.A, self.convention)


@dataclass(frozen=True, eq=False)
class PoissonEvaluator:
    """Lie-Poisson bracket on the dual of ``algebra``, affine if ``cocycle`` is set."""

    algebra: lie.LieAlgebraSpec
    convention: linalg.PairingConvention = HALF
    cocycle: thermo.TwoCocycle = None

    def gradient(self, F, X):
        """Matrix ``dF/dX`` with ``<dF/dX, dX> = dF`` under the evaluator's pairing."""
        if isinstance(F, LinearFunctional) and F.convention == self.convention:
            return linalg.to_float(F.A)
        analytic = getattr(F, "gradient", None)
        if callable(analytic) and getattr(F, "convention", None) == self.convention:
            return linalg.to_float(analytic(X))
        basis = [linalg.to_float(B) for B in self.algebra.basis]
        x = linalg.to_float(self.algebra.coordinates(X)) if not self.algebra.exact else \
            np.array([float(c) for c in self.algebra.coordinates(X)])
        base = X - sum(c * B for c, B in zip(x, basis))
        def central(h):
            d = np.empty(len(basis))
            for k in range(len(basis)):
                e = np.zeros(len(basis))
                e[k] = h
                plus = base + sum(c * B for c, B in zip(x + e, basis))
                minus = base + sum(c * B for c, B in zip(x - e, basis))
                d[k] = (float(F(plus)) - float(F(minus))) / (2 * h)
            return d

        # Richardson extrapolation of two central differences: O(h^4) truncation
        dF = (4 * central(FD_STEP / 2) - central(FD_STEP)) / 3
        if not np.all(np.isfinite(dF)):
            raise NumericError("gradient evaluation produced non-finite values")
        gram = np.array(lie.gram_matrix(basis, self.convention), dtype=float)
        coef = np.linalg.solve(gram, dF)
        return sum(c * B for c, B in zip(coef, basis))

    def __call__(self, F, G, point):
        return poisson_bracket(self, F, G, point)


def poisson_bracket(ev, F, G, point):
    """``{F, G}(X) = <X, [dF, dG]>`` plus ``c(dF, dG)`` for an affine evaluator."""
    X = linalg.to_float(linalg.as_matrix(point))
    dF, dG = ev.gradient(F, X), ev.gradient(G, X)
    value = linalg.pairing(X, linalg.commutator(dF, dG), ev.convention)
    if ev.cocycle is not None:
        value += float(ev.cocycle(dF, dG))
    return value


@dataclass(frozen=True, eq=False)
class Casimir:
    """``C(xi) = <xi, xi>``, with analytic gradient ``2 xi``."""

    convention: linalg.PairingConvention = HALF

    def __call__(self, X):
        return linalg.pairing(X, X, self.convention)

    def gradient(self, X):
        return 2 * linalg.to_float(X)


def casimir(conv=HALF):
    return Casimir(conv)


def random_points(alg, n, rng):
    basis = [linalg.to_float(B) for B in alg.basis]
    return [sum(c * B for c, B in zip(rng.standard_normal(alg.dim), basis)) for _ in range(n)]


def bracket_property_residuals(alg, n_points=100, seed=0, conv=HALF):
    """Antisymmetry, Leibniz and Jacobi residuals plus the Casimir bracket.

    Linear functionals ``<., A>`` with random ``A`` and random points are drawn
    from ``numpy.random.default_rng(seed)``.
    """
    rng = np.random.default_rng(seed)
    ev = PoissonEvaluator(alg, conv)
    out = {"antisymmetry": 0.0, "leibniz": 0.0, "jacobi": 0.0, "casimir": 0.0, "self": 0.0}
    C = casimir(conv)
    for X in random_points(alg, n_points, rng):
        F, G, H = (LinearFunctional(A, conv) for A in random_points(alg, 3, rng))
        fg, gf = ev(F, G, X), ev(G, F, X)
        out["antisymmetry"] = max(out["antisymmetry"], abs(fg + gf))
        out["self"] = max(out["self"], abs(ev(F, F, X)))
        GH = lambda Y, G=G, H=H: G(Y) * H(Y)
        lhs = ev(F, GH, X)
        rhs = ev(F, G, X) * H(X) + G(X) * ev(F, H, X)
        out["leibniz"] = max(out["leibniz"], abs(lhs - rhs))
        # {G, H} of linear functionals is linear with gradient [dG, dH]
        bracket = lambda A, B: LinearFunctional(linalg.commutator(A.A, B.A), conv)
        cyc = ev(F, bracket(G, H), X) + ev(G, bracket(H, F), X) + ev(H, bracket(F, G), X)
        out["jacobi"] = max(out["jacobi"], abs(cyc))
        for B in alg.basis:
            out["casimir"] = max(out["casimir"], abs(ev(C, LinearFunctional(linalg.to_float(B), conv), X)))
    return out


def jacobi_fd_residual(alg, n_points=20, seed=0, conv=HALF):
    """Jacobi residual with nested brackets differentiated numerically."""
    rng = np.random.default_rng(seed)
    ev = PoissonEvaluator(alg, conv)
    worst = 0.0
    for X in random_points(alg, n_points, rng):
        fs = [LinearFunctional(A, conv) for A in random_points(alg, 3, rng)]
        total = 0.0
        for F, G, H in ((fs[0], fs[1], fs[2]), (fs[1], fs[2], fs[0]), (fs[2], fs[0], fs[1])):
            inner = lambda Y, G=G, H=H: ev(G, H, Y)
            total += ev(F, inner, X)
        worst = max(worst, abs(total))
    return worst
