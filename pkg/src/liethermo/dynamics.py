"""Gradient flow on the cone, its Hamiltonian form, integrability and Lax checks.

The gradient system on the cone reduces to ``da/dt = -a``.  Writing
``P = beta`` and ``Q = eta`` (``grad_phi`` convention) the same motion is the
canonical system ``dP/dt = dH/dQ``, ``dQ/dt = -dH/dP`` with
``H = -<P, Q>``, which equals ``-1`` along every trajectory.
"""

from dataclasses import dataclass, field
import math

import numpy as np
import sympy

from . import linalg, thermo
from .errors import DomainError
from .linalg import HALF
from .thermo import GRAD_PHI, ConeElement

INTEGRAL_TOL = 1e-9
INDEPENDENCE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled flow.

    ``states`` is a 1-D array of ``a`` values for the reduced gradient flow,
    or an array of shape ``(n, 2, d, d)`` holding ``(P, Q)`` pairs for the
    Hamiltonian flow.
    """

    times: np.ndarray
    states: np.ndarray
    method: str
    algebra: str = "so2"

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=float)
        if t.ndim != 1 or len(t) == 0 or len(s) != len(t):
            raise DomainError("times and states must be non-empty and equally long")
        if np.any(np.diff(t) <= 0):
            raise DomainError("times must be strictly increasing")
        if not np.all(np.isfinite(s)):
            raise DomainError("trajectory states must be finite")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)
        if np.any(self.a_values <= 0):
            raise DomainError("cone parameter must stay positive along the trajectory")

    def __len__(self):
        return len(self.times)

    @property
    def is_canonical(self):
        return self.states.ndim == 4

    @property
    def a_values(self):
        if not self.is_canonical:
            return self.states
        G = thermo.generator(self.algebra)
        return np.array([linalg.pairing(P, G) / linalg.pairing(G, G) for P in self.states[:, 0]])

    def pq(self):
        """``(P, Q)`` matrices at every sample; ``Q`` from ``grad_phi`` for scalar states."""
        if self.is_canonical:
            return self.states[:, 0], self.states[:, 1]
        G = thermo.generator(self.algebra)
        P = np.array([a * G for a in self.states])
        Q = np.array([thermo.eta_matrix(p, GRAD_PHI) for p in P])
        return P, Q


@dataclass(frozen=True, eq=False)
class HamiltonianState:
    P: np.ndarray
    Q: np.ndarray
    H: float = None

    def __post_init__(self):
        object.__setattr__(self, "H", hamiltonian(self.P, self.Q))


def hamiltonian(P, Q):
    return -linalg.pairing(P, Q, HALF)


def gradient_field(beta):
    """Gradient vector field ``-a**2 * dPhi/dbeta = -beta`` at ``beta``."""
    if not isinstance(beta, ConeElement):
        beta = ConeElement(beta)
    return -linalg.to_float(beta.matrix)


def gradient_field_consistency(beta, rel_step=1e-4):
    """Relative gap between ``-beta`` and ``-a**2 * dPhi/dbeta`` via the chain rule.

    ``dPhi/dbeta = (dPhi/da) * beta / (a * <G, G>)`` with ``dPhi/da`` from a
    central difference.
    """
    if not isinstance(beta, ConeElement):
        beta = ConeElement(beta)
    a = float(beta.a)
    h = rel_step * a
    dphi_da = (thermo.phi(a + h) - thermo.phi(a - h)) / (2 * h)
    B = linalg.to_float(beta.matrix)
    G = thermo.generator(beta.algebra)
    grad = dphi_da * B / (a * linalg.pairing(G, G))
    field_fd = -(a**2) * grad
    exact = gradient_field(beta)
    return linalg.frobenius(field_fd - exact) / linalg.frobenius(exact)


def _grid(t_end, dt):
    n = int(round(t_end / dt))
    if n == 0 or not math.isclose(n * dt, t_end, rel_tol=1e-12, abs_tol=1e-15):
        n = int(math.ceil(t_end / dt))
    return np.linspace(0.0, t_end, n + 1)


def _rk4(f, y0, times):
    ys = [y0]
    y = y0
    for t0, t1 in zip(times[:-1], times[1:]):
        h = t1 - t0
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ys.append(y)
    return np.array(ys)


def _check_flow_args(t_end, dt):
    if not (t_end > 0):
        raise DomainError("t_end must be positive")
    if not (0 < dt <= t_end):
        raise DomainError("dt must satisfy 0 < dt <= t_end")


def integrate_gradient(a0, t_end, dt, method="rk4", algebra="so2"):
    """Integrate ``da/dt = -a`` from ``a0``.

    ``exact`` samples ``a0 * exp(-t)``; ``rk4`` uses classical fixed-step RK4.
    Both use the same time grid (the last step is shortened if ``dt`` does
    not divide ``t_end``).
    """
    thermo._positive(a0, "a0")
    _check_flow_args(t_end, dt)
    times = _grid(t_end, dt)
    if method == "exact":
        states = a0 * np.exp(-times)
    elif method == "rk4":
        states = _rk4(lambda a: -a, float(a0), times)
    else:
        raise DomainError(f"unknown method {method!r}")
    return Trajectory(times, states, method, algebra)


def hamiltonian_flow(beta0, conv=GRAD_PHI, t_end=10.0, dt=1e-3):
    """RK4 for ``dP/dt = -P``, ``dQ/dt = Q`` from ``(beta, eta)``.

    Returns ``(trajectory, drift)`` with ``drift = max_t |H(t) - H(0)|``.
    """
    if not isinstance(beta0, ConeElement):
        beta0 = ConeElement(beta0)
    if conv.mode != "grad_phi":
        raise DomainError("the matrix Hamiltonian form requires the grad_phi convention")
    _check_flow_args(t_end, dt)
    P0 = linalg.to_float(beta0.matrix)
    Q0 = thermo.eta_matrix(P0, conv)
    sign = np.array([-1.0, 1.0])[:, None, None]
    times = _grid(t_end, dt)
    states = _rk4(lambda y: sign * y, np.stack([P0, Q0]), times)
    traj = Trajectory(times, states, "rk4", beta0.algebra)
    H = np.array([hamiltonian(P, Q) for P, Q in states])
    return traj, float(np.max(np.abs(H - H[0])))


def scalar_hamiltonian_diagnostic(a):
    """Check the scalar reading ``P = a``, ``Q = -a``, ``H = a**2 / 2``.

    ``H`` is ambiguous as a function of ``(P, Q)``; each reading is tested
    against the canonical equations ``dP/dt = dH/dQ`` and
    ``dQ/dt = -dH/dP`` along ``da/dt = -a``.  Returns a list of dicts with
    both sides of both equations and a ``holds`` flag.
    """
    thermo._positive(a, "a")
    P, Q = sympy.symbols("P Q")
    readings = {"P**2/2": P**2 / 2, "Q**2/2": Q**2 / 2, "-P*Q/2": -P * Q / 2}
    subs = {P: a, Q: -a}
    dP_dt, dQ_dt = -a, a  # from da/dt = -a
    rows = []
    for label, H in readings.items():
        rhs_p = float(sympy.diff(H, Q).subs(subs))
        rhs_q = float(-sympy.diff(H, P).subs(subs))
        rows.append({
            "H": label,
            "dP/dt": dP_dt, "dH/dQ": rhs_p,
            "dQ/dt": dQ_dt, "-dH/dP": rhs_q,
            "holds": math.isclose(dP_dt, rhs_p) and math.isclose(dQ_dt, rhs_q),
        })
    return rows


# ---------------------------------------------------------------------------
# first integrals


@dataclass(eq=False)
class IntegrabilityReport:
    n_dof: int
    integrals: list
    involution_residuals: np.ndarray
    independence_ok: bool
    verdict: str
    conserved: dict = field(default_factory=dict)
    independent: dict = field(default_factory=dict)


def _canonical_coords(P, Q, G):
    g2 = linalg.pairing(G, G)
    return linalg.pairing(P, G) / g2, linalg.pairing(Q, G) / g2


def _grad_pq(fn, p, q, G):
    hp = 1e-6 * (1.0 + abs(p))
    hq = 1e-6 * (1.0 + abs(q))
    dp = (fn(p + hp, q, G) - fn(p - hp, q, G)) / (2 * hp)
    dq = (fn(p, q + hq, G) - fn(p, q - hq, G)) / (2 * hq)
    return dp, dq


def integrability_report(traj, integrals, n_dof=1):
    """Evaluate candidate first integrals ``F(P, Q)`` along a trajectory.

    Phase space is the plane of ray coordinates ``(p, q)`` with
    ``P = p * G`` and ``Q = q * G``; the bracket is canonical,
    ``{F, K} = F_p K_q - F_q K_p``.  An integral is conserved if its
    peak-to-peak variation is below ``1e-9 * (1 + |mean|)`` and independent
    if its gradient never drops below ``1e-8``.  The verdict is
    ``"completely integrable"`` when at least ``n_dof`` integrals are
    conserved, independent and pairwise in involution.
    """
    if len(traj) == 0:
        raise DomainError("empty trajectory")
    P, Q = traj.pq()
    G = thermo.generator(traj.algebra)
    pq = [_canonical_coords(p, q, G) for p, q in zip(P, Q)]

    def lifted(fn):
        return lambda p, q, G: fn(p * G, q * G)

    values, conserved, independent, grads = [], {}, {}, {}
    for label, fn in integrals:
        v = np.array([fn(p, q) for p, q in zip(P, Q)], dtype=float)
        values.append((label, v))
        conserved[label] = bool(np.ptp(v) < INTEGRAL_TOL * (1.0 + abs(np.mean(v))))
        g = np.array([_grad_pq(lifted(fn), p, q, G) for p, q in pq])
        grads[label] = g
        independent[label] = bool(np.min(np.linalg.norm(g, axis=1)) > INDEPENDENCE_TOL)

    m = len(integrals)
    inv = np.zeros((m, m))
    labels = [lab for lab, _ in integrals]
    for i in range(m):
        for j in range(m):
            gi, gj = grads[labels[i]], grads[labels[j]]
            inv[i, j] = float(np.max(np.abs(gi[:, 0] * gj[:, 1] - gi[:, 1] * gj[:, 0])))

    good = [i for i, lab in enumerate(labels) if conserved[lab] and independent[lab]]
    chosen = []
    for i in good:
        if all(inv[i, j] < INTEGRAL_TOL for j in chosen):
            chosen.append(i)
    verdict = "completely integrable" if len(chosen) >= n_dof else "not established"
    return IntegrabilityReport(
        n_dof=n_dof,
        integrals=values,
        involution_residuals=inv,
        independence_ok=all(independent[labels[i]] for i in good) and bool(good),
        verdict=verdict,
        conserved=conserved,
        independent=independent,
    )


# ---------------------------------------------------------------------------
# Lax pair


@dataclass(frozen=True, eq=False)
class LaxPair:
    """Candidate Lax pair ``(L(a), N)`` for ``da/dt = -a``.

    ``L_of_a`` is affine in ``a`` with constant derivative ``dL_da``;
    ``eigenvalues`` is the closed form attached to the pair.
    """

    label: str
    L_of_a: object
    dL_da: np.ndarray
    N: np.ndarray
    eigenvalues: object
    k_of_a: object = staticmethod(lambda a: a)
    c: float = 1.0


def lax_pair(variant="printed"):
    """The two ``L`` matrices given for ``N = diag(0, 1)``.

    ``"printed"``: ``L = [[-1/2, -a], [a, -1/2]]`` with eigenvalues taken as
    ``(-1/2 - a, -1/2 + a)``.  ``"alternate"``: ``L = [[1/2, a], [a, 1/2]]``
    with eigenvalues ``(1/2 - a, 1/2 + a)``.
    """
    N = np.array([[0.0, 0.0], [0.0, 1.0]])
    if variant == "printed":
        return LaxPair(
            "printed",
            lambda a: np.array([[-0.5, -a], [a, -0.5]]),
            np.array([[0.0, -1.0], [1.0, 0.0]]),
            N,
            lambda a: (-0.5 - a, -0.5 + a),
        )
    if variant == "alternate":
        return LaxPair(
            "alternate",
            lambda a: np.array([[0.5, a], [a, 0.5]]),
            np.array([[0.0, 1.0], [1.0, 0.0]]),
            N,
            lambda a: (0.5 - a, 0.5 + a),
        )
    raise DomainError(f"unknown Lax variant {variant!r}")


@dataclass(frozen=True)
class LaxDiagnostics:
    residual_max: float
    spectrum_drift: float
    trace_drift: float
    numeric_spectrum_drift: float

    def __iter__(self):
        return iter((self.residual_max, self.spectrum_drift, self.trace_drift))


def lax_residual(pair, traj):
    """Measure ``||dL/dt - [L, N]||`` along a gradient-flow trajectory.

    ``dL/dt = dL_da * da/dt`` with ``da/dt = -a``.  Also reports the drift
    of the closed-form eigenvalues, of the numerically computed spectrum and
    of ``trace(L)``.  Nothing is asserted; the values are measurements.
    """
    a_vals = traj.a_values
    residual = 0.0
    lam0 = np.array(pair.eigenvalues(a_vals[0]))
    spec0 = np.sort_complex(np.linalg.eigvals(pair.L_of_a(a_vals[0])))
    tr0 = np.trace(pair.L_of_a(a_vals[0]))
    spec_drift = num_drift = tr_drift = 0.0
    for a in a_vals:
        L = pair.L_of_a(a)
        Ldot = pair.dL_da * (-a)
        residual = max(residual, linalg.frobenius(Ldot - linalg.commutator(L, pair.N)))
        spec_drift = max(spec_drift, float(np.max(np.abs(np.array(pair.eigenvalues(a)) - lam0))))
        eig = np.sort_complex(np.linalg.eigvals(L))
        num_drift = max(num_drift, float(np.max(np.abs(eig - spec0))))
        tr_drift = max(tr_drift, abs(float(np.trace(L) - tr0)))
    return LaxDiagnostics(residual, spec_drift, tr_drift, num_drift)
