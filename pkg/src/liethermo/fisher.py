"""Generalized Fisher metric on the complement of the cone direction.

For a basis ``Z_1..Z_m`` the metric matrix has entries

    g_ij = c(Z_i, [beta, Z_j]) + <eta, [Z_i, [beta, Z_j]]>

with ``c`` the antisymmetrized 2-cocycle.  Both the pairing scale and the
rule producing ``eta`` from ``beta`` are explicit inputs: the published
tables are reproduced under different choices, and :func:`reproduce_paper_tables`
sweeps all of them in exact rational arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools

import numpy as np

from . import lie, linalg, thermo
from .errors import DomainError
from .linalg import PAIRINGS, PairingConvention
from .thermo import ETA_CONVENTIONS, ConeElement, EtaConvention

EXPONENTS = (-2, -1, 0, 1, 2)
FIT_TOL = 1e-9
SWEEP_A = (Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass(frozen=True)
class MetricConvention:
    pairing: PairingConvention
    eta: EtaConvention

    @property
    def label(self):
        return f"{self.pairing.label}/{self.eta.label}"


ALL_CONVENTIONS = tuple(MetricConvention(p, e) for p, e in itertools.product(PAIRINGS, ETA_CONVENTIONS))


def convention_from_labels(pairing="half", eta="grad"):
    p = {c.label: c for c in PAIRINGS}.get(pairing)
    e = {c.label: c for c in ETA_CONVENTIONS}.get(eta)
    if p is None or e is None:
        raise DomainError(f"unknown convention {pairing!r}/{eta!r}")
    return MetricConvention(p, e)


@dataclass(eq=False)
class MetricReport:
    """Metric matrix over a basis, with its dependence on ``a``.

    ``matrix`` is evaluated at the cone element passed in; ``matrices`` holds
    one matrix per entry of ``a_samples``.  ``monomial_fit[(i, j)]`` is
    ``(c, k)`` for an entry equal to ``c * a**k``, ``(0.0, None)`` for an
    identically zero entry and ``None`` for a non-monomial entry.
    ``discrepancies`` lists ``(entry, expected, computed)`` and is filled
    only when a target table is supplied.
    """

    basis_labels: list
    matrix: np.ndarray
    convention: MetricConvention
    a_samples: list
    matrices: list
    monomial_fit: dict
    fit_residual: float
    symmetry_defect: float
    discrepancies: list = field(default_factory=list)
    sign_mismatches: list = field(default_factory=list)
    max_deviation: float = None
    abs_deviation: float = None
    sweep: dict = field(default_factory=dict)


def _default_cocycle(dim, pairing):
    base = thermo.NEG_INVERSE if dim == 2 else thermo.AD_J
    return thermo.TwoCocycle(base, pairing)


def metric_entry(beta, Zi, Zj, conv, cocycle=None):
    """One entry ``c(Z_i, [beta, Z_j]) + <eta, [Z_i, [beta, Z_j]]>``."""
    B = beta.matrix if isinstance(beta, ConeElement) else linalg.as_matrix(beta)
    Zi, Zj = linalg.as_matrix(Zi), linalg.as_matrix(Zj)
    if not (B.shape == Zi.shape == Zj.shape):
        raise DomainError("beta and basis elements must share one dimension")
    if cocycle is None:
        cocycle = _default_cocycle(B.shape[0], conv.pairing)
    eta = thermo.eta_matrix(B, conv.eta, conv.pairing)
    inner = linalg.commutator(B, Zj)
    return cocycle(Zi, inner) + linalg.pairing(eta, linalg.commutator(Zi, inner), conv.pairing)


def _matrix_at(beta, basis, conv, cocycle=None):
    m = len(basis)
    G = np.empty((m, m), dtype=object if beta.exact else float)
    for i, j in itertools.product(range(m), repeat=2):
        G[i, j] = metric_entry(beta, basis[i], basis[j], conv, cocycle)
    return G


def fit_monomial(a_samples, values):
    """Fit ``c * a**k`` with ``k`` in ``EXPONENTS`` through exact interpolation.

    Returns ``((c, k), residual)``; ``(c, k)`` is ``(0.0, None)`` for an
    all-zero entry and ``None`` when no exponent fits within ``FIT_TOL``.
    """
    a = np.array([float(x) for x in a_samples])
    v = np.array([float(x) for x in values])
    if np.all(v == 0.0):
        return (0.0, None), 0.0
    scale = max(1.0, float(np.max(np.abs(v))))
    best, best_res = None, np.inf
    for k in EXPONENTS:
        c = v[0] / a[0] ** k
        res = float(np.max(np.abs(v - c * a**k))) / scale
        if res < best_res:
            best, best_res = (float(c), k), res
    if best_res >= FIT_TOL:
        return None, best_res
    return best, best_res


def _resolve_basis(basis, a):
    return list(basis(a)) if callable(basis) else list(basis)


def metric_matrix(beta, basis, conv, a_samples, labels=None, cocycle=None):
    """Metric matrix at ``beta`` plus its ``a``-dependence over ``a_samples``.

    ``basis`` is a list of matrices or a callable ``a -> list`` for bases
    that depend on the cone parameter.
    """
    if not isinstance(beta, ConeElement):
        raise DomainError("beta must be a ConeElement")
    if len({float(a) for a in a_samples}) < 3:
        raise DomainError("need at least 3 distinct a samples")
    for a in a_samples:
        thermo._positive(a, "a sample")
    B0 = _resolve_basis(basis, beta.a)
    if not B0:
        raise DomainError("basis must be non-empty")
    m = len(B0)
    labels = list(labels) if labels is not None else [f"Z{i + 1}" for i in range(m)]

    matrices = [_matrix_at(beta.with_a(a), _resolve_basis(basis, a), conv, cocycle) for a in a_samples]
    fits, worst = {}, 0.0
    for i, j in itertools.product(range(m), repeat=2):
        fit, res = fit_monomial(a_samples, [M[i, j] for M in matrices])
        fits[(i, j)] = fit
        worst = max(worst, res)
    G = _matrix_at(beta, B0, conv, cocycle)
    Gf = linalg.to_float(G)
    return MetricReport(
        basis_labels=labels,
        matrix=G,
        convention=conv,
        a_samples=list(a_samples),
        matrices=matrices,
        monomial_fit=fits,
        fit_residual=worst,
        symmetry_defect=float(np.linalg.norm(Gf - Gf.T)),
    )


# ---------------------------------------------------------------------------
# published tables


def _sl2_basis(a):
    return [linalg.exact(lie.E1), linalg.exact(lie.E2)]


def _sl2_normalized_basis(a):
    s = Fraction(1) / (2 * Fraction(a) ** 2)
    return [s * linalg.exact(lie.E1), s * linalg.exact(lie.E2)]


def _so3_basis(a):
    return [linalg.exact(Z) for Z in (lie.Z1, lie.Z2, lie.Z3)]


def _diag(*entries):
    return np.diag(np.array(entries, dtype=object))


@dataclass(frozen=True)
class PublishedTable:
    name: str
    algebra: str
    labels: tuple
    basis: object
    expected: object


PUBLISHED_TABLES = {
    "thm41": PublishedTable(
        "thm41", "so2", ("e1", "e2"), _sl2_basis,
        lambda a: _diag(4 * a**2, 4 * a**2),
    ),
    "thm41_normalized": PublishedTable(
        "thm41_normalized", "so2", ("Z1", "Z2"), _sl2_normalized_basis,
        lambda a: _diag(1 / a**2, 1 / a**2),
    ),
    "thm62": PublishedTable(
        "thm62", "so3", ("Z1", "Z2", "Z3"), _so3_basis,
        lambda a: _diag(2 * a**2, 2 * a**2, Fraction(0)),
    ),
}


def _compare(report, table):
    dev = abs_dev = Fraction(0)
    discrepancies, signs = [], []
    for a, G in zip(report.a_samples, report.matrices):
        T = table.expected(Fraction(a))
        for (i, j), g in np.ndenumerate(G):
            t = T[i, j]
            d = abs(g - t)
            dev = max(dev, d)
            abs_dev = max(abs_dev, abs(abs(g) - abs(t)))
            if d != 0:
                entry = (float(a), table.labels[i], table.labels[j])
                discrepancies.append((entry, float(t), float(g)))
                if t != 0 and g == -t:
                    signs.append(entry)
    report.discrepancies = discrepancies
    report.sign_mismatches = signs
    report.max_deviation = float(dev)
    report.abs_deviation = float(abs_dev)
    return report


def table_report(target, conv, a_samples=SWEEP_A):
    """Metric report for one published table under one convention, exact arithmetic."""
    if target not in PUBLISHED_TABLES:
        raise DomainError(f"unknown target {target!r}; expected one of {sorted(PUBLISHED_TABLES)}")
    table = PUBLISHED_TABLES[target]
    a_samples = [Fraction(a) for a in a_samples]
    beta = ConeElement(Fraction(1), table.algebra, exact=True)
    report = metric_matrix(beta, table.basis, conv, a_samples, labels=table.labels)
    return _compare(report, table)


def reproduce_paper_tables(target):
    """Sweep every pairing/eta convention against a published metric table.

    Returns ``(best_convention, report)``.  The best convention minimizes the
    maximal entrywise deviation over ``a`` in ``{1/2, 1, 2}`` (ties go to the
    first in enumeration order); ``report.sweep`` records the deviation of
    every convention and ``report.discrepancies`` every entry that is off
    under the best one.
    """
    reports = [table_report(target, conv) for conv in ALL_CONVENTIONS]
    best = min(reports, key=lambda r: r.max_deviation)
    best.sweep = {r.convention.label: r.max_deviation for r in reports}
    return best.convention, best
