"""``verify`` command line driver.

Runs the verification suites, prints a JSON report and optionally writes it
(``--json``) together with a trajectory CSV (``--csv``).

Exit status: 0 when every case passes (findings allowed), 1 on a failed
case or an I/O error, 2 on a usage error.
"""

import argparse
import csv
from dataclasses import asdict, dataclass, field
import json
import math
import sys
import time

import numpy as np

from . import dynamics, fisher, lie, linalg, orbits, thermo
from .errors import LieThermoError
from .linalg import HALF

SUITES = ("thermo", "metric", "flow", "lax", "orbit")
CSV_HEADER = ("t", "a", "beta_12", "eta_12", "H")

EXPECTED_EXPONENT = {"thm41": 2, "thm41_normalized": -2, "thm62": 2}


@dataclass
class Case:
    name: str
    status: str
    measured: float
    expected: float
    tolerance: float
    provenance: str


@dataclass
class RunReport:
    suite: str
    cases: list = field(default_factory=list)
    convention_used: dict = None
    wall_time_ms: int = 0

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.cases)

    def check(self, name, measured, expected, tolerance, provenance):
        measured, expected = float(measured), float(expected)
        status = "pass" if abs(measured - expected) <= tolerance else "fail"
        self.cases.append(Case(name, status, measured, expected, float(tolerance), provenance))

    def finding(self, name, measured, provenance):
        self.cases.append(Case(name, "finding", float(measured), None, 0.0, provenance))

    def to_dict(self):
        return {
            "suite": self.suite,
            "cases": [asdict(c) for c in self.cases],
            "convention_used": self.convention_used,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _convention_dict(conv):
    return {"pairing": conv.pairing.label, "eta": conv.eta.label}


# ---------------------------------------------------------------------------
# suites


def _fmt(a):
    return format(float(a), "g")


def suite_thermo(report, opts):
    for a in opts["a"]:
        tag = f"[a={_fmt(a)}]"
        beta = thermo.ConeElement(a)
        report.check(f"chi.quadrature{tag}", thermo.koszul_chi(beta, "quadrature"), 1 / (2 * a),
                     linalg.QUADRATURE_TOL, "derived: quadrature vs closed form 1/(2a)")
        pot = thermo.potentials(beta)
        report.check(f"phi{tag}", pot.phi, math.log(2 * a), 1e-12, "published: potential log(2a)")
        report.check(f"psi{tag}", pot.psi, 1 - math.log(2 * a), 1e-12, "published: dual potential 1 - log(2a)")
        report.check(f"legendre{tag}", pot.legendre_residual, 0.0, 1e-12, "published: Legendre duality")
        report.check(f"density.normalization{tag}", thermo.density_normalization(beta), 1.0,
                     linalg.QUADRATURE_TOL, "published: density integrates to 1")
        fisher_exact = 1 / a**2
        report.check(f"fisher.finite_difference{tag}", thermo.scalar_fisher(beta, "finite_difference"),
                     fisher_exact, 1e-6 * fisher_exact, "published: I = -Phi'' = 1/a^2")
        report.check(f"fisher.statistical{tag}", thermo.scalar_fisher(beta, "statistical"),
                     fisher_exact, 1e-4 * fisher_exact, "derived: E[(d/da log p)^2] by quadrature")
        mom = thermo.density_moments(beta)
        report.check(f"moments.mean{tag}", mom.mean_x, 1 / (2 * a), 1e-6, "derived: quadrature mean")
        report.check(f"moments.var{tag}", mom.var_x, 1 / (4 * a**2), 1e-6, "derived: quadrature variance")
        matches = sorted(k for k, v in mom.identification.items() if v)
        report.finding(f"moments.mean_equals_eta{tag}", mom.mean_x,
                       "measured: E[xi] coordinate; equals eta under " + (", ".join(matches) or "no convention"))
        report.check(f"equivariance.SO2{tag}",
                     thermo.group_cocycle_residual(beta, thermo.GRAD_PHI, lie.so2_sweep(100)), 0.0, 1e-12,
                     "published: group cocycle vanishes on SO(2)")
        report.check(f"equivariance.O3{tag}",
                     thermo.group_cocycle_residual(thermo.ConeElement(a, "so3"), thermo.GRAD_PHI,
                                                   lie.o3_stabilizer_sweep(100)), 0.0, 1e-12,
                     "derived: J-conjugation fixes the Z3 line")
    sweep = np.logspace(-2, 2, 100)
    worst = max(abs(thermo.potentials(a).legendre_residual) for a in sweep)
    report.check("legendre.sweep[1e-2..1e2]", worst, 0.0, 1e-12, "published: Legendre duality")


def suite_metric(report, opts):
    targets = [opts["target"]] if opts.get("target") else list(fisher.PUBLISHED_TABLES)
    override = None
    if opts.get("pairing") or opts.get("eta"):
        override = fisher.convention_from_labels(opts.get("pairing") or "half", opts.get("eta") or "grad")
    used, exact_sets = {}, {}
    for t in targets:
        if override is not None:
            conv, rep = override, fisher.table_report(t, override)
        else:
            conv, rep = fisher.reproduce_paper_tables(t)
            exact_sets[t] = {k for k, v in rep.sweep.items() if v == 0}
        used[t] = _convention_dict(conv)
        prov = f"published table {t}; convention {conv.label}"
        if rep.max_deviation <= 1e-12:
            report.check(f"{t}.max_deviation", rep.max_deviation, 0.0, 1e-12, prov)
        elif rep.abs_deviation <= 1e-12:
            report.finding(f"{t}.max_deviation", rep.max_deviation, prov + "; sign-only mismatch")
        else:
            report.check(f"{t}.max_deviation", rep.max_deviation, 0.0, 1e-12, prov)
        report.check(f"{t}.abs_deviation", rep.abs_deviation, 0.0, 1e-12, prov + "; absolute values")
        for entry in rep.sign_mismatches:
            report.finding(f"{t}.sign_mismatch[a={_fmt(entry[0])},{entry[1]},{entry[2]}]", -1.0,
                           prov + "; entry has the opposite sign")
        for (i, j), fit in sorted(rep.monomial_fit.items()):
            if fit is not None and fit[1] is not None:
                name = f"{t}.exponent[{rep.basis_labels[i]},{rep.basis_labels[j]}]"
                report.check(name, fit[1], EXPECTED_EXPONENT[t], 0.0, "derived: monomial fit over a samples")
        report.check(f"{t}.fit_residual", rep.fit_residual, 0.0, fisher.FIT_TOL, "derived: monomial fit residual")
        report.finding(f"{t}.symmetry_defect", rep.symmetry_defect, "measured: ||G - G^T||")
        if t == "thm62":
            worst = 0.0
            for conv_i in fisher.ALL_CONVENTIONS:
                r = fisher.table_report(t, conv_i)
                for M in r.matrices:
                    worst = max(worst, linalg.max_abs(M[2, :]), linalg.max_abs(M[:, 2]))
            report.check("thm62.kernel_row_col", worst, 0.0, 0.0, "trivial: [beta, Z3] = 0 under every convention")
    if "thm41" in exact_sets and "thm62" in exact_sets:
        common = exact_sets["thm41"] & exact_sets["thm62"]
        report.finding("tables.common_exact_conventions", len(common),
                       "measured: conventions reproducing both tables sign-exactly: "
                       + (", ".join(sorted(common)) or "none"))
    so3 = lie.builtin_algebra("so3")
    coeff = so3.coordinates(linalg.commutator(lie.Z3, lie.Z2))[0]
    report.finding("so3.bracket_beta_Z2_coefficient_of_Z1", coeff,
                   "measured: [beta, Z2] = c a Z1 from the matrices; printed value is c = +1")
    report.convention_used = used


def _single_sample(a0):
    return dynamics.Trajectory(np.array([0.0]), np.array([float(a0)]), "exact")


def suite_flow(report, opts):
    a0, dt = opts["a0"], opts["dt"]
    t_grad = opts["t_end"] if opts["t_end"] is not None else 5.0
    t_ham = opts["t_end"] if opts["t_end"] is not None else 10.0
    if t_grad == 0:
        traj = _single_sample(a0)
        report.check("gradient.initial_condition", traj.a_values[0], a0, 0.0, "trivial: a(0) = a0")
        report.check("gradient.samples", len(traj), 1, 0.0, "trivial: single sample at t = 0")
        if opts.get("csv"):
            export_trajectory(traj, opts["csv"])
        return
    exact = dynamics.integrate_gradient(a0, t_grad, dt, "exact")
    rk4 = dynamics.integrate_gradient(a0, t_grad, dt, "rk4")
    report.check("gradient.rk4_vs_exact", np.max(np.abs(rk4.states - exact.states)), 0.0, 1e-8,
                 "derived: a(t) = a0 exp(-t)")
    errs = []
    for h in (0.1, 0.05):
        e = dynamics.integrate_gradient(a0, 5.0, h, "exact")
        r = dynamics.integrate_gradient(a0, 5.0, h, "rk4")
        errs.append(np.max(np.abs(r.states - e.states)))
    report.check("gradient.rk4_order_ratio[dt=0.1/0.05]", errs[0] / errs[1], 16.0, 2.0,
                 "derived: fourth order, ratio in [14, 18]")
    rk4_so3 = dynamics.integrate_gradient(a0, t_grad, dt, "rk4", algebra="so3")
    report.check("gradient.so3_equals_so2", np.max(np.abs(rk4_so3.states - rk4.states)), 0.0, 0.0,
                 "published: both reduce to da/dt = -a")
    report.check(f"gradient.field_consistency[a={_fmt(a0)}]",
                 dynamics.gradient_field_consistency(thermo.ConeElement(a0)), 0.0, 1e-6,
                 "published: -a^2 dPhi/dbeta = -beta")
    P, Q = rk4.pq()
    pb = np.array([linalg.pairing(p, q) for p, q in zip(P, Q)])
    report.check("gradient.pairing_beta_eta_drift", np.max(np.abs(pb - pb[0])), 0.0, 1e-10,
                 "derived: <beta, eta> = 1 along the flow")

    ham, drift = dynamics.hamiltonian_flow(thermo.ConeElement(a0), thermo.GRAD_PHI, t_ham, dt)
    P0, Q0 = ham.states[0]
    report.check("hamiltonian.H0", dynamics.hamiltonian(P0, Q0), -1.0, 1e-12, "published: H(P, Q) = -1")
    report.check("hamiltonian.drift", drift, 0.0, 1e-10, "derived: <e^-t beta, e^t eta> is constant")
    integ = dynamics.integrability_report(ham, [("H", dynamics.hamiltonian)])
    report.check("hamiltonian.completely_integrable", integ.verdict == "completely integrable", 1.0, 0.0,
                 "published: one degree of freedom, one independent first integral")
    rows = dynamics.scalar_hamiltonian_diagnostic(a0)
    report.finding("hamiltonian.scalar_form_readings_satisfied", sum(r["holds"] for r in rows),
                   "measured: readings of H = a^2/2 with P = a, Q = -a satisfying the canonical equations")
    if opts.get("csv"):
        export_trajectory(ham, opts["csv"])


def suite_lax(report, opts):
    a0 = opts["a0"]
    t_end = opts["t_end"] if opts["t_end"] is not None else 1.0
    dt = min(opts["dt"], t_end) if t_end > 0 else opts["dt"]
    traj = dynamics.integrate_gradient(a0, t_end, dt, "rk4") if t_end > 0 else _single_sample(a0)
    for variant, trace in (("printed", -1.0), ("alternate", 1.0)):
        pair = dynamics.lax_pair(variant)
        report.check(f"{variant}.trace", np.trace(pair.L_of_a(a0)), trace, 1e-14,
                     "published: trace of L" if variant == "printed" else "derived: trace of alternate L")
        diag = dynamics.lax_residual(pair, traj)
        report.check(f"{variant}.trace_drift", diag.trace_drift, 0.0, 1e-14, "derived: L affine in a")
        report.finding(f"{variant}.residual_max", diag.residual_max,
                       "measured: max ||dL/dt - [L, N]|| (exact value 2 a0 for a0 >= a(t))")
        report.finding(f"{variant}.spectrum_drift", diag.spectrum_drift,
                       "measured: drift of closed-form eigenvalues along da/dt = -a")
        report.finding(f"{variant}.numeric_spectrum_drift", diag.numeric_spectrum_drift,
                       "measured: drift of numerically computed eigenvalues")
    lam = dynamics.lax_pair("printed").eigenvalues(1.0)
    report.check("printed.lambda1[a=1]", lam[0], -1.5, 0.0, "published: lambda1 = -1/2 - a")
    report.check("printed.lambda2[a=1]", lam[1], 0.5, 0.0, "published: lambda2 = -1/2 + a")


def suite_orbit(report, opts):
    seed = opts["seed"]
    x = 2.0
    report.check("SO2_spread", orbits.orbit_sample(x * lie.U, "SO2", 100).max_spread, 0.0, 1e-12,
                 "published: SO(2) fixes x u")
    report.check("O3_spread", orbits.orbit_sample(x * lie.Z3, "O3", 100).max_spread, 0.0, 1e-12,
                 "published: J fixes the Z3 pattern")
    report.finding("SO3_spread", orbits.orbit_sample(x * lie.Z3, "SO3", 100).max_spread,
                   "measured: full SO(3) orbit of the Z3 seed is a sphere, not a point")
    for g in lie.reflection_elements()[1:]:
        d = tuple(int(v) for v in np.diag(g.matrix))
        moved = linalg.frobenius(lie.coadjoint_group(g, x * lie.Z3) - x * lie.Z3)
        report.finding(f"reflection{d}_moves_seed", moved, "measured: reflection maps the seed to -seed")
    for name, xi, group, expect in (
        ("3u", 3.0 * lie.U, "SO2", True),
        ("0", np.zeros((2, 2)), "SO2", False),
        ("-u", -1.0 * lie.U, "SO2", False),
        ("e1", lie.E1, "SO2", False),
        ("2Z3", 2.0 * lie.Z3, "O3", True),
        ("Z1", lie.Z1, "O3", False),
    ):
        on, _ = orbits.leaf_membership(xi, group)
        report.check(f"leaf.{name}", float(on), float(expect), 0.0, "derived: open ray x > 0")
    so3 = lie.builtin_algebra("so3")
    res = orbits.bracket_property_residuals(so3, 100, seed)
    report.check("poisson.so3.antisymmetry", res["antisymmetry"], 0.0, 1e-10, "derived: {F,G} + {G,F} = 0")
    report.check("poisson.so3.leibniz", res["leibniz"], 0.0, 1e-10, "derived: Leibniz rule")
    report.check("poisson.so3.jacobi", res["jacobi"], 0.0, 1e-10, "derived: Jacobi identity")
    report.check("poisson.so3.casimir", res["casimir"], 0.0, 1e-10, "derived: <xi, xi> is a Casimir")
    res2 = orbits.bracket_property_residuals(lie.builtin_algebra("so2"), 100, seed)
    report.check("poisson.so2.vanishes", max(res2.values()), 0.0, 1e-14, "trivial: so(2) is abelian")
    report.check("kks.Z3_Z1_Z2", orbits.kks_form(lie.Z3, lie.Z1, lie.Z2, HALF), 1.0, 1e-12,
                 "derived: [Z1, Z2] = Z3")


_RUNNERS = {
    "thermo": suite_thermo,
    "metric": suite_metric,
    "flow": suite_flow,
    "lax": suite_lax,
    "orbit": suite_orbit,
}

DEFAULTS = {
    "a": [0.5, 1.0, 2.0, 5.0],
    "a0": 1.0,
    "dt": 1e-3,
    "t_end": None,
    "pairing": None,
    "eta": None,
    "seed": 0,
    "target": None,
    "csv": None,
    "timing": False,
}


def run(suite, options=None):
    """Run one suite (or ``"all"``) and return a :class:`RunReport`."""
    opts = dict(DEFAULTS)
    opts.update({k: v for k, v in (options or {}).items() if v is not None})
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    start = time.perf_counter()
    report = RunReport(suite)
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        sub = RunReport(name)
        _RUNNERS[name](sub, opts)
        for c in sub.cases:
            c.name = f"{name}.{c.name}" if suite == "all" else c.name
        report.cases.extend(sub.cases)
        if sub.convention_used is not None:
            report.convention_used = sub.convention_used
    if opts["timing"]:
        report.wall_time_ms = int(round(1000 * (time.perf_counter() - start)))
    return report


def export_trajectory(traj, path):
    """Write ``t,a,beta_12,eta_12,H`` rows, 17 significant digits."""
    P, Q = traj.pq()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for t, a, p, q in zip(traj.times, traj.a_values, P, Q):
            row = (t, a, p[0, 1], q[0, 1], dynamics.hamiltonian(p, q))
            w.writerow([format(float(v), ".17g") for v in row])


# ---------------------------------------------------------------------------
# argument parsing


def _float_list(text):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values or any(not (v > 0) or not math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError("a values must be positive and finite")
    return values


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (v > 0) or not math.isfinite(v):
        raise argparse.ArgumentTypeError("value must be positive and finite")
    return v


def _nonnegative_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (v >= 0) or not math.isfinite(v):
        raise argparse.ArgumentTypeError("value must be non-negative and finite")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="verify", description="Run verification suites and emit a JSON report.")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--a", type=_float_list, help="comma-separated cone parameters")
    p.add_argument("--a0", type=_positive_float, help="initial cone parameter for flows")
    p.add_argument("--dt", type=_positive_float, help="RK4 step")
    p.add_argument("--t-end", type=_nonnegative_float, dest="t_end", help="flow horizon")
    p.add_argument("--pairing", choices=("half", "one"), help="override the metric pairing scale")
    p.add_argument("--eta", choices=("grad", "minus", "plus"), help="override the metric eta convention")
    p.add_argument("--target", choices=tuple(fisher.PUBLISHED_TABLES), help="metric table to check")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--json", dest="json_path", help="write the JSON report here")
    p.add_argument("--csv", help="write the Hamiltonian-flow trajectory here")
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k not in ("suite", "json_path")}
    try:
        report = run(args.suite, opts)
    except OSError as exc:
        print(f"verify: I/O error: {exc}", file=sys.stderr)
        return 1
    except LieThermoError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    text = report.to_json()
    sys.stdout.write(text)
    if args.json_path:
        try:
            with open(args.json_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"verify: I/O error: {exc}", file=sys.stderr)
            return 1
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
