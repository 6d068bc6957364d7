"""Command-line verification harness.

``fockbundle verify`` runs one of the identity suites over a list of
detuning values and writes a deterministic report (json/text);
``fockbundle sweep`` runs a suite along one axis (theta, t, nmax) and
writes one CSV row per axis value.

Exit codes: 0 all checks pass, 1 some check failed (report still
written), 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field
from typing import List

from . import classical, jc, spinrep, veronese
from .operators import FockOperator, op_equal
from .report import CheckResult, VerificationReport

SUITES = ("fock", "charts", "propagator", "veronese", "spinrep", "classical", "all")


class ConfigError(Exception):
    pass


@dataclass
class SuiteConfig:
    suite: str
    theta_list: List[float] = field(default_factory=lambda: [1.0])
    n_max: int = 48
    tol: float = 1e-10
    g: float = 1.0
    t: float = 1.0
    omega: float | None = None
    delta: float | None = None
    seed: int = 0
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.n_max < 4:
            raise ConfigError("n_max must be at least 4")
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        if not self.theta_list:
            raise ConfigError("at least one theta is required")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"unknown format {self.format!r}")

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "theta_list": list(self.theta_list),
            "n_max": self.n_max,
            "tol": self.tol,
            "g": self.g,
            "t": self.t,
            "seed": self.seed,
        }


def thread_cap() -> int:
    """FOCKBUNDLE_THREADS caps worker parallelism (1 = sequential)."""
    raw = os.environ.get("FOCKBUNDLE_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"FOCKBUNDLE_THREADS={raw!r} is not an integer")
    if value < 1:
        raise ConfigError("FOCKBUNDLE_THREADS must be >= 1")
    return value


# -- suites ----------------------------------------------------------------


def run_fock(cfg: SuiteConfig) -> List[CheckResult]:
    a = FockOperator.annihilation()
    adag = FockOperator.creation()
    num = FockOperator.number_op()
    ident = FockOperator.identity()
    nm, tol = cfg.n_max, cfg.tol
    return [
        op_equal(a * adag - adag * a, ident, nm, tol, name="ladder_commutator"),
        op_equal(adag * a, num, nm, tol, name="number_from_ladders"),
        op_equal(a.dagger(), adag, nm, tol, name="adjoint_of_annihilation"),
        op_equal((a * adag) * a, a * (adag * a), nm, tol, name="composition_associativity"),
        op_equal(num * a, a * (num - ident), nm, tol, name="number_shift_relation"),
    ]


def run_charts(cfg: SuiteConfig) -> List[CheckResult]:
    out: List[CheckResult] = []
    nm, tol = cfg.n_max, cfg.tol
    for theta in cfg.theta_list:
        h = jc.build_h_jc(theta)
        out.append(_retag(jc.qdm_reconstruction_check(theta, nm, tol), theta))
        for label in ("I", "II"):
            chart = jc.build_chart(theta, label)
            rebuilt = chart.unitary @ chart.diagonal @ chart.unitary.dagger()
            out.append(
                _renamed(jc.matrix_equal(rebuilt, h, nm, tol), f"chart_{label}_rebuilds_h_theta{theta}")
            )
            rep = jc.dirac_string_map(theta, label, nm)
            out.append(
                jc.string_report_check(f"strings_chart_{label}_theta{theta}", rep.computed, rep.claimed)
            )
        glue = jc.transition_operator("ground")
        vi = jc.chart_unitary(theta, "I")
        vii = jc.chart_unitary(theta, "II")
        out.append(_renamed(jc.matrix_equal(vi @ glue, vii, nm, tol), f"gluing_relation_theta{theta}"))
        out.append(
            jc.string_report_check(
                f"strings_transition_theta{theta}", jc.transition_singular_map(nm), {1: [0]}
            )
        )
        p = jc.projector_pjc(theta)
        out.append(_renamed(jc.check_idempotent_hermitian(p, nm, tol), f"projector_theta{theta}"))
        out.append(
            jc.string_report_check(
                f"strings_projector_theta{theta}",
                jc.projector_singular_map(theta, nm),
                {2: [0]} if theta == 0 else {},
            )
        )
        out.append(_renamed(jc.spectral_decomposition_check(theta, nm, tol), f"spectral_theta{theta}"))
        out.append(_renamed(jc.z_identity_check(theta, nm, tol), f"z_identity_theta{theta}"))
    return out


def run_propagator(cfg: SuiteConfig) -> List[CheckResult]:
    out: List[CheckResult] = []
    nm = min(cfg.n_max, 32)
    for theta in cfg.theta_list:
        out.append(
            _renamed(
                jc.propagator_oracle_check(theta, cfg.g, cfg.t, nm, cfg.tol),
                f"propagator_oracle_theta{theta}",
            )
        )
        out.append(
            _renamed(
                jc.propagator_unitarity_check(theta, cfg.g, cfg.t, nm, cfg.tol),
                f"propagator_unitary_theta{theta}",
            )
        )
        out.append(
            _renamed(
                jc.propagator_semigroup_check(theta, cfg.g, cfg.t, cfg.t / 2.0, nm, cfg.tol),
                f"propagator_semigroup_theta{theta}",
            )
        )
    return out


def run_veronese(cfg: SuiteConfig) -> List[CheckResult]:
    out: List[CheckResult] = []
    nm, tol = cfg.n_max, cfg.tol
    for theta in cfg.theta_list:
        for j in range(5):
            out.append(_retag(veronese.sum_rule_check(theta, j, nm, tol), theta))
        for j in range(1, 5):
            out.append(_retag(veronese.shift_rule_check(theta, j, nm, tol), theta))
        out.append(_retag(veronese.commutation_check(theta, 0, 0, nm, tol), theta))
        out.append(_retag(veronese.commutation_check(theta, 1, 0, nm, tol), theta))
        for n in (2, 3):
            lifted = veronese.lift(veronese.build_family(theta, n))
            out.append(_retag(veronese.lift_norm_check(lifted, nm, tol), theta))
            out.append(_retag(veronese.binomial_power_check(lifted, nm, tol), theta))
            out.append(_retag(veronese.factored_form_check(lifted, nm, tol), theta))
            out.append(_retag(veronese.oike_layout_check(lifted, nm, tol), theta))
            out.append(_retag(veronese.eigencolumn_check(lifted, nm, tol), theta))
    return out


def run_spinrep(cfg: SuiteConfig) -> List[CheckResult]:
    import numpy as np

    out: List[CheckResult] = []
    rng = np.random.default_rng(cfg.seed)
    worst_u, worst_h, worst_cg = 0.0, 0.0, 0.0
    for _ in range(50):
        g1 = spinrep.random_su2(rng)
        g2 = spinrep.random_su2(rng)
        prod = spinrep.SU2Element(
            alpha=g1.alpha * g2.alpha - np.conj(g1.beta) * g2.beta,
            beta=g1.beta * g2.alpha + np.conj(g1.alpha) * g2.beta,
        )
        for j in (0.5, 1.0, 1.5):
            m1, m2 = spinrep.spin_rep(g1, j), spinrep.spin_rep(g2, j)
            k = m1.shape[0]
            worst_u = max(worst_u, float(np.max(np.abs(m1.conj().T @ m1 - np.eye(k)))))
            worst_h = max(worst_h, float(np.max(np.abs(m1 @ m2 - spinrep.spin_rep(prod, j)))))
        worst_cg = max(
            worst_cg,
            float(np.max(np.abs(spinrep.cg_decompose_pair(g1) - spinrep.pair_block_target(g1)))),
            float(np.max(np.abs(spinrep.cg_decompose_triple(g1) - spinrep.triple_block_target(g1)))),
        )
    out.append(CheckResult("su2_rep_unitary", worst_u, 1e-12, worst_u <= 1e-12))
    out.append(CheckResult("su2_rep_homomorphism", worst_h, 1e-12, worst_h <= 1e-12))
    out.append(CheckResult("su2_cg_blocks", worst_cg, 1e-12, worst_cg <= 1e-12))
    nm, tol = cfg.n_max, cfg.tol
    for theta in cfg.theta_list:
        for j in (0.5, 1.0, 1.5):
            out.append(_retag(spinrep.nc_unitarity_check(theta, j, nm, tol), theta))
        for j in (1.0, 1.5):
            out.append(_retag(spinrep.first_column_check(theta, j, nm, tol), theta))
            out.append(_retag(spinrep.projector_relation_check(theta, j, nm, tol), theta))
        if theta != 0:
            # at theta = 0 the conjugated tensor square happens to agree
            # with the block form on the common domain, so there is no
            # breakdown to assert there
            out.append(spinrep.tensor_breakdown_check(theta, nm, 1e-8))
    return out


def run_classical(cfg: SuiteConfig) -> List[CheckResult]:
    import numpy as np

    out: List[CheckResult] = []
    worst = classical.verify_sample(200, cfg.seed)
    out.append(CheckResult("sphere_identities_sample", worst, 1e-12, worst <= 1e-12))
    spots = [0.3 + 0.4j, -1.2 + 0.7j, 2.0 - 0.5j]
    dev = 0.0
    for z in spots:
        dev = max(
            dev,
            float(
                np.max(np.abs(classical.cp1_chart_projector(z, 0) - classical.cp_projector(np.array([1.0, z]))))
            ),
        )
        dev = max(
            dev,
            float(
                np.max(np.abs(classical.cp1_chart_projector(z, 1) - classical.cp_projector(np.array([z, 1.0]))))
            ),
        )
    for z1, z2 in [(0.3 + 0.4j, -0.2j), (1.0 - 1.0j, 0.5 + 0.25j)]:
        dev = max(
            dev,
            float(
                np.max(
                    np.abs(
                        classical.cp2_chart_projector(z1, z2)
                        - classical.cp_projector(np.array([1.0, z1, z2]))
                    )
                )
            ),
        )
    out.append(CheckResult("cp_chart_projectors", dev, 1e-12, dev <= 1e-12))
    for theta in cfg.theta_list:
        if theta >= 0:
            out.append(_retag(jc.classical_limit_check(theta), theta))
    return out


_RUNNERS = {
    "fock": run_fock,
    "charts": run_charts,
    "propagator": run_propagator,
    "veronese": run_veronese,
    "spinrep": run_spinrep,
    "classical": run_classical,
}


def _renamed(res: CheckResult, name: str) -> CheckResult:
    res.name = name
    return res


def _retag(res: CheckResult, theta: float) -> CheckResult:
    res.name = f"{res.name}_theta{theta}"
    return res


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    thread_cap()  # validated even though execution is sequential
    report = VerificationReport(suite=cfg.suite, config=cfg.to_dict())
    names = list(_RUNNERS) if cfg.suite == "all" else [cfg.suite]
    for name in names:
        report.extend(_RUNNERS[name](cfg))
    return report


# -- output ----------------------------------------------------------------


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "text":
        return report.to_text()
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    writer.writerow(["name", "max_deviation", "tol", "pass", "excluded"])
    for c in report.checks:
        excl = ";".join(f"slot{k}:{sorted(v)}" for k, v in sorted(c.excluded.items()))
        writer.writerow([c.name, repr(c.max_deviation), repr(c.tol), int(c.passed), excl])
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def sweep(cfg: SuiteConfig, axis: str, values: List[float]) -> str:
    if axis not in ("theta", "t", "nmax"):
        raise ConfigError(f"unknown sweep axis {axis!r}")
    if not values:
        raise ConfigError("sweep needs at least one axis value")
    rows = []
    names: List[str] = []
    for v in values:
        sub = SuiteConfig(
            suite=cfg.suite,
            theta_list=[v] if axis == "theta" else cfg.theta_list,
            n_max=int(v) if axis == "nmax" else cfg.n_max,
            tol=cfg.tol,
            g=cfg.g,
            t=v if axis == "t" else cfg.t,
            seed=cfg.seed,
            format=cfg.format,
        )
        report = run_suite(sub)
        if not names:
            names = [c.name for c in report.checks]
        rows.append((v, report))
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=",", lineterminator="\n")
    writer.writerow([axis] + [_axis_free_name(n, axis) for n in names] + ["pass"])
    for v, report in rows:
        writer.writerow(
            [repr(v)] + [repr(c.max_deviation) for c in report.checks] + [int(report.passed)]
        )
    return buf.getvalue()


def _axis_free_name(name: str, axis: str) -> str:
    # per-theta tags vary along a theta sweep; strip them so columns line up
    if axis == "theta" and "_theta" in name:
        return name[: name.rindex("_theta")]
    return name


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fockbundle")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}")
        p.add_argument("--theta", action="append", type=float, default=None)
        p.add_argument("--nmax", type=int, default=48)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--g", type=float, default=1.0)
        p.add_argument("--t", type=float, default=1.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)

    pv = sub.add_parser("verify", help="run a suite and write a report")
    common(pv)
    pv.add_argument("--format", choices=("json", "csv", "text"), default="json")

    ps = sub.add_parser("sweep", help="run a suite along one axis, emit CSV")
    common(ps)
    ps.add_argument("--axis", required=True, help="theta, t or nmax")
    ps.add_argument("--values", type=float, nargs="+", required=True)
    return parser


def main(argv: List[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = SuiteConfig(
            suite=args.suite,
            theta_list=args.theta if args.theta is not None else [1.0],
            n_max=args.nmax,
            tol=args.tol,
            g=args.g,
            t=args.t,
            seed=args.seed,
            out=args.out,
            format=getattr(args, "format", "csv"),
        )
        if args.command == "verify":
            report = run_suite(cfg)
            emit(render(report, cfg.format), cfg.out)
            return 0 if report.passed else 1
        text = sweep(cfg, args.axis, list(args.values))
        emit(text, cfg.out)
        return 0
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
