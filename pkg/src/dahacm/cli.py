"""Command-line driver: each subcommand runs one check suite and writes a JSON report.

Exit status: 0 when every check passes, 1 when some check fails (the report
is still written), 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import cmspace, daha, degen, poisson
from .exact import format_rational, parse_rational
from .linalg import QMatrix, block_diag, det
from .report import Report, validation_errors
from .rng import RationalStream

SUBCOMMANDS = ("verify", "cm-map", "z-spec", "chart", "jordan", "poisson", "dunkl", "dual-trig")

# inclusive n ranges, chosen to keep every suite within a few minutes
N_RANGE = {
    "verify": (1, 5),
    "cm-map": (1, 5),
    "z-spec": (2, 5),
    "chart": (1, 6),
    "jordan": (1, 5),
    "poisson": (1, 6),
    "dunkl": (1, 4),
    "dual-trig": (1, 4),
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: int = 2
    tau: str = "2"
    t: str = "1"
    c: str = "1"
    seed: int = 0
    trials: int = 5
    degree_bound: int = 5
    flavor: str = "both"
    variant: str = "verbatim"
    input_path: str | None = None
    output_path: str | None = None

    def validate(self) -> "RunConfig":
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        for name in ("n", "seed", "trials", "degree_bound"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise ConfigError(f"{name} must be an integer")
        lo, hi = N_RANGE[self.subcommand]
        if not lo <= self.n <= hi:
            raise ConfigError(f"n out of range: {self.n} not in [{lo}, {hi}] for {self.subcommand}")
        if self.seed < 0:
            raise ConfigError("seed must be a non-negative integer")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.degree_bound < 1:
            raise ConfigError("degree_bound must be >= 1")
        if self.flavor not in ("rational", "trigonometric", "both"):
            raise ConfigError(f"unknown flavor {self.flavor!r}")
        if self.variant not in ("verbatim", "consistent"):
            raise ConfigError(f"unknown variant {self.variant!r}")
        tau = self.scalar("tau")
        if tau in (0, 1, -1):
            raise ConfigError("tau must not be 0, 1 or -1")
        self.scalar("t")
        self.scalar("c")
        return self

    def scalar(self, name: str) -> Fraction:
        try:
            return parse_rational(str(getattr(self, name)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad rational for {name}: {exc}") from None

    def echo(self) -> dict:
        return {k: v for k, v in asdict(self).items() if k not in ("input_path", "output_path")}


def _fmt(xs):
    return [format_rational(x) for x in xs]


def _character(stream: RationalStream, n: int, tau) -> daha.Character:
    nu = stream.chart_values(n, tau)
    mu = stream.rationals(n, nonzero=True)
    return daha.Character(tuple(mu), tuple(nu))


def _relations(report: Report, trial: int, rel: daha.RelationReport, prefix: str = ""):
    for e in rel.entries:
        report.add(e.relation, trial, prefix + e.instance, e.passed, e.witness)


# --- suites -----------------------------------------------------------------------------

def run_verify(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        chi = _character(root.child(k), cfg.n, tau)
        rep = daha.build_rep(daha.DahaParams(cfg.n, tau), chi)
        report.add("build_rep", k, "character", True, detail={"mu": _fmt(chi.mu), "nu": _fmt(chi.nu)})
        _relations(report, k, daha.verify_relations(rep))


def run_cm_map(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        chi = _character(root.child(k), cfg.n, tau)
        res = daha.cm_map(daha.build_rep(daha.DahaParams(cfg.n, tau), chi))
        detail = {"mu": _fmt(chi.mu), "nu": _fmt(chi.nu),
                  "Xbar": daha.matrix_to_json(res.Xbar), "Ybar": daha.matrix_to_json(res.Ybar)}
        for i, (name, ok) in enumerate(res.certificate.items()):
            report.add(name, k, "certificate", ok, detail=detail if i == 0 else None)
        for name, ok in res.swapped.items():
            report.add(name, k, "swapped order", ok)


def run_z_spec(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    n = cfg.n
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        chi = _character(root.child(k), n, tau)
        z = daha.z_element(daha.build_rep(daha.DahaParams(n, tau), chi), strict=False)
        report.add("X_1Y_1X_1^-1Y_1^-1=Z", k, "commutator", z.commutator_matches)
        report.add("Y_1X_1Y_1^-1X_1^-1=Z", k, "reversed commutator", z.reversed_commutator_matches)
        report.add("spec(Z|inv)={tau^(2(n-1)),tau^-2 x (n-1)}", k, "spectrum", z.spectrum_ok,
                   detail={"spectrum": _fmt(z.spectrum), "expected": _fmt(z.expected)})
    got = [2 * x for x in daha.transposition_sum_spectrum(n)]
    want = sorted([Fraction(2 * (n - 1))] + [Fraction(-2)] * (n - 1))
    report.add("spec(2*sum_i s_1i)=(2(n-1),-2,...,-2)", 0, "tau=1 companion", got == want,
               detail={"spectrum": _fmt(got)})


def _random_invertible(stream: RationalStream, n: int) -> QMatrix:
    while True:
        g = QMatrix.from_rows(stream.matrix(n))
        if det(g) != 0:
            return g


def run_chart(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    n = cfg.n
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        s = root.child(k)
        coords = cmspace.CMCoords(tuple(s.chart_values(n, tau)), tuple(s.rationals(n, nonzero=True)))
        p = cmspace.point_from_coords(tau, coords)
        report.add("CMeq", k, "point_from_coords", p.is_valid(), detail=coords.to_json())
        back = cmspace.canonicalize(cmspace.gl_act(p, _random_invertible(s, n)))
        ok = back == coords.sorted()
        report.add("canonicalize(g.point_from_coords(c))=sort(c)", k, "round trip", ok,
                   witness=None if ok else back.to_json())
        e = cmspace.epsilon_cm(p)
        report.add("epsilon_cm valid at tau^-1", k, "epsilon", e.is_valid() and e.tau == 1 / tau)
        ee = cmspace.epsilon_cm(e)
        report.add("epsilon_cm^2 restores (X,Y)", k, "epsilon", ee.X == p.X and ee.Y == p.Y)


def _separated_data(stream: RationalStream, shape, tau) -> cmspace.JordanData:
    while True:
        lams = stream.rationals(len(shape), nonzero=True, distinct=True)
        data = cmspace.JordanData(tuple(cmspace.JordanEntry(l, strings) for l, strings in zip(lams, shape)))
        if data.separated(tau):
            return data


def run_jordan(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    root = RationalStream(cfg.seed)
    trial = 0
    for size in range(1, cfg.n + 1):
        for shape in cmspace.jordan_shapes(size):
            data = _separated_data(root.child(trial), shape, tau)
            J = cmspace.jordan_matrix(data, tau)
            formula, brute = cmspace.ker_dim_formula(data), cmspace.ker_dim_bruteforce(J, tau)
            report.add("ker_dim_formula=ker_dim_bruteforce", trial, json.dumps(data.to_json()),
                       formula == brute, detail={"formula": formula, "bruteforce": brute})
            if len(data.entries) == 1:
                lhs, ok = cmspace.ineq_check(data.entries[0])
                report.add("ineq>0", trial, json.dumps(data.to_json()), ok, detail={"lhs": lhs})
            trial += 1
        for part in cmspace.partitions(size):
            lam = root.child(trial).rational(nonzero=True)
            J = block_diag([cmspace.jordan_block(k, lam) for k in part])
            formula, brute = cmspace.stab_dim_formula(part), cmspace.commutant_dim_bruteforce(J)
            report.add("stab_dim_formula=commutant_dim", trial, json.dumps(list(part)),
                       formula == brute, detail={"formula": formula, "bruteforce": brute})
            trial += 1


def run_poisson(cfg: RunConfig, report: Report):
    tau = cfg.scalar("tau")
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        s = root.child(k)
        nu = s.chart_values(cfg.n, tau)
        mu = s.rationals(cfg.n, nonzero=True)
        res = poisson.poisson_match(tau, nu, mu)
        report.add("chain_rule=closed_form", k, "brackets", res.ok, witness=res.witness,
                   detail={"nu": _fmt(nu), "mu": _fmt(mu)})
        report.add("antisymmetry", k, "brackets", res.chain.is_antisymmetric())


def run_dunkl(cfg: RunConfig, report: Report):
    t, c = cfg.scalar("t"), cfg.scalar("c")
    flavors = [degen.RATIONAL, degen.TRIG] if cfg.flavor == "both" else [cfg.flavor]
    for k, fl in enumerate(flavors):
        rel = degen.verify_degenerate_relations(degen.DegenParams(cfg.n, t, c, fl), cfg.degree_bound, cfg.variant)
        _relations(report, k, rel, prefix=f"{fl}: ")


def run_dual_trig(cfg: RunConfig, report: Report):
    c = cfg.scalar("c")
    root = RationalStream(cfg.seed)
    for k in range(cfg.trials):
        s = root.child(k)
        alpha = s.rationals(cfg.n, nonzero=True)
        beta = s.rationals(cfg.n, distinct=True)
        b = degen.trig_dual_rep(cfg.n, c, alpha, beta)
        report.add("trig_dual_rep", k, "data", True, detail={"alpha": _fmt(alpha), "beta": _fmt(beta)})
        _relations(report, k, degen.verify_dual_relations(b, cfg.variant))


SUITES = {
    "verify": run_verify,
    "cm-map": run_cm_map,
    "z-spec": run_z_spec,
    "chart": run_chart,
    "jordan": run_jordan,
    "poisson": run_poisson,
    "dunkl": run_dunkl,
    "dual-trig": run_dual_trig,
}


def run(cfg: RunConfig) -> tuple[int, Report]:
    cfg.validate()
    report = Report(cfg.subcommand, cfg.echo())
    SUITES[cfg.subcommand](cfg, report)
    text = report.dumps()
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return (0 if report.passed else 1), report


# --- argument parsing ----------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dahacm", description="Exact checks for q=1 DAHA modules and CM spaces.")
    sub = ap.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int)
        p.add_argument("--tau")
        p.add_argument("--t")
        p.add_argument("--c")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--degree-bound", dest="degree_bound", type=int)
        p.add_argument("--flavor", choices=["rational", "trigonometric", "both"])
        p.add_argument("--variant", choices=["verbatim", "consistent"])
        p.add_argument("--input", dest="input_path", help="JSON file with RunConfig fields")
        p.add_argument("--output", dest="output_path", help="report path (default: stdout)")
    v = sub.add_parser("validate", help="check a report against the schema")
    v.add_argument("path")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {}
    if ns.input_path:
        try:
            loaded = json.loads(Path(ns.input_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {ns.input_path}: {exc}") from None
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in fields(RunConfig)} - {"subcommand", "input_path"}
        unknown = set(loaded) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None and f.name != "subcommand":
            values[f.name] = v
    return RunConfig(subcommand=ns.subcommand, **values)


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    if ns.subcommand == "validate":
        try:
            errors = validation_errors(Path(ns.path).read_text())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        for e in errors:
            print(e, file=sys.stderr)
        print("valid" if not errors else "invalid")
        return 0 if not errors else 1
    try:
        cfg = config_from_args(ns)
        status, _ = run(cfg)
    except (ConfigError, daha.GenericityError, cmspace.ChartError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
