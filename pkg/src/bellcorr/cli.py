"""Command-line front end emitting deterministic CSV.

Subcommands::

    bellcorr quantify C1 C2 C3
    bellcorr evolve C1 C2 C3 [--nu-max 3] [--steps 601] [--tau 5] [--alpha 1]
    bellcorr scan [--c3 0.2] [--radius 0.5] [--c1-min -0.5] [--c1-max 0.5] [--scan-steps 101]
    bellcorr inversions {D,C,T} [scan options]
    bellcorr check [--seed 42] [--samples 50] [--state C1 C2 C3]

Exit codes: 0 ok, 1 parse error, 2 domain error, 3 failed check,
4 non-convergence. ``--config FILE`` reads ``key = value`` defaults which
explicit flags override.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import __version__, correlations, dynamics, oracles, qstate, statespace
from .errors import AppendixViolation, NonPhysicalState, NotConverged

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CHECK, EXIT_NOCONV = 0, 1, 2, 3, 4

REPORT_COLUMNS = ["c1", "c2", "c3", "T", "D", "C", "Tg2", "Dg2", "Cg2", "k"]
EVOLVE_COLUMNS = ["nu", *REPORT_COLUMNS]

DELTA_TOL = 1e-4
GEOMETRIC_TOL = 1e-6
PRODUCT_TOL = 1e-9
ARGMIN_TOL = 1e-6

DEFAULTS = {
    "tau": 5.0,
    "alpha": 1.0,
    "nu_max": 3.0,
    "steps": 601,
    "c3": 0.2,
    "radius": 0.5,
    "c1_min": -0.5,
    "c1_max": 0.5,
    "scan_steps": 101,
    "seed": 42,
    "samples": 50,
    "theta_steps": 181,
    "phi_steps": 361,
    "starts": 20,
}
_INT_KEYS = {"steps", "scan_steps", "seed", "samples", "theta_steps", "phi_steps", "starts"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Shortest representation up to 12 significant digits."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    text = f"{float(x):.12g}"
    return "0" if text == "-0" else text


def read_config(path: str) -> dict:
    parser = configparser.ConfigParser()
    try:
        parser.read_string("[defaults]\n" + Path(path).read_text(encoding="utf-8"))
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for key, raw in parser["defaults"].items():
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        try:
            out[key] = int(raw) if key in _INT_KEYS else float(raw)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {raw!r}") from exc
    return out


def _resolve(args, config: dict, key: str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, DEFAULTS[key])


@contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _state(values) -> qstate.BellDiagonalState:
    try:
        s = qstate.BellDiagonalState(*values)
    except ValueError as exc:
        raise NonPhysicalState(f"non-physical state: {exc}") from exc
    if not qstate.is_physical(s):
        raise NonPhysicalState(f"non-physical state {tuple(values)}")
    return s


def _report_fields(s, r) -> list[str]:
    if not qstate.is_physical(s):
        raise NonPhysicalState(f"refusing to emit non-physical state {tuple(s)}")
    return [fmt(v) for v in (s.c1, s.c2, s.c3, r.T, r.D, r.C, r.T_g2, r.D_g2, r.C_g2)] + [fmt(r.dominant_index)]


def _write_rows(out, meta: dict, header, rows) -> None:
    out.write(f"# bellcorr {__version__}\n")
    for key, value in meta.items():
        out.write(f"# {key}={value}\n")
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")


def cmd_quantify(args, config, out) -> int:
    s = _state((args.c1, args.c2, args.c3))
    r = correlations.full_report(s)
    _write_rows(out, {"command": "quantify"}, REPORT_COLUMNS, [_report_fields(s, r)])
    return EXIT_OK


def cmd_evolve(args, config, out) -> int:
    s0 = _state((args.c1, args.c2, args.c3))
    steps = _resolve(args, config, "steps")
    nu_max = _resolve(args, config, "nu_max")
    params = dynamics.PhaseFlipParams(_resolve(args, config, "tau"), _resolve(args, config, "alpha"))
    traj = dynamics.trajectory(s0, nu_max, steps, params)
    meta = {
        "command": "evolve",
        "tau": fmt(params.tau),
        "alpha": fmt(params.alpha_abs),
        "mu": fmt(params.mu),
        "nu_max": fmt(nu_max),
        "steps": steps,
    }
    crossing = dynamics.first_crossing(s0, params)
    if crossing is not None:
        meta["crossing"] = fmt(crossing)
    rows = [[fmt(smp.nu), *_report_fields(smp.state, smp.report)] for smp in traj.samples]
    _write_rows(out, meta, EVOLVE_COLUMNS, rows)
    return EXIT_OK


def _scan_spec(args, config) -> statespace.ScanSpec:
    return statespace.ScanSpec(
        c3=_resolve(args, config, "c3"),
        radius=_resolve(args, config, "radius"),
        c1_min=_resolve(args, config, "c1_min"),
        c1_max=_resolve(args, config, "c1_max"),
        steps=_resolve(args, config, "scan_steps"),
    )


def _scan_meta(spec, command) -> dict:
    return {
        "command": command,
        "c3": fmt(spec.c3),
        "radius": fmt(spec.radius),
        "c1_min": fmt(spec.c1_min),
        "c1_max": fmt(spec.c1_max),
        "steps": spec.steps,
    }


def cmd_scan(args, config, out) -> int:
    spec = _scan_spec(args, config)
    rows = [_report_fields(s, r) for s, r in statespace.scan(spec)]
    _write_rows(out, _scan_meta(spec, "scan"), REPORT_COLUMNS, rows)
    return EXIT_OK


def cmd_inversions(args, config, out) -> int:
    spec = _scan_spec(args, config)
    found = statespace.inversions(spec, args.quantifier)
    header = ["quantifier", "c1_first", "c1_second", "reb_first", "reb_second", "geo_first", "geo_second", "reb_order", "geo_order"]
    rows = [
        [rec.quantifier, *(fmt(v) for v in (rec.c1_first, rec.c1_second, rec.reb_first, rec.reb_second, rec.geo_first, rec.geo_second)), rec.reb_order, rec.geo_order]
        for rec in found
    ]
    meta = _scan_meta(spec, "inversions")
    meta["quantifier"] = args.quantifier
    meta["count"] = len(rows)
    _write_rows(out, meta, header, rows)
    return EXIT_OK


def run_checks(states, grid: oracles.GridSpec, starts: int, seed: int) -> dict:
    """Maximum deviation of each oracle from the closed forms over ``states``."""
    rng = np.random.default_rng(seed)
    worst = {"discord": 0.0, "geometric_discord": 0.0, "closest_product": 0.0, "product_argmin": 0.0}
    for s in states:
        rho = qstate.to_density_matrix(s)
        report = correlations.full_report(s)
        delta = oracles.original_discord(rho, grid)
        worst["discord"] = max(worst["discord"], abs(delta.value - report.D))
        geo = oracles.geometric_discord_bruteforce(rho, grid)
        worst["geometric_discord"] = max(worst["geometric_discord"], abs(geo.value - report.D_g))
        prod = oracles.minimize_product_distance(s, starts=starts, rng=rng)
        for value, size in prod.info["starts"]:
            worst["closest_product"] = max(worst["closest_product"], abs(value - report.T_g))
            worst["product_argmin"] = max(worst["product_argmin"], size)
    return worst


def cmd_check(args, config, out) -> int:
    samples = _resolve(args, config, "samples")
    seed = _resolve(args, config, "seed")
    if samples < 1:
        raise UsageError("samples must be at least 1")
    grid = oracles.GridSpec(_resolve(args, config, "theta_steps"), _resolve(args, config, "phi_steps"))
    starts = _resolve(args, config, "starts")
    if args.state is not None:
        states = [_state(args.state)] * samples
    else:
        rng = np.random.default_rng(seed)
        states = [qstate.random_physical_state(rng) for _ in range(samples)]

    tolerances = {
        "discord": DELTA_TOL,
        "geometric_discord": GEOMETRIC_TOL,
        "closest_product": PRODUCT_TOL,
        "product_argmin": ARGMIN_TOL,
    }
    meta = {"command": "check", "seed": seed, "samples": samples, "grid": f"{grid.theta_steps}x{grid.phi_steps}", "starts": starts}
    try:
        worst = run_checks(states, grid, starts, seed)
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except AppendixViolation as exc:
        _write_rows(out, meta, ["check", "max_deviation", "tolerance", "status"], [["closest_product", "nan", fmt(PRODUCT_TOL), "FAIL"]])
        print(f"product-state bound violated: {exc}", file=sys.stderr)
        return EXIT_CHECK

    rows = []
    ok = True
    for name, tol in tolerances.items():
        passed = worst[name] < tol
        ok &= passed
        rows.append([name, f"{worst[name]:.3e}", f"{tol:.0e}", "PASS" if passed else "FAIL"])
    _write_rows(out, meta, ["check", "max_deviation", "tolerance", "status"], rows)
    return EXIT_OK if ok else EXIT_CHECK


def _add_state_positionals(p) -> None:
    # separate positionals: a tuple metavar on nargs=3 breaks argparse's missing-argument message
    for name in ("c1", "c2", "c3"):
        p.add_argument(name, type=float, metavar=name.upper())


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", help="write CSV here instead of stdout")
    common.add_argument("--config", help="key = value file of default parameters")

    scan_opts = _Parser(add_help=False)
    scan_opts.add_argument("--c3", type=float)
    scan_opts.add_argument("--radius", type=float, help="c1^2 + c2^2 = radius^2")
    scan_opts.add_argument("--c1-min", type=float)
    scan_opts.add_argument("--c1-max", type=float)
    scan_opts.add_argument("--scan-steps", type=int)

    parser = _Parser(prog="bellcorr", description="Entropic and geometric correlation quantifiers for Bell-diagonal states")
    parser.add_argument("--version", action="version", version=f"bellcorr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantify", parents=[common], help="all quantifiers for one state")
    _add_state_positionals(p)
    p.set_defaults(func=cmd_quantify)

    p = sub.add_parser("evolve", parents=[common], help="trajectory under local phase-flip noise")
    _add_state_positionals(p)
    p.add_argument("--nu-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--tau", type=float, help="seconds")
    p.add_argument("--alpha", type=float, help="|alpha| in 1/s")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("scan", parents=[common, scan_opts], help="constant-|c| state-space scan")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("inversions", parents=[common, scan_opts], help="ordering inversions along a scan")
    p.add_argument("quantifier", choices=["D", "C", "T"])
    p.set_defaults(func=cmd_inversions)

    p = sub.add_parser("check", parents=[common], help="cross-check closed forms against brute-force oracles")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--state", nargs=3, type=float, metavar=("C1", "C2", "C3"), help="use this state for every sample")
    p.add_argument("--theta-steps", type=int)
    p.add_argument("--phi-steps", type=int)
    p.add_argument("--starts", type=int, help="multi-starts for the product-state search")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = read_config(args.config) if args.config else {}
        with _open_output(args.output) as out:
            return args.func(args, config, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NonPhysicalState, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
