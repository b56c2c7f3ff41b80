"""Command-line driver: functionals, scan, maximize, verify.

Exit codes: 0 ok, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import states as st
from .channels import apply, channel_from_spec, identity
from .optimize import maximize, output_energy
from .verify import SUITES, run_suite
from .work import work_report

CSV_COLUMNS = ("E", "value", "ratio", "z_star", "theta_star", "clamped")


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def load_json_arg(text: str, what: str):
    """Inline JSON or a path to a JSON file."""
    path = Path(text)
    try:
        if not text.lstrip().startswith(("{", "[")) and path.is_file():
            text = path.read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed {what} JSON: {exc}") from exc


def state_from_spec(spec: dict) -> st.GaussianState:
    if not isinstance(spec, dict):
        raise ValueError("state spec must be a JSON object")
    kind = spec.get("kind", "raw")
    if kind == "vacuum":
        return st.vacuum(int(spec.get("n", 1)))
    if kind == "coherent":
        if "mean" in spec:
            return st.coherent(spec["mean"])
        return st.coherent_with_energy(float(spec["energy"]), spec.get("direction", (1.0, 0.0)))
    if kind == "thermal":
        return st.thermal(float(spec["N"]), int(spec.get("n", 1)))
    if kind == "gaussian":
        fields = {k: spec[k] for k in ("z", "theta", "nu", "mean_norm", "mean_dir") if k in spec}
        return st.displaced_squeezed_thermal(st.GaussianPureParam(**fields))
    if kind == "raw":
        return st.GaussianState.from_json(spec)
    raise ValueError(f"unknown state kind {kind!r}")


def parse_energy_range(text: str) -> list[float]:
    try:
        lo, hi, n, scale = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise UsageError(f"energy range must be lo:hi:n:log|lin, got {text!r}") from exc
    if n < 1 or scale not in ("log", "lin"):
        raise UsageError(f"energy range must be lo:hi:n:log|lin, got {text!r}")
    if scale == "log":
        if lo <= 0 or hi <= 0:
            raise UsageError("log-spaced energy range needs positive bounds")
        return np.geomspace(lo, hi, n).tolist()
    return np.linspace(lo, hi, n).tolist()


@dataclass
class SweepSpec:
    channel: dict
    energies: list[float]
    nu: float = 1.0
    normalization: str = "input"

    def __post_init__(self):
        if not self.energies:
            raise UsageError("energy grid is empty")
        if any(e < 0 for e in self.energies):
            raise UsageError("energies must be nonnegative")
        if self.normalization not in ("input", "output"):
            raise UsageError("normalization must be 'input' or 'output'")


def scan_rows(spec: SweepSpec):
    ch = channel_from_spec(spec.channel)
    for E in spec.energies:
        res = maximize(ch, E, spec.nu)
        denom = E if spec.normalization == "input" else output_energy(ch, res)
        ratio = res.value / denom if denom > 0 else math.nan
        yield (E, res.value, ratio, res.z_star, res.theta_star, int(res.clamped))


def write_scan_csv(spec: SweepSpec, handle) -> None:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in scan_rows(spec):
        writer.writerow([fmt(x) for x in row[:5]] + [row[5]])


def scan_csv_text(spec: SweepSpec) -> str:
    buf = io.StringIO()
    write_scan_csv(spec, buf)
    return buf.getvalue()


# commands ---------------------------------------------------------------------


def cmd_functionals(args) -> int:
    state = state_from_spec(load_json_arg(args.state, "state"))
    ch = channel_from_spec(load_json_arg(args.channel, "channel")) if args.channel else identity(state.n)
    out = apply(ch, state)
    report = {
        "input": work_report(state, args.beta).to_json(),
        "output": work_report(out, args.beta).to_json(),
        "output_state": out.to_json(),
    }
    print(json.dumps(report, indent=2))
    return 0


def _energies(args) -> list[float]:
    energies = list(args.energy or [])
    if args.energy_range:
        energies += parse_energy_range(args.energy_range)
    return energies


def cmd_scan(args) -> int:
    spec = SweepSpec(load_json_arg(args.channel, "channel"), _energies(args), args.nu, args.normalization)
    if args.out in (None, "-"):
        write_scan_csv(spec, sys.stdout)
    else:
        text = scan_csv_text(spec)
        try:
            with open(args.out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    return 0


def cmd_maximize(args) -> int:
    ch = channel_from_spec(load_json_arg(args.channel, "channel"))
    results = []
    for E in _energies(args):
        res = maximize(ch, E, args.nu)
        results.append({
            "E": E, "value": res.value, "z_star": res.z_star, "theta_star": res.theta_star,
            "nu": res.nu, "mean": res.mean.tolist(), "clamped": res.clamped,
            "input_state": res.input_state.to_json(),
        })
    print(json.dumps(results, indent=2))
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, seed=args.seed)
    for c in checks:
        print(c.line())
    ok = all(c.passed for c in checks)
    print(f"{args.suite}: {'all checks passed' if ok else 'FAILED'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="energylines", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("functionals", help="work functionals of a state before and after a channel")
    p.add_argument("--state", required=True, help="state spec (inline JSON or file)")
    p.add_argument("--channel", help="channel spec (inline JSON or file); default identity")
    p.add_argument("--beta", type=float, action="append", default=[], help="inverse temperature (repeatable)")
    p.set_defaults(func=cmd_functionals)

    for name, func, helptext in (
        ("scan", cmd_scan, "maximal Gaussian output ergotropy over an energy grid, as CSV"),
        ("maximize", cmd_maximize, "optimal input for each energy, as JSON"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--channel", required=True, help="channel spec (inline JSON or file)")
        p.add_argument("--energy", type=float, action="append", help="input energy (repeatable)")
        p.add_argument("--energy-range", help="lo:hi:n:log|lin")
        p.add_argument("--nu", type=float, default=1.0, help="input symplectic eigenvalue (entropy knob)")
        if name == "scan":
            p.add_argument("--normalization", choices=("input", "output"), default="input")
            p.add_argument("--out", default="-", help="CSV path, '-' for stdout")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
