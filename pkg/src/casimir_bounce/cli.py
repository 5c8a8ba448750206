"""Command-line front end.

Usage::

    casimir-bounce run --scenario hole.json --out results/
    casimir-bounce sweep --scenario tau_sweep.json --out tau.csv
    casimir-bounce constants

Exit status: 0 success, 1 invalid input, 2 solver or numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .constants import CONSTANTS, casimir_constant_geometric, casimir_constant_si
from .errors import DomainError, SolverError
from .scenarios import ScenarioError, evaluate, load_scenario, run_sweep

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2

_TRAJECTORY_HEADERS = {
    "hole_filling": ("t_s", "R_m", "V_m_per_s"),
    "shell_collapse": ("tau_m", "R_m", "Rdot"),
}


def format_value(v):
    """CSV cell text: floats in 12-significant-digit scientific notation."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return f"{float(v):.11e}"
    return str(v)


def write_summary(summary, path):
    text = json.dumps(summary, indent=2, allow_nan=False) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def write_trajectory(traj, headers, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(headers)
        for row in zip(traj.t, traj.R, traj.V):
            writer.writerow([format_value(v) for v in row])


def write_sweep(field, rows, path):
    columns = []
    for _, results, _ in rows:
        for key, value in (results or {}).items():
            if key not in columns and not isinstance(value, (dict, list)):
                columns.append(key)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([field] + columns + ["error"])
        for value, results, error in rows:
            results = results or {}
            writer.writerow([format_value(value)]
                            + [format_value(results.get(c)) for c in columns]
                            + [error or ""])


def _cmd_run(args):
    doc = load_scenario(args.scenario)
    summary, traj = evaluate(doc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_summary(summary, out / "summary.json")
    written = [out / "summary.json"]
    if traj is not None:
        write_trajectory(traj, _TRAJECTORY_HEADERS[doc["kind"]], out / "trajectory.csv")
        written.append(out / "trajectory.csv")
    for p in written:
        print(f"wrote {p}")
    return EXIT_OK


def _cmd_sweep(args):
    doc = load_scenario(args.scenario)
    if "sweep" not in doc:
        raise ScenarioError("scenario has no 'sweep' block")
    field, rows = run_sweep(doc)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_sweep(field, rows, out)
    failed = sum(1 for r in rows if r[2])
    print(f"wrote {out} ({len(rows)} points, {failed} failed)")
    return EXIT_OK


def _cmd_constants(_args):
    data = CONSTANTS.as_dict()
    data["casimir_constant_si"] = casimir_constant_si()
    data["casimir_constant_geometric"] = casimir_constant_geometric()
    print(json.dumps(data, indent=2))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="casimir-bounce",
        description="Casimir pressure balances, hole filling and shell collapse.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evaluate a scenario file")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--out", default="casimir_out", help="output directory")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="evaluate the scenario's sweep block")
    p.add_argument("--scenario", required=True, help="scenario JSON file with a 'sweep' block")
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("constants", help="print the pinned physical constants")
    p.set_defaults(func=_cmd_constants)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    raise SystemExit(main())
