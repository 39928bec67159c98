"""Command-line front end.

Subcommands::

    bunching scan        --config cfg.json --out scan.csv
    bunching zeros       --config cfg.json --out zeros.csv
    bunching average     --config cfg.json --out avg.csv
    bunching figure      --figure 6 --out fig6.csv
    bunching convergence --config cfg.json --eps 1e-2,1e-3,1e-4 --out conv.csv
    bunching appendix-b  --n 4 --out ordern.csv

Experiments are described by a JSON config (schema below); flags carry only
paths and small scalars, so runs are reproducible and diffable. Every number
printed or written comes from a library call -- the CLI adds no physics.

Exit codes: 0 success, 2 usage/config violation, 3 I/O failure.

Config schema (unknown keys are rejected)::

    {
      "source_profile": "gaussian" | "rect",
      "xi": 1.0, "L": 2.25, "epsilon": 0.02,
      "grid": {"x_min": -10.0, "x_max": 10.0, "points": 4001},
      "detector": {"kind": "point_pair"}
                | {"kind": "finite_width", "nodes_per_axis": 32},   // optional
      "statistics": ["boson", "fermion"],                            // optional
      "window": [-8.0, 8.0],              // average: required
      "average_statistics": "boson",      // average: optional
      "probe_x": 0.5,                     // convergence: regular point, default 0.5
      "zero_probe": 0.0                   // convergence: pick zero nearest this, default 0.0
    }

The ``BUNCHING_THREADS`` environment variable caps grid-evaluation threads;
output is byte-identical for any value.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .detector import QuadratureSpec, ratio_finite_closed_form
from .joint import Statistics
from .laws import lorentzian_boson, order_n_average_check, order_n_exact, order_n_far, order_n_near
from .scan import (
    ExperimentConfig,
    FiniteWidth,
    Grid,
    PointPair,
    average_ratio_numeric,
    build_experiment,
    deficit_convergence,
    gaussian_experiment,
    rect_experiment,
    run_scan,
    write_csv,
    zero_neighborhood_report,
)

__all__ = ["main"]

FIGURE_IDS = ("2", "4", "5", "6", "7", "B1")


class ConfigError(ValueError):
    """A config document violates the schema; message names the field."""


def _require_number(doc: dict, key: str, positive: bool = False) -> float:
    if key not in doc:
        raise ConfigError(f"config field '{key}' is required")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"config field '{key}': must be a finite number (got {v!r})")
    if positive and not (v > 0):
        raise ConfigError(f"config field '{key}': must be positive (got {v!r})")
    return float(v)


_TOP_KEYS = {
    "source_profile",
    "xi",
    "L",
    "epsilon",
    "grid",
    "detector",
    "statistics",
    "window",
    "average_statistics",
    "probe_x",
    "zero_probe",
}


def parse_config(doc) -> tuple[ExperimentConfig, dict]:
    """Validate a config document; returns the experiment plus the extras."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(doc) - _TOP_KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

    profile = doc.get("source_profile")
    if profile not in ("gaussian", "rect"):
        raise ConfigError(
            f"config field 'source_profile': must be 'gaussian' or 'rect' (got {profile!r})"
        )
    xi = _require_number(doc, "xi", positive=True)
    L = _require_number(doc, "L")
    epsilon = _require_number(doc, "epsilon", positive=True)

    gdoc = doc.get("grid")
    if not isinstance(gdoc, dict) or set(gdoc) != {"x_min", "x_max", "points"}:
        raise ConfigError("config field 'grid': must be an object with x_min, x_max, points")
    if not isinstance(gdoc["points"], int) or isinstance(gdoc["points"], bool):
        raise ConfigError(f"config field 'grid.points': must be an integer (got {gdoc['points']!r})")
    try:
        grid = Grid(float(gdoc["x_min"]), float(gdoc["x_max"]), gdoc["points"])
    except (TypeError, ValueError) as e:
        raise ConfigError(f"config field 'grid': {e}") from e

    ddoc = doc.get("detector", {"kind": "point_pair"})
    if not isinstance(ddoc, dict) or "kind" not in ddoc:
        raise ConfigError("config field 'detector': must be an object with a 'kind'")
    if ddoc["kind"] == "point_pair":
        if set(ddoc) != {"kind"}:
            raise ConfigError("config field 'detector': point_pair takes no other keys")
        detector = PointPair()
    elif ddoc["kind"] == "finite_width":
        if not set(ddoc) <= {"kind", "nodes_per_axis"}:
            raise ConfigError("config field 'detector': finite_width allows only nodes_per_axis")
        nodes = ddoc.get("nodes_per_axis", 32)
        try:
            detector = FiniteWidth(QuadratureSpec(nodes_per_axis=nodes))
        except ValueError as e:
            raise ConfigError(f"config field 'detector.nodes_per_axis': {e}") from e
    else:
        raise ConfigError(
            f"config field 'detector.kind': must be 'point_pair' or 'finite_width' "
            f"(got {ddoc['kind']!r})"
        )

    sdoc = doc.get("statistics", ["boson", "fermion"])
    if not isinstance(sdoc, list) or not sdoc:
        raise ConfigError("config field 'statistics': must be a non-empty list")
    try:
        statistics = frozenset(Statistics(s) for s in sdoc)
    except ValueError as e:
        raise ConfigError(f"config field 'statistics': {e}") from e

    extras: dict = {}
    if "window" in doc:
        w = doc["window"]
        if (
            not isinstance(w, list)
            or len(w) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in w)
        ):
            raise ConfigError("config field 'window': must be a [lo, hi] pair of numbers")
        extras["window"] = (float(w[0]), float(w[1]))
    if "average_statistics" in doc:
        s = doc["average_statistics"]
        if s not in ("boson", "fermion"):
            raise ConfigError(
                f"config field 'average_statistics': must be 'boson' or 'fermion' (got {s!r})"
            )
        extras["average_statistics"] = Statistics(s)
    if "probe_x" in doc:
        extras["probe_x"] = _require_number(doc, "probe_x")
    if "zero_probe" in doc:
        extras["zero_probe"] = _require_number(doc, "zero_probe")

    try:
        config = ExperimentConfig(
            source_profile=profile,
            xi=xi,
            L=L,
            epsilon=epsilon,
            grid=grid,
            detector=detector,
            statistics=statistics,
        )
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e
    return config, extras


def _load_config(path: str) -> tuple[ExperimentConfig, dict]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}") from e
    return parse_config(doc)


def _fmt(v) -> str:
    v = float(v)
    return repr(v) if math.isfinite(v) else ""


def _write_table(path: str, header: list[str], columns: list) -> None:
    rows = zip(*columns)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(c if isinstance(c, str) else _fmt(c) for c in row) + "\n")


def _cmd_scan(args) -> int:
    config, _ = _load_config(args.config)
    result = run_scan(config)
    write_csv(result, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_zeros(args) -> int:
    config, _ = _load_config(args.config)
    psi1, psi2 = build_experiment(config)
    reports = zero_neighborhood_report(psi1, psi2, config)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("zero,order,owner,status,max_abs_deviation\n")
        for r in reports:
            dev = _fmt(r.max_abs_deviation) if r.max_abs_deviation is not None else ""
            fh.write(
                f"{_fmt(r.zero.location)},{r.zero.order},{r.zero.wf_index},{r.status},{dev}\n"
            )
    print(f"wrote {args.out}")
    return 0


def _cmd_average(args) -> int:
    config, extras = _load_config(args.config)
    if "window" not in extras:
        raise ConfigError("config field 'window' is required for the average subcommand")
    stats = extras.get("average_statistics", Statistics.BOSON)
    result = run_scan(config)
    avg = average_ratio_numeric(result, extras["window"], stats)
    lo, hi = extras["window"]
    _write_table(
        args.out,
        ["statistics", "window_lo", "window_hi", "average", "skipped_fraction", "points_used"],
        [[stats.value], [lo], [hi], [avg.value], [avg.skipped_fraction], [str(avg.points_used)]],
    )
    print(f"wrote {args.out}")
    return 0


def _panel_paths(out: str, labels: tuple[str, ...]) -> list[str]:
    root, ext = os.path.splitext(out)
    return [f"{root}_{label}{ext or '.csv'}" for label in labels]


def _cmd_figure(args) -> int:
    fid = args.figure.upper() if args.figure.lower() == "b1" else args.figure
    if fid not in FIGURE_IDS:
        raise ConfigError(f"unknown figure id {args.figure!r}; known: {', '.join(FIGURE_IDS)}")
    out = args.out
    written: list[str] = []
    if fid == "2":
        xs = np.linspace(-10.0, 10.0, 1001)  # units of eps around the zero
        _write_table(
            out,
            ["x", "rho_point", "rho_wide"],
            [xs, lorentzian_boson(xs, 0.0, 1.0),
             [ratio_finite_closed_form(x, 0.0, 1.0) for x in xs]],
        )
        written.append(out)
    elif fid in ("4", "5"):
        config = gaussian_experiment() if fid == "4" else rect_experiment()
        r = run_scan(config)
        _write_table(
            out,
            ["x", "p_one", "p_ni", "p_boson", "p_fermion"],
            [r.x, r.p_one, r.p_ni, r.p_boson, r.p_fermion],
        )
        written.append(out)
    elif fid in ("6", "7"):
        col = "rho_b" if fid == "6" else "rho_f"
        for config, path in zip(
            (gaussian_experiment(), rect_experiment()), _panel_paths(out, ("gaussian", "rect"))
        ):
            r = run_scan(config)
            _write_table(path, ["x", col], [r.x, getattr(r, col)])
            written.append(path)
    else:  # B1
        xs = np.linspace(-20.0, 20.0, 1001)  # units of eps around the zero
        _write_table(
            out,
            ["x", "rho_n4", "rho_n5"],
            [xs, order_n_exact(xs, 0.0, 1.0, 4), order_n_exact(xs, 0.0, 1.0, 5)],
        )
        written.append(out)
    for path in written:
        print(f"wrote {path}")
    return 0


def _parse_eps_list(raw: str) -> list[float]:
    try:
        eps = [float(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as e:
        raise ConfigError(f"--eps: {e}") from e
    if len(eps) < 3:
        raise ConfigError(f"--eps: need at least 3 values, got {len(eps)}")
    if any(not (e > 0) for e in eps):
        raise ConfigError("--eps: all values must be positive")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ConfigError("--eps: values must be strictly decreasing")
    return eps


def _cmd_convergence(args) -> int:
    config, extras = _load_config(args.config)
    eps_list = _parse_eps_list(args.eps)
    psi1, psi2 = build_experiment(config)
    probe_x = extras.get("probe_x", 0.5)
    zero_probe = extras.get("zero_probe", 0.0)

    from .wavefunctions import find_zeros

    interval = (config.grid.x_min, config.grid.x_max)
    zeros = sorted(
        find_zeros(psi1, interval, wf_index=1) + find_zeros(psi2, interval, wf_index=2),
        key=lambda z: abs(z.location - zero_probe),
    )
    table = deficit_convergence(
        psi1, psi2, eps_list, probe_x, zeros[0].location if zeros else None
    )
    n = len(eps_list)
    _write_table(
        args.out,
        ["eps", "deficit_regular", "rho_b_zero", "slope_deficit", "slope_zero"],
        [
            table.eps,
            table.deficit_regular,
            table.rho_zero,
            [table.slope_deficit] * n,
            [table.slope_zero] * n,
        ],
    )
    print(f"wrote {args.out}")
    return 0


def _cmd_appendix_b(args) -> int:
    if args.n is None or args.n < 1:
        raise ConfigError(f"--n must be a positive integer (got {args.n!r})")
    n = args.n
    xs = np.linspace(-25.0, 25.0, 2001)  # units of eps around the zero
    _write_table(
        args.out,
        ["x", "rho_exact", "rho_near", "rho_far"],
        [
            xs,
            order_n_exact(xs, 0.0, 1.0, n),
            order_n_near(xs, 0.0, 1.0, n),
            order_n_far(xs, 0.0, 1.0, n),
        ],
    )
    check = order_n_average_check(n)
    print(f"wrote {args.out}")
    print(f"window average over delta_x = 1000*eps, order n = {n}:")
    print(f"  numeric mean ratio     : {check.numeric:.9f}")
    print(
        f"  sqrt(2n) form          : {check.sqrt2n_form:.9f} "
        f"(deficit off by {check.err_sqrt2n:.1%})"
    )
    print(
        f"  integrated form        : {check.integrated_form:.9f} "
        f"(deficit off by {check.err_integrated:.1%})"
    )
    if check.within_5pct:
        print(f"  within 5% of numeric   : {', '.join(check.within_5pct)}")
    else:
        print("  within 5% of numeric   : neither")
    print(f"  closer form            : {check.closer}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bunching", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *, config=False, out=True, figure=False, eps=False, n=False):
        sp = sub.add_parser(name)
        if config:
            sp.add_argument("--config", required=True, help="JSON experiment config")
        if out:
            sp.add_argument("--out", required=True, help="output CSV path")
        if figure:
            sp.add_argument("--figure", required=True, help=f"one of {', '.join(FIGURE_IDS)}")
        if eps:
            sp.add_argument("--eps", required=True, help="comma list of decreasing epsilons")
        if n:
            sp.add_argument("--n", type=int, default=None, help="zero order (integer >= 1)")
        sp.set_defaults(func=func)
        return sp

    add("scan", _cmd_scan, config=True)
    add("zeros", _cmd_zeros, config=True)
    add("average", _cmd_average, config=True)
    add("figure", _cmd_figure, figure=True)
    add("convergence", _cmd_convergence, config=True, eps=True)
    add("appendix-b", _cmd_appendix_b, n=True)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
