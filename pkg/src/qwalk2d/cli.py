"""
Command-line interface.

    qwalk2d simulate   --p 0.25 --qudit-preset fig3 --t 30 --out run/
    qwalk2d limit      --p 0.25 --qudit-preset fig5 --grid 201 --out run/
    qwalk2d compare    --p 0.25 --qudit-preset fig6 --t-list 100,400 --out run/
    qwalk2d delta-scan --qudit-preset grover-sym --p-min 0.01 --p-max 0.99 --steps 99
    qwalk2d verify

Flags override values from ``--config file.json`` (keys use underscores, e.g.
``"t_list": [100, 400]``). Exit codes: 0 success, 1 failed verification,
2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__, limitdist, realspace
from .core import CoinParams, Qudit
from .errors import QWalkError
from .presets import PRESETS, preset_qudit
from .verification import format_report, run_verification

MOMENT_ORDERS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


class ConfigError(Exception):
    def __init__(self, field_name: str, message: str):
        self.field_name = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass
class RunConfig:
    command: str
    p: Optional[CoinParams] = None
    qudit: Optional[Qudit] = None
    qudit_preset: Optional[str] = None
    t: Optional[int] = None
    t_list: list[int] = field(default_factory=list)
    grid: int = 201
    cell: float = 0.05
    out: Path = Path(".")
    p_min: float = 0.01
    p_max: float = 0.99
    steps: int = 99

    def qudit_for(self, p) -> Qudit:
        if self.qudit_preset is not None:
            return preset_qudit(self.qudit_preset, p)
        return self.qudit


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_qudit(text: str) -> Qudit:
    """Parse ``"re:im,re:im,re:im,re:im"``; a bare number is a real amplitude."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected 4 comma-separated amplitudes, got {len(parts)}")
    amps = []
    for s in parts:
        re_s, _, im_s = s.partition(":")
        amps.append(complex(float(re_s), float(im_s) if im_s else 0.0))
    return Qudit(tuple(amps))


def _int_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(v) for v in str(text).split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwalk2d", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"qwalk2d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_p=True):
        sp.add_argument("--config", help="JSON file with default option values")
        if need_p:
            sp.add_argument("--p", type=float, help="coin parameter in (0, 1)")
        sp.add_argument("--qudit", help='initial qudit as "re:im,re:im,re:im,re:im"')
        sp.add_argument("--qudit-preset", choices=sorted(PRESETS) + ["special"])
        sp.add_argument("--out", help="output directory (default: current)")

    sp = sub.add_parser("simulate", help="exact lattice evolution")
    common(sp)
    sp.add_argument("--t", type=int, help="final time step")
    sp.add_argument("--t-list", help="comma-separated times for moments.json")
    sp.add_argument("--cell", type=float, help="pseudovelocity cell size (default 0.05)")

    sp = sub.add_parser("limit", help="analytic limit density and summary")
    common(sp)
    sp.add_argument("--grid", type=int, help="mesh points per axis over [-1, 1] (default 201)")

    sp = sub.add_parser("compare", help="simulated moments against their limits")
    common(sp)
    sp.add_argument("--t-list", help="comma-separated ascending times")

    sp = sub.add_parser("delta-scan", help="localization probability against p")
    common(sp, need_p=False)
    sp.add_argument("--p-min", type=float)
    sp.add_argument("--p-max", type=float)
    sp.add_argument("--steps", type=int)

    sub.add_parser("verify", help="run every closed-form identity check")
    return parser


def _merge(args: argparse.Namespace) -> dict:
    values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", str(exc)) from None
        if not isinstance(loaded, dict):
            raise ConfigError("config", "top level must be a JSON object")
        values.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, val in vars(args).items():
        if key not in ("command", "config") and val is not None:
            values[key] = val
    return values


def _conv(v: dict, key: str, conv):
    try:
        return conv(v[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(key, str(exc)) from None


def build_config(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    v = _merge(args)
    cfg = RunConfig(command=cmd)
    if "out" in v:
        cfg.out = Path(v["out"])

    if cmd != "delta-scan":
        if "p" not in v:
            raise ConfigError("p", "required")
        try:
            cfg.p = CoinParams(float(v["p"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError("p", str(exc)) from None

    if "qudit" in v and "qudit_preset" in v:
        raise ConfigError("qudit", "give either --qudit or --qudit-preset, not both")
    if "qudit_preset" in v:
        name = v["qudit_preset"]
        if name not in PRESETS and name != "special":
            raise ConfigError("qudit_preset", f"unknown preset {name!r}")
        cfg.qudit_preset = name
    elif "qudit" in v:
        try:
            q = v["qudit"]
            cfg.qudit = parse_qudit(q) if isinstance(q, str) else Qudit(
                tuple(complex(*a) if isinstance(a, (list, tuple)) else complex(a) for a in q))
        except (TypeError, ValueError) as exc:
            raise ConfigError("qudit", str(exc)) from None
    else:
        raise ConfigError("qudit", "required (--qudit or --qudit-preset)")

    if cmd == "simulate":
        if "t" in v:
            cfg.t = _conv(v, "t", int)
        if "t_list" in v:
            cfg.t_list = _conv(v, "t_list", _int_list)
        if cfg.t is None and not cfg.t_list:
            raise ConfigError("t", "required")
        if cfg.t is None:
            cfg.t = max(cfg.t_list)
        if cfg.t < 1:
            raise ConfigError("t", f"must be >= 1, got {cfg.t}")
        if not cfg.t_list:
            cfg.t_list = [cfg.t]
        if any(t < 1 or t > cfg.t for t in cfg.t_list):
            raise ConfigError("t_list", f"times must lie in [1, {cfg.t}]")
        if "cell" in v:
            cfg.cell = _conv(v, "cell", float)
        if not cfg.cell > 0:
            raise ConfigError("cell", "must be positive")
    elif cmd == "limit":
        if "grid" in v:
            cfg.grid = _conv(v, "grid", int)
        if cfg.grid < 32:
            raise ConfigError("grid", f"must be >= 32, got {cfg.grid}")
    elif cmd == "compare":
        if "t_list" not in v:
            raise ConfigError("t_list", "required")
        cfg.t_list = _conv(v, "t_list", _int_list)
        tl = cfg.t_list
        if not tl or tl[0] < 1 or any(b <= a for a, b in zip(tl, tl[1:])):
            raise ConfigError("t_list", "must be a nonempty ascending list of positive times")
    elif cmd == "delta-scan":
        for key in ("p_min", "p_max"):
            if key in v:
                setattr(cfg, key, _conv(v, key, float))
        if "steps" in v:
            cfg.steps = _conv(v, "steps", int)
        if not 0.0 < cfg.p_min < cfg.p_max < 1.0:
            raise ConfigError("p_min", "need 0 < p_min < p_max < 1")
        if cfg.steps < 2:
            raise ConfigError("steps", "must be >= 2")
    if cfg.p is not None:
        cfg.qudit = cfg.qudit_for(cfg.p)
    return cfg


def _qudit_json(q: Qudit) -> list[list[float]]:
    return [[a.real, a.imag] for a in q.amps]


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", newline="\n")


def _write_csv(path: Path, header: Sequence[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(r if isinstance(r, str) else fmt(r) if isinstance(r, float) else str(r)
                              for r in row) + "\n")


def _moment_key(ab) -> str:
    return f"{ab[0]},{ab[1]}"


def cmd_simulate(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    state = realspace.init_state(cfg.qudit, cfg.p)
    wanted = set(cfg.t_list)
    moments = []
    while state.t < cfg.t:
        state = realspace.step(state)
        if state.t in wanted:
            m = realspace.normalized_moments(state)
            moments.append({"t": state.t, "moments": {_moment_key(k): m[k] for k in MOMENT_ORDERS}})
    dist = realspace.probability_map(state)
    _write_csv(cfg.out / "dist.csv", ["x", "y", "prob"], dist.items())
    _write_json(cfg.out / "moments.json",
                {"p": cfg.p.p, "qudit": _qudit_json(cfg.qudit), "normalization": "<X^a Y^b>/t^(a+b)",
                 "times": moments})
    hist = realspace.pseudovelocity_histogram(state, cfg.cell)
    _write_csv(cfg.out / "pseudovel.csv", ["vx_center", "vy_center", "mass"], hist.items())
    return 0


def cmd_limit(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    dist = limitdist.limit_distribution(cfg.p, cfg.qudit)
    centers = -1.0 + (np.arange(cfg.grid) + 0.5) * (2.0 / cfg.grid)
    VX, VY = np.meshgrid(centers, centers, indexing="ij")
    dens = dist.density(VX, VY)
    _write_csv(cfg.out / "nu.csv", ["vx", "vy", "density"],
               ((float(a), float(b), float(c)) for a, b, c in zip(VX.ravel(), VY.ravel(), dens.ravel())))
    w = dist.coeffs
    sym = dist.symmetry
    summary = {
        "p": cfg.p.p,
        "qudit": _qudit_json(cfg.qudit),
        **{f"M{i + 1}": val for i, val in enumerate(w.as_tuple())},
        "delta": dist.delta,
        "symmetry": sym.label,
        "symmetry_flags": sym.flags,
        "limit_moments": {_moment_key(ab): dist.moment(*ab) for ab in MOMENT_ORDERS},
        "mass_check": dist.continuous_mass() + dist.delta,
        "grid": cfg.grid,
    }
    _write_json(cfg.out / "summary.json", summary)
    return 0


def cmd_compare(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    limits = {ab: limitdist.limit_moment(cfg.p, cfg.qudit, *ab) for ab in MOMENT_ORDERS}
    delta = limitdist.localization_delta(cfg.p, cfg.qudit)
    rows, origin_rows = [], []
    state = realspace.init_state(cfg.qudit, cfg.p)
    for t in cfg.t_list:
        while state.t < t:
            state = realspace.step(state)
        sim = realspace.normalized_moments(state)
        for ab in MOMENT_ORDERS:
            rows.append((t, ab[0], ab[1], sim[ab], limits[ab], abs(sim[ab] - limits[ab])))
        origin_rows.append((t, realspace.origin_cell_mass(state, 0.05), delta))
    _write_csv(cfg.out / "compare.csv", ["t", "alpha", "beta", "simulated", "limit", "abs_error"], rows)
    _write_csv(cfg.out / "origin.csv", ["t", "origin_cell_mass", "delta"], origin_rows)
    return 0


def cmd_delta_scan(cfg: RunConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for p in np.linspace(cfg.p_min, cfg.p_max, cfg.steps):
        p = float(p)
        rows.append((p, limitdist.localization_delta(p, cfg.qudit_for(p))))
    _write_csv(cfg.out / "delta.csv", ["p", "delta"], rows)
    return 0


def cmd_verify() -> int:
    results = run_verification()
    print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


COMMANDS = {
    "simulate": cmd_simulate,
    "limit": cmd_limit,
    "compare": cmd_compare,
    "delta-scan": cmd_delta_scan,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify()
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"qwalk2d {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except QWalkError as exc:
        print(f"qwalk2d {args.command}: error: qudit: {exc}", file=sys.stderr)
        return 2
    return COMMANDS[args.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
