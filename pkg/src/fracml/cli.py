"""Command line front end.

Subcommands: classify, boundary, region, simulate, sweep.  Output is
UTF-8 CSV (17 significant digits, round-trip safe) on stdout or behind
--out; verdict-producing commands use the exit code to report stable
(0), unstable or diverged (1), marginal or inconclusive (2).  Usage and
input errors exit 3.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

import numpy as np

from . import dynamics, spectra, stability

USAGE_EXIT = 3

_STATUS_EXIT = {"stable": 0, "unstable": 1, "marginal": 2}
_EMPIRICAL_EXIT = {"decaying": 0, "growing": 1, "diverged": 1, "inconclusive": 2}


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with the marginal
    # verdict code; route usage failures to 3 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


@contextlib.contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def write_boundary_csv(fh, curve: stability.BoundaryCurve) -> None:
    fh.write("t,x,y\n")
    for t, (x, y) in zip(curve.t, curve.xy):
        fh.write(f"{_fmt(t)},{_fmt(x)},{_fmt(y)}\n")


def write_vertices_csv(fh, quad: stability.Quadrilateral) -> None:
    fh.write("label,a2,a1\n")
    for label, (a2, a1) in zip(("Q1", "Q2", "Q3", "Q4"), quad.vertices):
        fh.write(f"{label},{_fmt(a2)},{_fmt(a1)}\n")


def write_asymmetric_region_csv(fh, region: stability.AsymmetricRegion) -> None:
    fh.write("part,t,x,y\n")
    if region.curve is not None:
        ys = region.curve.xy[:, 1]
        lo, hi = float(np.min(ys)), float(np.max(ys))
        fh.write(f"line,0,{_fmt(1.0)},{_fmt(lo)}\n")
        fh.write(f"line,1,{_fmt(1.0)},{_fmt(hi)}\n")
        for t, (x, y) in zip(region.curve.t, region.curve.xy):
            fh.write(f"cardioid,{_fmt(t)},{_fmt(x)},{_fmt(y)}\n")
    else:
        # n <= 2: the region is the strip between two vertical lines
        for name, x in (("line", region.interval.lo), ("line", region.interval.hi)):
            fh.write(f"{name},0,{_fmt(x)},{_fmt(-1.0)}\n")
            fh.write(f"{name},1,{_fmt(x)},{_fmt(1.0)}\n")


def write_trajectory_csv(fh, traj: dynamics.Trajectory) -> None:
    n = traj.sites
    fh.write("t," + ",".join(f"site_{k + 1}" for k in range(n)) + "\n")
    for t, row in enumerate(traj.states):
        fh.write(str(t) + "," + ",".join(_fmt(v) for v in row) + "\n")


def write_sweep_csv(fh, cells) -> None:
    fh.write("p1,p2,analytic_verdict,empirical_verdict,margin\n")
    for c in cells:
        emp = c.empirical if c.empirical is not None else ""
        fh.write(f"{_fmt(c.p1)},{_fmt(c.p2)},{c.analytic},{emp},{_fmt(c.margin)}\n")


def _matrix_from_csv(path: str) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(v) for v in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: not a numeric CSV row: {line!r}") from exc
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ValueError(f"{path}:{lineno}: expected {width} columns, got {len(row)}")
    return np.asarray(rows, dtype=float)


def _load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(cfg, dict):
        raise ValueError(f"{path}: top level must be an object")
    return cfg


def _cfg_num(cfg: dict, key: str, where: str, default=None, required: bool = False) -> float:
    if key not in cfg:
        if required:
            raise ValueError(f"{where}: missing required key {key!r}")
        return default
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"{where}: key {key!r} must be a number, got {v!r}")
    return float(v)


_MAP_PARAM_KEY = {"linear": "a", "logistic": "mu", "cubic": "delta", "circle": "delta"}


def _map_from_config(obj, where: str) -> dynamics.MapSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"{where}: map spec must be an object with a 'kind' key")
    kind = obj["kind"]
    if kind in _MAP_PARAM_KEY:
        return dynamics.MapSpec(kind, _cfg_num(obj, _MAP_PARAM_KEY[kind], where, required=True))
    if kind == "scaled":
        return dynamics.scaled_map(
            _cfg_num(obj, "c", where, required=True),
            _map_from_config(obj.get("of"), f"{where}.of"),
        )
    if kind == "negated":
        return dynamics.negated_map(_map_from_config(obj.get("of"), f"{where}.of"))
    raise ValueError(f"{where}: unknown map kind {kind!r}")


def _axis_values(obj, where: str) -> np.ndarray:
    if isinstance(obj, dict) and "values" in obj:
        vals = obj["values"]
        if not isinstance(vals, list) or not vals:
            raise ValueError(f"{where}: 'values' must be a non-empty list")
        return np.asarray([float(v) for v in vals])
    if isinstance(obj, dict):
        lov = _cfg_num(obj, "min", where, required=True)
        hiv = _cfg_num(obj, "max", where, required=True)
        count = int(_cfg_num(obj, "count", where, required=True))
        if count < 1 or hiv < lov:
            raise ValueError(f"{where}: need count >= 1 and max >= min")
        return np.linspace(lov, hiv, count)
    raise ValueError(f"{where}: expected an object with values or min/max/count")


def cmd_classify(args) -> int:
    band = args.band
    if args.matrix is not None:
        spec = spectra.dense_eigenvalues(_matrix_from_csv(args.matrix))
    elif args.mode == "asymmetric":
        _require_args(args, "n", "a1", "a2")
        spec = spectra.asymmetric_eigenvalues(args.a1, args.a2, args.n)
    else:
        _require_args(args, "n", "a0", "a1", "a2")
        spec = spectra.circulant_eigenvalues(
            spectra.CirculantSpec(args.a0, args.a1, args.a2, args.n)
        )
    curve = stability.boundary_beta(args.alpha, args.samples)
    for lam in spec.canonical():
        v = stability.eigenvalue_in_region(lam, args.alpha, band=band, curve=curve)
        print(f"{_fmt_complex(lam)}  {v.status}  margin={v.margin:.6g}")
    overall = stability.classify_spectrum(spec, args.alpha, args.samples, band)
    line = f"overall: {overall.status}  margin={overall.margin:.6g}"
    if overall.witness is not None:
        line += f"  witness={_fmt_complex(overall.witness)}"
    print(line)
    return _STATUS_EXIT[overall.status]


def _require_args(args, *names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"missing required flags: {', '.join('--' + n for n in missing)}")


def cmd_boundary(args) -> int:
    if args.gamma_infinity:
        curve = stability.boundary_gamma_infinity(args.alpha, args.samples)
    elif args.gamma:
        _require_args(args, "n", "j")
        curve = stability.boundary_gamma(args.alpha, args.n, args.j, args.samples)
    else:
        curve = stability.boundary_beta(args.alpha, args.samples)
    with _open_out(args.out) as fh:
        write_boundary_csv(fh, curve)
    return 0


def cmd_region(args) -> int:
    if args.mode in ("symmetric", "asymmetric"):
        _require_args(args, "n")
    if args.mode == "symmetric":
        region = stability.symmetric_region(args.alpha, args.n)
    elif args.mode == "thermo-symmetric":
        region = stability.thermodynamic_region(args.alpha, "symmetric")
    elif args.mode == "asymmetric":
        region = stability.asymmetric_region(args.alpha, args.n, args.samples)
    else:
        region = stability.thermodynamic_region(args.alpha, "asymmetric", args.samples)
    with _open_out(args.out) as fh:
        if isinstance(region, stability.Quadrilateral):
            write_vertices_csv(fh, region)
        else:
            write_asymmetric_region_csv(fh, region)
    return 0


def _simulate_from_config(cfg: dict, where: str) -> tuple[dynamics.Trajectory, float, int]:
    kind = cfg.get("kind")
    if kind not in ("linear", "nonlinear"):
        raise ValueError(f"{where}: 'kind' must be 'linear' or 'nonlinear'")
    alpha = _cfg_num(cfg, "alpha", where, required=True)
    horizon = int(_cfg_num(cfg, "horizon", where, default=2000))
    seed = int(_cfg_num(cfg, "seed", where, default=dynamics.DEFAULT_SEED))
    amplitude = _cfg_num(cfg, "amplitude", where, default=dynamics.DEFAULT_AMPLITUDE)
    base = _cfg_num(cfg, "base", where, default=0.0)
    cutoff = _cfg_num(cfg, "cutoff", where, default=dynamics.DIVERGENCE_CUTOFF)
    window = int(_cfg_num(cfg, "window", where, default=100))
    positive = bool(cfg.get("positive", False))
    if "x0" in cfg:
        if not isinstance(cfg["x0"], list) or not cfg["x0"]:
            raise ValueError(f"{where}: 'x0' must be a non-empty list of numbers")
        x0 = np.asarray([float(v) for v in cfg["x0"]])
        n = len(x0)
        if "n" in cfg and int(_cfg_num(cfg, "n", where)) != n:
            raise ValueError(f"{where}: 'n' contradicts len(x0)")
    else:
        n = int(_cfg_num(cfg, "n", where, required=True))
        x0 = dynamics.seeded_state(n, base, amplitude, seed, positive)
    if kind == "linear":
        spec = spectra.CirculantSpec(
            _cfg_num(cfg, "a0", where, required=True),
            _cfg_num(cfg, "a1", where, required=True),
            _cfg_num(cfg, "a2", where, required=True),
            n,
        )
        traj = dynamics.simulate_linear(alpha, spec, x0, horizon, cutoff)
    else:
        f0 = _map_from_config(cfg.get("f0"), f"{where}.f0")
        f1 = _map_from_config(cfg.get("f1"), f"{where}.f1")
        f2 = _map_from_config(cfg.get("f2"), f"{where}.f2")
        traj = dynamics.simulate_nonlinear(alpha, f0, f1, f2, x0, horizon, cutoff)
    return traj, base, window


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config)
    for key, val in (("alpha", args.alpha), ("horizon", args.horizon), ("seed", args.seed)):
        if val is not None:
            cfg[key] = val
    traj, base, window = _simulate_from_config(cfg, args.config)
    if traj.diverged:
        verdict = dynamics.DIVERGED
    elif traj.horizon >= 4 * window:
        verdict = dynamics.classify_trajectory(traj, window, base)
    else:
        verdict = dynamics.INCONCLUSIVE
    amplitude = float(np.max(np.abs(traj.states[-1] - base)))
    with _open_out(args.out) as fh:
        write_trajectory_csv(fh, traj)
    summary = f"verdict={verdict} final_amplitude={amplitude:.6g} steps={traj.horizon}"
    # keep the summary off the CSV stream when it goes to stdout
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return _EMPIRICAL_EXIT[verdict]


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    where = args.config
    mode = cfg.get("mode")
    cells = dynamics.sweep(
        mode if mode is not None else "",
        _cfg_num(cfg, "alpha", where, required=True),
        int(_cfg_num(cfg, "n", where, required=True)),
        _axis_values(cfg.get("p1"), f"{where}.p1"),
        _axis_values(cfg.get("p2"), f"{where}.p2"),
        simulate=bool(cfg.get("simulate", False)) or args.simulate,
        horizon=int(_cfg_num(cfg, "horizon", where, default=2000)),
        window=int(_cfg_num(cfg, "window", where, default=100)),
        seed=int(_cfg_num(cfg, "seed", where, default=dynamics.DEFAULT_SEED)),
        amplitude=_cfg_num(cfg, "amplitude", where, default=dynamics.DEFAULT_AMPLITUDE),
        threads=int(cfg["threads"]) if "threads" in cfg else None,
    )
    with _open_out(args.out) as fh:
        write_sweep_csv(fh, cells)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="fracml", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="stability verdict for a coupling spectrum")
    p.add_argument("--alpha", type=float, required=True, help="fractional order in (0, 1]")
    p.add_argument("--mode", choices=("circulant", "asymmetric"), default="circulant")
    p.add_argument("--n", type=int, help="lattice size")
    p.add_argument("--a0", type=float, help="left-neighbor weight")
    p.add_argument("--a1", type=float, help="self weight")
    p.add_argument("--a2", type=float, help="right-neighbor weight")
    p.add_argument("--matrix", help="CSV file with an explicit square matrix")
    p.add_argument("--samples", type=int, default=stability.DEFAULT_SAMPLES)
    p.add_argument("--band", type=float, default=stability.BOUNDARY_BAND)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("boundary", help="sample a stability boundary curve as CSV")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--samples", type=int, default=stability.DEFAULT_SAMPLES)
    p.add_argument("--gamma", action="store_true", help="coupling-plane curve for mode --j of a ring of size --n")
    p.add_argument("--gamma-infinity", action="store_true", help="large-lattice coupling-plane curve")
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("region", help="stable coupling region description as CSV")
    p.add_argument("--mode", required=True,
                   choices=("symmetric", "asymmetric", "thermo-symmetric", "thermo-asymmetric"))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=stability.DEFAULT_SAMPLES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("simulate", help="run a lattice from a JSON config, emit trajectory CSV")
    p.add_argument("--config", required=True, help="JSON run description")
    p.add_argument("--alpha", type=float, help="override config alpha")
    p.add_argument("--horizon", type=int, help="override config horizon")
    p.add_argument("--seed", type=int, help="override config seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="two-parameter stability map from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--simulate", action="store_true", help="add empirical verdicts")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"fracml: error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
