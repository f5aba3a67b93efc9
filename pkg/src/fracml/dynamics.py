"""Direct simulation of fractional coupled map lattices.

Linear and nonlinear lattice iterations with the full power-law memory
sum, the site-map library with closed-form derivatives, homogeneous
equilibrium solving, linearization, empirical trajectory verdicts, and
two-parameter stability sweeps.

Every step of a simulation reads the entire history (the kernel weight
depends on t - j), so a horizon-T run stores O(T * N) states and costs
O(T^2 * N) time.  That is inherent, not an implementation shortcut.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import stability
from .fractional import kernel_weights, memory_convolution, validate_order
from .spectra import CirculantSpec, circulant_eigenvalues

__all__ = [
    "HORIZON_CAP",
    "DIVERGENCE_CUTOFF",
    "DEFAULT_SEED",
    "DEFAULT_AMPLITUDE",
    "MapSpec",
    "linear_map",
    "logistic_map",
    "cubic_map",
    "circle_map",
    "scaled_map",
    "negated_map",
    "eval_map",
    "eval_map_derivative",
    "Equilibrium",
    "find_homogeneous_equilibrium",
    "linearize_at",
    "Trajectory",
    "seeded_state",
    "simulate_linear",
    "simulate_nonlinear",
    "classify_trajectory",
    "SweepCell",
    "sweep",
]

HORIZON_CAP = 100_000
DIVERGENCE_CUTOFF = 1e8
DEFAULT_SEED = 42
DEFAULT_AMPLITUDE = 0.01

DECAYING = "decaying"
GROWING = "growing"
INCONCLUSIVE = "inconclusive"
DIVERGED = "diverged"


@dataclass(frozen=True)
class MapSpec:
    """One site map.  ``kind`` selects the formula, ``param`` its knob.

    kind      formula            param meaning
    --------  -----------------  -------------
    linear    a * x              a
    logistic  mu * x * (1 - x)   mu
    cubic     4 x^3 - delta * x  delta
    circle    x + delta * sin x  delta
    scaled    c * base(x)        c
    negated   -base(x)           (unused)
    """

    kind: str
    param: float = 0.0
    base: "MapSpec | None" = None

    def __post_init__(self):
        if self.kind not in ("linear", "logistic", "cubic", "circle", "scaled", "negated"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.kind in ("scaled", "negated") and self.base is None:
            raise ValueError(f"map kind {self.kind!r} needs a base map")
        object.__setattr__(self, "param", float(self.param))


def linear_map(a: float) -> MapSpec:
    return MapSpec("linear", a)


def logistic_map(mu: float) -> MapSpec:
    return MapSpec("logistic", mu)


def cubic_map(delta: float) -> MapSpec:
    return MapSpec("cubic", delta)


def circle_map(delta: float) -> MapSpec:
    return MapSpec("circle", delta)


def scaled_map(c: float, base: MapSpec) -> MapSpec:
    return MapSpec("scaled", c, base)


def negated_map(base: MapSpec) -> MapSpec:
    return MapSpec("negated", 0.0, base)


def eval_map(f: MapSpec, x):
    """Map value at ``x`` (scalar or array)."""
    if f.kind == "linear":
        return f.param * x
    if f.kind == "logistic":
        return f.param * x * (1.0 - x)
    if f.kind == "cubic":
        return 4.0 * x**3 - f.param * x
    if f.kind == "circle":
        return x + f.param * np.sin(x)
    if f.kind == "scaled":
        return f.param * eval_map(f.base, x)
    return -eval_map(f.base, x)


def eval_map_derivative(f: MapSpec, x):
    """Closed-form derivative at ``x`` (scalar or array)."""
    if f.kind == "linear":
        return f.param + 0.0 * x
    if f.kind == "logistic":
        return f.param * (1.0 - 2.0 * x)
    if f.kind == "cubic":
        return 12.0 * x**2 - f.param
    if f.kind == "circle":
        return 1.0 + f.param * np.cos(x)
    if f.kind == "scaled":
        return f.param * eval_map_derivative(f.base, x)
    return -eval_map_derivative(f.base, x)


@dataclass(frozen=True)
class Equilibrium:
    """Homogeneous equilibrium value and its defect |f0+f1+f2-id|."""

    x_star: float
    residual: float


def find_homogeneous_equilibrium(
    f0: MapSpec, f1: MapSpec, f2: MapSpec, guess: float = 0.0, tol: float = 1e-12
) -> Equilibrium:
    """Newton iteration on g(x) = f0(x) + f1(x) + f2(x) - x.

    Uses the closed-form derivatives; at most 100 steps.  Raises with
    the last iterate on stall or non-convergence rather than returning a
    bad point.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    x = float(guess)
    for _ in range(100):
        g = float(eval_map(f0, x) + eval_map(f1, x) + eval_map(f2, x)) - x
        if abs(g) <= tol:
            return Equilibrium(x, abs(g))
        dg = (
            float(
                eval_map_derivative(f0, x)
                + eval_map_derivative(f1, x)
                + eval_map_derivative(f2, x)
            )
            - 1.0
        )
        if dg == 0.0 or not math.isfinite(dg) or not math.isfinite(g):
            raise RuntimeError(f"Newton stalled at x = {x!r} (g = {g!r}, g' = {dg!r})")
        x -= g / dg
    raise RuntimeError(f"no equilibrium within 100 Newton steps; last iterate {x!r}")


def linearize_at(f0: MapSpec, f1: MapSpec, f2: MapSpec, x_star: float):
    """Coupling triple (a0, a1, a2) = (f0'(x*), f1'(x*), f2'(x*))."""
    return (
        float(eval_map_derivative(f0, x_star)),
        float(eval_map_derivative(f1, x_star)),
        float(eval_map_derivative(f2, x_star)),
    )


@dataclass(frozen=True)
class Trajectory:
    """Lattice history X_0 .. X_T, one row per step.

    ``diverged`` marks a run truncated by the divergence cutoff; the
    stored rows end at the last computed state.
    """

    states: np.ndarray
    alpha: float
    diverged: bool = False

    def __post_init__(self):
        self.states.flags.writeable = False

    @property
    def horizon(self) -> int:
        return len(self.states) - 1

    @property
    def sites(self) -> int:
        return self.states.shape[1]


def seeded_state(
    n: int,
    base: float = 0.0,
    amplitude: float = DEFAULT_AMPLITUDE,
    seed: int = DEFAULT_SEED,
    positive: bool = False,
) -> np.ndarray:
    """Reproducible initial state: uniform perturbation about ``base``.

    Centered in [-amplitude, amplitude] by default; ``positive=True``
    draws from (0, amplitude] instead, for basins that only open on one
    side.
    """
    if amplitude <= 0.0:
        raise ValueError("amplitude must be positive")
    rng = np.random.default_rng(seed)
    if positive:
        return base + amplitude * (1.0 - rng.random(int(n)))
    return base + rng.uniform(-amplitude, amplitude, int(n))


def _check_horizon(horizon: int) -> int:
    t = int(horizon)
    if t < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon!r}")
    if t > HORIZON_CAP:
        raise ValueError(f"horizon {t} exceeds the cap of {HORIZON_CAP} steps")
    return t


def simulate_linear(
    alpha: float,
    coupling,
    x0,
    horizon: int,
    cutoff: float = DIVERGENCE_CUTOFF,
) -> Trajectory:
    """Linear lattice run X_{t+1} = X_0 + (A - I) sum_j w[t-j] X_j.

    ``coupling`` is a CirculantSpec or an explicit square matrix.  At
    alpha = 1 every weight is 1 and the iteration telescopes to the
    classical X_{t+1} = A X_t.
    """
    a = validate_order(alpha)
    t_max = _check_horizon(horizon)
    mat = coupling.matrix() if isinstance(coupling, CirculantSpec) else np.asarray(coupling, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"coupling matrix must be square, got shape {mat.shape}")
    x_init = np.asarray(x0, dtype=float).copy()
    if x_init.shape != (mat.shape[0],):
        raise ValueError(f"initial state shape {x_init.shape} does not match n = {mat.shape[0]}")
    shifted = mat - np.eye(mat.shape[0])
    w = kernel_weights(a, t_max + 1)
    hist = np.zeros((t_max + 1, mat.shape[0]))
    hist[0] = x_init
    for t in range(t_max):
        x_next = x_init + shifted @ memory_convolution(w, hist, t)
        if not np.all(np.isfinite(x_next)):
            return Trajectory(hist[: t + 1].copy(), a, diverged=True)
        hist[t + 1] = x_next
        if np.max(np.abs(x_next)) > cutoff:
            return Trajectory(hist[: t + 2].copy(), a, diverged=True)
    return Trajectory(hist, a)


def _lattice_apply(f0: MapSpec, f1: MapSpec, f2: MapSpec, x: np.ndarray) -> np.ndarray:
    # periodic ring: site k reads x[k-1], x[k], x[k+1]
    return eval_map(f0, np.roll(x, 1)) + eval_map(f1, x) + eval_map(f2, np.roll(x, -1))


def simulate_nonlinear(
    alpha: float,
    f0: MapSpec,
    f1: MapSpec,
    f2: MapSpec,
    x0,
    horizon: int,
    cutoff: float = DIVERGENCE_CUTOFF,
) -> Trajectory:
    """Nonlinear lattice run X_{t+1} = X_0 + sum_j w[t-j] (F(X_j) - X_j).

    F applies f0 to the left neighbor, f1 to the site, f2 to the right
    neighbor, with periodic boundaries.  Map overflow (non-finite values)
    truncates the run with the diverged flag set.
    """
    a = validate_order(alpha)
    t_max = _check_horizon(horizon)
    x_init = np.asarray(x0, dtype=float).copy()
    if x_init.ndim != 1 or len(x_init) < 1:
        raise ValueError("initial state must be a non-empty vector")
    w = kernel_weights(a, t_max + 1)
    n = len(x_init)
    hist = np.zeros((t_max + 1, n))
    drift = np.zeros((t_max + 1, n))
    hist[0] = x_init
    for t in range(t_max):
        with np.errstate(all="ignore"):
            g = _lattice_apply(f0, f1, f2, hist[t]) - hist[t]
        if not np.all(np.isfinite(g)):
            return Trajectory(hist[: t + 1].copy(), a, diverged=True)
        drift[t] = g
        x_next = x_init + memory_convolution(w, drift, t)
        if not np.all(np.isfinite(x_next)):
            return Trajectory(hist[: t + 1].copy(), a, diverged=True)
        hist[t + 1] = x_next
        if np.max(np.abs(x_next)) > cutoff:
            return Trajectory(hist[: t + 2].copy(), a, diverged=True)
    return Trajectory(hist, a)


def classify_trajectory(traj: Trajectory, window: int = 100, reference=0.0) -> str:
    """Empirical verdict: decaying, growing, inconclusive or diverged.

    Compares the worst deviation from ``reference`` over the last
    ``window`` steps (h) against the first ``window`` steps (e):
    decaying if h < 0.2 e, growing if h > 5 e.  Power-law memory decays
    slowly, so the thresholds are loose by design; near-boundary systems
    legitimately come out inconclusive at moderate horizons.
    """
    if traj.diverged:
        return DIVERGED
    win = int(window)
    if win < 1:
        raise ValueError("window must be >= 1")
    if traj.horizon < 4 * win:
        raise ValueError(f"horizon {traj.horizon} too short for window {win}; need >= {4 * win}")
    dev = np.max(np.abs(traj.states - np.asarray(reference, dtype=float)), axis=1)
    early = float(np.max(dev[:win]))
    late = float(np.max(dev[-win:]))
    if late == 0.0:
        return DECAYING
    if early == 0.0:
        return GROWING
    if late < 0.2 * early:
        return DECAYING
    if late > 5.0 * early:
        return GROWING
    return INCONCLUSIVE


@dataclass(frozen=True)
class SweepCell:
    """One grid point of a stability sweep."""

    p1: float
    p2: float
    analytic: str
    empirical: str | None
    margin: float


_SWEEP_MODES = ("symmetric", "asymmetric", "logistic-cubic", "logistic-circle")
ANALYTIC_CELL_CAP = 1_000_000
SIMULATED_CELL_CAP = 10_000


def _sweep_maps(mode: str, p1: float, p2: float):
    if mode == "logistic-cubic":
        f = cubic_map(p2)
        return f, logistic_map(p1), f
    f2 = circle_map(p2)
    return negated_map(f2), logistic_map(p1), f2


def _thread_count(threads: int | None) -> int:
    count = threads if threads is not None else (os.cpu_count() or 1)
    env = os.environ.get("FRACML_THREADS")
    if env is not None:
        try:
            cap = int(env)
        except ValueError as exc:
            raise ValueError(f"FRACML_THREADS must be an integer, got {env!r}") from exc
        count = min(count, max(cap, 1))
    return max(int(count), 1)


def sweep(
    mode: str,
    alpha: float,
    n: int,
    p1_values,
    p2_values,
    simulate: bool = False,
    horizon: int = 2000,
    window: int = 100,
    seed: int = DEFAULT_SEED,
    amplitude: float = DEFAULT_AMPLITUDE,
    samples: int = stability.DEFAULT_SAMPLES,
    band: float = stability.BOUNDARY_BAND,
    cutoff: float = DIVERGENCE_CUTOFF,
    threads: int | None = None,
) -> list[SweepCell]:
    """Two-parameter stability map over a grid.

    Parameter meaning per mode: symmetric (p1 = a2, p2 = a1, with
    a0 = a2), asymmetric (p1 = a1, p2 = a2, with a0 = -a2),
    logistic-cubic and logistic-circle (p1 = mu, p2 = delta, classified
    at the origin equilibrium).  ``simulate=True`` adds the empirical
    verdict of a seeded run per cell; cell seeds derive from the base
    seed and the cell index, so results do not depend on scheduling.
    The FRACML_THREADS environment variable caps worker threads.
    """
    if mode not in _SWEEP_MODES:
        raise ValueError(f"mode must be one of {_SWEEP_MODES}, got {mode!r}")
    a = validate_order(alpha)
    p1s = [float(v) for v in np.atleast_1d(np.asarray(p1_values, dtype=float))]
    p2s = [float(v) for v in np.atleast_1d(np.asarray(p2_values, dtype=float))]
    cells = len(p1s) * len(p2s)
    cap = SIMULATED_CELL_CAP if simulate else ANALYTIC_CELL_CAP
    if cells > cap:
        raise ValueError(f"grid of {cells} cells exceeds the cap of {cap}")

    region = None
    if mode == "symmetric":
        region = stability.symmetric_region(a, n)
    elif mode == "asymmetric":
        region = stability.asymmetric_region(a, n, samples)

    def analytic_cell(p1: float, p2: float) -> stability.Verdict:
        if mode == "symmetric":
            return region.classify(p1, p2, band)
        if mode == "asymmetric":
            return region.classify(p1, p2, band)
        f0, f1, f2 = _sweep_maps(mode, p1, p2)
        a0, a1, a2 = linearize_at(f0, f1, f2, 0.0)
        spec = circulant_eigenvalues(CirculantSpec(a0, a1, a2, n))
        return stability.classify_spectrum(spec, a, samples, band)

    def empirical_cell(i: int, k: int, p1: float, p2: float) -> str:
        rng = np.random.default_rng((seed, i, k))
        x0 = rng.uniform(-amplitude, amplitude, int(n))
        if mode == "symmetric":
            traj = simulate_linear(a, CirculantSpec(p1, p2, p1, n), x0, horizon, cutoff)
        elif mode == "asymmetric":
            traj = simulate_linear(a, CirculantSpec(-p2, p1, p2, n), x0, horizon, cutoff)
        else:
            f0, f1, f2 = _sweep_maps(mode, p1, p2)
            traj = simulate_nonlinear(a, f0, f1, f2, x0, horizon, cutoff)
        return classify_trajectory(traj, window)

    verdicts = [analytic_cell(p1, p2) for p1 in p1s for p2 in p2s]
    empirical: list[str | None] = [None] * cells
    if simulate:
        jobs = [(i, k) for i in range(len(p1s)) for k in range(len(p2s))]
        workers = _thread_count(threads)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                empirical = list(
                    pool.map(lambda ik: empirical_cell(ik[0], ik[1], p1s[ik[0]], p2s[ik[1]]), jobs)
                )
        else:
            empirical = [empirical_cell(i, k, p1s[i], p2s[k]) for i, k in jobs]
    out = []
    idx = 0
    for i, p1 in enumerate(p1s):
        for k, p2 in enumerate(p2s):
            v = verdicts[idx]
            out.append(SweepCell(p1, p2, v.status, empirical[idx], v.margin))
            idx += 1
    return out
