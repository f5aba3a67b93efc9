"""Stability geometry for synchronized fixed points of fractional lattices.

The closed boundary curve traced by z -> z (1 - 1/z)^alpha + 1 over the
unit circle, per-eigenvalue membership verdicts, coupling-plane regions
for symmetric and antisymmetric rings, and their large-lattice limits.

Membership in the curve-bounded region uses an even-odd winding test on
the sampled boundary polygon.  Real eigenvalues short-circuit through
the exact interval (1 - 2^alpha, 1); the symmetric coupling region is
decided by exact half-plane inequalities, no sampling at all.  Theorems
behind these regions use strict inequalities, so points within a small
band of the boundary report ``marginal``, never ``stable``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fractional import validate_order
from .spectra import Spectrum, distinct_mode_indices, mode_cosine, mode_sine

__all__ = [
    "DEFAULT_SAMPLES",
    "BOUNDARY_BAND",
    "BoundaryCurve",
    "RealInterval",
    "Quadrilateral",
    "AsymmetricRegion",
    "Verdict",
    "boundary_beta",
    "boundary_gamma",
    "boundary_gamma_infinity",
    "real_interval",
    "eigenvalue_in_region",
    "classify_spectrum",
    "symmetric_region",
    "innermost_cardioid_index",
    "asymmetric_region",
    "thermodynamic_region",
]

DEFAULT_SAMPLES = 8192
# absolute half-width of the "too close to call" band around any boundary
BOUNDARY_BAND = 1e-7

STABLE = "stable"
UNSTABLE = "unstable"
MARGINAL = "marginal"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a membership test.

    ``margin`` is a signed distance estimate to the nearest boundary,
    negative inside the stable set and positive outside.  It is
    informational; classification never feeds back through it.
    ``witness`` carries the offending eigenvalue when one exists.
    """

    status: str
    witness: complex | None = None
    margin: float = math.nan

    def __bool__(self) -> bool:
        return self.status == STABLE


@dataclass(frozen=True)
class RealInterval:
    """Open stability interval (1 - 2^alpha, 1) for real eigenvalues."""

    lo: float
    hi: float

    def __contains__(self, x: float) -> bool:
        return self.lo < x < self.hi

    def signed_margin(self, x: float) -> float:
        # negative inside, positive outside
        return max(x - self.hi, self.lo - x)


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled closed boundary curve over the parameter t in [0, 2*pi].

    ``kind`` is ``beta`` (eigenvalue plane), ``gamma`` (coupling plane,
    needs lattice size n and mode index j) or ``gamma-infinity``.
    ``xy`` has shape (samples + 1, 2) with the endpoint duplicated.
    """

    alpha: float
    kind: str
    t: np.ndarray
    xy: np.ndarray
    n: int | None = None
    j: int | None = None

    def __post_init__(self):
        self.t.flags.writeable = False
        self.xy.flags.writeable = False

    def __len__(self) -> int:
        return len(self.t)


def real_interval(alpha: float) -> RealInterval:
    a = validate_order(alpha)
    return RealInterval(1.0 - 2.0**a, 1.0)


def _curve_points(alpha: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    if samples < 64:
        raise ValueError(f"need at least 64 samples, got {samples!r}")
    t = np.linspace(0.0, 2.0 * math.pi, samples + 1)
    # radial factor |1 - e^{-it}|^alpha = (2 sin(t/2))^alpha; clip guards the
    # sign of sin against rounding at the endpoints, where 0^alpha must be 0
    r = np.power(np.clip(2.0 * np.sin(0.5 * t), 0.0, None), alpha)
    phase = alpha * (0.5 * math.pi) + t * (1.0 - 0.5 * alpha)
    xy = np.empty((samples + 1, 2))
    xy[:, 0] = r * np.cos(phase) + 1.0
    xy[:, 1] = r * np.sin(phase)
    # principal-branch limits at t = 0 and t = 2*pi, free of 0^alpha noise
    xy[0] = (1.0, 0.0)
    xy[-1] = (1.0, 0.0)
    return t, xy


def boundary_beta(alpha: float, samples: int = DEFAULT_SAMPLES) -> BoundaryCurve:
    """Eigenvalue-plane stability boundary for fractional order ``alpha``.

    Uniformly parameterized samples of
    (2^a sin(t/2)^a cos(a pi/2 + t (1 - a/2)) + 1,
     2^a sin(t/2)^a sin(a pi/2 + t (1 - a/2))) on [0, 2*pi], endpoints
    duplicated at the cusp (1, 0).  At alpha = 1 this is the unit circle.
    """
    a = validate_order(alpha)
    t, xy = _curve_points(a, int(samples))
    return BoundaryCurve(a, "beta", t, xy)


def boundary_gamma(
    alpha: float, n: int, j: int, samples: int = DEFAULT_SAMPLES
) -> BoundaryCurve:
    """Coupling-plane boundary for mode ``j`` of an antisymmetric ring.

    The beta curve with the second coordinate divided by
    2 sin(2 pi j / n).  Modes with sin(2 pi j / n) = 0 have a purely real
    eigenvalue and no such curve; use :func:`real_interval` for them.
    """
    a = validate_order(alpha)
    n = int(n)
    j = int(j)
    if not 1 <= j <= n // 2:
        raise ValueError(f"mode index must satisfy 1 <= j <= n//2, got j={j}, n={n}")
    if (2 * j) % n == 0:
        raise ValueError(
            f"sin(2 pi {j}/{n}) = 0: mode {j} is real, test it against the "
            "real interval instead"
        )
    t, xy = _curve_points(a, int(samples))
    xy[:, 1] /= 2.0 * mode_sine(j, n)
    return BoundaryCurve(a, "gamma", t, xy, n=n, j=j)


def boundary_gamma_infinity(
    alpha: float, samples: int = DEFAULT_SAMPLES
) -> BoundaryCurve:
    """Large-lattice limit of the coupling-plane boundary: sin factor -> 1."""
    a = validate_order(alpha)
    t, xy = _curve_points(a, int(samples))
    xy[:, 1] /= 2.0
    return BoundaryCurve(a, "gamma-infinity", t, xy)


def _winding_number(x: float, y: float, xy: np.ndarray) -> int:
    x0 = xy[:-1, 0]
    y0 = xy[:-1, 1]
    x1 = xy[1:, 0]
    y1 = xy[1:, 1]
    cross = (x1 - x0) * (y - y0) - (x - x0) * (y1 - y0)
    up = (y0 <= y) & (y1 > y) & (cross > 0.0)
    down = (y0 > y) & (y1 <= y) & (cross < 0.0)
    return int(np.count_nonzero(up)) - int(np.count_nonzero(down))


def _polygon_distance(x: float, y: float, xy: np.ndarray) -> float:
    ax = xy[:-1, 0]
    ay = xy[:-1, 1]
    ux = xy[1:, 0] - ax
    uy = xy[1:, 1] - ay
    dx = x - ax
    dy = y - ay
    L2 = ux * ux + uy * uy
    t = np.clip((dx * ux + dy * uy) / np.where(L2 > 0.0, L2, 1.0), 0.0, 1.0)
    qx = dx - t * ux
    qy = dy - t * uy
    return float(math.sqrt(np.min(qx * qx + qy * qy)))


def eigenvalue_in_region(
    lam: complex,
    alpha: float,
    samples: int = DEFAULT_SAMPLES,
    band: float = BOUNDARY_BAND,
    curve: BoundaryCurve | None = None,
) -> Verdict:
    """Verdict for one eigenvalue against the fractional stability region.

    Complex eigenvalues are tested by winding number against the sampled
    boundary polygon; exactly real eigenvalues use the open interval
    (1 - 2^alpha, 1) instead, which is exact.  Anything within ``band``
    of the polygon reports marginal.  Pass a precomputed ``curve`` to
    amortize sampling over many eigenvalues.
    """
    a = validate_order(alpha)
    lam = complex(lam)
    if curve is None:
        curve = boundary_beta(a, samples)
    elif curve.kind != "beta" or curve.alpha != a:
        raise ValueError("curve does not match this order or is not an eigenvalue-plane boundary")
    dist = _polygon_distance(lam.real, lam.imag, curve.xy)
    if lam.imag == 0.0:
        inside = lam.real in real_interval(a)
    else:
        inside = _winding_number(lam.real, lam.imag, curve.xy) != 0
    margin = -dist if inside else dist
    if dist < band:
        return Verdict(MARGINAL, witness=lam, margin=margin)
    if inside:
        return Verdict(STABLE, witness=None, margin=margin)
    return Verdict(UNSTABLE, witness=lam, margin=margin)


def _witness_imag(v: Verdict) -> float:
    return v.witness.imag if v.witness is not None else -math.inf


def classify_spectrum(
    spectrum,
    alpha: float,
    samples: int = DEFAULT_SAMPLES,
    band: float = BOUNDARY_BAND,
) -> Verdict:
    """Aggregate verdict over a whole spectrum.

    Stable only if every eigenvalue is stable; a single unstable
    eigenvalue wins over marginal ones.  The witness is the eigenvalue
    with the worst (largest) margin.
    """
    values = spectrum.eigenvalues if isinstance(spectrum, Spectrum) else np.asarray(spectrum, dtype=complex)
    if len(values) == 0:
        raise ValueError("cannot classify an empty spectrum")
    curve = boundary_beta(validate_order(alpha), samples)
    worst: Verdict | None = None
    saw_unstable = False
    saw_marginal = False
    for lam in values:
        v = eigenvalue_in_region(complex(lam), alpha, band=band, curve=curve)
        saw_unstable |= v.status == UNSTABLE
        saw_marginal |= v.status == MARGINAL
        # conjugate pairs tie on margin; report the upper half-plane one
        if (
            worst is None
            or v.margin > worst.margin
            or (v.margin == worst.margin and complex(lam).imag > _witness_imag(worst))
        ):
            worst = v
    assert worst is not None
    if saw_unstable:
        status = UNSTABLE
    elif saw_marginal:
        status = MARGINAL
    else:
        status = STABLE
    witness = None if status == STABLE else worst.witness
    return Verdict(status, witness=witness, margin=worst.margin)


@dataclass(frozen=True)
class Quadrilateral:
    """Stable coupling region of a symmetric ring in the (a2, a1) plane.

    ``vertices`` lists Q1..Q4 counterclockwise starting at (0, 1).  The
    region itself is the intersection of the exact half-planes
    1 - 2^alpha < a1 + 2 a2 cos(2 pi j / n) < 1 over the distinct modes;
    vertices are derived data for display.  ``n`` is None for the
    large-lattice limit, where the binding cosines are +-1.
    """

    alpha: float
    parity: str
    vertices: tuple[tuple[float, float], ...]
    n: int | None = None

    def _cosines(self):
        if self.n is None:
            return (1.0, -1.0)
        return tuple(mode_cosine(j, self.n) for j in distinct_mode_indices(self.n))

    def signed_margin(self, a2: float, a1: float) -> float:
        """Largest violation distance over all half-planes; negative inside."""
        lo = 1.0 - 2.0**self.alpha
        worst = -math.inf
        for c in self._cosines():
            m = a1 + 2.0 * a2 * c
            scale = math.sqrt(1.0 + 4.0 * c * c)
            worst = max(worst, (m - 1.0) / scale, (lo - m) / scale)
        return worst

    def contains(self, a2: float, a1: float) -> bool:
        """Strict half-plane membership, no tolerance band."""
        lo = 1.0 - 2.0**self.alpha
        return all(lo < a1 + 2.0 * a2 * c < 1.0 for c in self._cosines())

    def classify(self, a2: float, a1: float, band: float = BOUNDARY_BAND) -> Verdict:
        margin = self.signed_margin(a2, a1)
        if abs(margin) < band:
            return Verdict(MARGINAL, margin=margin)
        return Verdict(STABLE if margin < 0.0 else UNSTABLE, margin=margin)


def symmetric_region(alpha: float, n: int) -> Quadrilateral:
    """Stable (a2, a1) region of the symmetric ring with ``n`` sites.

    Even n gives the parallelogram with vertices (0, 1),
    (-2^(a-2), 1 - 2^(a-1)), (0, 1 - 2^a), (2^(a-2), 1 - 2^(a-1)); odd n
    gives the slightly larger quadrilateral whose lateral vertices carry
    the factor 1/(1 + cos(pi/n)).  n = 1 has no coupling geometry: test
    a0 + a1 + a2 against the real interval instead.
    """
    a = validate_order(alpha)
    n = int(n)
    if n < 2:
        raise ValueError(
            "n = 1 is a single uncoupled site; test a0 + a1 + a2 against "
            "the real interval instead"
        )
    lo = 1.0 - 2.0**a
    q1 = (0.0, 1.0)
    q3 = (0.0, lo)
    if n % 2 == 0:
        w = 2.0 ** (a - 2.0)
        ymid = 1.0 - 2.0 ** (a - 1.0)
        q2 = (-w, ymid)
        q4 = (w, ymid)
        parity = "even"
    else:
        den = 1.0 + math.cos(math.pi / n)
        w = 2.0 ** (a - 1.0) / den
        q2 = (-w, 2.0**a / den + lo)
        q4 = (w, 1.0 - 2.0**a / den)
        parity = "odd"
    return Quadrilateral(a, parity, (q1, q2, q3, q4), n=n)


def innermost_cardioid_index(n: int) -> int:
    """Mode index whose coupling-plane boundary is innermost.

    Closed form: n//4 for even n, ceil((n-1)/4) for odd n.  Cross-checked
    on every call against the direct argmin of |4 j - n| over
     1 <= j <= n//2 (ties go to the smaller j).
    """
    n = int(n)
    if n < 3:
        raise ValueError(f"no cardioid applies for n = {n}; need n >= 3")
    closed = n // 4 if n % 2 == 0 else (n + 2) // 4
    brute = min(range(1, n // 2 + 1), key=lambda j: abs(4 * j - n))
    assert closed == brute, (n, closed, brute)
    return closed


@dataclass(frozen=True)
class AsymmetricRegion:
    """Stable coupling region of an antisymmetric ring in the (a1, a2) plane.

    For n <= 2 every eigenvalue is a1 itself, so only the real interval
    matters and ``curve`` is None.  Otherwise the region is the interior
    of the innermost mode's coupling-plane boundary cut by the strip
    1 - 2^alpha < a1 < 1.  ``n`` is None for the large-lattice limit.
    """

    alpha: float
    interval: RealInterval
    n: int | None = None
    j: int | None = None
    curve: BoundaryCurve | None = None

    def signed_margin(self, a1: float, a2: float) -> float:
        margin = self.interval.signed_margin(a1)
        if self.curve is not None:
            dist = _polygon_distance(a1, a2, self.curve.xy)
            inside = _winding_number(a1, a2, self.curve.xy) != 0
            margin = max(margin, -dist if inside else dist)
        return margin

    def classify(self, a1: float, a2: float, band: float = BOUNDARY_BAND) -> Verdict:
        margin = self.signed_margin(a1, a2)
        if abs(margin) < band:
            return Verdict(MARGINAL, margin=margin)
        return Verdict(STABLE if margin < 0.0 else UNSTABLE, margin=margin)

    def contains(self, a1: float, a2: float) -> bool:
        return self.signed_margin(a1, a2) < 0.0


def asymmetric_region(
    alpha: float, n: int, samples: int = DEFAULT_SAMPLES
) -> AsymmetricRegion:
    """Stable (a1, a2) region of the antisymmetric ring (a0 = -a2)."""
    a = validate_order(alpha)
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    iv = real_interval(a)
    if n <= 2:
        return AsymmetricRegion(a, iv, n=n)
    j = innermost_cardioid_index(n)
    return AsymmetricRegion(a, iv, n=n, j=j, curve=boundary_gamma(a, n, j, samples))


def thermodynamic_region(
    alpha: float, mode: str, samples: int = DEFAULT_SAMPLES
) -> Quadrilateral | AsymmetricRegion:
    """Large-lattice limit of the coupling region.

    ``symmetric`` returns the even-parity quadrilateral (the limit
    coincides with every even lattice size); ``asymmetric`` returns the
    region bounded by the limit curve whose sin factor is exactly 1.
    """
    a = validate_order(alpha)
    if mode == "symmetric":
        lo = 1.0 - 2.0**a
        w = 2.0 ** (a - 2.0)
        ymid = 1.0 - 2.0 ** (a - 1.0)
        return Quadrilateral(a, "even", ((0.0, 1.0), (-w, ymid), (0.0, lo), (w, ymid)))
    if mode == "asymmetric":
        return AsymmetricRegion(
            a, real_interval(a), curve=boundary_gamma_infinity(a, samples)
        )
    raise ValueError(f"mode must be 'symmetric' or 'asymmetric', got {mode!r}")
