"""Balls, intervals, and measures of their unions.

Exact routines cover dimension 1 (interval sweeps) and dimension 2
(angular arc clipping); higher dimensions fall back to seeded Monte
Carlo estimates.  Pairwise quantities (lens volumes, cap volumes,
half-space cuts) are exact in every dimension, with one-dimensional
quadrature used where no closed form is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import optimize, special

# Touching closures count as overlap only above this distance slack.
DISJOINT_TOL = 1e-12
# Angular arcs shorter than this are dropped as numerical noise.
ARC_TOL = 1e-12
# Coincident balls are merged when centers and radii agree to this.
COINCIDENCE_TOL = 1e-12

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Ball:
    """Closed ball given by center coordinates and a positive radius."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self):
        center = tuple(float(c) for c in self.center)
        radius = float(self.radius)
        if len(center) < 1:
            raise ValueError("ball center needs at least one coordinate")
        if not all(math.isfinite(c) for c in center):
            raise ValueError("ball center must be finite")
        if not (math.isfinite(radius) and radius > 0.0):
            raise ValueError("ball radius must be finite and positive")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    @property
    def dimension(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class Interval:
    """Nonempty open interval (lo, hi) with lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if not lo < hi:
            raise ValueError("interval needs lo < hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo


class BallCollection:
    """Finite family of balls sharing one ambient dimension."""

    def __init__(self, dimension: int, balls):
        dimension = int(dimension)
        if dimension < 1:
            raise ValueError("dimension must be at least 1")
        balls = list(balls)
        for b in balls:
            if not isinstance(b, Ball):
                raise TypeError("collection entries must be Ball instances")
            if b.dimension != dimension:
                raise ValueError("ball dimension does not match collection")
        self.dimension = dimension
        self.balls = balls

    def __len__(self) -> int:
        return len(self.balls)

    def __iter__(self):
        return iter(self.balls)

    def __getitem__(self, idx: int) -> Ball:
        return self.balls[idx]

    @cached_property
    def centers(self) -> np.ndarray:
        if not self.balls:
            return np.zeros((0, self.dimension))
        return np.array([b.center for b in self.balls], dtype=float)

    @cached_property
    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls], dtype=float)

    def subset(self, indices) -> "BallCollection":
        return BallCollection(self.dimension, [self.balls[i] for i in indices])

    def scaled(self, factor: float) -> "BallCollection":
        factor = float(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return BallCollection(
            self.dimension,
            [Ball(tuple(factor * c for c in b.center), factor * b.radius) for b in self.balls],
        )


_EXACT_METHODS = ("exact1d", "exact2d")
_METHODS = _EXACT_METHODS + ("montecarlo",)


@dataclass(frozen=True)
class PerimeterEstimate:
    """Measure estimate with a standard error (zero for exact methods).

    A Monte Carlo estimate may also report zero standard error when all
    samples agree (for example a single isolated ball).
    """

    value: float
    std_error: float
    method: str
    sample_count: int

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.value < 0 or self.std_error < 0:
            raise ValueError("value and std_error must be nonnegative")
        if self.method in _EXACT_METHODS and self.std_error != 0.0:
            raise ValueError("exact methods must report zero std_error")


def unit_ball_volume(dim: int) -> float:
    """Volume of the unit ball, pi^(d/2) / Gamma(d/2 + 1)."""
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


def ball_volume(ball: Ball, dim: int | None = None) -> float:
    """Lebesgue volume of a ball."""
    d = ball.dimension if dim is None else int(dim)
    _require_dim_match(ball, d)
    return unit_ball_volume(d) * ball.radius**d


def ball_surface(ball: Ball, dim: int | None = None) -> float:
    """Perimeter (surface measure) of a ball; counts both endpoints for d = 1."""
    d = ball.dimension if dim is None else int(dim)
    _require_dim_match(ball, d)
    if d == 1:
        return 2.0
    return d * unit_ball_volume(d) * ball.radius ** (d - 1)


def _require_dim_match(ball: Ball, dim: int) -> None:
    if dim != ball.dimension:
        raise ValueError("dimension argument does not match ball dimension")
    if dim < 1:
        raise ValueError("dimension must be at least 1")


def _seg_angle(x: float) -> float:
    """x - sin(x) cos(x), switching to a series so tiny segments keep
    full relative accuracy."""
    if x < 0.1:
        x2 = x * x
        return (
            x
            * x2
            * (
                2.0 / 3.0
                + x2 * (-2.0 / 15.0 + x2 * (4.0 / 315.0 - x2 * (2.0 / 2835.0)))
            )
        )
    return x - math.sin(x) * math.cos(x)


def _cap_volume(radius: float, offset: float, dim: int) -> float:
    """Volume of {x in B : x_1 >= offset} for a ball of given radius at 0.

    The offset is signed and may lie anywhere in [-radius, radius]; values
    outside that range clamp to the full ball or the empty set.
    """
    r = float(radius)
    a = float(offset)
    if a <= -r:
        return unit_ball_volume(dim) * r**dim
    if a >= r:
        return 0.0
    if dim == 1:
        return r - a
    if dim == 2:
        half_chord = math.sqrt(max(0.0, (r - a) * (r + a)))
        return r * r * _seg_angle(math.atan2(half_chord, a))
    # Regularized incomplete beta closed form; full relative accuracy
    # even for sliver caps where direct quadrature loses digits.
    if a < 0.0:
        return unit_ball_volume(dim) * r**dim - _cap_volume(r, -a, dim)
    x = (r - a) * (r + a) / (r * r)
    frac = 0.5 * special.betainc((dim + 1) / 2.0, 0.5, x)
    return unit_ball_volume(dim) * r**dim * frac


def lens_volume(b1: Ball, b2: Ball, dim: int | None = None) -> float:
    """Volume of the intersection of two balls.

    Exact overlap length in d = 1, the circular-segment closed form in
    d = 2, and a split into two incomplete-beta spherical caps for
    d >= 3 (full relative accuracy at every overlap width).
    """
    d = b1.dimension if dim is None else int(dim)
    _require_dim_match(b1, d)
    _require_dim_match(b2, d)
    r1, r2 = b1.radius, b2.radius
    rho = math.dist(b1.center, b2.center)
    if rho >= r1 + r2:
        return 0.0
    if rho <= abs(r1 - r2):
        return unit_ball_volume(d) * min(r1, r2) ** d
    if d == 1:
        lo = max(b1.center[0] - r1, b2.center[0] - r2)
        hi = min(b1.center[0] + r1, b2.center[0] + r2)
        return max(0.0, hi - lo)
    # Split along the radical hyperplane at signed offsets a1, a2.
    a1 = ((rho - r2) * (rho + r2) + r1 * r1) / (2.0 * rho)
    a2 = rho - a1
    return _cap_volume(r1, a1, d) + _cap_volume(r2, a2, d)


def _lens_area_2d(r1, r2, rho):
    """Vectorized two-disk intersection area (2d only)."""
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    rho = np.asarray(rho, dtype=float)
    small = np.minimum(r1, r2)
    out = np.zeros(np.broadcast(r1, r2, rho).shape)
    contained = rho <= np.abs(r1 - r2)
    out = np.where(contained, math.pi * small * small, out)
    proper = (~contained) & (rho < r1 + r2)
    if np.any(proper):
        rr1, rr2, d = r1 + 0 * out, r2 + 0 * out, rho + 0 * out
        with np.errstate(divide="ignore", invalid="ignore"):
            a1 = ((d - rr2) * (d + rr2) + rr1 * rr1) / (2.0 * d)
        a2 = d - a1

        def seg(r, a):
            a = np.clip(a, -r, r)
            half_chord = np.sqrt(np.maximum((r - a) * (r + a), 0.0))
            x = np.arctan2(half_chord, a)
            x2 = x * x
            series = x * x2 * (
                2.0 / 3.0
                + x2 * (-2.0 / 15.0 + x2 * (4.0 / 315.0 - x2 * (2.0 / 2835.0)))
            )
            return r * r * np.where(
                x < 0.1, series, x - np.sin(x) * np.cos(x)
            )

        out = np.where(proper, seg(rr1, a1) + seg(rr2, a2), out)
    return out


def parabolic_cap_volume(t: float, dim: int) -> float:
    """Volume below the unit-curvature parabolic cap of radius t.

    The cap is the region between the graph z = (t^2 - |y|^2)/2 over the
    (d-1)-ball |y| <= t and the plane z = 0; its volume is
    omega_{d-1} t^(d+1) / (d+1).
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    t = float(t)
    if t < 0:
        raise ValueError("cap radius must be nonnegative")
    return unit_ball_volume(dim - 1) * t ** (dim + 1) / (dim + 1)


def cap_radius_for_overlap(eps_prime: float, dim: int) -> float:
    """Radius t with parabolic_cap_volume(t, d) = eps' * unit ball volume.

    Solved by monotone bisection to absolute width 1e-12; scales like
    eps'^(1/(d+1)).
    """
    eps_prime = float(eps_prime)
    if not 0.0 < eps_prime < 0.5:
        raise ValueError("eps_prime must lie in (0, 1/2)")
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    target = eps_prime * unit_ball_volume(dim)
    lo, hi = 0.0, 1.0
    while parabolic_cap_volume(hi, dim) < target:
        hi *= 2.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if parabolic_cap_volume(mid, dim) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def center_distance_for_overlap(
    r_small: float, r_big: float, eps: float, dim: int
) -> float:
    """Center distance at which the lens equals eps times the small volume.

    The lens volume decreases monotonically from the full small ball at
    internal tangency to zero at external tangency, so the root is
    bracketed in (r_big - r_small, r_big + r_small) and refined to
    machine precision.
    """
    r_small, r_big, eps = float(r_small), float(r_big), float(eps)
    if not 0.0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    if not 0.0 < r_small <= r_big:
        raise ValueError("need 0 < r_small <= r_big")
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    target = eps * unit_ball_volume(dim) * r_small**dim

    if dim == 1:

        def overlap(rho):
            return max(0.0, min(rho + r_small, r_big) - (rho - r_small))

    elif dim == 2:

        def overlap(rho):
            return float(_lens_area_2d(r_small, r_big, rho))

    else:
        origin = (0.0,) * dim

        def overlap(rho):
            other = (rho,) + (0.0,) * (dim - 1)
            return lens_volume(Ball(origin, r_big), Ball(other, r_small))

    lo = r_big - r_small
    hi = r_big + r_small
    if lo == 0.0:
        lo = np.nextafter(0.0, 1.0)
    return float(
        optimize.brentq(
            lambda rho: overlap(rho) - target,
            lo,
            hi,
            xtol=1e-15,
            rtol=4.0 * np.finfo(float).eps,
            maxiter=200,
        )
    )


def merged_components(intervals) -> list[Interval]:
    """Merge intervals whose closures touch; returns disjoint components."""
    items = sorted(intervals, key=lambda i: (i.lo, i.hi))
    out: list[Interval] = []
    for it in items:
        if out and it.lo <= out[-1].hi:
            if it.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, it.hi)
        else:
            out.append(Interval(it.lo, it.hi))
    return out


def union_measure_1d(intervals) -> float:
    """Length of a union of intervals by sort and sweep."""
    return sum(c.length for c in merged_components(intervals))


def union_boundary_1d(intervals) -> int:
    """Number of essential boundary points of a union of intervals.

    Two per merged component; intervals whose closures touch belong to
    one component since the shared endpoint has full density.
    """
    return 2 * len(merged_components(intervals))


# ---------------------------------------------------------------------------
# exact 2d boundary of a union of disks


def _merge_angle_intervals(raw) -> list[tuple[float, float]]:
    """Union of angular intervals given as (center, halfwidth) pairs."""
    pieces = []
    for theta, w in raw:
        if w <= 0.0:
            continue
        if w >= math.pi:
            return [(0.0, TWO_PI)]
        lo = (theta - w) % TWO_PI
        hi = lo + 2.0 * w
        if hi <= TWO_PI:
            pieces.append((lo, hi))
        else:
            pieces.append((lo, TWO_PI))
            pieces.append((0.0, hi - TWO_PI))
    if not pieces:
        return []
    pieces.sort()
    merged = [pieces[0]]
    for lo, hi in pieces[1:]:
        if lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return merged


def _complement_arcs(covered: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Complement of sorted disjoint pieces within [0, 2pi], tiny arcs dropped."""
    if not covered:
        return [(0.0, TWO_PI)]
    free = []
    cursor = 0.0
    for lo, hi in covered:
        if lo - cursor > ARC_TOL:
            free.append((cursor, lo))
        cursor = max(cursor, hi)
    if TWO_PI - cursor > ARC_TOL:
        free.append((cursor, TWO_PI))
    return [(lo, hi) for lo, hi in free if hi - lo > ARC_TOL]


def _coincidence_groups(balls: BallCollection) -> np.ndarray:
    """Representative index per ball; coincident balls share the lowest one."""
    n = len(balls)
    rep = np.arange(n)
    centers, radii = balls.centers, balls.radii
    for i in range(n):
        if rep[i] != i:
            continue
        d = np.linalg.norm(centers[i + 1 :] - centers[i], axis=1)
        same = (d <= COINCIDENCE_TOL) & (
            np.abs(radii[i + 1 :] - radii[i]) <= COINCIDENCE_TOL
        )
        idx = np.nonzero(same)[0] + i + 1
        rep[idx[rep[idx] == idx]] = i
    return rep


def free_arcs_2d(balls: BallCollection) -> list[list[tuple[float, float]]]:
    """Uncovered angular arcs of every circle against all other open disks.

    Entry i lists disjoint (lo, hi) pieces of [0, 2pi]; coincident
    duplicates and fully covered circles get an empty list.
    """
    if balls.dimension != 2:
        raise ValueError("free_arcs_2d needs dimension 2")
    n = len(balls)
    centers, radii = balls.centers, balls.radii
    rep = _coincidence_groups(balls)
    arcs: list[list[tuple[float, float]]] = []
    neighbor_lists = _neighbor_lists(centers, radii)
    for i in range(n):
        if rep[i] != i:
            arcs.append([])
            continue
        covered = []
        full = False
        for j in neighbor_lists[i]:
            if rep[j] != j or j == i:
                continue
            dx = centers[j] - centers[i]
            dist = math.hypot(dx[0], dx[1])
            if dist >= radii[i] + radii[j]:
                continue
            if dist <= COINCIDENCE_TOL:
                if radii[j] > radii[i]:
                    full = True
                    break
                continue
            cosphi = (dist * dist + radii[i] ** 2 - radii[j] ** 2) / (
                2.0 * dist * radii[i]
            )
            if cosphi <= -1.0:
                full = True
                break
            if cosphi >= 1.0:
                continue
            phi = math.acos(cosphi)
            theta = math.atan2(dx[1], dx[0])
            covered.append((theta, phi))
        if full:
            arcs.append([])
            continue
        merged = _merge_angle_intervals(covered)
        if merged and merged[0] == (0.0, TWO_PI):
            arcs.append([])
        else:
            arcs.append(_complement_arcs(merged))
    return arcs


def _neighbor_lists(centers: np.ndarray, radii: np.ndarray) -> list[np.ndarray]:
    """Per ball, indices whose open disks could touch its circle."""
    n = len(radii)
    if n <= 64:
        d = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=2)
        out = []
        for i in range(n):
            mask = d[i] < radii[i] + radii
            mask[i] = False
            out.append(np.nonzero(mask)[0])
        return out
    from scipy.spatial import cKDTree

    tree = cKDTree(centers)
    rmax = float(radii.max())
    out = []
    for i in range(n):
        cand = tree.query_ball_point(centers[i], radii[i] + rmax)
        cand = np.array([j for j in cand if j != i], dtype=int)
        if cand.size:
            d = np.linalg.norm(centers[cand] - centers[i], axis=1)
            cand = cand[d < radii[i] + radii[cand]]
        out.append(cand)
    return out


def union_perimeter_2d(balls: BallCollection) -> PerimeterEstimate:
    """Exact boundary length of a union of disks by angular arc clipping.

    A circle contributes the arcs not covered by any other open disk;
    coincident balls count once and arcs below 1e-12 radians are dropped.
    """
    arcs = free_arcs_2d(balls)
    total = 0.0
    for b, pieces in zip(balls, arcs):
        total += b.radius * sum(hi - lo for lo, hi in pieces)
    return PerimeterEstimate(total, 0.0, "exact2d", 0)


def _clip_arcs_to_window(
    pieces: list[tuple[float, float]], window: tuple[float, float] | None
) -> float:
    """Total length of arc pieces inside one angular window (mod 2pi)."""
    if window is None:
        return 0.0
    wlo, whi = window
    spans = [(wlo % TWO_PI, min(whi - wlo, TWO_PI))]
    total = 0.0
    for start, width in spans:
        segs = [(start, start + width)]
        if start + width > TWO_PI:
            segs = [(start, TWO_PI), (0.0, start + width - TWO_PI)]
        for slo, shi in segs:
            for lo, hi in pieces:
                total += max(0.0, min(hi, shi) - max(lo, slo))
    return total


def free_arc_length_halfplane(
    balls: BallCollection, threshold: float = 0.0, side: str = "le"
) -> float:
    """Length of the union boundary within a vertical half-plane.

    side "le" keeps boundary points with x_1 <= threshold, "ge" the rest.
    """
    if side not in ("le", "ge"):
        raise ValueError("side must be 'le' or 'ge'")
    arcs = free_arcs_2d(balls)
    total = 0.0
    for b, pieces in zip(balls, arcs):
        if not pieces:
            continue
        u = (threshold - b.center[0]) / b.radius
        if side == "le":
            if u >= 1.0:
                window = (0.0, TWO_PI)
            elif u <= -1.0:
                window = None
            else:
                t = math.acos(u)
                window = (t, TWO_PI - t)
        else:
            if u <= -1.0:
                window = (0.0, TWO_PI)
            elif u >= 1.0:
                window = None
            else:
                t = math.acos(u)
                window = (-t, t)
        total += b.radius * _clip_arcs_to_window(pieces, window)
    return total


def free_arc_length_in_disk(
    balls: BallCollection, center: tuple[float, float], radius: float
) -> float:
    """Length of the union boundary inside one probe disk."""
    arcs = free_arcs_2d(balls)
    cx, cy = float(center[0]), float(center[1])
    total = 0.0
    for b, pieces in zip(balls, arcs):
        if not pieces:
            continue
        dx, dy = cx - b.center[0], cy - b.center[1]
        dist = math.hypot(dx, dy)
        if dist >= b.radius + radius:
            continue
        if dist + b.radius <= radius:
            window = (0.0, TWO_PI)
        elif dist <= COINCIDENCE_TOL:
            window = (0.0, TWO_PI) if b.radius < radius else None
        else:
            c = (dist * dist + b.radius**2 - radius * radius) / (
                2.0 * dist * b.radius
            )
            if c <= -1.0:
                window = (0.0, TWO_PI)
            elif c >= 1.0:
                window = None
            else:
                phi = math.acos(c)
                theta = math.atan2(dy, dx)
                window = (theta - phi, theta + phi)
        total += b.radius * _clip_arcs_to_window(pieces, window)
    return total


# ---------------------------------------------------------------------------
# Monte Carlo estimates


def union_perimeter_mc(
    balls: BallCollection, samples_per_ball: int, seed: int
) -> PerimeterEstimate:
    """Monte Carlo boundary measure of a union of balls in any dimension.

    Each sphere is sampled uniformly via normalized Gaussian directions
    from a substream seeded by (seed, ball index), so results do not
    depend on evaluation order.  Coincident balls are merged first.
    The standard error combines per-ball binomial variances.
    """
    samples_per_ball = int(samples_per_ball)
    if samples_per_ball < 100:
        raise ValueError("samples_per_ball must be at least 100")
    if len(balls) == 0:
        raise ValueError("collection must be nonempty")
    d = balls.dimension
    centers, radii = balls.centers, balls.radii
    rep = _coincidence_groups(balls)
    keep = np.nonzero(rep == np.arange(len(balls)))[0]
    neighbor_lists = _neighbor_lists(centers, radii)
    value = 0.0
    variance = 0.0
    total_samples = 0
    chunk = 200_000
    for i in keep:
        rng = np.random.default_rng([seed, int(i)])
        others = np.array(
            [j for j in neighbor_lists[i] if rep[j] == j and j != i], dtype=int
        )
        outside = 0
        done = 0
        while done < samples_per_ball:
            m = min(chunk, samples_per_ball - done)
            g = rng.standard_normal((m, d))
            norms = np.linalg.norm(g, axis=1)
            # Degenerate draws are astronomically unlikely; guard anyway.
            norms[norms == 0.0] = 1.0
            pts = centers[i] + radii[i] * (g / norms[:, None])
            if others.size:
                diff = pts[:, None, :] - centers[others][None, :, :]
                inside = (diff * diff).sum(axis=2) < (radii[others] ** 2)[None, :]
                outside += int((~inside.any(axis=1)).sum())
            else:
                outside += m
            done += m
        surf = ball_surface(balls[int(i)])
        p = outside / samples_per_ball
        value += surf * p
        variance += surf * surf * p * (1.0 - p) / samples_per_ball
        total_samples += samples_per_ball
    return PerimeterEstimate(value, math.sqrt(variance), "montecarlo", total_samples)


def union_volume_mc(balls: BallCollection, samples: int, seed: int) -> PerimeterEstimate:
    """Volume of a union of balls; exact interval sweep in d = 1, else
    rejection sampling over the bounding box."""
    samples = int(samples)
    if samples < 1000:
        raise ValueError("samples must be at least 1000")
    if len(balls) == 0:
        raise ValueError("collection must be nonempty")
    d = balls.dimension
    if d == 1:
        ivals = [Interval(b.center[0] - b.radius, b.center[0] + b.radius) for b in balls]
        return PerimeterEstimate(union_measure_1d(ivals), 0.0, "exact1d", 0)
    centers, radii = balls.centers, balls.radii
    lo = (centers - radii[:, None]).min(axis=0)
    hi = (centers + radii[:, None]).max(axis=0)
    box = float(np.prod(hi - lo))
    rng = np.random.default_rng([seed])
    hits = 0
    done = 0
    chunk = 200_000
    while done < samples:
        m = min(chunk, samples - done)
        pts = rng.uniform(lo, hi, size=(m, d))
        diff = pts[:, None, :] - centers[None, :, :]
        inside = (diff * diff).sum(axis=2) <= (radii**2)[None, :]
        hits += int(inside.any(axis=1).sum())
        done += m
    p = hits / samples
    value = box * p
    se = box * math.sqrt(p * (1.0 - p) / samples)
    return PerimeterEstimate(value, se, "montecarlo", samples)


def union_perimeter(
    balls: BallCollection, samples_per_ball: int = 20_000, seed: int = 0
) -> PerimeterEstimate:
    """Boundary measure of a union: exact for d <= 2, Monte Carlo beyond."""
    if len(balls) == 0:
        raise ValueError("collection must be nonempty")
    if balls.dimension == 1:
        ivals = [Interval(b.center[0] - b.radius, b.center[0] + b.radius) for b in balls]
        return PerimeterEstimate(float(union_boundary_1d(ivals)), 0.0, "exact1d", 0)
    if balls.dimension == 2:
        return union_perimeter_2d(balls)
    return union_perimeter_mc(balls, samples_per_ball, seed)


def halfspace_cut_data(ball: Ball, offset: float, dim: int | None = None):
    """Volumes on both sides of the plane {x_1 = offset from center} and
    the (d-1)-volume of the slice; requires |offset| < radius."""
    d = ball.dimension if dim is None else int(dim)
    _require_dim_match(ball, d)
    offset = float(offset)
    r = ball.radius
    if not abs(offset) < r:
        raise ValueError("offset must satisfy |offset| < radius")
    vol_in = _cap_volume(r, offset, d)
    vol_out = unit_ball_volume(d) * r**d - vol_in
    slice_area = unit_ball_volume(d - 1) * (r * r - offset * offset) ** ((d - 1) / 2.0)
    return vol_in, vol_out, slice_area
