"""Constructions that stress the covering selections.

Three families of examples live here:

* ``build_fig1``: one unit disk ringed by ``k`` small disks, each
  poking into the central disk by half its radius.  As the small disks
  shrink, the union's perimeter grows like ``k`` while every disjoint
  subfamily keeps bounded perimeter.

* ``build_surrounded_ball``: a greedy generator that packs pairwise
  disjoint small disks around the unit disk, each overlapping it by an
  exact volume fraction ``eps`` of the small disk.  The packing shows
  the perimeter cost of an eps-overlap selection must blow up at the
  rate ``eps ** (-1/3)`` in the plane.

* ``build_reverse_example``: a large union of unit disks whose boundary
  contains a tiny petal curve of length about ``2 * pi * eps`` around
  the origin.  Every pairwise disjoint subfamily of the disks has total
  perimeter ``0`` or at least ``2 * pi``, so no disjoint selection can
  account for that small boundary piece.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    TWO_PI,
    Ball,
    BallCollection,
    _cap_volume,
)

__all__ = [
    "PlacementRecord",
    "SurroundedBallConfig",
    "build_fig1",
    "build_reverse_example",
    "build_surrounded_ball",
    "build_surrounded_ball_detailed",
    "restrict_to_halfspace",
]


# --------------------------------------------------------------------------
# ring of small disks around a unit disk (fixed count)
# --------------------------------------------------------------------------


def build_fig1(k: int, tiny_radius: float) -> BallCollection:
    """Unit disk at the origin plus ``k`` disjoint disks of radius
    ``tiny_radius`` whose centers sit on the circle of radius
    ``1 + tiny_radius / 2``.

    Each small disk overlaps the central disk in a lens of width
    ``tiny_radius / 2``.  The small disks must fit side by side on
    their circle without touching each other or leaving the doubled
    central disk; both conditions are enforced up front.
    """
    k = int(k)
    t = float(tiny_radius)
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError("tiny_radius must be positive and finite")
    ring_radius = 1.0 + 0.5 * t
    # Keep every small disk inside the doubled central disk:
    # ring_radius + t <= 2  <=>  t <= 2/3.
    if t > 2.0 / 3.0:
        raise ValueError(
            "packing constraint violated: tiny_radius must be at most 2/3 "
            "so the small disks stay inside the doubled central disk"
        )
    # Adjacent centers are 2 * ring_radius * sin(pi / k) apart and the
    # disks are disjoint only when that chord is at least 2 * t.
    if k >= 2 and math.sin(math.pi / k) < t / ring_radius:
        raise ValueError(
            "packing constraint violated: need sin(pi / k) >= "
            "tiny_radius / (1 + tiny_radius / 2) so the small disks are "
            "pairwise disjoint"
        )
    balls = [Ball((0.0, 0.0), 1.0)]
    for j in range(k):
        angle = TWO_PI * j / k
        balls.append(
            Ball((ring_radius * math.cos(angle), ring_radius * math.sin(angle)), t)
        )
    return BallCollection(2, balls)


# --------------------------------------------------------------------------
# greedy surrounded-ball packing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SurroundedBallConfig:
    """Parameters of the greedy surrounded-ball generator.

    eps: exact overlap fraction of each small disk with the unit disk
        (lens volume = eps times the small disk's volume).
    delta: cap on the small radii; the first disks placed have radius
        exactly delta and radii never increase afterwards.
    n_max: cap on the number of small disks.
    seed: seed of the angle sampler.
    dimension: ambient dimension; only the plane is implemented.
    """

    eps: float
    delta: float
    n_max: int
    seed: int = 0
    dimension: int = 2

    def __post_init__(self):
        if not (0.0 < self.eps < 0.5):
            raise ValueError("eps must lie in (0, 1/2)")
        if not (math.isfinite(self.delta) and self.delta > 0.0):
            raise ValueError("delta must be positive and finite")
        if int(self.n_max) < 1 or self.n_max != int(self.n_max):
            raise ValueError("n_max must be an integer >= 1")
        if self.dimension != 2:
            raise ValueError("only dimension 2 is implemented")


@dataclass(frozen=True)
class PlacementRecord:
    """One line of the generation log of ``build_surrounded_ball``."""

    index: int
    radius: float
    angle: float
    distance: float
    uncovered_fraction: float


def _split_arcs(centers: np.ndarray, halfwidths: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Arcs of given centers and halfwidths as segments of [0, 2*pi)."""
    lo = (centers - halfwidths) % TWO_PI
    hi = lo + 2.0 * halfwidths
    over = hi > TWO_PI
    starts = np.concatenate([lo, np.zeros(int(over.sum()))])
    ends = np.concatenate([np.minimum(hi, TWO_PI), hi[over] - TWO_PI])
    return starts, ends


def _free_gaps(
    starts: np.ndarray, ends: np.ndarray
) -> tuple[np.ndarray, np.ndarray, float]:
    """Complement of a union of segments of [0, 2*pi), with its measure."""
    if starts.size == 0:
        return np.array([0.0]), np.array([TWO_PI]), TWO_PI
    order = np.argsort(starts)
    s = starts[order]
    e = np.maximum.accumulate(ends[order])
    gap_starts = np.concatenate(([0.0], e))
    gap_ends = np.concatenate((s, [TWO_PI]))
    keep = gap_ends > gap_starts
    gap_starts = gap_starts[keep]
    gap_ends = gap_ends[keep]
    return gap_starts, gap_ends, float((gap_ends - gap_starts).sum())


def _lens_area_scalar(r: float, rho: float) -> float:
    """Area of the lens of a circle of radius r and the unit circle at
    center distance rho, for abs(1 - r) < rho < 1 + r."""
    a1 = ((rho - 1.0) * (rho + 1.0) + r * r) / (2.0 * rho)
    return _cap_volume(r, a1, 2) + _cap_volume(1.0, rho - a1, 2)


def _cut_half_angle(eps: float) -> float:
    """Half-angle x with x - sin(x) cos(x) = eps * pi: the cut angle of
    a disk losing the area fraction eps to a half-plane."""
    target = eps * math.pi
    x = (1.5 * target) ** (1.0 / 3.0)
    for _ in range(60):
        step = (x - math.sin(x) * math.cos(x) - target) / (2.0 * math.sin(x) ** 2)
        x -= step
        if abs(step) <= 1e-15 * x:
            break
    return x


def _center_distance_2d(r: float, eps: float, start: float | None = None) -> float:
    """Center distance at which a disk of radius r overlaps the unit
    disk in a lens of area exactly eps times the disk's own area.

    Safeguarded Newton on the distance: the lens area decreases in the
    distance with derivative equal to minus the radical chord length,
    so each step is a couple of scalar evaluations.
    """
    target = eps * math.pi * r * r
    lo = 1.0 - r  # lens area -> pi r^2 (above target since eps < 1/2)
    hi = 1.0 + r  # lens area -> 0
    if start is not None and lo < start < hi:
        rho = start
    else:
        # flat-boundary guess: cut the disk at offset r cos(x*)
        rho = min(1.0 + r * math.cos(_cut_half_angle(eps)), 0.5 * (1.0 + hi))
    for _ in range(80):
        g = _lens_area_scalar(r, rho) - target
        if g > 0.0:
            lo = rho
        else:
            hi = rho
        a1 = ((rho - 1.0) * (rho + 1.0) + r * r) / (2.0 * rho)
        chord = 2.0 * math.sqrt(max(0.0, (r - a1) * (r + a1)))
        step_ok = chord > 0.0
        if step_ok:
            nxt = rho + g / chord  # g' = -chord
            step_ok = lo < nxt < hi
        rho_next = nxt if step_ok else 0.5 * (lo + hi)
        if abs(rho_next - rho) <= 5e-16 * rho or hi - lo <= 5e-16 * rho:
            return rho_next
        rho = rho_next
    return rho


def _covered_measure(starts: np.ndarray, ends: np.ndarray) -> float:
    """Measure of a union of segments (already clipped to a line)."""
    if starts.size == 0:
        return 0.0
    order = np.argsort(starts)
    s = starts[order]
    e = ends[order]
    running = np.maximum.accumulate(e)
    floor = np.concatenate(([s[0]], running[:-1]))
    return float(np.maximum(0.0, e - np.maximum(s, floor)).sum())


class _PackingState:
    """Mutable state of the greedy packing: placed disks in polar form."""

    _GROW = 256

    def __init__(self):
        self.count = 0
        self._dist = np.empty(self._GROW)
        self._angle = np.empty(self._GROW)
        self._radius = np.empty(self._GROW)
        # split coverage arcs of the unit circle, for the generation log
        self._cov_starts: list[float] = []
        self._cov_ends: list[float] = []

    def blocked_arcs(self, rho: float, r: float) -> tuple[np.ndarray, np.ndarray] | None:
        """Angles where a new disk of radius r at distance rho would meet
        a placed disk; None when every angle is blocked."""
        n = self.count
        if n == 0:
            return np.empty(0), np.empty(0)
        d = self._dist[:n]
        # overlap with disk j iff the center distance is below r + r_j,
        # i.e. cos(angle difference) > q_j
        q = (rho * rho + d * d - (r + self._radius[:n]) ** 2) / (2.0 * rho * d)
        if np.any(q <= -1.0):
            return None
        hot = q < 1.0
        halfwidths = np.arccos(np.clip(q[hot], -1.0, 1.0))
        return _split_arcs(self._angle[:n][hot], halfwidths)

    def add(self, rho: float, angle: float, r: float) -> None:
        if self.count == self._dist.size:
            for name in ("_dist", "_angle", "_radius"):
                old = getattr(self, name)
                grown = np.empty(old.size * 2)
                grown[: old.size] = old
                setattr(self, name, grown)
        self._dist[self.count] = rho
        self._angle[self.count] = angle
        self._radius[self.count] = r
        self.count += 1
        # arc of the unit circle covered by the new disk
        cos_psi = (1.0 + rho * rho - r * r) / (2.0 * rho)
        if cos_psi < 1.0:
            psi = math.acos(max(-1.0, cos_psi))
            s, e = _split_arcs(np.array([angle]), np.array([psi]))
            self._cov_starts.extend(s.tolist())
            self._cov_ends.extend(e.tolist())

    def uncovered_fraction(self) -> float:
        covered = _covered_measure(
            np.array(self._cov_starts), np.array(self._cov_ends)
        )
        return max(0.0, 1.0 - covered / TWO_PI)


def build_surrounded_ball_detailed(
    cfg: SurroundedBallConfig,
) -> tuple[BallCollection, list[PlacementRecord]]:
    """Greedy packing of small disks around the unit disk, with its log.

    Disk 0 is the closed unit disk at the origin.  Each further disk is
    placed at the largest admissible radius ``r`` (at most ``delta``,
    never above the previous radius): its center distance is tuned so
    the lens with the unit disk is exactly ``eps`` times its own area,
    and its angle is drawn uniformly from the set of angles where it
    stays disjoint from all previously placed small disks.  Generation
    stops after ``n_max`` small disks or when even radius
    ``delta * 1e-3`` no longer fits anywhere.
    """
    if not isinstance(cfg, SurroundedBallConfig):
        raise TypeError("cfg must be a SurroundedBallConfig")
    rng = np.random.default_rng(cfg.seed % 2**63)
    state = _PackingState()
    floor = cfg.delta * 1e-3
    records: list[PlacementRecord] = []
    balls = [Ball((0.0, 0.0), 1.0)]
    prev_r = cfg.delta

    cos_cut = math.cos(_cut_half_angle(cfg.eps))

    def free_at(r: float) -> tuple[np.ndarray, np.ndarray, float, float]:
        rho = _center_distance_2d(r, cfg.eps, start=1.0 + r * cos_cut)
        arcs = state.blocked_arcs(rho, r)
        if arcs is None:
            return np.empty(0), np.empty(0), 0.0, rho
        gap_starts, gap_ends, total = _free_gaps(*arcs)
        return gap_starts, gap_ends, total, rho

    for index in range(1, int(cfg.n_max) + 1):
        hi = min(cfg.delta, prev_r)
        gap_starts, gap_ends, total, rho = free_at(hi)
        if total <= 0.0:
            _, _, lo_total, _ = free_at(floor)
            if lo_total <= 0.0:
                break
            lo = floor
            # largest feasible radius on the probed path, to ~1e-13 delta
            for _ in range(42):
                mid = 0.5 * (lo + hi)
                _, _, t, _ = free_at(mid)
                if t > 0.0:
                    lo = mid
                else:
                    hi = mid
            gap_starts, gap_ends, total, rho = free_at(lo)
            if total <= 0.0:  # pragma: no cover - lo was feasible above
                break
            r = lo
        else:
            r = hi
        widths = gap_ends - gap_starts
        offsets = np.concatenate(([0.0], np.cumsum(widths)))
        u = min(rng.uniform(0.0, total), np.nextafter(total, 0.0))
        slot = int(np.searchsorted(offsets, u, side="right")) - 1
        slot = min(max(slot, 0), widths.size - 1)
        angle = float(gap_starts[slot] + (u - offsets[slot])) % TWO_PI
        state.add(rho, angle, r)
        balls.append(Ball((rho * math.cos(angle), rho * math.sin(angle)), r))
        records.append(
            PlacementRecord(index, r, angle, rho, state.uncovered_fraction())
        )
        prev_r = r
    return BallCollection(2, balls), records


def build_surrounded_ball(cfg: SurroundedBallConfig) -> BallCollection:
    """The packing of ``build_surrounded_ball_detailed`` without its log."""
    return build_surrounded_ball_detailed(cfg)[0]


def restrict_to_halfspace(balls: BallCollection) -> BallCollection:
    """Keep the balls whose center has first coordinate >= 0.

    A ball centered at the origin always survives, so restricting the
    surrounded-ball packing keeps the central disk together with the
    small disks in the right half-plane.
    """
    kept = [b for b in balls if b.center[0] >= 0.0]
    return BallCollection(balls.dimension, kept)


# --------------------------------------------------------------------------
# reverse example: tiny boundary piece, no small disjoint subfamily
# --------------------------------------------------------------------------

_RING_COUNT = 64
_BRIDGE_RADIUS = 1.9
_HEX_PITCH = 1.7


def build_reverse_example(eps: float, box_half_width: float = 4.0) -> BallCollection:
    """Union of unit disks whose boundary near the origin is a petal
    curve of length about ``2 * pi * eps``.

    The disks come in three layers: a ring of 64 unit disks with
    centers at distance ``1 + eps`` from the origin (their inner arcs
    form the petal curve), a bridge ring at distance 1.9, and a
    hexagonal grid of pitch 1.7 filling the box of half-width
    ``box_half_width`` outside the central region.  The grid pitch is
    below ``sqrt(3)``, so the grid disks cover the box wherever their
    centers are allowed; the two rings patch the excluded middle.

    Every disk has radius 1, so any pairwise disjoint subfamily has
    total perimeter 0 or at least ``2 * pi``, while the union's
    boundary inside the disk of radius ``2 * eps`` has length about
    ``2 * pi * eps``.
    """
    eps = float(eps)
    w = float(box_half_width)
    if not (0.0 < eps < 0.25):
        raise ValueError("eps must lie in (0, 0.25)")
    if w < 2.0:
        raise ValueError("box_half_width must be at least 2")
    balls: list[Ball] = []
    for j in range(_RING_COUNT):
        angle = TWO_PI * j / _RING_COUNT
        balls.append(
            Ball(((1.0 + eps) * math.cos(angle), (1.0 + eps) * math.sin(angle)), 1.0)
        )
    bridge_count = 12
    for j in range(bridge_count):
        angle = TWO_PI * (j + 0.5) / bridge_count
        balls.append(
            Ball(
                (_BRIDGE_RADIUS * math.cos(angle), _BRIDGE_RADIUS * math.sin(angle)),
                1.0,
            )
        )
    # hexagonal grid over the box, keeping centers away from the petals
    row_step = _HEX_PITCH * math.sqrt(3.0) / 2.0
    j_span = int(math.ceil(w / row_step)) + 1
    i_span = int(math.ceil(w / _HEX_PITCH)) + 1
    exclusion = 1.0 + 2.0 * eps
    for j in range(-j_span, j_span + 1):
        y = j * row_step
        if abs(y) > w:
            continue
        shift = 0.5 * _HEX_PITCH if j % 2 else 0.0
        for i in range(-i_span, i_span + 1):
            x = i * _HEX_PITCH + shift
            if abs(x) > w:
                continue
            if math.hypot(x, y) < exclusion:
                continue
            balls.append(Ball((x, y), 1.0))
    return BallCollection(2, balls)
