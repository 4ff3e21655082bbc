"""Greedy covering selections for finite families of balls and intervals.

Every selector scans the input by nonincreasing size (exact maximum,
ties broken by input order), so later choices never exceed earlier
ones in radius.  Selections return the chosen indices, a grouping that
assigns every input ball to a chosen one, and where relevant a
partition of the chosen balls into pairwise disjoint families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DISJOINT_TOL,
    Ball,
    BallCollection,
    Interval,
    _lens_area_2d,
    ball_surface,
    lens_volume,
    unit_ball_volume,
)


@dataclass
class SelectionResult:
    """Outcome of one selection pass.

    selected: chosen input indices in selection order.
    groups: chosen index -> input indices assigned to it.
    families: optional partition of chosen indices into disjoint classes.
    params: constants the selector committed to.
    """

    selected: list[int]
    groups: dict[int, list[int]]
    families: list[list[int]] | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.selected)) != len(self.selected):
            raise ValueError("selected indices must be pairwise distinct")


def _pairwise_dists(centers: np.ndarray) -> np.ndarray:
    diff = centers[:, None, :] - centers[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def vitali_select(balls: BallCollection) -> SelectionResult:
    """Greedy disjoint subfamily: every input meets a chosen ball at
    least as large, so the five-times enlargements of the chosen balls
    cover the whole union."""
    n = len(balls)
    if n == 0:
        return SelectionResult([], {}, None, {"enlargement": 5.0})
    radii = balls.radii
    dists = _pairwise_dists(balls.centers)
    alive = np.ones(n, dtype=bool)
    selected: list[int] = []
    groups: dict[int, list[int]] = {}
    while alive.any():
        masked = np.where(alive, radii, -np.inf)
        s = int(np.argmax(masked))
        meets = alive & (dists[s] < radii[s] + radii - DISJOINT_TOL)
        meets[s] = True
        members = np.nonzero(meets)[0]
        groups[s] = [int(j) for j in members]
        selected.append(s)
        alive[members] = False
    return SelectionResult(
        selected,
        groups,
        None,
        {"enlargement": 5.0, "disjoint_tol": DISJOINT_TOL},
    )


def besicovitch_select(balls: BallCollection) -> SelectionResult:
    """Center-covering selection with bounded overlap.

    Repeatedly choose the largest ball whose center no chosen ball
    contains; every input center then lies in a chosen ball whose
    radius is at least 7/8 of the input radius (with exact maxima the
    chosen ball is at least as large, so the 8/7 slack is free).  The
    chosen balls are colored greedily by the least color unused among
    earlier chosen balls they meet, giving pairwise disjoint families.
    """
    n = len(balls)
    params = {
        "radius_slack": 8.0 / 7.0,
        "coloring": "least-unused-among-earlier",
        "disjoint_tol": DISJOINT_TOL,
    }
    if n == 0:
        return SelectionResult([], {}, [], params)
    radii = balls.radii
    dists = _pairwise_dists(balls.centers)
    uncovered = np.ones(n, dtype=bool)
    covered_by = np.full(n, -1, dtype=int)
    selected: list[int] = []
    while uncovered.any():
        masked = np.where(uncovered, radii, -np.inf)
        s = int(np.argmax(masked))
        selected.append(s)
        newly = uncovered & (dists[s] <= radii[s])
        covered_by[newly] = s
        uncovered &= ~newly
    colors: dict[int, int] = {}
    for pos, s in enumerate(selected):
        used = set()
        for t in selected[:pos]:
            if dists[s, t] < radii[s] + radii[t] - DISJOINT_TOL:
                used.add(colors[t])
        c = 1
        while c in used:
            c += 1
        colors[s] = c
    count = max(colors.values())
    families = [[s for s in selected if colors[s] == c] for c in range(1, count + 1)]
    groups: dict[int, list[int]] = {s: [] for s in selected}
    for j in range(n):
        groups[int(covered_by[j])].append(j)
    return SelectionResult(selected, groups, families, params)


def perimeter_besicovitch_select(balls: BallCollection) -> SelectionResult:
    """Disjoint family of maximal total perimeter among the Besicovitch
    color classes; the grouping of the full selection is retained."""
    base = besicovitch_select(balls)
    if not base.selected:
        return base
    surfaces = [
        sum(ball_surface(balls[i]) for i in fam) for fam in base.families
    ]
    winner = int(np.argmax(surfaces))
    params = dict(base.params)
    params.update(
        {
            "family_surfaces": [float(s) for s in surfaces],
            "winner_family": winner,
            "family_count": len(base.families),
        }
    )
    return SelectionResult(
        list(base.families[winner]), base.groups, base.families, params
    )


_EPS_MAX_CACHE: dict[int, float] = {}

# Center distance, in units of the common radius, at which two equal
# balls are forced apart far enough that their 6/7 shrinkings are
# disjoint.  Overlap fractions below the lens fraction at this distance
# guarantee that separation; equal radii are the tight case.
_SEPARATION_FACTOR = 12.0 / 7.0


def overlap_eps_max(dim: int) -> float:
    """Largest admissible overlap fraction for perimeter_vitali_select.

    Computed as the volume fraction two equal balls share when their
    center distance equals (6/7) times the sum of the radii; below this
    threshold the overlap bound forces the 6/7 shrinkings of all chosen
    balls to be pairwise disjoint.
    """
    dim = int(dim)
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if dim not in _EPS_MAX_CACHE:
        origin = (0.0,) * dim
        shifted = (_SEPARATION_FACTOR,) + (0.0,) * (dim - 1)
        lens = lens_volume(Ball(origin, 1.0), Ball(shifted, 1.0))
        _EPS_MAX_CACHE[dim] = lens / unit_ball_volume(dim)
    return _EPS_MAX_CACHE[dim]


def _lens_against(balls: BallCollection, idx: int) -> np.ndarray:
    """Lens volumes of every ball against ball idx (vectorized in 2d)."""
    d = balls.dimension
    centers, radii = balls.centers, balls.radii
    rho = np.linalg.norm(centers - centers[idx], axis=1)
    if d == 2:
        return _lens_area_2d(radii, radii[idx], rho)
    if d == 1:
        lo = np.maximum(centers[:, 0] - radii, centers[idx, 0] - radii[idx])
        hi = np.minimum(centers[:, 0] + radii, centers[idx, 0] + radii[idx])
        return np.maximum(0.0, hi - lo)
    out = np.empty(len(balls))
    for j in range(len(balls)):
        out[j] = lens_volume(balls[j], balls[idx])
    return out


def perimeter_vitali_select(balls: BallCollection, eps: float) -> SelectionResult:
    """Selection with pairwise overlap below eps times the smaller volume.

    A ball stays a candidate while its lens against every chosen ball is
    strictly below (7/8)^d * eps times its own volume; the largest
    candidate is chosen next.  The group of a chosen ball S collects the
    inputs whose lens against S reaches the threshold and whose radius
    is at most (8/7) of S's, so each group stays inside (23/7) S.
    """
    eps = float(eps)
    d = balls.dimension
    eps_cap = overlap_eps_max(d)
    if not 0.0 < eps <= eps_cap:
        raise ValueError(
            f"eps must lie in (0, {eps_cap:.6g}] for dimension {d} so that the "
            "6/7 shrinkings of chosen balls stay disjoint"
        )
    n = len(balls)
    threshold_factor = (7.0 / 8.0) ** d * eps
    params = {
        "eps": eps,
        "eps_max": eps_cap,
        "overlap_threshold_factor": threshold_factor,
        "radius_slack": 8.0 / 7.0,
        "enlargement": 23.0 / 7.0,
        "shrink_factor": 6.0 / 7.0,
        "eps_max_note": (
            "derived here from the equal-radius tight case at center "
            "distance (6/7)(r1+r2); not a quoted constant"
        ),
    }
    if n == 0:
        return SelectionResult([], {}, None, params)
    radii = balls.radii
    volumes = unit_ball_volume(d) * radii**d
    candidate = np.ones(n, dtype=bool)
    selected: list[int] = []
    groups: dict[int, list[int]] = {}
    while candidate.any():
        masked = np.where(candidate, radii, -np.inf)
        s = int(np.argmax(masked))
        selected.append(s)
        lens = _lens_against(balls, s)
        hit = lens >= threshold_factor * volumes
        members = np.nonzero(hit & (radii <= (8.0 / 7.0) * radii[s]))[0]
        groups[s] = [int(j) for j in members]
        candidate &= ~hit
    return SelectionResult(selected, groups, None, params)


def interval_select_1d(intervals) -> SelectionResult:
    """Greedy longest-first selection of intervals with disjoint closures.

    The group of a chosen interval S collects the candidates surviving
    at its selection step whose closures meet the closure of S; each
    group union is an interval (up to null sets) inside 5 S.
    """
    items = [iv if isinstance(iv, Interval) else Interval(*iv) for iv in intervals]
    n = len(items)
    params = {"enlargement": 5.0, "closure_rule": "touching closures meet"}
    if n == 0:
        return SelectionResult([], {}, None, params)
    lengths = np.array([iv.length for iv in items])
    los = np.array([iv.lo for iv in items])
    his = np.array([iv.hi for iv in items])
    alive = np.ones(n, dtype=bool)
    selected: list[int] = []
    groups: dict[int, list[int]] = {}
    while alive.any():
        masked = np.where(alive, lengths, -np.inf)
        s = int(np.argmax(masked))
        meets = alive & (his >= los[s]) & (los <= his[s])
        meets[s] = True
        members = np.nonzero(meets)[0]
        groups[s] = [int(j) for j in members]
        selected.append(s)
        alive[members] = False
    return SelectionResult(selected, groups, None, params)
