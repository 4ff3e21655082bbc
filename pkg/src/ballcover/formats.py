"""Line-oriented text formats shared by the library and the CLI.

Ball collections: a header line ``d n`` followed by n lines of
``x_1 ... x_d r`` in full float precision.  Step functions: one line of
k+1 breakpoints, one line of k values.  Lines starting with ``#`` are
comments and are ignored on read.  All write helpers are atomic
(temp file plus rename) so partially written outputs never appear.
"""

from __future__ import annotations

import os
import tempfile

from .geometry import Ball, BallCollection, Interval, PerimeterEstimate
from .maximal1d import StepFunction
from .selection import SelectionResult


def _fmt(x: float) -> str:
    return repr(float(x))


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a temporary sibling file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _data_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def dump_balls(balls: BallCollection, header_comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (header_comments or [])]
    lines.append(f"{balls.dimension} {len(balls)}")
    for b in balls:
        lines.append(" ".join(_fmt(c) for c in b.center) + " " + _fmt(b.radius))
    return "\n".join(lines) + "\n"


def load_balls(text: str) -> BallCollection:
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty ball collection file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("header must be 'd n'")
    d, n = int(head[0]), int(head[1])
    if len(lines) - 1 != n:
        raise ValueError(f"expected {n} ball lines, found {len(lines) - 1}")
    balls = []
    for line in lines[1:]:
        parts = [float(p) for p in line.split()]
        if len(parts) != d + 1:
            raise ValueError(f"ball line needs {d + 1} numbers: {line!r}")
        balls.append(Ball(tuple(parts[:d]), parts[d]))
    return BallCollection(d, balls)


def save_balls(path: str, balls: BallCollection, header_comments=None) -> None:
    atomic_write_text(path, dump_balls(balls, header_comments))


def read_balls(path: str) -> BallCollection:
    with open(path) as fh:
        return load_balls(fh.read())


def balls_to_intervals(balls: BallCollection) -> list[Interval]:
    if balls.dimension != 1:
        raise ValueError("interval view requires dimension 1")
    return [Interval(b.center[0] - b.radius, b.center[0] + b.radius) for b in balls]


def intervals_to_balls(intervals) -> BallCollection:
    return BallCollection(
        1,
        [Ball((0.5 * (i.lo + i.hi),), 0.5 * (i.hi - i.lo)) for i in intervals],
    )


def dump_step_function(f: StepFunction, header_comments=None) -> str:
    lines = [f"# {c}" for c in (header_comments or [])]
    lines.append(" ".join(_fmt(x) for x in f.breakpoints))
    lines.append(" ".join(_fmt(v) for v in f.values))
    return "\n".join(lines) + "\n"


def load_step_function(text: str) -> StepFunction:
    lines = _data_lines(text)
    if len(lines) != 2:
        raise ValueError("step function file needs a breakpoint line and a value line")
    xs = [float(p) for p in lines[0].split()]
    vs = [float(p) for p in lines[1].split()]
    if len(xs) != len(vs) + 1:
        raise ValueError("need k+1 breakpoints for k values")
    return StepFunction(tuple(xs), tuple(vs))


def save_step_function(path: str, f: StepFunction, header_comments=None) -> None:
    atomic_write_text(path, dump_step_function(f, header_comments))


def read_step_function(path: str) -> StepFunction:
    with open(path) as fh:
        return load_step_function(fh.read())


def dump_estimate(label: str, est: PerimeterEstimate) -> str:
    return (
        f"{label} value={_fmt(est.value)} std_error={_fmt(est.std_error)} "
        f"method={est.method} sample_count={est.sample_count}\n"
    )


def dump_selection(result: SelectionResult, header_comments=None) -> str:
    lines = [f"# {c}" for c in (header_comments or [])]
    lines.append("selected " + " ".join(str(i) for i in result.selected))
    for key in sorted(result.groups):
        lines.append(
            f"group {key} " + " ".join(str(i) for i in result.groups[key])
        )
    if result.families is not None:
        for k, fam in enumerate(result.families):
            lines.append(f"family {k} " + " ".join(str(i) for i in fam))
    for key in sorted(result.params):
        lines.append(f"param {key}={result.params[key]}")
    return "\n".join(lines) + "\n"


def load_selection(text: str) -> SelectionResult:
    selected: list[int] = []
    groups: dict[int, list[int]] = {}
    families: list[list[int]] = []
    params: dict[str, str] = {}
    for line in _data_lines(text):
        parts = line.split()
        if parts[0] == "selected":
            selected = [int(p) for p in parts[1:]]
        elif parts[0] == "group":
            groups[int(parts[1])] = [int(p) for p in parts[2:]]
        elif parts[0] == "family":
            families.append([int(p) for p in parts[2:]])
        elif parts[0] == "param":
            key, _, val = line.split(None, 1)[1].partition("=")
            params[key] = val
        else:
            raise ValueError(f"unknown selection record {parts[0]!r}")
    return SelectionResult(
        selected=selected,
        groups=groups,
        families=families or None,
        params=params,
    )
