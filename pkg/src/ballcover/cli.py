"""Command-line entry point for reproducible ball-cover experiments.

Wires the generators, selection procedures, measures, and check corpora
into six subcommands::

    generate  build a ball collection (random / ring / surrounded / reverse)
    select    run a selection algorithm over a stored collection
    measure   boundary and volume measures of a stored collection
    check     run a check corpus and write a structured report
    rate      perimeter-growth sweep over a list of overlap fractions (CSV)
    maxfn     level-by-level maximal-function report for a step function

Configuration comes from flags and/or a flat ``key=value`` file
(``--config``); flags override file values and unknown keys are
rejected.  Outputs are written atomically, embed the resolved
configuration and the package version, and are byte-identical across
reruns with the same configuration and seed, including under ``--jobs``
variation.  Exit codes: 0 success, 1 validation error, 2 check failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import __version__
from .counterexample import (
    SurroundedBallConfig,
    build_fig1,
    build_reverse_example,
    build_surrounded_ball,
)
from .formats import (
    _fmt,
    atomic_write_text,
    balls_to_intervals,
    dump_balls,
    dump_estimate,
    dump_selection,
    read_balls,
    read_step_function,
)
from .geometry import (
    Ball,
    BallCollection,
    PerimeterEstimate,
    union_perimeter,
    union_volume_mc,
)
from .harness import (
    check_example14_rate,
    check_isoperimetric,
    format_report,
    format_summary,
    random_collection,
    run_corpus,
)
from .maximal1d import level_report, maximal_variation_check
from .selection import (
    besicovitch_select,
    interval_select_1d,
    perimeter_besicovitch_select,
    perimeter_vitali_select,
    vitali_select,
)

COMMANDS = ("generate", "select", "measure", "check", "rate", "maxfn")
ALGORITHMS = (
    "vitali",
    "besicovitch",
    "perimeter-besicovitch",
    "perimeter-vitali",
    "interval-1d",
)
GENERATOR_KINDS = ("random", "fig1", "surrounded", "reverse")
CHECKS = ("thm12", "thm13", "prop16", "isoperimetric")


class ValidationError(ValueError):
    """A malformed configuration (exit status 1)."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation: command plus every tunable field."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    seed: int = 0
    dimension: int = 2
    eps: float | None = None
    eps_list: tuple[float, ...] | None = None
    delta: float | None = None
    lam: float | None = None
    level: float | None = None
    levels: int = 200
    samples: int = 20000
    algorithm: str | None = None
    jobs: int = 1
    kind: str | None = None
    count: int | None = None
    tiny_radius: float | None = None
    n_max: int = 8000
    box_half_width: float = 4.0
    check: str | None = None
    grid: int = 200
    d_list: tuple[int, ...] = (2, 3, 4)


def _parse_float_list(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected a comma-separated list of numbers")
    return tuple(float(p) for p in parts)


def _parse_int_list(text: str) -> tuple[int, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("expected a comma-separated list of integers")
    return tuple(int(p) for p in parts)


# Config-file key -> (RunConfig field, parser).  Keys are the long flag
# names with dashes replaced by underscores.
_KEY_SPECS: dict[str, tuple[str, object]] = {
    "input": ("input_path", str),
    "output": ("output_path", str),
    "seed": ("seed", int),
    "dim": ("dimension", int),
    "eps": ("eps", float),
    "eps_list": ("eps_list", _parse_float_list),
    "delta": ("delta", float),
    "lambda": ("lam", float),
    "level": ("level", float),
    "levels": ("levels", int),
    "samples": ("samples", int),
    "algorithm": ("algorithm", str),
    "jobs": ("jobs", int),
    "kind": ("kind", str),
    "count": ("count", int),
    "tiny_radius": ("tiny_radius", float),
    "n_max": ("n_max", int),
    "box_half_width": ("box_half_width", float),
    "check": ("check", str),
    "grid": ("grid", int),
    "d_list": ("d_list", _parse_int_list),
}

_CHOICE_KEYS = {"algorithm": ALGORITHMS, "kind": GENERATOR_KINDS, "check": CHECKS}


def _read_config_file(path: str) -> dict[str, object]:
    """Parse a flat key=value file into RunConfig field values."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read config file: {exc}") from exc
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise ValidationError(
                f"{path}:{lineno}: expected key=value, got {raw!r}"
            )
        if key not in _KEY_SPECS:
            raise ValidationError(f"{path}:{lineno}: unknown config key {key!r}")
        field_name, parse = _KEY_SPECS[key]
        try:
            parsed = parse(value)
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad value for {key}: {exc}")
        if key in _CHOICE_KEYS and parsed not in _CHOICE_KEYS[key]:
            raise ValidationError(
                f"{path}:{lineno}: {key} must be one of {', '.join(_CHOICE_KEYS[key])}"
            )
        values[field_name] = parsed
    return values


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit status 2 on bad usage; remap to 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    add("--config", metavar="FILE", help="flat key=value config file")
    add("--input", dest="input_path", metavar="FILE")
    add("--output", dest="output_path", metavar="FILE")
    add("--seed", type=int)
    add("--dim", dest="dimension", type=int)
    add("--eps", type=float)
    add("--eps-list", dest="eps_list", type=_parse_float_list, metavar="X,Y,...")
    add("--delta", type=float)
    add("--lambda", dest="lam", type=float)
    add("--level", type=float)
    add("--levels", type=int)
    add("--samples", type=int)
    add("--algorithm", choices=ALGORITHMS)
    add("--jobs", type=int)
    add("--kind", choices=GENERATOR_KINDS)
    add("--count", type=int)
    add("--tiny-radius", dest="tiny_radius", type=float)
    add("--n-max", dest="n_max", type=int)
    add("--box-half-width", dest="box_half_width", type=float)
    add("--check", choices=CHECKS)
    add("--grid", type=int)
    add("--d-list", dest="d_list", type=_parse_int_list, metavar="D,D,...")
    for action in common._actions:
        action.default = argparse.SUPPRESS

    parser = _Parser(prog="ballcover", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--version", action="version", version=f"ballcover {__version__}"
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, desc in (
        ("generate", "build a ball collection and write it to a file"),
        ("select", "run a selection algorithm over a stored collection"),
        ("measure", "boundary and volume measures of a stored collection"),
        ("check", "run a check corpus and write a structured report"),
        ("rate", "perimeter-growth sweep over overlap fractions (CSV)"),
        ("maxfn", "level-by-level maximal-function report"),
    ):
        sub.add_parser(name, parents=[common], help=desc, description=desc)
    return parser


def resolve_config(argv) -> RunConfig:
    """Parse argv into a RunConfig: file values first, flags override."""
    namespace = _build_parser().parse_args(argv)
    provided = vars(namespace)
    command = provided.pop("command")
    values: dict[str, object] = {}
    config_path = provided.pop("config", None)
    if config_path is not None:
        values.update(_read_config_file(config_path))
    values.update(provided)
    return RunConfig(command=command, **values)


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            flag = {"input_path": "input", "output_path": "output", "lam": "lambda"}.get(
                name, name.replace("_", "-")
            )
            raise ValidationError(f"{cfg.command} requires --{flag}")


def validate(cfg: RunConfig) -> None:
    """Per-command required-field checks before any work happens."""
    if cfg.command not in COMMANDS:
        raise ValidationError(f"unknown command {cfg.command!r}")
    if cfg.command == "generate":
        _require(cfg, "kind", "output_path")
        if cfg.kind == "fig1":
            _require(cfg, "count", "tiny_radius")
        elif cfg.kind == "surrounded":
            _require(cfg, "eps", "delta")
        elif cfg.kind == "reverse":
            _require(cfg, "eps")
    elif cfg.command == "select":
        _require(cfg, "input_path", "output_path", "algorithm")
        if cfg.algorithm == "perimeter-vitali":
            _require(cfg, "eps")
    elif cfg.command == "measure":
        _require(cfg, "input_path", "output_path")
    elif cfg.command == "check":
        _require(cfg, "check", "output_path")
    elif cfg.command == "rate":
        _require(cfg, "eps_list", "delta", "output_path")
    elif cfg.command == "maxfn":
        _require(cfg, "input_path", "output_path")


def _config_header(cfg: RunConfig) -> list[str]:
    """Provenance lines for output files.

    Every resolved field except ``jobs`` is embedded; worker count must
    not influence output bytes.
    """
    pairs = []
    for f in fields(RunConfig):
        if f.name == "jobs":
            continue
        value = getattr(cfg, f.name)
        if value is None:
            continue
        if isinstance(value, tuple):
            text = ",".join(
                _fmt(v) if isinstance(v, float) else str(v) for v in value
            )
        elif isinstance(value, float):
            text = _fmt(value)
        else:
            text = str(value)
        pairs.append(f"{f.name}={text}")
    return [f"ballcover {__version__}", "config " + " ".join(pairs)]


def _fixed_count_random(dimension: int, count: int, seed: int) -> BallCollection:
    """Random collection with a caller-chosen ball count (the corpus
    generator draws its own count)."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-3.0, 3.0, size=(count, dimension))
    radii = np.exp(rng.uniform(np.log(0.05), np.log(1.0), size=count))
    return BallCollection(
        dimension, [Ball(tuple(c), float(r)) for c, r in zip(centers, radii)]
    )


def _cmd_generate(cfg: RunConfig) -> int:
    if cfg.kind == "random":
        if cfg.count is None:
            balls = random_collection(cfg.dimension, cfg.seed)
        else:
            balls = _fixed_count_random(cfg.dimension, cfg.count, cfg.seed)
    elif cfg.kind == "fig1":
        balls = build_fig1(cfg.count, cfg.tiny_radius)
    elif cfg.kind == "surrounded":
        balls = build_surrounded_ball(
            SurroundedBallConfig(
                eps=cfg.eps, delta=cfg.delta, n_max=cfg.n_max, seed=cfg.seed
            )
        )
    else:
        balls = build_reverse_example(cfg.eps, cfg.box_half_width)
    atomic_write_text(cfg.output_path, dump_balls(balls, _config_header(cfg)))
    print(
        f"generate: kind={cfg.kind} wrote {len(balls)} balls "
        f"(dim {balls.dimension}) to {cfg.output_path}"
    )
    return 0


def _cmd_select(cfg: RunConfig) -> int:
    balls = read_balls(cfg.input_path)
    if cfg.algorithm == "vitali":
        result = vitali_select(balls)
    elif cfg.algorithm == "besicovitch":
        result = besicovitch_select(balls)
    elif cfg.algorithm == "perimeter-besicovitch":
        result = perimeter_besicovitch_select(balls)
    elif cfg.algorithm == "perimeter-vitali":
        result = perimeter_vitali_select(balls, cfg.eps)
    else:
        result = interval_select_1d(balls_to_intervals(balls))
    atomic_write_text(cfg.output_path, dump_selection(result, _config_header(cfg)))
    print(
        f"select: algorithm={cfg.algorithm} kept {len(result.selected)}/"
        f"{len(balls)} balls to {cfg.output_path}"
    )
    return 0


def _cmd_measure(cfg: RunConfig) -> int:
    balls = read_balls(cfg.input_path)
    perimeter = union_perimeter(
        balls, samples_per_ball=cfg.samples, seed=cfg.seed
    )
    if balls.dimension <= 1:
        volume = union_volume_mc(balls, samples=max(1000, cfg.samples), seed=cfg.seed)
    else:
        volume = union_volume_mc(
            balls, samples=max(1000, cfg.samples * len(balls)), seed=cfg.seed
        )
    text = "".join(
        [
            "".join(f"# {line}\n" for line in _config_header(cfg)),
            dump_estimate("perimeter", perimeter),
            dump_estimate("volume", volume),
        ]
    )
    atomic_write_text(cfg.output_path, text)
    print(
        f"measure: perimeter={_fmt(perimeter.value)} ({perimeter.method}) "
        f"volume={_fmt(volume.value)} ({volume.method}) to {cfg.output_path}"
    )
    return 0


def _cmd_check(cfg: RunConfig) -> int:
    if cfg.check == "isoperimetric":
        reports = [check_isoperimetric(cfg.d_list, cfg.grid)]
    else:
        options: dict[str, object] = {}
        if cfg.check == "thm13" and cfg.eps_list is not None:
            options["eps_values"] = cfg.eps_list
        if cfg.check == "prop16" and cfg.lam is not None:
            options["lam"] = cfg.lam
        count = 50 if cfg.count is None else cfg.count
        reports = run_corpus(
            cfg.check,
            count,
            cfg.dimension,
            master_seed=cfg.seed,
            jobs=cfg.jobs,
            **options,
        )
    header = "".join(f"# {line}\n" for line in _config_header(cfg))
    body = [format_report(r) for r in reports]
    body.append(format_summary(reports))
    atomic_write_text(cfg.output_path, header + "\n".join(body) + "\n")
    passed = sum(r.passed for r in reports)
    print(
        f"check: {cfg.check} passed {passed}/{len(reports)} to {cfg.output_path}"
    )
    return 0 if passed == len(reports) else 2


def _cmd_rate(cfg: RunConfig) -> int:
    fit = check_example14_rate(
        cfg.eps_list, delta=cfg.delta, n_max=cfg.n_max, seed=cfg.seed
    )
    lines = [f"# {line}\n" for line in _config_header(cfg)]
    lines.append(
        f"# slope={_fmt(fit.slope)} intercept={_fmt(fit.intercept)} "
        f"r_squared={_fmt(fit.r_squared)}\n"
    )
    lines.append("eps,ratio\n")
    lines.extend(f"{_fmt(x)},{_fmt(y)}\n" for x, y in zip(fit.xs, fit.ys))
    atomic_write_text(cfg.output_path, "".join(lines))
    print(
        f"rate: slope={_fmt(fit.slope)} r_squared={_fmt(fit.r_squared)} "
        f"over {len(fit.xs)} points to {cfg.output_path}"
    )
    return 0


def _cmd_maxfn(cfg: RunConfig) -> int:
    f = read_step_function(cfg.input_path)
    lines = [f"# {line}\n" for line in _config_header(cfg)]
    if cfg.level is not None:
        report = level_report(f, cfg.level)
        lines.append(
            f"level {_fmt(report.level)} "
            f"count_maximal={report.maximal_boundary_count} "
            f"count_function={report.superlevel_boundary_count} "
            f"intervals={len(report.maximal_intervals)}\n"
        )
        atomic_write_text(cfg.output_path, "".join(lines))
        ok = report.maximal_boundary_count <= report.superlevel_boundary_count
        print(
            f"maxfn: level={_fmt(report.level)} counts "
            f"{report.maximal_boundary_count}<={report.superlevel_boundary_count}"
            f" passed={ok} to {cfg.output_path}"
        )
        return 0 if ok else 2
    report = maximal_variation_check(f, cfg.levels)
    lines.append(
        f"var_function {_fmt(report.var_f)}\n"
        f"var_maximal_lower_bound {_fmt(report.var_mf_lower_bound)}\n"
    )
    for rec in report.levels:
        lines.append(
            f"level {_fmt(rec.level)} count_maximal={rec.count_maximal} "
            f"count_function={rec.count_function} skipped={rec.skipped} "
            f"passed={rec.passed}\n"
        )
    lines.append(f"passed {report.passed}\n")
    atomic_write_text(cfg.output_path, "".join(lines))
    print(
        f"maxfn: var_bound={_fmt(report.var_mf_lower_bound)} "
        f"var_f={_fmt(report.var_f)} levels={len(report.levels)} "
        f"passed={report.passed} to {cfg.output_path}"
    )
    return 0 if report.passed else 2


_COMMANDS = {
    "generate": _cmd_generate,
    "select": _cmd_select,
    "measure": _cmd_measure,
    "check": _cmd_check,
    "rate": _cmd_rate,
    "maxfn": _cmd_maxfn,
}


def main(argv=None) -> int:
    args = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        cfg = resolve_config(args)
        validate(cfg)
        return _COMMANDS[cfg.command](cfg)
    except ValidationError as exc:
        print(f"ballcover: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"ballcover: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
