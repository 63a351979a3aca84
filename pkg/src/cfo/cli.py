"""Command-line front end: ``cfo list``, ``cfo run`` and ``cfo compare``.

Options may also come from a flat ``key = value`` file given with
``--config``; keys are the long flag names without the leading dashes
(``functions = f14,f18``, ``scheme = none,every``). Flags win over the file.

Exit status: 0 on success, 1 on usage errors, 2 on runtime failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import benchmarks
from .errors import CFOError, ConfigurationError, InvalidInputError
from .harness import SweepConfig, compare_policies, sweep
from .kernel import KernelConfig
from .reposition import RepositionPolicy, parse_policy

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2

_KERNEL_KEYS = {f.name: f.type for f in fields(KernelConfig) if f.name not in ("max_steps", "check_containment")}
_POLICY_KEYS = {"frep_init", "frep_delta", "frep_min"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    functions: list[str]
    schemes: list[str]
    repos_interval: int = 2
    seed: int = 0
    out_dir: Path = Path(".")
    max_steps: int | None = None
    num_gammas: int = 11
    eta_zero_compat: bool = False
    emit_trajectories: bool = False
    jobs: int = 1
    overrides: dict[str, float] = field(default_factory=dict)

    def kernel(self) -> KernelConfig:
        values = {k: v for k, v in self.overrides.items() if k in _KERNEL_KEYS}
        if self.max_steps is not None:
            values["max_steps"] = self.max_steps
        return KernelConfig(**values)

    def policies(self) -> list[RepositionPolicy]:
        extra = {k: v for k, v in self.overrides.items() if k in _POLICY_KEYS}
        extra["eta_zero_compat"] = self.eta_zero_compat
        return [parse_policy(tok, self.repos_interval, **extra) for tok in self.schemes]


# --- formatting ----------------------------------------------------------------


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def _short_number(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def scheme_slug(token: str) -> str:
    return token.replace(":", "-")


SWEEP_HEADER = ["function", "scheme", "probes_per_dim", "gamma", "best_fitness", "best_step", "last_step", "evals"]
SUMMARY_HEADER = ["function", "scheme", "best_fitness", "best_probes_per_dim", "best_gamma", "total_evals"]
COMPARE_HEADER = ["function", "scheme", "best_fitness", "total_evals", "speed_change_vs_base"]
FIG_HEADER = ["function", "scheme", "speed_change"]


def sweep_rows(report):
    fn = report.function.lower()
    return [
        [fn, report.scheme, r.probes_per_dim, r.gamma, r.best_fitness, r.best_step, r.last_step, r.evals]
        for r in report.runs
    ]


def summary_row(report):
    return [
        report.function.lower(),
        report.scheme,
        report.best_fitness,
        report.best_probes_per_dim,
        report.best_gamma,
        report.total_evals,
    ]


def trajectory_rows(history):
    steps, n_p, _ = history.positions.shape
    for j in range(steps):
        for p in range(n_p):
            yield [j, p, float(history.fitness[j, p]), *map(float, history.positions[j, p])]


# --- argument handling -----------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="cfo", description="Deterministic Central Force Optimization harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", help="list benchmark functions")
    for name, help_text in (("run", "sweep functions under one or more schemes"),
                            ("compare", "compare schemes against the first (base) scheme")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, help="flat key = value option file")
        p.add_argument("--functions", help="comma-separated ids (f1..f23) or 'all'")
        p.add_argument("--scheme", action="append", help="none, every, mixed or mixed:<k>; repeatable")
        p.add_argument("--repos-interval", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", type=Path)
        p.add_argument("--max-steps", type=int)
        p.add_argument("--num-gammas", type=int)
        p.add_argument("--eta-zero-compat", action="store_true", default=None)
        p.add_argument("--emit-trajectories", action="store_true", default=None)
        p.add_argument("--jobs", type=int, help="worker processes per sweep")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="kernel/policy override, e.g. shrink_interval=10")
    return parser


def read_config_file(path: Path) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":" if ":" in line else None
        if sep is None:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split(sep, 1))
        values[key.replace("_", "-")] = value
    return values


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def _parse_functions(text: str) -> list[str]:
    if text.strip().lower() == "all":
        return [s.id for s in benchmarks.list_functions()]
    ids = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        try:
            ids.append(benchmarks.get_spec(token).id)
        except InvalidInputError:
            raise UsageError(f"unknown function {token!r}") from None
    if not ids:
        raise UsageError("no functions given")
    return ids


def _parse_overrides(items) -> dict[str, float]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or (key not in _KERNEL_KEYS and key not in _POLICY_KEYS):
            raise UsageError(f"bad override {item!r}")
        try:
            out[key] = int(value) if _KERNEL_KEYS.get(key) == "int" else float(value)
        except ValueError:
            raise UsageError(f"bad override value in {item!r}") from None
    return out


def parse_args(argv) -> CliConfig:
    args = _build_parser().parse_args(argv)
    if args.command == "list":
        return CliConfig("list", [], [])
    file_values = read_config_file(args.config) if args.config else {}
    unknown = set(file_values) - {
        "functions", "scheme", "repos-interval", "seed", "out", "max-steps", "num-gammas",
        "eta-zero-compat", "emit-trajectories", "jobs", "set",
    }
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(flag, attr, convert, default):
        value = getattr(args, attr)
        if value is not None:
            return value
        if flag in file_values:
            try:
                return convert(file_values[flag])
            except ValueError:
                raise UsageError(f"bad value for {flag}: {file_values[flag]!r}") from None
        return default

    functions = pick("functions", "functions", str, None)
    if functions is None:
        raise UsageError("--functions is required")
    schemes = args.scheme
    if schemes is None:
        schemes = [file_values["scheme"]] if "scheme" in file_values else None
    if schemes is None:
        schemes = ["none"] if args.command == "run" else ["none", "every", "mixed:2"]
    schemes = [tok.strip() for item in schemes for tok in item.split(",") if tok.strip()]
    if args.command == "compare" and len(schemes) < 2:
        raise UsageError("compare needs at least two schemes")
    overrides = _parse_overrides(
        [s for s in file_values.get("set", "").split(",") if s.strip()] + list(args.set)
    )
    config = CliConfig(
        command=args.command,
        functions=_parse_functions(functions),
        schemes=schemes,
        repos_interval=pick("repos-interval", "repos_interval", int, 2),
        seed=pick("seed", "seed", int, 0),
        out_dir=pick("out", "out", Path, Path(".")),
        max_steps=pick("max-steps", "max_steps", int, None),
        num_gammas=pick("num-gammas", "num_gammas", int, 11),
        eta_zero_compat=pick("eta-zero-compat", "eta_zero_compat", _parse_bool, False),
        emit_trajectories=pick("emit-trajectories", "emit_trajectories", _parse_bool, False),
        jobs=pick("jobs", "jobs", int, 1),
        overrides=overrides,
    )
    try:
        config.policies()
        config.kernel()
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from None
    if config.num_gammas < 2:
        raise UsageError("--num-gammas must be >= 2")
    if config.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return config


# --- commands --------------------------------------------------------------------


class _Outputs:
    """Writes files under ``out_dir`` and removes them all if the command fails."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.written: list[Path] = []

    def __enter__(self):
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self

    def write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        self.written.append(path)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        return path

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            for path in self.written:
                path.unlink(missing_ok=True)
        return False


def cmd_list(stream=None) -> str:
    lines = [f"{'id':<4} {'N_d':>3}  {'bounds':<28} {'F_max':>12}  name"]
    for spec in benchmarks.list_functions():
        lo, hi = spec.lower, spec.upper
        if len(set(lo)) == 1 and len(set(hi)) == 1:
            bounds = f"[{_short_number(lo[0])}, {_short_number(hi[0])}]^{spec.dims}"
        else:
            bounds = " x ".join(f"[{_short_number(a)}, {_short_number(b)}]" for a, b in zip(lo, hi))
        lines.append(f"{spec.token:<4} {spec.dims:>3}  {bounds:<28} {_short_number(spec.known_max):>12}  {spec.name}")
    text = "\n".join(lines) + "\n"
    (stream or sys.stdout).write(text)
    return text


def _sweep_config(config: CliConfig, fid: str, policy: RepositionPolicy) -> SweepConfig:
    return SweepConfig(fid, policy, config.kernel(), config.num_gammas, config.seed)


def cmd_run(config: CliConfig) -> list[Path]:
    with _Outputs(config.out_dir) as out:
        summary = []
        for fid in config.functions:
            for policy in config.policies():
                report = sweep(_sweep_config(config, fid, policy), jobs=config.jobs,
                               keep_best_history=config.emit_trajectories)
                slug = f"{fid.lower()}_{scheme_slug(report.scheme)}"
                out.write(f"sweep_{slug}.csv", render_csv(SWEEP_HEADER, sweep_rows(report)))
                if config.emit_trajectories:
                    dims = report.best_history.positions.shape[2]
                    header = ["step", "probe", "fitness", *(f"x{i + 1}" for i in range(dims))]
                    out.write(f"trajectory_{slug}.csv", render_csv(header, trajectory_rows(report.best_history)))
                summary.append(summary_row(report))
        out.write("summary.csv", render_csv(SUMMARY_HEADER, summary))
        return out.written


def cmd_compare(config: CliConfig) -> list[Path]:
    with _Outputs(config.out_dir) as out:
        rows = compare_policies(
            config.functions,
            config.policies(),
            0,
            kernel=config.kernel(),
            num_gammas=config.num_gammas,
            noise_seed=config.seed,
            jobs=config.jobs,
        )
        out.write("compare.csv", render_csv(
            COMPARE_HEADER,
            [[r.function.lower(), r.scheme, r.best_fitness, r.total_evals, r.speed_change_vs_base] for r in rows],
        ))
        out.write("fig_data.csv", render_csv(
            FIG_HEADER,
            [[r.function.lower(), r.scheme, r.speed_change_vs_base] for r in rows if not r.is_base],
        ))
        return out.written


def main(argv=None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"cfo: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cfo: cannot read config {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if config.command == "list":
            cmd_list()
        elif config.command == "run":
            cmd_run(config)
        else:
            cmd_compare(config)
    except OSError as exc:
        print(f"cfo: I/O error on {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_RUNTIME
    except CFOError as exc:
        print(f"cfo: run failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
