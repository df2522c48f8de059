"""Command-line front end: build codes, compute radii, run experiments."""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .covering import (
    BallSpec,
    covered_fraction,
    covering_radius,
    format_fraction,
)
from .ensembles import EnsembleParams, sample
from .errors import GuardError
from .experiments import (
    ExperimentReport,
    concat_radius_report,
    direct_sum_radius_check,
    gv_check,
    lemma1_trial,
    lemma2_conditional_check,
    quasicyclic_experiment,
    second_moment_check,
    standard_ball,
    theorem1_sweep,
    theorem1_trial,
)
from .gf2 import find_irreducible

DEFAULT_SEED = 0x5EEDC0DE
SEED_ENV = "COVERFORGE_SEED"
DEFAULT_C = 3.0

_EXPERIMENT_COMMANDS = {
    "lemma1",
    "moments",
    "lemma2",
    "theorem1",
    "directsum",
    "gv",
    "concat",
    "quasicyclic",
    "sweep",
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: command, sizes, seed, output and guard settings."""

    command: str
    n: int | None = None
    ns: tuple[int, ...] | None = None
    t: int | None = None
    c: float | None = None
    k: int | None = None
    radius: int | None = None
    ball_volume: int | None = None
    trials: int = 100
    master_seed: int = DEFAULT_SEED
    out: str | None = None
    fmt: str = "json"
    m_max: int | None = None
    s_max: int | None = None
    threads: int = 1
    plot: bool = False

    def to_dict(self) -> dict:
        out = asdict(self)
        if out["ns"] is not None:
            out["ns"] = list(out["ns"])
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> RunConfig:
        data = dict(obj)
        if data.get("ns") is not None:
            data["ns"] = tuple(data["ns"])
        return cls(**data)


def _int_auto(text: str) -> int:
    """Integer in decimal or prefixed (0x/0o/0b) form."""
    return int(text, 0)


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise SystemExit(
                f"coverforge: invalid {SEED_ENV} value {env!r}"
            ) from None
    return DEFAULT_SEED


def _build_parser() -> argparse.ArgumentParser:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--seed", type=_int_auto, default=None, metavar="SEED",
                      help="master seed (decimal or 0x hex); default "
                           f"${SEED_ENV} or {DEFAULT_SEED:#x}")
    base.add_argument("--out", default=None, metavar="PATH",
                      help="write the report here instead of stdout")
    base.add_argument("--format", choices=("json", "csv"), default="json",
                      dest="fmt", help="report format (default json)")
    base.add_argument("--max-bitmap-dim", type=int, default=None, metavar="M",
                      help="bitmap engine dimension guard override")
    base.add_argument("--max-syndrome-dim", type=int, default=None, metavar="S",
                      help="coset engine redundancy guard override")

    tc = argparse.ArgumentParser(add_help=False)
    group = tc.add_mutually_exclusive_group()
    group.add_argument("--t", type=int, default=None,
                       help="augmentation row count")
    group.add_argument("--c", type=float, default=None,
                       help=f"row-count constant, t = ceil(c log2 n) "
                            f"(default {DEFAULT_C})")

    exp = argparse.ArgumentParser(add_help=False)
    exp.add_argument("--trials", type=int, default=100,
                     help="trial count (default 100)")
    exp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                     help="trial pool size (default: machine parallelism)")
    exp.add_argument("--plot", action="store_true",
                     help="also render a figure next to --out")

    parser = argparse.ArgumentParser(
        prog="coverforge",
        description="Covering-code ensembles, exact radii, seeded experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[base],
                       help="canonical field spec for degree n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("build", parents=[base, tc],
                       help="sample an augmented-ensemble code")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("radius", parents=[base, tc],
                       help="exact covering radius of a sampled code")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("fraction", parents=[base, tc],
                       help="exact covered fraction at a ball radius")
    p.add_argument("--n", type=int, required=True)
    ball = p.add_mutually_exclusive_group()
    ball.add_argument("--radius", type=int, default=None,
                      help="ball radius (default: standard experiment ball)")
    ball.add_argument("--ball-volume", type=_int_auto, default=None,
                      help="resolve the radius from a target ball volume")

    p = sub.add_parser("lemma1", parents=[base, exp],
                       help="uncovered fraction of single balls")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("moments", parents=[base, exp],
                       help="intersection mean/variance checks")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("lemma2", parents=[base, exp],
                       help="translate-process conditional mean and tail")
    p.add_argument("--n", type=int, required=True,
                   help="ambient dimension m of the translate space")
    p.add_argument("--t", type=int, default=None,
                   help="translate steps per trace (enables the sampled path)")

    p = sub.add_parser("theorem1", parents=[base, tc, exp],
                       help="full-coverage trials for the augmented ensemble")
    p.add_argument("--n", type=int, required=True)

    sub.add_parser("directsum", parents=[base, exp],
                   help="covering radius additivity spot checks")

    p = sub.add_parser("gv", parents=[base, exp],
                       help="minimum-distance threshold experiment")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("concat", parents=[base, tc, exp],
                       help="aggregate radius of sampled members "
                            "(--trials = member count)")
    p.add_argument("--n", type=int, required=True,
                   help="inner dimension of each member")

    p = sub.add_parser("quasicyclic", parents=[base, exp],
                       help="circulant codes vs baselines")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("sweep", parents=[base, tc, exp],
                       help="coverage failure rate across several n")
    p.add_argument("--n", type=str, required=True,
                   help="comma-separated n values, e.g. 8,10,12")

    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    """Parse an argv list into a RunConfig (SystemExit code 2 on bad usage)."""
    args = _build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _default_seed()
    ns = None
    n = getattr(args, "n", None)
    if args.command == "sweep":
        try:
            ns = tuple(int(part) for part in n.split(","))
        except ValueError:
            raise SystemExit(f"coverforge sweep: bad --n list {n!r}") from None
        n = None
    return RunConfig(
        command=args.command,
        n=n,
        ns=ns,
        t=getattr(args, "t", None),
        c=getattr(args, "c", None),
        k=getattr(args, "k", None),
        radius=getattr(args, "radius", None),
        ball_volume=getattr(args, "ball_volume", None),
        trials=getattr(args, "trials", 100),
        master_seed=seed,
        out=args.out,
        fmt=args.fmt,
        m_max=args.max_bitmap_dim,
        s_max=args.max_syndrome_dim,
        threads=getattr(args, "threads", 1),
        plot=getattr(args, "plot", False),
    )


def _ensemble_params(config: RunConfig) -> EnsembleParams:
    if config.t is not None:
        return EnsembleParams(config.n, config.t, k=config.k)
    return EnsembleParams.from_c(config.n, config.c if config.c is not None else DEFAULT_C, k=config.k)


def _dispatch(config: RunConfig):
    n, seed = config.n, config.master_seed
    c = config.c if config.c is not None else DEFAULT_C
    if config.command == "field":
        return {"command": "field", **find_irreducible(n).to_json()}
    if config.command == "build":
        smp = sample(_ensemble_params(config), seed)
        code = smp.code()
        return {
            "command": "build",
            "sample": smp.to_json(),
            "blocklength": code.blocklength,
            "nominal_dimension": code.dimension,
            "rank": code.rank,
            "rate": code.rate,
        }
    if config.command == "radius":
        smp = sample(_ensemble_params(config), seed)
        code = smp.code()
        r = covering_radius(code, m_max=config.m_max, s_max=config.s_max)
        return {
            "command": "radius",
            "n": n,
            "t": smp.params.t,
            "seed": str(seed),
            "alpha_hex": smp.alpha.hex(),
            "rank": code.rank,
            "blocklength": code.blocklength,
            "radius": r,
            "relative_radius": r / code.blocklength,
        }
    if config.command == "fraction":
        smp = sample(_ensemble_params(config), seed)
        code = smp.code()
        if config.radius is not None:
            ball = BallSpec(2 * n, config.radius)
        elif config.ball_volume is not None:
            ball = BallSpec.from_volume(2 * n, config.ball_volume)
        else:
            ball, _, _ = standard_ball(n)
        frac = covered_fraction(
            code, ball, m_max=config.m_max, s_max=config.s_max
        )
        return {
            "command": "fraction",
            "n": n,
            "t": smp.params.t,
            "seed": str(seed),
            "alpha_hex": smp.alpha.hex(),
            "radius": ball.radius,
            "ball_volume": str(ball.volume),
            "covered": format_fraction(frac),
            "covered_float": float(frac),
            "uncovered": format_fraction(1 - frac),
        }
    if config.command == "lemma1":
        return lemma1_trial(n, config.trials, seed, config.threads)
    if config.command == "moments":
        return second_moment_check(n, config.trials, seed, config.threads)
    if config.command == "lemma2":
        return lemma2_conditional_check(
            n, config.trials, seed, t=config.t, threads=config.threads
        )
    if config.command == "theorem1":
        return theorem1_trial(
            n, c, config.trials, seed, config.threads, t=config.t
        )
    if config.command == "directsum":
        return direct_sum_radius_check(config.trials, seed, config.threads)
    if config.command == "gv":
        return gv_check(n, config.trials, seed, config.threads)
    if config.command == "concat":
        return concat_radius_report(
            n, c, config.trials, seed, config.threads, t=config.t
        )
    if config.command == "quasicyclic":
        return quasicyclic_experiment(n, config.trials, seed, config.threads)
    if config.command == "sweep":
        return theorem1_sweep(
            list(config.ns), c, config.trials, seed, config.threads, t=config.t
        )
    raise ValueError(f"unknown command {config.command!r}")


def _simple_csv(doc: dict) -> str:
    """key,value rows for scalar command reports, nested keys dotted."""
    lines = ["key,value"]

    def walk(prefix: str, obj) -> None:
        if isinstance(obj, dict):
            for k in obj:
                walk(f"{prefix}.{k}" if prefix else str(k), obj[k])
        elif isinstance(obj, list):
            lines.append(f"{prefix},{json.dumps(obj).replace(',', ';')}")
        else:
            value = "true" if obj is True else "false" if obj is False else obj
            lines.append(f"{prefix},{value}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def _render_output(config: RunConfig, payload) -> str:
    if isinstance(payload, ExperimentReport):
        if config.fmt == "csv":
            buf = io.StringIO()
            payload.write_csv(buf)
            return buf.getvalue()
        return payload.to_json() + "\n"
    if config.fmt == "csv":
        return _simple_csv(payload)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(config: RunConfig) -> int:
    """Execute a parsed config: 0 on success, 1 on guard rejection, 2 on usage."""
    if config.plot and config.out is None:
        print("coverforge: --plot requires --out", file=sys.stderr)
        return 2
    try:
        payload = _dispatch(config)
        text = _render_output(config, payload)
        if config.out:
            Path(config.out).write_text(text)
        else:
            sys.stdout.write(text)
        if config.plot:
            from .plots import render

            figure_path = str(Path(config.out).with_suffix(".png"))
            render(payload, figure_path)
            print(f"figure written to {figure_path}", file=sys.stderr)
    except GuardError as err:
        print(f"coverforge: guard rejected: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"coverforge: invalid parameters: {err}", file=sys.stderr)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if isinstance(code, str):
            print(code, file=sys.stderr)
            return 2
        return int(code or 0)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
