"""Command-line front end: generate, solve, evaluate, benchmark, convert.

Exit codes: 0 on success, 1 for usage errors (bad flags or invalid
parameter combinations), 2 for data errors (unreadable files, malformed
or non-finite game documents).
"""

import argparse
import sys
from pathlib import Path

from .bench import ExperimentConfig, evaluate_game, render, run_suite
from .game import epsilon
from .generate import GameKind, GenSpec, generate
from .nfg import NfgError, ingest_dir, parse_nfg, write_nfg
from .solvers import cfr_run, fp_run

_KINDS = {"uniform": GameKind.UNIFORM_RANDOM, "zs": GameKind.CONSTANT_SUM_2P}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read_game(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_nfg(text)
    except NfgError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _parse_trace(arg: str | None):
    if arg is None:
        return None
    try:
        return sorted({int(part) for part in arg.split(",") if part.strip()})
    except ValueError:
        raise UsageError(f"--trace expects comma-separated integers, got {arg!r}")


def _cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.players, args.actions, _KINDS[args.kind], args.seed)
        game = generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    Path(args.out).write_text(write_nfg(game), encoding="utf-8")
    return 0


def _cmd_solve(args) -> int:
    game = _read_game(args.game)
    checkpoints = _parse_trace(args.trace)
    run = cfr_run if args.algo == "cfr" else fp_run
    try:
        result = run(game, args.iters, checkpoints)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if checkpoints:
        print("iteration,epsilon")
        for t, eps in zip(checkpoints, result.epsilon_trace):
            print(f"{t},{eps!r}")
    print(f"epsilon: {epsilon(game, result.average_profile)!r}")
    return 0


def _cmd_eval(args) -> int:
    game = _read_game(args.game)
    eps_cfr, eps_fp, diff = evaluate_game(game, args.iters)
    print("eps_cfr,eps_fp,diff")
    print(f"{eps_cfr!r},{eps_fp!r},{diff!r}")
    return 0


def _cmd_bench(args) -> int:
    if args.games < 2:
        raise UsageError("--games must be >= 2 (confidence interval)")
    escalate = args.escalate_games if args.escalate_games is not None else args.games
    try:
        spec = GenSpec(args.players, args.actions, _KINDS[args.kind], args.seed)
        config = ExperimentConfig(
            spec=spec,
            iterations=args.iters,
            stage1_games=args.games,
            stage2_games=escalate,
            master_seed=args.seed,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.per_game_out is not None:
        with open(args.per_game_out, "w", encoding="utf-8", newline="") as fh:
            row = run_suite(config, threads=args.threads, per_game_csv=fh)
    else:
        row = run_suite(config, threads=args.threads)
    print(render([row], args.format), end="")
    return 0


def _cmd_convert(args) -> int:
    try:
        report = ingest_dir(args.in_dir, normalize=args.normalize)
    except (NotADirectoryError, OSError) as exc:
        raise DataError(str(exc)) from exc
    if args.out_dir is not None:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, game in report.accepted:
            (out / name).write_text(write_nfg(game), encoding="utf-8")
    text = report.to_text()
    if args.report is not None:
        Path(args.report).write_text(text, encoding="utf-8")
    print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nashbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a seeded random game as .nfg")
    gen.add_argument("--players", type=int, required=True)
    gen.add_argument("--actions", type=int, required=True)
    gen.add_argument("--kind", choices=sorted(_KINDS), default="uniform")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output .nfg path")
    gen.set_defaults(func=_cmd_gen)

    solve = sub.add_parser("solve", help="solve one game file and print epsilon")
    solve.add_argument("--game", required=True, help="input .nfg path")
    solve.add_argument("--algo", choices=("fp", "cfr"), required=True)
    solve.add_argument("--iters", type=int, default=10_000)
    solve.add_argument("--trace", help="comma-separated checkpoint iterations")
    solve.set_defaults(func=_cmd_solve)

    ev = sub.add_parser("eval", help="run both algorithms on one game file")
    ev.add_argument("--game", required=True, help="input .nfg path")
    ev.add_argument("--iters", type=int, default=10_000)
    ev.set_defaults(func=_cmd_eval)

    bench = sub.add_parser("bench", help="run one benchmark row over seeded games")
    bench.add_argument("--players", type=int, required=True)
    bench.add_argument("--actions", type=int, required=True)
    bench.add_argument("--kind", choices=sorted(_KINDS), default="uniform")
    bench.add_argument("--games", type=int, required=True, help="stage-1 batch size")
    bench.add_argument("--iters", type=int, default=None,
                       help="iterations per solver (default: standard budget)")
    bench.add_argument("--seed", type=int, default=0, help="master seed")
    bench.add_argument("--escalate-games", type=int, default=None,
                       help="stage-2 batch size on an inconclusive stage 1")
    bench.add_argument("--format", choices=("markdown", "csv"), default="markdown")
    bench.add_argument("--per-game-out", help="write per-game CSV here")
    bench.add_argument("--threads", type=int, default=None,
                       help="parallel workers (default: machine parallelism)")
    bench.set_defaults(func=_cmd_bench)

    conv = sub.add_parser("convert", help="ingest a directory of .nfg files")
    conv.add_argument("--in-dir", required=True)
    conv.add_argument("--normalize", action="store_true",
                      help="rescale accepted games onto [0,1]")
    conv.add_argument("--out-dir", help="write accepted games here")
    conv.add_argument("--report", help="also write the text report here")
    conv.set_defaults(func=_cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nashbench: error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"nashbench: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
