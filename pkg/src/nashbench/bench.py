"""Head-to-head benchmark harness: paired CFR/FP runs over game batches.

Each game in a batch is solved by both algorithms; the per-game epsilon
difference (CFR minus FP, so positive favors FP) feeds a normal-theory
confidence interval. An inconclusive first stage escalates once to a
larger batch that reuses the stage-1 games; a still-inconclusive final
stage is a tie. Per-game results are a pure function of (master seed,
game index, iteration count), so batches are reproducible at any degree
of parallelism.
"""

import csv
import enum
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .game import Game, epsilon
from .generate import GameKind, GenSpec, batch_game
from .solvers import cfr_run, fp_run


class Decision(enum.Enum):
    FP = "FP"
    CFR = "CFR"
    TIE = "Tie"
    ESCALATE = "escalate"


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark row's worth of configuration.

    ``spec`` is either a GenSpec (games are generated per index from
    ``master_seed``; the spec's own seed field is ignored) or an explicit
    sequence of games (evaluated as a single final stage). ``iterations``
    of None picks the standard default for the spec's size.
    """

    spec: GenSpec | tuple[Game, ...]
    iterations: int | None = None
    stage1_games: int = 10_000
    stage2_games: int = 100_000
    z_value: float = 1.96
    master_seed: int = 0
    label: str | None = None

    def __post_init__(self):
        if not isinstance(self.spec, GenSpec):
            object.__setattr__(self, "spec", tuple(self.spec))
            if not all(isinstance(g, Game) for g in self.spec):
                raise ValueError("explicit game list must contain Game values")
        if self.stage1_games < 2:
            raise ValueError("stage1_games must be >= 2 (confidence interval)")
        if self.stage2_games < self.stage1_games:
            raise ValueError("stage2_games must be >= stage1_games")
        if self.iterations is not None and self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.z_value <= 0:
            raise ValueError("z_value must be positive")


@dataclass(frozen=True)
class SummaryRow:
    """One rendered benchmark row (means, paired CI, verdict)."""

    label: str
    m: int | None
    games_used: int
    iterations: int
    mean_cfr_eps: float
    mean_fp_eps: float
    mean_diff: float
    ci_halfwidth: float
    winner: Decision


def default_iterations(spec) -> int:
    """Standard iteration budget: 10,000, but 1,000 for 5-player 10-action."""
    if isinstance(spec, GenSpec) and spec.num_players == 5 and spec.actions_per_player == 10:
        return 1_000
    return 10_000


def evaluate_game(game: Game, iterations: int) -> tuple[float, float, float]:
    """Run both solvers on one game; returns (eps_cfr, eps_fp, eps_cfr - eps_fp)."""
    eps_cfr = epsilon(game, cfr_run(game, iterations).average_profile)
    eps_fp = epsilon(game, fp_run(game, iterations).average_profile)
    return eps_cfr, eps_fp, eps_cfr - eps_fp


def aggregate(diffs, z: float = 1.96) -> tuple[float, float]:
    """Sample mean and z * s / sqrt(N) half-width (s with N-1 denominator)."""
    arr = np.asarray(diffs, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("confidence interval needs at least 2 samples")
    return float(arr.mean()), float(z * arr.std(ddof=1) / math.sqrt(arr.size))


def decide(mean: float, halfwidth: float, final_stage: bool) -> Decision:
    """Winner by sign when |mean| exceeds the CI half-width, else escalate/tie."""
    if halfwidth < 0:
        raise ValueError("halfwidth must be >= 0")
    if abs(mean) > halfwidth:
        return Decision.FP if mean > 0 else Decision.CFR
    return Decision.TIE if final_stage else Decision.ESCALATE


def _eval_generated(task) -> tuple[float, float, float]:
    master_seed, index, players, actions, kind, iterations = task
    spec = GenSpec(players, actions, kind)
    return evaluate_game(batch_game(spec, master_seed, index), iterations)


def _eval_explicit(task) -> tuple[float, float, float]:
    game, iterations = task
    return evaluate_game(game, iterations)


def _run_tasks(worker, tasks, threads: int) -> list[tuple[float, float, float]]:
    if threads <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    chunk = max(1, len(tasks) // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, tasks, chunksize=chunk))


def run_suite(config: ExperimentConfig, threads: int | None = None,
              per_game_csv=None, evaluate=None) -> SummaryRow:
    """Run one full benchmark row, including the escalation protocol.

    Stage 1 evaluates ``stage1_games`` games; if the verdict is
    inconclusive and ``stage2_games`` is larger, only the additional games
    are evaluated (stage-1 results are reused) and the final decision is
    made on the combined batch. Results are aggregated in game-index
    order, so the row is identical at any ``threads`` setting.

    ``evaluate`` substitutes the per-game evaluation (test seam); custom
    evaluators run serially.
    """
    threads = threads if threads is not None else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError("threads must be >= 1")
    iterations = config.iterations
    if iterations is None:
        iterations = default_iterations(config.spec)

    generated = isinstance(config.spec, GenSpec)
    if generated:
        spec = config.spec
        label = config.label
        if label is None:
            zs = spec.kind is GameKind.CONSTANT_SUM_2P
            label = f"{spec.num_players} (zs)" if zs else f"{spec.num_players}"
        m = spec.actions_per_player

        def evaluate_range(start, stop):
            if evaluate is not None:
                return [
                    evaluate(batch_game(spec, config.master_seed, i), iterations)
                    for i in range(start, stop)
                ]
            tasks = [
                (config.master_seed, i, spec.num_players, spec.actions_per_player,
                 spec.kind, iterations)
                for i in range(start, stop)
            ]
            return _run_tasks(_eval_generated, tasks, threads)

        results = evaluate_range(0, config.stage1_games)
        mean, halfwidth = aggregate([r[2] for r in results], config.z_value)
        final = config.stage2_games == config.stage1_games
        verdict = decide(mean, halfwidth, final_stage=final)
        if verdict is Decision.ESCALATE:
            results += evaluate_range(config.stage1_games, config.stage2_games)
            mean, halfwidth = aggregate([r[2] for r in results], config.z_value)
            verdict = decide(mean, halfwidth, final_stage=True)
    else:
        games = config.spec
        label = config.label if config.label is not None else "games"
        counts = {c for g in games for c in g.strategy_counts}
        m = counts.pop() if len(counts) == 1 else None
        if evaluate is not None:
            results = [evaluate(g, iterations) for g in games]
        else:
            results = _run_tasks(
                _eval_explicit, [(g, iterations) for g in games], threads
            )
        mean, halfwidth = aggregate([r[2] for r in results], config.z_value)
        verdict = decide(mean, halfwidth, final_stage=True)

    arr = np.asarray(results, dtype=np.float64)
    if per_game_csv is not None:
        per_game_csv.write("game_index,eps_cfr,eps_fp,diff\n")
        for i, (ec, ef, d) in enumerate(results):
            per_game_csv.write(f"{i},{ec!r},{ef!r},{d!r}\n")
    return SummaryRow(
        label=label,
        m=m,
        games_used=len(results),
        iterations=iterations,
        mean_cfr_eps=float(arr[:, 0].mean()),
        mean_fp_eps=float(arr[:, 1].mean()),
        mean_diff=mean,
        ci_halfwidth=halfwidth,
        winner=verdict,
    )


CSV_HEADER = "label,m,games,iterations,cfr_eps,fp_eps,diff,ci95,winner"


def _row_cells(row: SummaryRow) -> list[str]:
    return [
        row.label,
        "" if row.m is None else str(row.m),
        str(row.games_used),
        str(row.iterations),
        f"{row.mean_cfr_eps:.4g}",
        f"{row.mean_fp_eps:.4g}",
        f"{row.mean_diff:.3e}",
        f"{row.ci_halfwidth:.3e}",
        row.winner.value,
    ]


def render(rows, format: str = "markdown") -> str:
    """Render summary rows as CSV (fixed header) or a Markdown table."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to render")
    key = str(format).lower()
    if key == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for row in rows:
            writer.writerow(_row_cells(row))
        return out.getvalue()
    if key in ("markdown", "md"):
        lines = [
            "| label | m | games | iterations | cfr_eps | fp_eps | diff ± ci95 | winner |",
            "| --- | --- | --- | --- | --- | --- | --- | --- |",
        ]
        for row in rows:
            c = _row_cells(row)
            lines.append(
                f"| {c[0]} | {c[1]} | {c[2]} | {c[3]} | {c[4]} | {c[5]} "
                f"| {c[6]} ± {c[7]} | {c[8]} |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {format!r} (expected 'csv' or 'markdown')")
