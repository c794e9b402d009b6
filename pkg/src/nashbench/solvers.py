"""Fictitious play and regret-matching CFR on strategic-form games.

Both solvers start every player at the exact uniform distribution (counted
as iteration 1's played strategy), update all players simultaneously from
the same snapshot, and return the unweighted arithmetic mean of the
strategies played over the T iterations. Given identical inputs the runs
are deterministic: there is no randomness inside either solver.
"""

from dataclasses import dataclass

import numpy as np

from .game import Game, Profile, _contract_opponents, epsilon

# Above this iteration count the accumulators switch to compensated
# (Kahan) summation; plain summation is accurate enough below it.
_KAHAN_THRESHOLD = 100_000


@dataclass(frozen=True)
class SolveResult:
    """Averaged profile after T iterations, plus an optional checkpoint trace.

    ``epsilon_trace[k]`` is the epsilon of the running average right after
    the k-th requested checkpoint iteration (checkpoints sorted ascending).
    """

    average_profile: Profile
    iterations: int
    epsilon_trace: tuple[float, ...] | None = None


@dataclass
class RegretState:
    """Cumulative per-player, per-action regrets after ``iteration`` CFR steps."""

    cumulative: tuple[np.ndarray, ...]
    iteration: int

    @classmethod
    def zeros(cls, game: Game) -> "RegretState":
        return cls(tuple(np.zeros(m) for m in game.strategy_counts), 0)

    def add(self, instant_regrets) -> None:
        for acc, r in zip(self.cumulative, instant_regrets):
            acc += r
        self.iteration += 1

    def matched_profile(self) -> Profile:
        return tuple(regret_match(c) for c in self.cumulative)


def regret_match(cumulative) -> np.ndarray:
    """Strategy proportional to positive cumulative regret.

    Entry k is ``max(cumulative[k], 0)`` over the sum of the positive
    parts; if no regret is positive the strategy is uniform.
    """
    arr = np.asarray(cumulative, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("cumulative regrets must be a non-empty vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError("cumulative regrets must be finite")
    return _match_positive(arr)


def _match_positive(arr: np.ndarray) -> np.ndarray:
    # regret_match minus input validation; accumulators in the solver loop
    # are finite by construction.
    pos = np.maximum(arr, 0.0)
    denom = pos.sum()
    if denom <= 0.0:
        return np.full(arr.size, 1.0 / arr.size)
    pos /= denom
    return pos


def _check_checkpoints(checkpoints, iterations) -> tuple[int, ...]:
    if checkpoints is None:
        return ()
    cps = sorted({int(c) for c in checkpoints})
    if cps and not (1 <= cps[0] and cps[-1] <= iterations):
        raise ValueError(f"checkpoints must lie in [1, {iterations}], got {cps}")
    return tuple(cps)


def _freeze(arrays) -> Profile:
    out = []
    for a in arrays:
        a = np.asarray(a)
        a.setflags(write=False)
        out.append(a)
    return tuple(out)


def fp_run(game: Game, iterations: int, checkpoints=None) -> SolveResult:
    """Fictitious play for ``iterations`` iterations.

    The uniform initialization is iteration 1's played strategy. For each
    t in 2..T every player best-responds (ties to the lowest action index)
    to the other players' averages after t-1 iterations, all from the same
    snapshot, and the averages then absorb the responses with weight 1/t.
    The result is exactly the mean of the T played strategies.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    cps = _check_checkpoints(checkpoints, iterations)
    n = game.num_players
    # Running sums of played strategies: uniform once, then pure responses,
    # so accumulation is exact and the final division is the only rounding.
    sums = [np.full(m, 1.0 / m) for m in game.strategy_counts]
    trace = []
    cp_set = set(cps)
    if 1 in cp_set:
        trace.append(epsilon(game, tuple(sums)))
    for t in range(2, iterations + 1):
        prev = [s / (t - 1) for s in sums]
        responses = [
            int(np.argmax(_contract_opponents(game, prev, i))) for i in range(n)
        ]
        for i, k in enumerate(responses):
            sums[i][k] += 1.0
        if t in cp_set:
            trace.append(epsilon(game, tuple(s / t for s in sums)))
    avg = _freeze([s / iterations for s in sums])
    return SolveResult(avg, iterations, tuple(trace) if cps else None)


def cfr_run(game: Game, iterations: int, checkpoints=None) -> SolveResult:
    """Regret-matching CFR for ``iterations`` iterations.

    Starting from the uniform profile, each iteration scores every pure
    strategy against the same current profile, accumulates the regrets
    (deviation value minus the profile's own expected value), and derives
    the next profile by regret matching. The returned profile is the mean
    of the T profiles actually played.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    cps = _check_checkpoints(checkpoints, iterations)
    n = game.num_players
    current = [np.full(m, 1.0 / m) for m in game.strategy_counts]
    strategy_sums = [np.zeros(m) for m in game.strategy_counts]
    state = RegretState.zeros(game)
    kahan = iterations > _KAHAN_THRESHOLD
    if kahan:
        sum_comp = [np.zeros(m) for m in game.strategy_counts]
        reg_comp = [np.zeros(m) for m in game.strategy_counts]
    trace = []
    cp_set = set(cps)
    for t in range(1, iterations + 1):
        devs = [_contract_opponents(game, current, i) for i in range(n)]
        regrets = [dev - float(dev @ current[i]) for i, dev in enumerate(devs)]
        if kahan:
            for i in range(n):
                _kahan_add(strategy_sums[i], sum_comp[i], current[i])
                _kahan_add(state.cumulative[i], reg_comp[i], regrets[i])
            state.iteration += 1
        else:
            for i in range(n):
                strategy_sums[i] += current[i]
            state.add(regrets)
        current = [_match_positive(c) for c in state.cumulative]
        if t in cp_set:
            trace.append(epsilon(game, tuple(s / t for s in strategy_sums)))
    avg = _freeze([s / iterations for s in strategy_sums])
    return SolveResult(avg, iterations, tuple(trace) if cps else None)


def _kahan_add(acc: np.ndarray, comp: np.ndarray, x: np.ndarray) -> None:
    y = x - comp
    total = acc + y
    comp[:] = (total - acc) - y
    acc[:] = total
