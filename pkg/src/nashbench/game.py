"""Strategic-form games stored as per-player payoff tensors.

A game holds one flat float64 payoff array per player, indexed
lexicographically over joint pure-strategy profiles with player 1's
strategy index varying fastest (the same ordering `.nfg` files use).
All evaluation operations (expected utility, deviation values, best
response, epsilon) are pure functions over this representation.
"""

import math
from dataclasses import dataclass

import numpy as np

# Tolerance for simplex membership of a mixed strategy.
PROB_TOL = 1e-9

# A mixed strategy is a 1-D float64 probability vector; a profile is one
# such vector per player.
MixedStrategy = np.ndarray
Profile = tuple[np.ndarray, ...]


@dataclass(frozen=True)
class Game:
    """An n-player strategic-form game.

    ``payoffs[i][k]`` is player i's utility at the joint pure profile with
    flat index ``k = s_0 + m_0*(s_1 + m_1*(s_2 + ...))``, i.e. player 1's
    strategy varies fastest. Payoff arrays are copied, cast to float64,
    checked finite, and frozen read-only.
    """

    strategy_counts: tuple[int, ...]
    payoffs: tuple[np.ndarray, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.strategy_counts)
        if len(counts) < 1:
            raise ValueError("a game needs at least one player")
        if any(c < 1 for c in counts):
            raise ValueError(f"strategy counts must be >= 1, got {counts}")
        size = math.prod(counts)
        if len(self.payoffs) != len(counts):
            raise ValueError(
                f"expected {len(counts)} payoff arrays, got {len(self.payoffs)}"
            )
        arrays = []
        for i, raw in enumerate(self.payoffs):
            arr = np.array(raw, dtype=np.float64)
            if arr.ndim != 1:
                raise ValueError(f"player {i}: payoffs must be a flat array")
            if arr.size != size:
                raise ValueError(
                    f"player {i}: expected {size} payoffs, got {arr.size}"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"player {i}: non-finite payoff")
            arr.setflags(write=False)
            arrays.append(arr)
        object.__setattr__(self, "strategy_counts", counts)
        object.__setattr__(self, "payoffs", tuple(arrays))

    @property
    def num_players(self) -> int:
        return len(self.strategy_counts)

    @property
    def num_profiles(self) -> int:
        return self.payoffs[0].size

    def payoff(self, player: int, pure_profile) -> float:
        """Utility of ``player`` at a joint pure profile (one index per player)."""
        return float(self.payoffs[player][flat_index(self.strategy_counts, pure_profile)])

    def min_payoff(self) -> float:
        return min(float(a.min()) for a in self.payoffs)

    def max_payoff(self) -> float:
        return max(float(a.max()) for a in self.payoffs)

    @classmethod
    def from_matrices(cls, u1, u2) -> "Game":
        """Two-player game from matrices ``u[s1][s2]`` (row = player 1's strategy)."""
        a1 = np.asarray(u1, dtype=np.float64)
        a2 = np.asarray(u2, dtype=np.float64)
        if a1.ndim != 2 or a1.shape != a2.shape:
            raise ValueError("payoff matrices must be 2-D with equal shapes")
        return cls(a1.shape, (a1.ravel(order="F"), a2.ravel(order="F")))


def flat_index(counts, pure_profile) -> int:
    """Flat tensor index of a joint pure profile (player 1 fastest)."""
    if len(pure_profile) != len(counts):
        raise ValueError("pure profile length does not match player count")
    idx = 0
    for m, s in zip(reversed(counts), reversed(tuple(pure_profile))):
        s = int(s)
        if not 0 <= s < m:
            raise ValueError(f"strategy index {s} out of range for {m} strategies")
        idx = idx * m + s
    return idx


def mixed_strategy(probs) -> MixedStrategy:
    """Validate a probability vector and return it as a float64 copy."""
    arr = np.array(probs, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a mixed strategy must be a non-empty vector")
    if np.any(arr < 0.0):
        raise ValueError("mixed strategy has a negative entry")
    if abs(float(arr.sum()) - 1.0) > PROB_TOL:
        raise ValueError(f"mixed strategy sums to {arr.sum()!r}, not 1")
    return arr


def uniform_profile(game: Game) -> Profile:
    """The all-uniform profile (probability 1/m_i on every action)."""
    return tuple(np.full(m, 1.0 / m) for m in game.strategy_counts)


def validate_profile(game: Game, profile) -> Profile:
    """Full profile validation (shape and simplex invariants per player)."""
    if len(profile) != game.num_players:
        raise ValueError(
            f"profile has {len(profile)} strategies for {game.num_players} players"
        )
    out = []
    for i, probs in enumerate(profile):
        s = mixed_strategy(probs)
        if s.size != game.strategy_counts[i]:
            raise ValueError(
                f"player {i}: strategy length {s.size} != {game.strategy_counts[i]}"
            )
        out.append(s)
    return tuple(out)


def _check_shapes(game: Game, profile) -> Profile:
    if len(profile) != game.num_players:
        raise ValueError(
            f"profile has {len(profile)} strategies for {game.num_players} players"
        )
    out = tuple(np.asarray(s, dtype=np.float64) for s in profile)
    for i, s in enumerate(out):
        if s.ndim != 1 or s.size != game.strategy_counts[i]:
            raise ValueError(
                f"player {i}: strategy shape {s.shape} does not match "
                f"{game.strategy_counts[i]} actions"
            )
    return out


def _check_player(game: Game, player: int) -> None:
    if not 0 <= player < game.num_players:
        raise IndexError(f"player {player} out of range for {game.num_players} players")


def _contract_opponents(game: Game, profile, player: int) -> np.ndarray:
    # One pass over the payoff tensor: peel off each opponent's axis with a
    # matrix-vector product. The flat layout has player 0 on the fastest
    # (last) axis, so players above `player` are leading axes and players
    # below it are trailing axes.
    counts = game.strategy_counts
    t = game.payoffs[player]
    for p in range(len(counts) - 1, player, -1):
        t = profile[p] @ t.reshape(counts[p], -1)
    for p in range(player):
        t = t.reshape(-1, counts[p]) @ profile[p]
    return t


def expected_utility(game: Game, profile, player: int) -> float:
    """Expected utility of ``player`` under a mixed profile.

    Multilinear extension of the payoff tensor: sums ``prod_j profile[j](s_j)
    * u_player(s)`` over every joint pure profile ``s``.
    """
    _check_player(game, player)
    profile = _check_shapes(game, profile)
    counts = game.strategy_counts
    t = game.payoffs[player]
    for p in range(len(counts) - 1, -1, -1):
        t = profile[p] @ t.reshape(counts[p], -1)
    return float(t[0])


def deviation_values(game: Game, profile, player: int) -> np.ndarray:
    """Expected utility of each pure deviation for ``player``.

    Entry k is the player's expected utility when playing pure strategy k
    while every other player follows ``profile``.
    """
    _check_player(game, player)
    profile = _check_shapes(game, profile)
    return _contract_opponents(game, profile, player)


def best_response(game: Game, profile, player: int) -> tuple[int, float]:
    """Best pure response and its value; ties break to the lowest index."""
    dev = deviation_values(game, profile, player)
    k = int(np.argmax(dev))
    return k, float(dev[k])


def epsilon(game: Game, profile) -> float:
    """Distance of a profile from Nash equilibrium.

    Maximum over players of the best-response gain over the profile's own
    expected utility, clamped below at 0 to absorb floating-point noise.
    Pure deviations suffice: the gain of any mixed deviation is a convex
    combination of pure-deviation gains.
    """
    profile = _check_shapes(game, profile)
    worst = 0.0
    for i in range(game.num_players):
        dev = _contract_opponents(game, profile, i)
        gain = float(dev.max()) - float(dev @ profile[i])
        if gain > worst:
            worst = gain
    return worst


def normalize(game: Game) -> Game:
    """Affinely map all payoffs (pooled across players) onto [0, 1].

    The global minimum maps to 0 and the global maximum to 1. A constant
    game (zero span) maps to all zeros. Best-response sets are invariant
    because the map is positive affine.
    """
    lo = game.min_payoff()
    span = game.max_payoff() - lo
    if span == 0.0:
        scaled = tuple(np.zeros_like(a) for a in game.payoffs)
    else:
        scaled = tuple((a - lo) / span for a in game.payoffs)
    return Game(game.strategy_counts, scaled)
