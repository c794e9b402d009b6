"""Seeded random game distributions and closed-form named test games.

Random games draw every payoff independently from U[0,1) via the pinned
splitmix64 stream (see rng). Tensors are filled in flat-index order,
player 1's tensor first, so a spec fully determines the game.
"""

import enum
from dataclasses import dataclass, replace

import numpy as np

from .game import Game
from .rng import derive_seed, unit_stream


class GameKind(enum.Enum):
    UNIFORM_RANDOM = "uniform"
    CONSTANT_SUM_2P = "constant_sum_2p"


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one seeded random game."""

    num_players: int
    actions_per_player: int
    kind: GameKind
    seed: int = 0

    def __post_init__(self):
        if self.num_players < 2:
            raise ValueError("random games need at least 2 players")
        if self.actions_per_player < 2:
            raise ValueError("random games need at least 2 actions per player")
        if self.kind is GameKind.CONSTANT_SUM_2P and self.num_players != 2:
            raise ValueError("constant-sum generation requires exactly 2 players")


def random_game(spec: GenSpec) -> Game:
    """Uniform-random game: every payoff of every player is U[0,1)."""
    if spec.kind is not GameKind.UNIFORM_RANDOM:
        raise ValueError(f"random_game requires UNIFORM_RANDOM, got {spec.kind}")
    n, m = spec.num_players, spec.actions_per_player
    size = m ** n
    units = unit_stream(spec.seed, n * size)
    return Game((m,) * n, tuple(units[i * size:(i + 1) * size] for i in range(n)))


def random_constant_sum(spec: GenSpec) -> Game:
    """Two-player constant-sum game: u2 = 1 - u1 cell by cell, u1 ~ U[0,1)."""
    if spec.kind is not GameKind.CONSTANT_SUM_2P:
        raise ValueError(f"random_constant_sum requires CONSTANT_SUM_2P, got {spec.kind}")
    m = spec.actions_per_player
    u1 = unit_stream(spec.seed, m * m)
    return Game((m, m), (u1, 1.0 - u1))


def generate(spec: GenSpec) -> Game:
    """Dispatch on the spec's kind."""
    if spec.kind is GameKind.CONSTANT_SUM_2P:
        return random_constant_sum(spec)
    return random_game(spec)


def batch_game(spec: GenSpec, master_seed: int, index: int) -> Game:
    """Game ``index`` of a seeded batch, regenerable in isolation.

    The per-game seed is output ``index`` of the splitmix64 stream seeded
    with ``master_seed``; the spec's own seed field is ignored here.
    """
    return generate(replace(spec, seed=derive_seed(master_seed, index)))


_NAMED_BUILDERS = {}


def _named(name):
    def register(fn):
        _NAMED_BUILDERS[name] = fn
        return fn
    return register


@_named("MATCHING_PENNIES_01")
def _matching_pennies() -> Game:
    # Classic matcher/mismatcher game shifted to {0,1} payoffs; u2 = 1 - u1.
    u1 = np.array([1.0, 0.0, 0.0, 1.0])
    return Game((2, 2), (u1, 1.0 - u1))


@_named("RPS_01")
def _rock_paper_scissors() -> Game:
    # Win 1, tie 0.5, loss 0; constant-sum and symmetric (1 - M == M.T).
    m = np.array([
        [0.5, 0.0, 1.0],
        [1.0, 0.5, 0.0],
        [0.0, 1.0, 0.5],
    ])
    return Game.from_matrices(m, 1.0 - m)


@_named("DOMINANT_2x2")
def _dominant_2x2() -> Game:
    # Action 1 strictly dominates action 0 for both players (gap 1).
    u1 = np.array([0.0, 1.0, 0.0, 1.0])  # player 1's own action pays
    u2 = np.array([0.0, 0.0, 1.0, 1.0])  # player 2's own action pays
    return Game((2, 2), (u1, u2))


def named_game(name: str) -> Game:
    """Fixed closed-form test game by name."""
    try:
        builder = _NAMED_BUILDERS[name]
    except KeyError:
        raise ValueError(
            f"unknown game name {name!r}; known: {sorted(_NAMED_BUILDERS)}"
        ) from None
    return builder()
