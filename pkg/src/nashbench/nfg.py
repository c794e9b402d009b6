"""Read and write strategic-form games in the payoff-form `.nfg` format.

A document is the literal header ``NFG 1 R``, a quoted title, a braced
list of quoted player names, a braced list of integer strategy counts, an
optional quoted comment, and then ``n * prod(counts)`` whitespace-separated
payoff literals: for each joint pure profile (player 1's strategy varying
fastest) the payoffs of players 1..n in order. ``//`` starts a comment
that runs to end of line; CRLF and LF both work. Outcome-form documents
(version 2) are rejected. Any token that does not parse as a finite
decimal/scientific number rejects the whole document.
"""

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .game import Game
from .game import normalize as _normalize_game


class NfgError(ValueError):
    """Malformed or non-ingestible `.nfg` document."""


# Integer, decimal, or scientific payoff literal. Deliberately narrower
# than float(): no nan/inf spellings, no underscores, no locale separators.
_NUMBER_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")

_WHITESPACE = " \t\r\n\f\v"


@dataclass(frozen=True)
class _Token:
    text: str
    kind: str  # "word" | "string" | "{" | "}"
    line: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, line = 0, 1
    length = len(text)
    while i < length:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
        elif ch in _WHITESPACE:
            i += 1
        elif ch == "/" and text.startswith("//", i):
            nl = text.find("\n", i)
            i = length if nl < 0 else nl
        elif ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise NfgError(f"unterminated string starting at line {line}")
            tokens.append(_Token(text[i + 1:end], "string", line))
            line += text.count("\n", i, end)
            i = end + 1
        elif ch in "{}":
            tokens.append(_Token(ch, ch, line))
            i += 1
        else:
            j = i
            while j < length and text[j] not in _WHITESPACE + '{}"':
                j += 1
            tokens.append(_Token(text[i:j], "word", line))
            i = j
    return tokens


class _TokenReader:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> _Token | None:
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def take(self, what: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise NfgError(f"unexpected end of document, expected {what}")
        self._pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.take(what)
        if tok.kind != kind:
            raise NfgError(
                f"expected {what} but found {tok.text!r} at line {tok.line}"
            )
        return tok

    def remaining(self) -> list[_Token]:
        rest = self._tokens[self._pos:]
        self._pos = len(self._tokens)
        return rest


def _parse_payoff(tok: _Token, position: int) -> float:
    nonfinite = NfgError(
        f"non-finite payoff: token {tok.text!r} at line {tok.line}"
        f" (payoff #{position})"
    )
    invalid = NfgError(
        f"invalid payoff token {tok.text!r} at line {tok.line}"
        f" (payoff #{position})"
    )
    if _NUMBER_RE.match(tok.text):
        value = float(tok.text)
        if math.isfinite(value):
            return value
        raise nonfinite  # decimal overflow, e.g. 1e999
    try:
        value = float(tok.text)
    except ValueError:
        raise invalid from None
    if math.isfinite(value):
        # float() is laxer than the payoff grammar (underscores, "infinity"
        # casing quirks); anything outside the grammar is malformed.
        raise invalid
    raise nonfinite


def parse_nfg(text: str) -> Game:
    """Parse a payoff-form `.nfg` document into a Game."""
    reader = _TokenReader(_tokenize(text))
    magic = reader.take("header 'NFG'")
    if magic.kind != "word" or magic.text != "NFG":
        raise NfgError(f"not an .nfg document: expected 'NFG', found {magic.text!r}")
    version = reader.take("format version")
    if version.text == "2":
        raise NfgError("outcome-form .nfg (version 2) is not supported")
    if version.text != "1":
        raise NfgError(f"unsupported .nfg version {version.text!r}")
    precision = reader.take("precision letter 'R'")
    if precision.text != "R":
        raise NfgError(f"expected header 'NFG 1 R', found 'NFG 1 {precision.text}'")
    reader.expect("string", "quoted title")

    reader.expect("{", "'{' opening the player list")
    players = []
    while True:
        tok = reader.take("player name or '}'")
        if tok.kind == "}":
            break
        if tok.kind != "string":
            raise NfgError(f"expected quoted player name at line {tok.line}")
        players.append(tok.text)
    if not players:
        raise NfgError("player list is empty")

    reader.expect("{", "'{' opening the strategy counts")
    counts = []
    while True:
        tok = reader.take("strategy count or '}'")
        if tok.kind == "}":
            break
        if tok.kind == "{":
            raise NfgError(
                "named strategy lists are not supported; expected integer counts"
            )
        if tok.kind != "word" or not tok.text.isdigit():
            raise NfgError(f"invalid strategy count {tok.text!r} at line {tok.line}")
        count = int(tok.text)
        if count < 1:
            raise NfgError(f"strategy count must be >= 1, got {count}")
        counts.append(count)
    if len(counts) != len(players):
        raise NfgError(
            f"{len(players)} players but {len(counts)} strategy counts"
        )

    # Some writers put an optional quoted comment before the payoffs.
    tok = reader.peek()
    if tok is not None and tok.kind == "string":
        reader.take("comment")

    payload = reader.remaining()
    n = len(counts)
    profiles = 1
    for c in counts:
        profiles *= c
    expected = profiles * n
    if len(payload) != expected:
        raise NfgError(
            f"expected {expected} payoff values "
            f"({profiles} profiles x {n} players), found {len(payload)}"
        )
    values = [_parse_payoff(tok, pos + 1) for pos, tok in enumerate(payload)]
    return Game(
        tuple(counts),
        tuple(values[i::n] for i in range(n)),
    )


def write_nfg(game: Game, title: str | None = None) -> str:
    """Serialize a game to a parseable payoff-form `.nfg` document.

    Payoffs use round-trip-exact decimal representations, so
    ``parse_nfg(write_nfg(g))`` reproduces the tensors bit for bit.
    """
    n = game.num_players
    if title is None:
        title = "x".join(str(c) for c in game.strategy_counts) + " game"
    names = " ".join(f'"Player {i + 1}"' for i in range(n))
    counts = " ".join(str(c) for c in game.strategy_counts)
    lines = [f'NFG 1 R "{title}" {{ {names} }} {{ {counts} }}', ""]
    for k in range(game.num_profiles):
        lines.append(" ".join(repr(float(game.payoffs[i][k])) for i in range(n)))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class IngestReport:
    """Outcome of ingesting a directory of `.nfg` files.

    Every input file appears exactly once, in filename order, either in
    ``accepted`` (with its parsed, optionally normalized game) or in
    ``rejected`` (with the reason).
    """

    accepted: tuple[tuple[str, Game], ...]
    rejected: tuple[tuple[str, str], ...]
    normalized: bool

    def to_text(self) -> str:
        lines = [f"accepted: {len(self.accepted)}", f"rejected: {len(self.rejected)}"]
        status = {name: "ok" for name, _ in self.accepted}
        detail = dict(self.rejected)
        for name in sorted(set(status) | set(detail)):
            if name in status:
                lines.append(f"[ok] {name}")
            else:
                lines.append(f"[rejected] {name}: {detail[name]}")
        return "\n".join(lines) + "\n"


def ingest_dir(path, normalize: bool = False) -> IngestReport:
    """Parse every `.nfg` file under ``path`` (non-recursive).

    Files with malformed content or any non-finite payoff are rejected
    with a reason instead of raising; with ``normalize=True`` accepted
    games are rescaled onto [0,1]. The report is ordered by filename, so
    the result does not depend on directory enumeration order.
    """
    directory = Path(path)
    if not directory.is_dir():
        raise NotADirectoryError(f"not a readable directory: {directory}")
    accepted = []
    rejected = []
    for entry in sorted(directory.iterdir(), key=lambda p: p.name):
        if not entry.is_file() or entry.suffix.lower() != ".nfg":
            continue
        try:
            game = parse_nfg(entry.read_text(encoding="utf-8"))
        except (NfgError, OSError, UnicodeDecodeError) as exc:
            rejected.append((entry.name, str(exc)))
            continue
        if normalize:
            game = _normalize_game(game)
        accepted.append((entry.name, game))
    return IngestReport(tuple(accepted), tuple(rejected), normalize)
