"""Weighted alphabets, theories and the complexity metric.

A theory is a ``frozenset`` of symbol names. Its complexity is the sum of
its members' weights. Alphabets are read from a small line-oriented text
format::

    # comment
    A 1
    B 1
    C 4
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Theory = frozenset

__all__ = [
    "AlphabetError",
    "ComplexityBudget",
    "Theory",
    "WeightedAlphabet",
    "builtin_alphabet",
    "canonical",
    "complexity",
    "effective_max_q",
    "load_alphabet",
    "parse_alphabet",
    "render_theory",
    "serialize_alphabet",
    "theory",
    "BUILTIN_ALPHABETS",
]

_WEIGHT_RE = re.compile(r"[0-9]+")


class AlphabetError(ValueError):
    """Malformed alphabet definition.

    ``line`` is the 1-based line number of the offending entry, or ``None``
    when the problem is not tied to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class WeightedAlphabet:
    """Ordered ``(symbol, weight)`` entries; weights are positive integers."""

    entries: tuple[tuple[str, int], ...]
    _weights: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple((str(s), w) for s, w in self.entries)
        if not entries:
            raise AlphabetError("alphabet must contain at least one symbol")
        weights: dict[str, int] = {}
        for sym, w in entries:
            if not sym or any(ch.isspace() for ch in sym):
                raise AlphabetError(f"invalid symbol {sym!r}")
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise AlphabetError(f"weight of {sym!r} must be a positive integer, got {w!r}")
            if sym in weights:
                raise AlphabetError(f"duplicate symbol {sym!r}")
            weights[sym] = w
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_weights", weights)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "WeightedAlphabet":
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, symbol) -> bool:
        return symbol in self._weights

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.entries)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.entries)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def weight(self, symbol: str) -> int:
        try:
            return self._weights[symbol]
        except KeyError:
            raise KeyError(f"unknown symbol {symbol!r}") from None


@dataclass(frozen=True)
class ComplexityBudget:
    max_comp: int
    max_q: int


def theory(*symbols: str) -> Theory:
    """Convenience constructor: ``theory("G", "F") == frozenset({"F", "G"})``."""
    return frozenset(symbols)


def canonical(t: Iterable[str]) -> tuple[str, ...]:
    """Members sorted by symbol name; the stable identity of a theory."""
    return tuple(sorted(t))


def render_theory(t: Iterable[str]) -> str:
    return "{" + ",".join(canonical(t)) + "}"


def complexity(t: Iterable[str], alphabet: WeightedAlphabet) -> int:
    """Sum of member weights. Raises ``KeyError`` for symbols not in *alphabet*."""
    return sum(alphabet.weight(s) for s in t)


def effective_max_q(alphabet: WeightedAlphabet, max_comp: int) -> ComplexityBudget:
    if max_comp < 1:
        raise ValueError(f"max_comp must be >= 1, got {max_comp}")
    return ComplexityBudget(max_comp=max_comp, max_q=min(alphabet.total_weight, max_comp))


def parse_alphabet(text: str) -> WeightedAlphabet:
    entries = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise AlphabetError(f"expected '<symbol> <weight>', got {raw!r}", lineno)
        sym, wtext = parts
        if not _WEIGHT_RE.fullmatch(wtext):
            raise AlphabetError(f"weight must be a positive integer, got {wtext!r}", lineno)
        w = int(wtext)
        if w < 1:
            raise AlphabetError(f"weight must be a positive integer, got {wtext!r}", lineno)
        if sym in seen:
            raise AlphabetError(f"duplicate symbol {sym!r} (first on line {seen[sym]})", lineno)
        seen[sym] = lineno
        entries.append((sym, w))
    if not entries:
        raise AlphabetError("empty alphabet", 1)
    return WeightedAlphabet(tuple(entries))


def serialize_alphabet(alphabet: WeightedAlphabet) -> str:
    return "".join(f"{s} {w}\n" for s, w in alphabet.entries)


def load_alphabet(path) -> WeightedAlphabet:
    with open(path, encoding="utf-8") as f:
        return parse_alphabet(f.read())


# A..L with the operator costs 1, 4 and 7.
PAPER_ALPHABET = WeightedAlphabet(
    (("A", 1), ("B", 1), ("C", 4), ("D", 4), ("E", 4), ("F", 4),
     ("G", 7), ("H", 7), ("I", 7), ("J", 7), ("K", 7), ("L", 7))
)
UNIFORM12_ALPHABET = WeightedAlphabet(tuple((s, 1) for s in "ABCDEFGHIJKL"))

BUILTIN_ALPHABETS = {
    "paper": PAPER_ALPHABET,
    "uniform12": UNIFORM12_ALPHABET,
    # Same letters and weights as "paper"; the maxwell module binds operators to them.
    "maxwell": PAPER_ALPHABET,
}


def builtin_alphabet(name: str) -> WeightedAlphabet:
    try:
        return BUILTIN_ALPHABETS[name]
    except KeyError:
        raise KeyError(
            f"unknown builtin alphabet {name!r}; choose from {sorted(BUILTIN_ALPHABETS)}"
        ) from None
