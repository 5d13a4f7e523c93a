"""Level-wise enumeration of theories by exact complexity.

Level ``q`` holds every theory whose weights sum to exactly ``q``. Singletons
are seeded; every other level is built from disjoint unions of an ``l``-level
and an ``m``-level theory with ``l + m == q``, ``l`` running up from 1 and
``m`` down from ``q - 1`` until they cross.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import Executor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple

import numpy as np

from ._backend import get_backend
from .alphabet import (
    ComplexityBudget,
    Theory,
    WeightedAlphabet,
    canonical,
    complexity,
    effective_max_q,
    render_theory,
)
from .validation import ValidationFailure, ValidationRecord, trivial_validator

__all__ = [
    "EnumerationStats",
    "MarchResult",
    "TheoryLevels",
    "brute_force_oracle",
    "first_discrepancy",
    "march",
    "seed_singletons",
    "squeeze_level",
]

MAX_SYMBOLS = 64
ORACLE_MAX_SYMBOLS = 24
# below this many pair candidates a thread pool costs more than it saves
_PARALLEL_MIN_PAIRS = 1 << 14

_EMPTY = np.empty(0, dtype=np.uint64)


class TheoryLevels:
    """Theories bucketed by exact complexity, ``levels[1] .. levels[max_q]``.

    Internally each level is an insertion-ordered ``uint64`` array of
    bitmasks over alphabet positions. Indexing returns ``frozenset`` theories
    in canonical order.
    """

    def __init__(self, alphabet: WeightedAlphabet, max_q: int):
        if len(alphabet) > MAX_SYMBOLS:
            raise ValueError(
                f"enumeration supports at most {MAX_SYMBOLS} symbols, got {len(alphabet)}"
            )
        self.alphabet = alphabet
        self.max_q = max_q
        self._masks = [_EMPTY] * (max_q + 1)
        self._bit = {s: 1 << i for i, s in enumerate(alphabet.symbols)}

    @classmethod
    def from_theories(
        cls, alphabet: WeightedAlphabet, max_q: int, theories: Iterable[Theory]
    ) -> "TheoryLevels":
        """Bucket *theories* by complexity; duplicates are stored once."""
        buckets: dict[int, dict[int, None]] = {}
        out = cls(alphabet, max_q)
        for t in theories:
            q = complexity(t, alphabet)
            if not 1 <= q <= max_q:
                raise ValueError(f"theory {render_theory(t)} has complexity {q} outside 1..{max_q}")
            buckets.setdefault(q, {})[out.to_mask(t)] = None
        for q, masks in buckets.items():
            out.set_masks(q, np.fromiter(masks, dtype=np.uint64, count=len(masks)))
        return out

    def to_mask(self, t: Iterable[str]) -> int:
        mask = 0
        for s in t:
            try:
                mask |= self._bit[s]
            except KeyError:
                raise KeyError(f"unknown symbol {s!r}") from None
        return mask

    def to_theory(self, mask: int) -> Theory:
        mask = int(mask)
        return frozenset(s for s, bit in self._bit.items() if mask & bit)

    def masks(self, q: int) -> np.ndarray:
        return self._masks[q]

    def set_masks(self, q: int, masks: np.ndarray) -> None:
        self._masks[q] = masks

    def __len__(self) -> int:
        return self.max_q

    def __getitem__(self, q: int) -> list[Theory]:
        if not 1 <= q <= self.max_q:
            raise IndexError(f"level {q} outside 1..{self.max_q}")
        return sorted((self.to_theory(m) for m in self._masks[q].tolist()), key=canonical)

    def __iter__(self):
        for q in range(1, self.max_q + 1):
            yield q, self[q]

    def counts(self) -> list[int]:
        return [len(self._masks[q]) for q in range(1, self.max_q + 1)]

    @property
    def total(self) -> int:
        return sum(self.counts())

    def as_sets(self) -> dict[int, set[Theory]]:
        return {q: set(ts) for q, ts in self}


@dataclass
class EnumerationStats:
    """Work counters for one level.

    ``stored == seeded + disjoint_kept - duplicates_rejected``. ``pairs`` maps
    each visited ``(l, m)`` weight pair to the number of unions attempted.
    """

    q: int
    seeded: int = 0
    unions_attempted: int = 0
    disjoint_kept: int = 0
    duplicates_rejected: int = 0
    stored: int = 0
    elapsed: float = 0.0
    pairs: dict[tuple[int, int], int] = field(default_factory=dict)


class MarchResult(NamedTuple):
    levels: TheoryLevels
    records: list[ValidationRecord]
    stats: list[EnumerationStats]


def seed_singletons(alphabet: WeightedAlphabet, budget: ComplexityBudget) -> TheoryLevels:
    levels = TheoryLevels(alphabet, budget.max_q)
    buckets: dict[int, list[int]] = {}
    for i, (_, w) in enumerate(alphabet.entries):
        if w <= budget.max_q:
            buckets.setdefault(w, []).append(1 << i)
    for w, masks in buckets.items():
        levels.set_masks(w, np.array(masks, dtype=np.uint64))
    return levels


def _disjoint_unions(kernel, xs, ys, workers, executor):
    if executor is None or workers <= 1 or len(xs) < 2 or len(xs) * len(ys) < _PARALLEL_MIN_PAIRS:
        return kernel.disjoint_unions(xs, ys)
    chunks = np.array_split(xs, min(workers, len(xs)))
    parts = list(executor.map(lambda c: kernel.disjoint_unions(c, ys), chunks))
    # chunk order == sequential row order, so the result does not depend on workers
    return np.concatenate(parts)


def squeeze_level(
    levels: TheoryLevels,
    q: int,
    *,
    workers: int = 1,
    backend: str | None = None,
    executor: Executor | None = None,
) -> tuple[TheoryLevels, EnumerationStats]:
    """Complete level *q* in place; all lower levels must already be complete."""
    if not 1 <= q <= levels.max_q:
        raise ValueError(f"q={q} outside 1..{levels.max_q}")
    kernel = get_backend(backend)
    own_pool = None
    if workers > 1 and executor is None:
        executor = own_pool = ThreadPoolExecutor(max_workers=workers)
    try:
        start = time.perf_counter()
        level = levels.masks(q)
        stats = EnumerationStats(q=q, seeded=len(level))
        m, l = q - 1, 1
        while m >= l:
            xs, ys = levels.masks(m), levels.masks(l)
            attempted = len(xs) * len(ys)
            stats.pairs[(l, m)] = attempted
            if attempted:
                unions = _disjoint_unions(kernel, xs, ys, workers, executor)
                stats.unions_attempted += attempted
                stats.disjoint_kept += len(unions)
                if len(unions):
                    level, dups = kernel.merge_unique(level, unions)
                    stats.duplicates_rejected += dups
            m -= 1
            l += 1
        levels.set_masks(q, level)
        stats.stored = len(level)
        stats.elapsed = time.perf_counter() - start
    finally:
        if own_pool is not None:
            own_pool.shutdown()
    return levels, stats


def _validate_level(levels, q, validator, workers, executor) -> list[ValidationRecord]:
    theories = levels[q]

    def check(t):
        try:
            return validator(t)
        except Exception as exc:
            raise ValidationFailure(q, t, exc) from exc

    if executor is not None and workers > 1 and len(theories) > 1:
        outcomes = list(executor.map(check, theories))
    else:
        outcomes = [check(t) for t in theories]
    return [ValidationRecord(q, t, o) for t, o in zip(theories, outcomes) if o.accepted]


def march(
    alphabet: WeightedAlphabet,
    max_comp: int = 14,
    validator: Callable | None = None,
    *,
    workers: int = 1,
    backend: str | None = None,
) -> MarchResult:
    """Enumerate levels ``1..max_q`` in order, validating each completed level.

    Records are sorted by ``(q, canonical theory)``.
    """
    if validator is None:
        validator = trivial_validator()
    budget = effective_max_q(alphabet, max_comp)
    levels = seed_singletons(alphabet, budget)
    records: list[ValidationRecord] = []
    all_stats: list[EnumerationStats] = []
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for q in range(1, budget.max_q + 1):
            _, stats = squeeze_level(
                levels, q, workers=workers, backend=backend, executor=executor
            )
            all_stats.append(stats)
            records.extend(_validate_level(levels, q, validator, workers, executor))
    finally:
        if executor is not None:
            executor.shutdown()
    records.sort(key=lambda r: (r.q, canonical(r.theory)))
    return MarchResult(levels, records, all_stats)


def brute_force_oracle(alphabet: WeightedAlphabet, max_comp: int) -> TheoryLevels:
    """Every non-empty subset of *alphabet*, bucketed by complexity (powerset scan)."""
    n = len(alphabet)
    if n > ORACLE_MAX_SYMBOLS:
        raise ValueError(
            f"alphabet of {n} symbols is too large for exhaustive enumeration "
            f"(limit {ORACLE_MAX_SYMBOLS})"
        )
    max_q = effective_max_q(alphabet, max_comp).max_q
    subsets = (
        frozenset(combo)
        for size in range(1, n + 1)
        for combo in itertools.combinations(alphabet.symbols, size)
    )
    return TheoryLevels.from_theories(
        alphabet, max_q, (t for t in subsets if complexity(t, alphabet) <= max_q)
    )


def first_discrepancy(a: TheoryLevels, b: TheoryLevels) -> str | None:
    """Describe the first level where *a* and *b* differ, or ``None`` if equivalent."""
    if a.max_q != b.max_q:
        return f"max_q differs: {a.max_q} != {b.max_q}"
    for q in range(1, a.max_q + 1):
        ta, tb = a[q], b[q]
        if len(ta) != len(set(ta)) or len(tb) != len(set(tb)):
            return f"q={q}: duplicate theory within level"
        sa, sb = set(ta), set(tb)
        if sa != sb:
            missing = sorted(sb - sa, key=canonical)
            extra = sorted(sa - sb, key=canonical)
            parts = [f"q={q}:"]
            if missing:
                parts.append("missing " + " ".join(render_theory(t) for t in missing[:5]))
            if extra:
                parts.append("extra " + " ".join(render_theory(t) for t in extra[:5]))
            return " ".join(parts)
    return None
