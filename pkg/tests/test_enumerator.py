from itertools import permutations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from compactsearch.alphabet import WeightedAlphabet, complexity, effective_max_q, theory
from compactsearch.enumerator import (
    TheoryLevels,
    brute_force_oracle,
    first_discrepancy,
    march,
    seed_singletons,
    squeeze_level,
)
from compactsearch.validation import ValidationFailure, ValidationOutcome


def generating_function_counts(weights, max_q):
    """Coefficients of prod (1 + x^w): number of subsets of each total weight."""
    poly = np.array([1], dtype=np.int64)
    for w in weights:
        factor = np.zeros(w + 1, dtype=np.int64)
        factor[0] = factor[w] = 1
        poly = np.convolve(poly, factor)
    return [int(poly[q]) if q < len(poly) else 0 for q in range(1, max_q + 1)]


# Frozen from generating_function_counts(paper weights, 14) and cross-checked
# against brute_force_oracle below.
PAPER_COUNTS = [2, 1, 0, 4, 8, 4, 6, 18, 18, 6, 24, 52, 32, 19]

LISTING = {
    1: ["A", "B"],
    2: ["AB"],
    3: [],
    4: ["C", "D", "E", "F"],
    5: ["AC", "BC", "AD", "BD", "AE", "BE", "AF", "BF"],
    6: ["ABC", "ABD", "ABE", "ABF"],
    7: ["G", "H", "I", "J", "K", "L"],
}


def as_sets(strings):
    return {frozenset(s) for s in strings}


def test_frozen_counts_match_generating_function(paper):
    assert generating_function_counts(paper.weights, 14) == PAPER_COUNTS
    assert sum(PAPER_COUNTS) == 194


def test_oracle_counts(paper):
    assert brute_force_oracle(paper, 14).counts() == PAPER_COUNTS


def test_oracle_examples(paper, uniform12):
    assert brute_force_oracle(uniform12, 12)[12] == [frozenset("ABCDEFGHIJKL")]
    lvl11 = brute_force_oracle(paper, 14)[11]
    assert len(lvl11) == 4 * 6
    assert all(len(t) == 2 for t in lvl11)
    lvl14 = brute_force_oracle(paper, 14)[14]
    assert len(lvl14) == comb(6, 2) + comb(4, 3)


def test_oracle_rejects_large_alphabet():
    big = WeightedAlphabet(tuple((f"s{i}", 1) for i in range(25)))
    with pytest.raises(ValueError, match="too large"):
        brute_force_oracle(big, 3)


def test_seed_singletons(paper):
    levels = seed_singletons(paper, effective_max_q(paper, 14))
    assert levels[1] == [theory("A"), theory("B")]
    assert levels[3] == []
    assert levels[7] == [theory(c) for c in "GHIJKL"]
    assert levels[2] == []


def test_seed_omits_heavy_symbols(paper):
    levels = seed_singletons(paper, effective_max_q(paper, 5))
    assert levels.max_q == 5
    assert levels.total == 2 + 4


def test_squeeze_examples(paper, backend):
    levels = seed_singletons(paper, effective_max_q(paper, 14))
    stats = {}
    for q in range(1, 9):
        _, stats[q] = squeeze_level(levels, q, backend=backend)
    assert levels[2] == [theory("A", "B")]
    assert set(levels[5]) == as_sets(LISTING[5])
    assert len(levels[8]) == 18
    assert stats[7].seeded == 6 and stats[7].disjoint_kept == 0


def test_squeeze_out_of_range(paper):
    levels = seed_singletons(paper, effective_max_q(paper, 14))
    for q in (0, 15):
        with pytest.raises(ValueError):
            squeeze_level(levels, q)


def test_march_listing(paper, backend):
    levels = march(paper, 7, backend=backend).levels
    for q, expected in LISTING.items():
        assert set(levels[q]) == as_sets(expected)
        assert len(levels[q]) == len(expected)


def test_march_full_counts(paper, backend):
    res = march(paper, 14, backend=backend)
    assert res.levels.counts() == PAPER_COUNTS
    assert len(res.records) == 194
    assert [s.stored for s in res.stats] == PAPER_COUNTS


def test_march_uniform_binomial(uniform12, backend):
    levels = march(uniform12, 12, backend=backend).levels
    assert levels.counts() == [comb(12, m) for m in range(1, 13)]
    assert levels.total == 2**12 - 1


def test_always_false_validator(paper):
    res = march(paper, 14, lambda t: ValidationOutcome(False))
    assert res.levels.total == 194
    assert res.records == []


def test_validator_failure_carries_theory(paper):
    def boom(t):
        if t == theory("C"):
            raise ZeroDivisionError("bad")
        return ValidationOutcome(True)

    with pytest.raises(ValidationFailure) as err:
        march(paper, 14, boom)
    assert err.value.q == 4
    assert err.value.theory == theory("C")
    assert isinstance(err.value.cause, ZeroDivisionError)


def test_stats_invariants(paper, uniform12):
    for a, mc in ((paper, 14), (uniform12, 12)):
        for s in march(a, mc).stats:
            assert s.stored == s.seeded + s.disjoint_kept - s.duplicates_rejected
            assert min(s.unions_attempted, s.disjoint_kept, s.duplicates_rejected, s.stored) >= 0
            assert sum(s.pairs.values()) == s.unions_attempted
            # pair-work accounting: parts always weigh l + m = q with l <= m
            for l, m in s.pairs:
                assert l + m == s.q and 1 <= l <= m


def test_exact_weight_placement_and_uniqueness(paper):
    levels = march(paper, 14).levels
    seen = set()
    for q, theories in levels:
        for t in theories:
            assert complexity(t, paper) == q
            assert t not in seen
            seen.add(t)


def test_monotone_work(paper, uniform12):
    for mc in (12, 13, 14, 20):
        w = sum(s.unions_attempted for s in march(paper, mc).stats)
        u = sum(s.unions_attempted for s in march(uniform12, mc).stats)
        assert w < u


def test_order_insensitive(paper):
    ref = march(paper, 14).levels.as_sets()
    rng = np.random.default_rng(3)
    for _ in range(5):
        perm = rng.permutation(len(paper))
        shuffled = WeightedAlphabet(tuple(paper.entries[i] for i in perm))
        assert march(shuffled, 14).levels.as_sets() == ref


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_workers_do_not_change_results(uniform12, paper, workers, backend):
    for a, mc in ((uniform12, 12), (paper, 14)):
        one = march(a, mc, backend=backend)
        many = march(a, mc, workers=workers, backend=backend)
        for q in range(1, one.levels.max_q + 1):
            assert np.array_equal(one.levels.masks(q), many.levels.masks(q))
        strip = lambda st: [(s.q, s.seeded, s.unions_attempted, s.disjoint_kept,
                             s.duplicates_rejected, s.stored, s.pairs) for s in st]
        assert strip(one.stats) == strip(many.stats)


def test_first_discrepancy(paper):
    a = march(paper, 8).levels
    b = TheoryLevels.from_theories(paper, 8, [t for _, ts in a for t in ts if t != theory("A", "C")])
    assert first_discrepancy(a, a) is None
    msg = first_discrepancy(b, a)
    assert msg.startswith("q=5") and "missing {A,C}" in msg


def test_from_theories_rejects_out_of_range(paper):
    with pytest.raises(ValueError):
        TheoryLevels.from_theories(paper, 3, [theory("C")])


def test_too_many_symbols():
    with pytest.raises(ValueError, match="at most 64"):
        march(WeightedAlphabet(tuple((f"s{i}", 100) for i in range(65))), 5)


small_alphabets = st.lists(st.integers(1, 6), min_size=1, max_size=10).map(
    lambda ws: WeightedAlphabet(tuple((f"s{i}", w) for i, w in enumerate(ws)))
)


@settings(max_examples=60, deadline=None)
@given(small_alphabets, st.data())
def test_march_equals_oracle(a, data):
    max_comp = data.draw(st.integers(1, a.total_weight))
    assert first_discrepancy(march(a, max_comp).levels, brute_force_oracle(a, max_comp)) is None


@settings(max_examples=30, deadline=None)
@given(small_alphabets)
def test_counts_match_generating_function(a):
    levels = march(a, a.total_weight).levels
    assert levels.counts() == generating_function_counts(a.weights, a.total_weight)


@pytest.mark.parametrize("seed", range(3))
def test_sixteen_symbols_equal_oracle(seed):
    rng = np.random.default_rng(seed)
    a = WeightedAlphabet(tuple((f"s{i}", int(w)) for i, w in enumerate(rng.integers(1, 6, 16))))
    max_comp = int(rng.integers(10, 20))
    assert first_discrepancy(march(a, max_comp).levels, brute_force_oracle(a, max_comp)) is None


@given(st.integers(1, 10))
@settings(deadline=None)
def test_binomial_law(n):
    a = WeightedAlphabet(tuple((f"s{i}", 1) for i in range(n)))
    assert march(a, n).levels.counts() == [comb(n, m) for m in range(1, n + 1)]


def test_permutations_small():
    base = (("x", 1), ("y", 2), ("z", 3), ("w", 3))
    ref = march(WeightedAlphabet(base), 9).levels.as_sets()
    for p in permutations(base):
        assert march(WeightedAlphabet(p), 9).levels.as_sets() == ref
