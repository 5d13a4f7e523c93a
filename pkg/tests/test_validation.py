import pytest
from hypothesis import given, strategies as st

from compactsearch.alphabet import PAPER_ALPHABET, complexity, theory
from compactsearch.enumerator import march
from compactsearch.validation import (
    ValidationOutcome,
    ValidationRecord,
    is_antichain,
    prune_supersets,
    trivial_validator,
)


def rec(*members):
    t = theory(*members)
    return ValidationRecord(complexity(t, PAPER_ALPHABET), t, ValidationOutcome(True))


@pytest.mark.parametrize("members", [("A",), (), ("I", "K")])
def test_trivial_validator_accepts(members):
    out = trivial_validator()(theory(*members))
    assert out.accepted and out.coefficients is None


def test_coefficients_only_when_accepted():
    with pytest.raises(ValueError):
        ValidationOutcome(False, (1.0,))


def test_prune_superset_of_divergence():
    kept = prune_supersets([rec("C"), rec("C", "D")])
    assert [r.theory for r in kept] == [theory("C")]


def test_prune_keeps_unrelated():
    kept = prune_supersets([rec("C"), rec("G", "F")])
    assert len(kept) == 2


def test_prune_empty():
    assert prune_supersets([]) == []


def test_trivial_records_equal_level_sizes():
    res = march(PAPER_ALPHABET, 14)
    per_level = {}
    for r in res.records:
        per_level[r.q] = per_level.get(r.q, 0) + 1
        assert r.q == complexity(r.theory, PAPER_ALPHABET)
    assert [per_level.get(q, 0) for q in range(1, 15)] == res.levels.counts()


records = st.lists(
    st.sets(st.sampled_from("ABCDEFGHIJKL"), min_size=1, max_size=4),
    max_size=25,
).map(lambda ts: sorted((rec(*t) for t in ts), key=lambda r: r.q))


@given(records)
def test_prune_output_is_antichain(rs):
    assert is_antichain(r.theory for r in prune_supersets(rs))


@given(records)
def test_prune_idempotent(rs):
    once = prune_supersets(rs)
    assert prune_supersets(once) == once


@given(records)
def test_pruned_records_have_no_kept_subset(rs):
    kept = prune_supersets(rs)
    for r in rs:
        if r not in kept:
            assert any(k.theory < r.theory for k in kept)
