import pytest
from hypothesis import given, strategies as st

from compactsearch.alphabet import (
    AlphabetError,
    WeightedAlphabet,
    complexity,
    effective_max_q,
    parse_alphabet,
    render_theory,
    serialize_alphabet,
    theory,
)

PAPER_FILE = """\
# operator alphabet
A 1
B 1
C 4
D 4
E 4
F 4
G 7
H 7
I 7
J 7
K 7
L 7
"""


def test_parse_two_entries():
    a = parse_alphabet("A 1\nB 1")
    assert a.symbols == ("A", "B")
    assert a.weights == (1, 1)


def test_parse_paper_file(paper):
    a = parse_alphabet(PAPER_FILE)
    assert len(a) == 12
    # 2*1 + 4*4 + 6*7
    assert a.total_weight == 60
    assert a == paper


def test_parse_skips_blank_and_comment_lines():
    a = parse_alphabet("\n# x\n\nfoo 3\n  \nbar_2 10\n")
    assert a.entries == (("foo", 3), ("bar_2", 10))


@pytest.mark.parametrize(
    "text, line",
    [
        ("A 1\nA 2", 2),
        ("A 1\nB 0", 2),
        ("A -1", 1),
        ("A 1.5", 1),
        ("A x", 1),
        ("A", 1),
        ("A 1 2", 1),
        ("# only a comment\n\n", 1),
        ("", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(AlphabetError) as err:
        parse_alphabet(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_duplicate_message_mentions_symbol():
    with pytest.raises(AlphabetError, match="duplicate symbol 'A'"):
        parse_alphabet("A 1\nA 2")


def test_constructor_validates():
    with pytest.raises(AlphabetError):
        WeightedAlphabet((("A", 0),))
    with pytest.raises(AlphabetError):
        WeightedAlphabet(())
    with pytest.raises(AlphabetError):
        WeightedAlphabet((("A B", 1),))
    with pytest.raises(AlphabetError):
        WeightedAlphabet((("A", True),))


@pytest.mark.parametrize(
    "members, expected",
    [(("G", "F"), 11), ((), 0), (("I", "K"), 14), (("C",), 4), (("A", "B"), 2)],
)
def test_complexity(paper, members, expected):
    assert complexity(theory(*members), paper) == expected


def test_complexity_unknown_symbol(paper):
    with pytest.raises(KeyError):
        complexity(theory("Z"), paper)


def test_effective_max_q(paper, uniform12):
    assert effective_max_q(paper, 14).max_q == 14
    assert effective_max_q(uniform12, 14).max_q == 12
    assert effective_max_q(WeightedAlphabet((("X", 5),)), 100).max_q == 5
    with pytest.raises(ValueError):
        effective_max_q(paper, 0)


def test_render_is_sorted():
    assert render_theory({"G", "F"}) == "{F,G}"
    assert render_theory(set()) == "{}"


symbols = st.text(
    alphabet=st.characters(blacklist_categories=("Zs", "Zl", "Zp", "Cc", "Cs")),
    min_size=1,
    max_size=4,
).filter(lambda s: not s.startswith("#") and not any(c.isspace() for c in s))

alphabets = st.lists(
    st.tuples(symbols, st.integers(1, 1000)), min_size=1, max_size=15, unique_by=lambda e: e[0]
).map(lambda es: WeightedAlphabet(tuple(es)))


@given(alphabets)
def test_parse_serialize_roundtrip(a):
    assert parse_alphabet(serialize_alphabet(a)) == a


@given(alphabets, st.data())
def test_complexity_additive_over_disjoint_unions(a, data):
    syms = list(a.symbols)
    s = data.draw(st.sets(st.sampled_from(syms)))
    t = data.draw(st.sets(st.sampled_from(syms)))
    t -= s
    assert complexity(s | t, a) == complexity(s, a) + complexity(t, a)


@given(alphabets, st.data())
def test_complexity_order_independent(a, data):
    members = data.draw(st.lists(st.sampled_from(list(a.symbols)), unique=True))
    assert complexity(members, a) == complexity(list(reversed(members)), a)
    assert complexity(frozenset(members), a) == complexity(members, a)
