"""Words, reduction, and the presentation text format."""
import pytest
from hypothesis import given, strategies as st

from fillspec.presentations import (
    Presentation,
    Word,
    cyclic_reduce,
    fan_presentation,
    format_word,
    free_presentation,
    free_reduce,
    heisenberg_presentation,
    is_cyclically_reduced,
    parse_word,
    surface_presentation,
    z2_presentation,
)

letters = st.lists(
    st.tuples(st.sampled_from("abct"), st.sampled_from((1, -1))),
    max_size=12,
).map(tuple)


def test_parse_format_roundtrip():
    w = parse_word("a b- a a- t")
    assert format_word(w) == "a b- a a- t"
    assert parse_word(format_word(w)) == w


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_word("a +b")


@given(letters)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r


@given(letters)
def test_word_times_inverse_trivial(w):
    word = Word(w)
    assert (word * word.inverse()).free_reduce().is_trivial()


@given(letters)
def test_cyclic_reduce_is_cyclically_reduced(w):
    assert is_cyclically_reduced(cyclic_reduce(w))


@given(letters, st.integers(min_value=0, max_value=11))
def test_rotation_preserves_cyclic_class(w, k):
    word = Word(cyclic_reduce(w))
    if len(word) == 0:
        return
    k %= len(word)
    rotated = Word(word.letters[k:] + word.letters[:k])
    assert cyclic_reduce(rotated.letters) == rotated.letters


def test_presentation_text_roundtrip():
    p = heisenberg_presentation()
    assert Presentation.parse(p.format()).format() == p.format()


def test_presentation_rejects_unknown_generator():
    with pytest.raises(ValueError):
        Presentation.parse("gens: a\nrels: a b")


def test_presentation_rejects_unreduced_relator():
    with pytest.raises(ValueError):
        Presentation.parse("gens: a b\nrels: a a- b")


def test_stock_presentations():
    z2 = z2_presentation()
    assert z2.min_relator_length == z2.max_relator_length == 4
    fan = fan_presentation()
    assert fan.max_relator_length == 3
    heis = heisenberg_presentation()
    assert [len(r) for r in heis.relators] == [5, 4, 4]
    assert surface_presentation(2).max_relator_length == 8
    free = free_presentation(3)
    assert free.is_free
    with pytest.raises(ValueError):
        free.max_relator_length


def test_free_completion_adds_bigons():
    p = z2_presentation()
    c = p.free_completion()
    assert c.completed and not p.completed
    assert len(c.relators) == len(p.relators) + len(p.generators)
    assert all(
        free_reduce(r.letters) == () for r in c.relators[len(p.relators):]
    )
