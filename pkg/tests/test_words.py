import pytest
from hypothesis import given, settings, strategies as st

from twistkit.words import (
    Alphabet,
    AlphabetMismatch,
    ExponentOverflow,
    UnknownGenerator,
    Word,
    WordSyntaxError,
    WordTooLong,
    canonical_relator,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    invert,
    is_rotation_of_relator,
    multiply,
    parse_word,
    substitute,
)

GENS = ["a1", "a2", "e", "y2"]
letters = st.lists(st.tuples(st.sampled_from(GENS), st.sampled_from([1, -1])), max_size=14)
words = letters.map(lambda ls: Word(tuple(ls)))


def w(text, alphabet=None):
    return parse_word(text, alphabet)


def test_inverse_cancels():
    assert w("a1 a1'").is_empty()


def test_group_power_expands():
    assert str(w("(a1 a2)^6")) == " ".join(["a1 a2"] * 6)


def test_braid_relator_parses_letter_for_letter():
    r = w("a1 a2 a1 a2' a1' a2'")
    assert r.letters == (("a1", 1), ("a2", 1), ("a1", 1), ("a2", -1), ("a1", -1), ("a2", -1))


def test_negative_and_nested_powers():
    assert w("(a1 (a2)^2)^-1") == w("a2' a2' a1'")
    assert w("(a1)^0").is_empty()


def test_unknown_generator():
    with pytest.raises(UnknownGenerator) as exc:
        w("a1 b", ["a1"])
    assert exc.value.token == "b"


@pytest.mark.parametrize("text", ["a1 )", "(a1 a2", "(a1 a2) a1", "(a1)^x", "A1", "a1''"])
def test_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        w(text)


def test_exponent_bound():
    with pytest.raises(ExponentOverflow):
        w("(a1)^2147483648")
    with pytest.raises(ExponentOverflow):
        parse_word("(a1)^5", exponent_bound=4)


def test_length_cap():
    with pytest.raises(WordTooLong):
        w("(a1 a2)^600000")


def test_multiply_examples():
    assert multiply(w("a1 a2"), w("a2' a1'")).is_empty()
    assert str(multiply(w("a1"), w("a1"))) == "a1 a1"
    # (a2 e a1)^2 by concatenation: nothing cancels
    assert str(multiply(w("a2 e a1"), w("a2 e a1"))) == "a2 e a1 a2 e a1"


def test_multiply_alphabet_mismatch():
    u = Word.from_names(["a1"], alphabet=Alphabet(["a1"]))
    v = Word.from_names(["b"], alphabet=Alphabet(["b"]))
    with pytest.raises(AlphabetMismatch):
        multiply(u, v)


def test_invert_examples():
    assert invert(Word()).is_empty()
    assert str(invert(w("a1 a2"))) == "a2' a1'"
    assert invert(w("(a1 a2)^6")) == w("(a2' a1')^6")


def test_conjugate_examples():
    x = w("a1 e a2")
    assert conjugate(Word(), x) == x
    assert conjugate(w("a1"), w("a1")) == w("a1")
    c = conjugate(w("y2"), w("a1"))
    assert str(c) == "y2 a1 y2'" and len(c) == 3


def test_cyclic_reduce_examples():
    assert cyclic_reduce(w("a2' a1 a2")) == (w("a1"), w("a2'"))
    assert cyclic_reduce(w("a1 a2 a1'")) == (w("a2"), w("a1"))
    braid = w("a1 a2 a1 a2' a1' a2'")
    assert cyclic_reduce(braid) == (braid, Word())


def test_exponent_sum_examples():
    assert exponent_sum(w("y a1 y' a1"), "y") == 0
    assert exponent_sum(w("(a1 y)^2"), "y") == 2
    assert exponent_sum(Word(), "y") == 0


def test_substitute_examples():
    rho = w("(a1 a2 a3 a4)^5")
    assert substitute(w("rho"), {"rho": rho}) == rho
    x = w("a1 e a2'")
    assert substitute(x, {}) == x
    assert substitute(w("a1 a1'"), {"a1": w("e e")}).is_empty()


def test_canonical_relator_is_rotation_and_inversion_invariant():
    r = w("a1 a2 a1 a2' a1' a2'")
    for k in range(len(r)):
        rot = Word(r.letters[k:] + r.letters[:k])
        assert canonical_relator(rot) == canonical_relator(r)
        assert canonical_relator(invert(rot)) == canonical_relator(r)
        assert is_rotation_of_relator(rot, r) and is_rotation_of_relator(invert(rot), r)


# properties


@settings(max_examples=10_000, deadline=None)
@given(words)
def test_invert_involution_and_cancellation(x):
    assert invert(invert(x)) == x
    assert multiply(x, invert(x)).is_empty()
    assert multiply(invert(x), x).is_empty()


@settings(max_examples=500, deadline=None)
@given(letters)
def test_reduced_and_parse_idempotent(ls):
    x = Word(tuple(ls))
    for a, b in zip(x.letters, x.letters[1:]):
        assert not (a[0] == b[0] and a[1] == -b[1])
    if len(x):
        assert parse_word(str(x)) == x
        assert parse_word(str(parse_word(str(x)))) == x


@settings(max_examples=500, deadline=None)
@given(words, words, words)
def test_multiply_associative_with_identity(u, v, x):
    assert multiply(multiply(u, v), x) == multiply(u, multiply(v, x))
    assert multiply(Word(), u) == u == multiply(u, Word())
    assert len(multiply(u, v)) <= len(u) + len(v)


@settings(max_examples=500, deadline=None)
@given(words)
def test_cyclic_reduce_reassembles(x):
    core, c = cyclic_reduce(x)
    assert multiply(multiply(c, core), invert(c)) == x
    if len(core) > 1:
        first, last = core.letters[0], core.letters[-1]
        assert not (first[0] == last[0] and first[1] == -last[1])


@settings(max_examples=500, deadline=None)
@given(words, words, st.sampled_from(GENS))
def test_exponent_sum_homomorphism(u, v, g):
    assert exponent_sum(multiply(u, v), g) == exponent_sum(u, g) + exponent_sum(v, g)


@settings(max_examples=300, deadline=None)
@given(words, words, st.fixed_dictionaries({g: words for g in GENS}))
def test_substitute_respects_multiplication(u, v, m):
    assert substitute(multiply(u, v), m) == multiply(substitute(u, m), substitute(v, m))
