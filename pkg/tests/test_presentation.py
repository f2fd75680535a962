import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from twistkit import catalog as cat
from twistkit.certificate import parse_certificate
from twistkit.presentation import (
    AbelianInvariants,
    NameCollision,
    NoDefiningRelator,
    Presentation,
    PresentationFormatError,
    RelatorRemovalRefused,
    abelianization,
    exponent_matrix,
    format_presentation,
    parse_presentation,
    simplify,
    smith_diagonal,
    tietze_add_generator,
    tietze_remove_generator,
    tietze_remove_relator,
    validate,
)
from twistkit.words import Word, canonical_relator, exponent_sum, parse_word


def P(gens, rels):
    return Presentation.build(gens, rels)


def sympy_invariants(p):
    """Independent oracle: sympy's Smith form of the exponent matrix."""
    m = exponent_matrix(p)
    n = len(p.alphabet)
    if not m or not n:
        return AbelianInvariants(n, ())
    d = smith_normal_form(Matrix(m), domain=ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape))]
    rank = sum(1 for x in diag if x)
    return AbelianInvariants(n - rank, tuple(sorted(x for x in diag if x > 1)))


def test_validate_clean_and_diagnostics():
    assert validate(P(["a1"], [("T1", "a1 a1")])) == []
    p = parse_presentation("gen: a1\nrel[R]: a1 b\nrel[A2]: a1 a1\nrel[A2]: a1 a1' a1\n")
    kinds = sorted(d.kind for d in validate(p))
    assert kinds == ["DuplicateLabel", "UnknownGenerator", "UnreducedRelator"]


def test_format_roundtrip():
    p = cat.instantiate("t_ng1_odd", 3, 1)
    q = parse_presentation(format_presentation(p, ["header"]))
    assert q.alphabet == p.alphabet
    assert [(r.label, r.word) for r in q.relators] == [(r.label, r.word) for r in p.relators]


def test_format_errors():
    with pytest.raises(PresentationFormatError):
        parse_presentation("gen: a1\nnonsense line\n")


def test_add_generator_rho():
    p = cat.instantiate("t_ng1_odd", 5, 1)
    q = tietze_add_generator(p, "rho", parse_word("(a1 a2 a3 a4)^5"))
    r = q.relators[-1]
    assert r.label == "def_rho"
    assert r.word == parse_word("rho") * parse_word("(a1 a2 a3 a4)^-5")
    assert abelianization(q) == abelianization(p)


def test_add_generator_empty_and_collision():
    p = P(["a1"], [("T1", "a1 a1")])
    q = tietze_add_generator(p, "g", Word())
    assert str(q.relators[-1].word) == "g"
    with pytest.raises(NameCollision):
        tietze_add_generator(p, "a1", Word())
    q = tietze_add_generator(p, "g", parse_word("a1 a1"))
    assert abelianization(q) == abelianization(p) == AbelianInvariants(0, (2,))


def test_remove_generator_examples():
    p = P(["a1", "y2"], [("r1", "y2"), ("r2", "a1' y2 a1"), ("r3", "a1 a1")])
    q = tietze_remove_generator(p, "y2")
    assert list(q.alphabet) == ["a1"]
    assert [str(r.word) for r in q.relators] == ["a1 a1"]
    q = tietze_remove_generator(P(["a", "b"], [("r", "b a'")]), "b")
    assert list(q.alphabet) == ["a"] and not q.relators
    with pytest.raises(NoDefiningRelator):
        tietze_remove_generator(P(["a", "b"], [("r", "b b a")]), "b")


def test_simplify_examples():
    q = simplify(P(["a1", "y2"], [("r1", "y2"), ("r2", "y2'"), ("r3", "a1 a1")]))
    assert list(q.alphabet) == ["a1"] and [str(r.word) for r in q.relators] == ["a1 a1"]
    p = P(["a1", "a2"], [("T1", "a1 a2 a1 a2' a1' a2'"), ("T2", "(a1 a2)^6")])
    assert [r.word for r in simplify(p).relators] == [canonical_relator(r.word) for r in p.relators]
    dup = P(["a1", "a2"], [("T1", "a1 a2 a1 a2' a1' a2'"), ("T1b", "a2 a1 a2' a1' a2' a1")])
    assert len(simplify(dup).relators) == 1


def test_abelianization_examples():
    assert abelianization(P(["a1"], [("T1", "a1 a1")])) == AbelianInvariants(0, (2,))
    assert abelianization(P(["a1", "y2"], [("T1", "a1 y2 a1' y2'")])) == AbelianInvariants(2, ())
    t30 = P(["a1", "a2"], [("T1", "a1 a2 a1 a2' a1' a2'"), ("T2", "(a1 a2)^6")])
    assert exponent_matrix(t30) == [[1, -1], [6, 6]]
    assert abelianization(t30) == AbelianInvariants(0, (12,))
    assert str(abelianization(t30)) == "Z/12"


def test_smith_large_entries():
    m = [[2**70, 6], [4, 2**65 + 2]]
    d = smith_diagonal(m)
    s = smith_normal_form(Matrix(m), domain=ZZ)
    assert sorted(abs(x) for x in d if x) == sorted(abs(int(s[i, i])) for i in range(2) if s[i, i])


def test_remove_relator_rules():
    p = P(["a1"], [("T1", "a1 a1"), ("T2", "a1' a1'"), ("T3", "a1 a1'")])
    assert len(tietze_remove_relator(p, "T3").relators) == 2
    assert len(tietze_remove_relator(p, "T2").relators) == 2
    q = P(["a1"], [("T1", "a1 a1"), ("T2", "a1 a1 a1 a1")])
    with pytest.raises(RelatorRemovalRefused):
        tietze_remove_relator(q, "T2")
    cert = parse_certificate(
        "ctx gen: a1\nctx rel[T1]: a1 a1\nstart: a1 a1 a1 a1\n"
        "step rel T1 : 0 delete a1 a1\nstep rel T1 : 0 delete a1 a1\ntarget: 1\n")
    assert [r.label for r in tietze_remove_relator(q, "T2", cert).relators] == ["T1"]
    bad = parse_certificate("ctx gen: a1\nctx rel[T1]: a1 a1\nstart: a1 a1 a1 a1\ntarget: a1 a1 a1 a1\n")
    with pytest.raises(RelatorRemovalRefused):
        tietze_remove_relator(q, "T2", bad)


def test_m_presentations_lie_in_parity_kernel():
    for name, (g, n, _, _) in cat.M_PRESENTATIONS.items():
        for r in cat.instantiate(name, g, n).relators:
            assert exponent_sum(r.word, "y") % 2 == 0, (name, r.label)


GENS = ["a", "b", "c"]
word_text = st.lists(st.tuples(st.sampled_from(GENS), st.sampled_from(["", "'"])), min_size=1, max_size=6).map(
    lambda ls: " ".join(g + s for g, s in ls))
presentations = st.lists(word_text, min_size=0, max_size=4).map(
    lambda ws: P(GENS, [(f"r{i}", x) for i, x in enumerate(ws)]))


@settings(max_examples=300, deadline=None)
@given(presentations)
def test_abelianization_matches_sympy(p):
    inv = abelianization(p)
    assert inv == sympy_invariants(p)
    for a, b in zip(inv.torsion, inv.torsion[1:]):
        assert b % a == 0
    assert all(d >= 2 for d in inv.torsion)


@settings(max_examples=300, deadline=None)
@given(presentations, word_text)
def test_tietze_and_simplify_preserve_invariants(p, defining):
    inv = abelianization(p)
    q = tietze_add_generator(p, "z", parse_word(defining))
    assert abelianization(q) == inv
    assert abelianization(tietze_remove_generator(q, "z")) == inv
    s = simplify(p)
    assert abelianization(s) == inv
    assert simplify(s) == s
