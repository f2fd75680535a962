import itertools

import pytest
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from twistkit import catalog as cat
from twistkit.enumeration import (
    INCONCLUSIVE,
    IncompleteTable,
    InvalidSubgroupSpec,
    SubgroupSpec,
    check_table,
    reidemeister_schreier,
    schreier_counts,
    todd_coxeter,
    twist_names,
    twist_subgroup,
)
from twistkit.presentation import Presentation, abelianization, simplify
from twistkit.words import Word, canonical_relator, parse_word


def M(name):
    g, n, _, _ = cat.M_PRESENTATIONS[name]
    return cat.instantiate(name, g, n)


def sympy_order(p):
    F = free_group(",".join(p.alphabet))[0]
    gens = dict(zip(p.alphabet, F.generators))
    rels = []
    for r in p.relators:
        x = F.identity
        for n, s in r.word.letters:
            x = x * gens[n] ** s
        rels.append(x)
    return FpGroup(F, rels).order()


def test_klein_four_by_brute_force():
    # a1 -> (1,0), y -> (0,1) satisfies every relator, and words of length <= 4
    # reach four distinct elements; enumeration must then give exactly 4.
    p = M("m_n2_0")
    image = {"a1": (1, 0), "y": (0, 1)}

    def ev(w):
        v = (0, 0)
        for n, _ in w.letters:
            v = ((v[0] + image[n][0]) % 2, (v[1] + image[n][1]) % 2)
        return v

    assert all(ev(r.word) == (0, 0) for r in p.relators)
    reached = {ev(Word(tuple((g, 1) for g in gs))) for k in range(5) for gs in itertools.product(p.alphabet, repeat=k)}
    assert len(reached) == 4
    t = todd_coxeter(p)
    assert t.complete and t.index == 4 == sympy_order(p)


def test_parity_index_two():
    for name in ("m_n2_0", "m_n2_1", "m_n3_0"):
        p = M(name)
        t = todd_coxeter(p, SubgroupSpec.parity_of("y", p.alphabet))
        assert t.complete and t.index == 2
        assert check_table(p, t)
        assert t.transversal[0].is_empty() and str(t.transversal[1]) == "y"


def test_twist_subgroup_orders():
    p = cat.instantiate("t_small", 2, 0)
    assert todd_coxeter(p).index == 2 == sympy_order(p)


def test_infinite_group_is_inconclusive():
    p = M("m_n2_1")
    t = todd_coxeter(p, SubgroupSpec.trivial(), max_cosets=10**4)
    assert t.status == INCONCLUSIVE and not t.complete and t.index == 0


def test_env_cap(monkeypatch):
    monkeypatch.setenv("TWISTKIT_MAX_COSETS", "3")
    assert not todd_coxeter(M("m_n2_0")).complete
    monkeypatch.delenv("TWISTKIT_MAX_COSETS")
    assert todd_coxeter(M("m_n2_0")).complete


def test_invalid_subgroup():
    p = M("m_n2_0")
    with pytest.raises(InvalidSubgroupSpec):
        todd_coxeter(p, SubgroupSpec(words=[parse_word("b")]))
    with pytest.raises(InvalidSubgroupSpec):
        SubgroupSpec.parity_of("z", p.alphabet)


def test_rs_needs_complete_table():
    p = M("m_n2_1")
    t = todd_coxeter(p, SubgroupSpec.trivial(), max_cosets=100)
    with pytest.raises(IncompleteTable):
        reidemeister_schreier(p, t)


EXPECTED = {
    "m_n2_0": (["a1"], ["a1 a1"]),
    "m_n2_1": (["a1", "y2"], ["a1 y2 a1' y2'"]),
    "m_n3_0": (["a1", "a2"], ["a1 a2 a1 a2' a1' a2'", "a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2"]),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_reidemeister_schreier_regression(name):
    q = twist_subgroup(M(name))
    gens, rels = EXPECTED[name]
    assert list(q.alphabet) == gens
    assert sorted(str(canonical_relator(r.word, q.alphabet)) for r in q.relators) == sorted(rels)


def test_m_n2_0_unsimplified_matches_hand_rewrite():
    # before cleanup the kernel is <a1, y2 | a1^2, y2, a1^-1 y2 a1> up to copies
    q = twist_subgroup(M("m_n2_0"), simplified=False)
    keys = {canonical_relator(r.word, q.alphabet) for r in q.relators if not r.word.is_empty()}
    for text in ("a1 a1", "y2", "a1' y2 a1"):
        assert canonical_relator(parse_word(text), q.alphabet) in keys


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_schreier_index_formula(name):
    p = M(name)
    t = todd_coxeter(p, SubgroupSpec.parity_of("y", p.alphabet))
    c = schreier_counts(p, t)
    assert c["raw_generators"] == t.index * len(p.alphabet)
    assert c["raw_relators"] == t.index * len(p.relators)
    assert c["nontrivial_generators"] == t.index * len(p.alphabet) - t.index + 1
    assert len(reidemeister_schreier(p, t).relators) == c["raw_relators"]


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_transversal_choice_does_not_change_abelianization(name):
    p = M(name)
    a = twist_subgroup(p, simplified=False, transversal_sign=1)
    b = twist_subgroup(p, simplified=False, transversal_sign=-1)
    assert abelianization(a) == abelianization(b) == abelianization(simplify(a))


def test_enumeration_deterministic():
    p = M("m_n3_0")
    s = SubgroupSpec.parity_of("y", p.alphabet)
    assert todd_coxeter(p, s).rows == todd_coxeter(p, s).rows


def test_twist_names():
    p = M("m_n2_1")
    t = todd_coxeter(p, SubgroupSpec.parity_of("y", p.alphabet))
    names = set(twist_names(p, t, "y").values())
    assert names == {"a1", "y2"}
    assert isinstance(reidemeister_schreier(p, t), Presentation)
