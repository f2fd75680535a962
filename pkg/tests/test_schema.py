import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twistkit.homology import SurfaceModel, evaluate, twist_assignment
from twistkit.schema import (
    BadChainConfiguration,
    BadLanternConfiguration,
    MissingClass,
    MissingSideData,
    SchemaError,
    TwistSymbol,
    boundary_trivial,
    chain_boundary_class,
    expand_push,
    gen_chain,
    gen_lantern,
    lantern_configurations,
    standard_chain_classes,
)
from twistkit.words import parse_word


def chain_setup(k, genus=None, n=0):
    m = SurfaceModel(genus or k + 1, n)
    cs = standard_chain_classes(m, k)
    classes = {f"c{i + 1}": c for i, c in enumerate(cs)}
    classes["d"] = chain_boundary_class(m, cs)
    classes["dp"] = classes["d"]
    return m, classes


def chain_word(k, m, classes, rot=0):
    names = [f"c{i + 1}" for i in range(k)]
    if k % 2:
        return gen_chain(names, classes, m, "d", "dp", rot=rot)
    return gen_chain(names, classes, m, "d", rot=rot)


def is_identity(w, classes, m):
    return np.array_equal(evaluate(w, twist_assignment(m, classes), m), m.identity())


@pytest.mark.parametrize("k", range(1, 7))
def test_chain_relator_is_identity_mod_two(k):
    m, classes = chain_setup(k)
    w = chain_word(k, m, classes)
    expo = k + 1 if k % 2 else 2 * k + 2
    assert len(w) == k * expo + (2 if k % 2 else 1)
    assert is_identity(w, classes, m)


def test_two_chain_word():
    m, classes = chain_setup(2)
    classes = {"a1": classes["c1"], "a2": classes["c2"], "d": m.zero()}
    assert gen_chain(["a1", "a2"], classes, m, "d") == parse_word("(a1 a2)^6 d'")
    assert gen_chain(["a1", "a2"], classes, m, None) == parse_word("(a1 a2)^6")


def test_one_chain_word():
    m, classes = chain_setup(1)
    assert gen_chain(["c1"], classes, m, "d", "dp") == parse_word("c1 c1 dp' d'")


def test_rotation_is_conjugate():
    m, classes = chain_setup(3)
    w0 = chain_word(3, m, classes)
    w1 = chain_word(3, m, classes, rot=1)
    assert str(w1).startswith("c2 c3 c1")
    assert is_identity(w1, classes, m) and len(w0) == len(w1)


def test_bad_chains():
    m, classes = chain_setup(3)
    with pytest.raises(BadChainConfiguration):
        gen_chain([], classes, m)
    with pytest.raises(BadChainConfiguration):
        gen_chain(["c1", "c3"], classes, m, None)
    with pytest.raises(BadChainConfiguration):
        gen_chain(["c1", "c2"], classes, m, "d", "dp")
    with pytest.raises(BadChainConfiguration):
        gen_chain(["c1", "c2", "c3"], classes, m, None, None)
    with pytest.raises(BadChainConfiguration):
        gen_chain(["c1", "1"], classes, m)
    with pytest.raises(BadChainConfiguration):
        gen_chain(["c1"], {"c1": m.mu(1)}, m)
    with pytest.raises(MissingClass):
        gen_chain(["c1", "zz"], classes, m)
    with pytest.raises(BadChainConfiguration):
        standard_chain_classes(m, 4)


def five_one_lantern():
    m = SurfaceModel(5, 1)
    b1, b2 = m.mu(1, 2), m.mu(3, 4)
    classes = {"b1": b1, "b2": b2, "b3": b1 ^ b2, "b4": m.zero(),
               "i1": b1 ^ b2, "i2": b2, "i3": b1}
    return m, classes


def test_lantern_word_and_identity():
    m, classes = five_one_lantern()
    w = gen_lantern(["i1", "i2", "i3", "b1", "b2", "b3", "b4"], classes, m)
    assert w == parse_word("i1 i2 i3 b4' b3' b2' b1'")
    assert is_identity(w, classes, m)


def test_all_trivial_lantern_is_empty():
    m = SurfaceModel(3, 1)
    assert gen_lantern(["1"] * 7, {}, m).is_empty()


def test_extended_lantern_drops_one_symbol():
    m, classes = five_one_lantern()
    w = gen_lantern(["i1", "i2", "i3", "b1", "b2", "b3", "b4"], classes, m, trivial=["b4"])
    assert w == parse_word("i1 i2 i3 b3' b2' b1'")
    assert is_identity(w, classes, m)


def test_every_n51_lantern_configuration():
    m = SurfaceModel(5, 1)
    names = [f"d{i}" for i in range(1, 8)]
    configs = lantern_configurations(m)
    two = [c for c in m.all_classes() if not m.pairing(c, c)]
    brute = sum(1 for t in itertools.combinations_with_replacement(range(len(two)), 3)
                if all(not m.pairing(two[a], two[b]) for a, b in itertools.combinations(t, 2)))
    assert len(configs) == brute == 196
    extended = 0
    for cfg in configs:
        classes = dict(zip(names, cfg))
        assert is_identity(gen_lantern(names, classes, m), classes, m)
        for x, c in zip(names[3:], cfg[3:]):
            if not c.any():
                w = gen_lantern(names, classes, m, trivial=[x])
                assert len(w) == 6 and is_identity(w, classes, m)
                extended += 1
    assert extended > 0


def test_bad_lanterns():
    m, classes = five_one_lantern()
    with pytest.raises(BadLanternConfiguration):
        gen_lantern(["i1", "i2", "b1", "b2", "b3", "b4"], classes, m)
    with pytest.raises(BadLanternConfiguration):
        gen_lantern(["i1", "i2", "i3", "b1", "b2", "b3", "b4"], classes, m, trivial=["b1"])
    with pytest.raises(BadLanternConfiguration):
        gen_lantern(["i1", "i1", "i3", "b1", "b2", "b3", "b4"], classes, m)
    odd = dict(classes, b4=m.mu(2, 3))
    with pytest.raises(BadLanternConfiguration):
        gen_lantern(["i1", "i2", "i3", "b1", "b2", "b3", "b4"], odd, m)
    with pytest.raises(BadLanternConfiguration):
        gen_lantern(["i1", "i2", "i3", "b1", "b2", "b3", "b4"], dict(classes, b4=m.mu(5)), m)


def test_boundary_trivial():
    m = SurfaceModel(3, 1)
    assert boundary_trivial("t_d'", {"t_d": m.zero()}, m) == parse_word("t_d'")
    with pytest.raises(SchemaError):
        boundary_trivial("a1", {"a1": m.mu(1, 2)}, m)


def test_twist_symbol():
    s = TwistSymbol.parse("e'")
    assert s.orientation == -1 and str(s) == "e'" and s.word() == parse_word("e'")
    assert TwistSymbol.parse("1").trivial and TwistSymbol.parse("1").word().is_empty()


def test_push_macros():
    assert expand_push("crosscap_square", "y2", {"curve": "t_delta"}).word == parse_word("t_delta")
    assert expand_push("crosscap_square", "y2", {"curve": None}).word.is_empty()
    phi = expand_push("point", "phi", {"right": "a2", "left": "e"})
    assert phi.name == "phi" and phi.word == parse_word("a2 e'")
    assert expand_push("point", "z", {"right": None, "left": None}).word.is_empty()
    with pytest.raises(MissingSideData):
        expand_push("point", "z", None)
    with pytest.raises(MissingSideData):
        expand_push("point", "z", {"right": "a1"})
    with pytest.raises(MissingSideData):
        expand_push("crosscap_square", "z", {})
    with pytest.raises(SchemaError):
        expand_push("slide", "z", {"right": "a1", "left": "a2"})


@pytest.mark.parametrize("k", range(1, 5))
def test_chain_as_matrix_identity(k):
    # (T_1 ... T_k)^{exp} equals the boundary transvections as matrices
    m, classes = chain_setup(k, genus=k + 2)
    ts = twist_assignment(m, classes)
    p = m.identity()
    for i in range(k):
        p = (p @ ts[f"c{i + 1}"]) % 2
    expo = k + 1 if k % 2 else 2 * k + 2
    lhs = np.linalg.matrix_power(p.astype(np.int64), expo) % 2
    rhs = m.identity()
    if k % 2:
        rhs = (ts["d"] @ ts["dp"]) % 2
    assert np.array_equal(lhs, rhs)


G, N = 7, 3
M73 = SurfaceModel(G, N)


@st.composite
def moved_chains(draw):
    k = draw(st.integers(1, 5))
    perm = draw(st.permutations(range(G)))
    shifts = draw(st.lists(st.lists(st.integers(0, 1), min_size=N - 1, max_size=N - 1), min_size=k, max_size=k))
    return k, perm, shifts


@settings(max_examples=200, deadline=None)
@given(moved_chains())
def test_random_admissible_chains(data):
    # permuting crosscaps preserves the form; adding boundary classes preserves all pairings
    k, perm, shifts = data
    cs = []
    for i, sh in zip(range(1, k + 1), shifts):
        c = M73.mu(perm[i - 1] + 1, perm[i] + 1)
        c[G:] ^= np.array(sh, dtype=np.uint8)
        cs.append(c)
    classes = {f"c{i + 1}": c for i, c in enumerate(cs)}
    classes["d"] = classes["dp"] = chain_boundary_class(M73, cs)
    w = chain_word(k, M73, classes)
    assert is_identity(w, classes, M73)
