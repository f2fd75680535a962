import numpy as np
import pytest

from twistkit import catalog as cat
from twistkit.catalog import CatalogOptions, InadmissibleParameters, UnknownCurve
from twistkit.homology import SurfaceModel
from twistkit.presentation import abelianization, validate
from twistkit.words import parse_word

# (generators, relators) per genus, locked; hand_count below rederives them from the guards
LOCKED_N1 = {3: (5, 7), 4: (8, 19), 5: (9, 30), 6: (16, 44), 7: (11, 43), 8: (19, 60)}
LOCKED_N0 = {4: (9, 26), 5: (10, 40), 6: (17, 53), 7: (12, 55), 8: (20, 71)}
LOCKED_N0_SUBST = {4: (8, 26), 5: (9, 39), 6: (16, 53), 7: (11, 54), 8: (19, 71)}


def hand_count(g, n):
    """Generator and relator counts read off the stated guards family by family,
    written independently of the catalog code."""
    def ind(cond):
        return 1 if cond else 0

    gens = (g - 1) + 3 + 2 * ind(g >= 4)
    even6 = g % 2 == 0 and g >= 6
    if even6:
        gens += g // 2 + 3  # b_0..b_{(g-2)/2} and three bbar_i
    rels = (
        ind(g >= 4) * (g - 2) * (g - 3) // 2  # A1
        + (g - 2)  # A2
        + ind(g >= 4) * ((g - 1) - ind(g >= 5))  # A3, i != 4
        + 2 * ind(g >= 5) + ind(g >= 7)  # A4 A5 A6
        + 2 * ind(g >= 5) * (g - 4)  # Abar1_1 Abar1_2
        + 2 + ind(g >= 4)  # Abar2_1..3
        + 2 * ind(g in (4, 5))  # Abar3_1 Abar3_2
        + 2 * ind(g in (5, 6)) + ind(g in (7, 8))  # Abar4 Abar5 Abar6
        + ind(g >= 4) + 2 + ind(g >= 4) + 2  # Bbar1 Bbar2_* Bbar3 Bbar4_*
        + ind(g >= 4) + ind(g in (4, 5))  # Bbar6_1 Bbar6_2
        + 2 * ind(g >= 6) + ind(g >= 5) + ind(g in (5, 6))  # Bbar7_* Bbar8_1 Bbar8_2
    )
    if even6:
        rels += 2 + (g - 4) // 2 + 1  # A7 A8 A9a|A9b
        rels += (2 if g == 6 else 1) + 1 + 1  # Abar7a|Abar7b, Abar8a|b, Abar9a|b
    if n == 0:
        gens += 1
        rels += (g + 5) if g % 2 else (g + 3)
    return gens, rels


def test_locked_counts_agree_with_hand_count():
    for g, v in LOCKED_N1.items():
        assert hand_count(g, 1) == v, g
    for g, v in LOCKED_N0.items():
        assert hand_count(g, 0) == v, g


def counts(entry, g, n, opts=CatalogOptions()):
    p = cat.instantiate(entry, g, n, opts)
    return len(p.alphabet), len(p.relators)


def test_g3_instantiation_by_hand():
    p = cat.instantiate("t_ng1_odd", 3, 1)
    assert list(p.alphabet) == ["a1", "a2", "e", "f", "y2"]
    assert p.labels() == ["A2[i=1]", "Abar2_1", "Abar2_3", "Bbar2_1", "Bbar2_2", "Bbar4_1", "Bbar4_2"]
    assert cat.relator_count("t_ng1_odd", 3, 1) == 7


@pytest.mark.parametrize("g", sorted(LOCKED_N1))
def test_locked_counts_one_boundary(g):
    assert counts(cat.entry_for(g, 1), g, 1) == LOCKED_N1[g]


@pytest.mark.parametrize("g", sorted(LOCKED_N0))
def test_locked_counts_closed(g):
    assert counts(cat.entry_for(g, 0), g, 0) == LOCKED_N0[g]
    assert counts(cat.entry_for(g, 0), g, 0, CatalogOptions(subst_rho=True)) == LOCKED_N0_SUBST[g]


def test_small_cases():
    p = cat.instantiate("t_small", 2, 0)
    assert list(p.alphabet) == ["a1"] and [str(r.word) for r in p.relators] == ["a1 a1"]
    assert cat.relator_count("m_n2_0", 2, 0) == 3
    assert cat.relator_count("t_small", 3, 0) == 2
    with pytest.raises(InadmissibleParameters):
        cat.instantiate("t_ng1_odd", 2, 1)
    with pytest.raises(InadmissibleParameters):
        cat.instantiate("t_ng0_odd", 5, 1)


def test_rho_substitution_word():
    p = cat.instantiate("t_ng0_odd", 5, 0)
    assert "rho" in p.alphabet
    assert p.relator("C1a").word == parse_word("(a1 a2 a3 a4)^5 rho'")
    q = cat.instantiate("t_ng0_odd", 5, 0, CatalogOptions(subst_rho=True))
    assert "rho" not in q.alphabet and "C1a" not in q.labels()


def test_a7c_excluded_by_default():
    for g in (6, 8):
        p = cat.instantiate("t_ng1_even", g, 1)
        assert not any(label.startswith("Abar7c") for label in p.labels())


def admissible_cases():
    for e in cat.ENTRIES.values():
        for g in range(1, 9):
            for n in (0, 1):
                if e.admissible(g, n):
                    yield e.name, g, n


@pytest.mark.parametrize("entry,g,n", list(admissible_cases()))
def test_every_instantiation_validates(entry, g, n):
    assert validate(cat.instantiate(entry, g, n)) == []


@pytest.mark.parametrize("g", range(4, 9))
def test_superfluous_families_do_not_change_invariants(g):
    full = cat.instantiate(cat.entry_for(g, 0), g, 0)
    lean = cat.instantiate(cat.entry_for(g, 0), g, 0, CatalogOptions(include_superfluous=False))
    assert len(lean.relators) < len(full.relators)
    assert abelianization(lean) == abelianization(full)


def test_curve_class_examples():
    m30 = SurfaceModel(3, 0)
    assert np.array_equal(cat.curve_class("alpha1", 3, 0), m30.mu(1, 2))
    assert not cat.curve_class("delta", 2, 1).any()
    assert np.array_equal(cat.curve_class("beta", 5, 1), SurfaceModel(5, 1).mu(1, 2, 3, 4))
    with pytest.raises(UnknownCurve):
        cat.curve_class("nosuch", 3, 1)


def test_frozen_class_table_matches_resolve():
    from importlib import resources

    shipped = (resources.files("twistkit") / "data" / "classes.txt").read_text(encoding="utf-8")
    assert cat.build_class_table() == shipped


def test_shipped_catalog_files_match_code():
    from importlib import resources

    d = resources.files("twistkit") / "data" / "catalog"
    for name, text in cat.shipped_texts().items():
        assert (d / name).read_text(encoding="utf-8") == text, name


def test_shipped_presentations_parse_back():
    for name in cat.shipped_catalog_files():
        p = cat.catalog_file(name)
        assert validate(p) == []
    assert list(cat.catalog_file("m_n2_1").alphabet) == ["a1", "y"]


def test_manifest_lines():
    lines = [x for x in cat.guard_manifest().splitlines() if x.startswith("family ")]
    assert len(lines) == len(cat.all_families())
    assert all(' guard "' in x and ' template "' in x for x in lines)


def test_class_table_roundtrip():
    text = cat.build_class_table()
    table = cat.parse_class_table(text)
    assert table.keys() == cat.frozen_classes().keys()
    for k, v in table.items():
        assert np.array_equal(v, cat.frozen_classes()[k])
