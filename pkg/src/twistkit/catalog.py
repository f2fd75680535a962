"""Encoded presentations of twist subgroups T(N_{g,n}) for n <= 1, and the
three mapping class group presentations they are extracted from in low genus.

Relator families carry a guard predicate, a display template and a builder
that emits concrete relation text ``lhs = rhs``.  Labels are ASCII
(``Abar2_1`` for the barred A2 with subscript 1); ``display_label`` holds the
typeset form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable

import numpy as np

from .homology import (
    PairingConstraint,
    RelatorConstraint,
    SurfaceModel,
    class_solver,
    format_class,
    parse_class,
    relator_pairing_constraints,
    transvection,
)
from .presentation import Presentation, Relator, format_presentation, parse_presentation
from .words import Alphabet, Word, invert, parse_word, substitute


class CatalogError(Exception):
    pass


class InadmissibleParameters(CatalogError):
    pass


class UnknownEntry(CatalogError):
    pass


class UnknownCurve(CatalogError):
    pass


@dataclass(frozen=True)
class CatalogOptions:
    subst_rho: bool = False
    assume_a7: str = "a1"
    include_superfluous: bool = True
    include_a7c: bool = False
    a7c_z: str | None = None  # word text for z_{g-1}; may use {g}

    def describe(self) -> str:
        return (f"subst_rho={self.subst_rho} assume_a7={self.assume_a7} "
                f"include_superfluous={self.include_superfluous} include_a7c={self.include_a7c}")


DEFAULT_OPTIONS = CatalogOptions()


def seq(lo: int, hi: int, stem: str = "a", inverse: bool = False) -> str:
    """``a{lo} ... a{hi}`` (empty if hi < lo); with ``inverse`` the primed letters."""
    s = "'" if inverse else ""
    return " ".join(f"{stem}{i}{s}" for i in range(lo, hi + 1))


def rseq(hi: int, lo: int, stem: str = "a", inverse: bool = False) -> str:
    s = "'" if inverse else ""
    return " ".join(f"{stem}{i}{s}" for i in range(hi, lo - 1, -1))


Instances = Callable[[int, CatalogOptions], list[tuple[str, str]]]


@dataclass(frozen=True)
class RelatorFamily:
    label: str
    display_label: str
    guard: str
    template: str
    applies: Callable[[int], bool]
    instances: Instances
    superfluous_in_closed: str = ""  # "odd" or "even": redundant in the closed case of that parity
    opt_in: bool = False


def _one(text: str) -> Instances:
    return lambda g, o: [("", text)]


def _fam(label, display, guard, template, applies, instances, **kw) -> RelatorFamily:
    if isinstance(instances, str):
        instances = _one(instances)
    return RelatorFamily(label, display, guard, template, applies, instances, **kw)


def _a7c(g: int, o: CatalogOptions) -> list[tuple[str, str]]:
    if not o.a7c_z:
        raise CatalogError("Abar7c needs a reading of z_{g-1}; pass a7c_z")
    z = o.a7c_z.format(g=g)
    out = []
    for i in sorted({(g - 6) // 2, (g - 4) // 2}):
        if i >= 2:
            out.append((f"[i={i}]", f"bbar{i} = ({z}) b{i} ({z})^-1"))
    return out


def _chain8(prev: str, mids: str, cur: str) -> str:
    return f"({prev} {mids} {cur})^5 ({prev} {mids})^-6"


# Relator families in their stated order.  Guards are the stated
# side conditions.
ODD_OR_FOUR_FAMILIES: tuple[RelatorFamily, ...] = (
    # (A1) a_i a_j = a_j a_i for g>=4, |i-j|>1
    _fam("A1", "A1", "g≥4, |i−j|>1", "a{i} a{j} = a{j} a{i}", lambda g: g >= 4,
         lambda g, o: [(f"[i={i},j={j}]", f"a{i} a{j} = a{j} a{i}")
                       for i in range(1, g) for j in range(i + 2, g)]),
    # (A2) a_i a_{i+1} a_i = a_{i+1} a_i a_{i+1} for i=1,...,g-2
    _fam("A2", "A2", "i=1,…,g−2", "a{i} a{i+1} a{i} = a{i+1} a{i} a{i+1}", lambda g: g >= 3,
         lambda g, o: [(f"[i={i}]", f"a{i} a{i+1} a{i} = a{i+1} a{i} a{i+1}") for i in range(1, g - 1)]),
    # (A3) a_i b = b a_i for g>=4, i!=4
    _fam("A3", "A3", "g≥4, i≠4", "a{i} b = b a{i}", lambda g: g >= 4,
         lambda g, o: [(f"[i={i}]", f"a{i} b = b a{i}") for i in range(1, g) if i != 4]),
    # (A4) b a_4 b = a_4 b a_4 for g>=5
    _fam("A4", "A4", "g≥5", "b a4 b = a4 b a4", lambda g: g >= 5, "b a4 b = a4 b a4"),
    # (A5) (a_2 a_3 a_4 b)^10 = (a_1 a_2 a_3 a_4 b)^6 for g>=5
    _fam("A5", "A5", "g≥5", "(a2 a3 a4 b)^10 = (a1 a2 a3 a4 b)^6", lambda g: g >= 5,
         "(a2 a3 a4 b)^10 = (a1 a2 a3 a4 b)^6"),
    # (A6) (a_2 ... a_6 b)^12 = (a_1 ... a_6 b)^9 for g>=7
    _fam("A6", "A6", "g≥7", "(a2 a3 a4 a5 a6 b)^12 = (a1 a2 a3 a4 a5 a6 b)^9", lambda g: g >= 7,
         "(a2 a3 a4 a5 a6 b)^12 = (a1 a2 a3 a4 a5 a6 b)^9"),
    # (Abar1_1) e a_j = a_j e for g>=5, j>=4
    _fam("Abar1_1", "Ā1₁", "g≥5, j≥4", "e a{j} = a{j} e", lambda g: g >= 5,
         lambda g, o: [(f"[j={j}]", f"e a{j} = a{j} e") for j in range(4, g)]),
    # (Abar1_2) f a_j = a_j f for g>=5, j>=4
    _fam("Abar1_2", "Ā1₂", "g≥5, j≥4", "f a{j} = a{j} f", lambda g: g >= 5,
         lambda g, o: [(f"[j={j}]", f"f a{j} = a{j} f") for j in range(4, g)]),
    # (Abar2_1) a_1 e a_1 = e a_1 e
    _fam("Abar2_1", "Ā2₁", "", "a1 e a1 = e a1 e", lambda g: True, "a1 e a1 = e a1 e"),
    # (Abar2_2) a_3^-1 e a_3^-1 = e a_3^-1 e for g>=4
    _fam("Abar2_2", "Ā2₂", "g≥4", "a3' e a3' = e a3' e", lambda g: g >= 4, "a3' e a3' = e a3' e"),
    # (Abar2_3) a_1 f a_1 = f a_1 f
    _fam("Abar2_3", "Ā2₃", "", "a1 f a1 = f a1 f", lambda g: True, "a1 f a1 = f a1 f"),
    # (Abar3_1) a_1 c = c a_1 for g=4,5
    _fam("Abar3_1", "Ā3₁", "g=4,5", "a1 c = c a1", lambda g: g in (4, 5), "a1 c = c a1"),
    # (Abar3_2) e c = c e for g=4,5
    _fam("Abar3_2", "Ā3₂", "g=4,5", "e c = c e", lambda g: g in (4, 5), "e c = c e"),
    # (Abar4) c a_4 c = a_4 c a_4 for g=5,6
    _fam("Abar4", "Ā4", "g=5,6", "c a4 c = a4 c a4", lambda g: g in (5, 6), "c a4 c = a4 c a4"),
    # (Abar5) (e^-1 a_3 a_4 c)^10 = (a_1^-1 e^-1 a_3 a_4 c)^6 for g=5,6
    _fam("Abar5", "Ā5", "g=5,6", "(e' a3 a4 c)^10 = (a1' e' a3 a4 c)^6", lambda g: g in (5, 6),
         "(e' a3 a4 c)^10 = (a1' e' a3 a4 c)^6"),
    # (Abar6) (e^-1 a_3 ... a_6 c)^12 = (a_1^-1 e^-1 a_3 ... a_6 c)^9 for g=7,8
    _fam("Abar6", "Ā6", "g=7,8", "(e' a3 a4 a5 a6 c)^12 = (a1' e' a3 a4 a5 a6 c)^9", lambda g: g in (7, 8),
         "(e' a3 a4 a5 a6 c)^12 = (a1' e' a3 a4 a5 a6 c)^9"),
    # (Bbar1) (a_2 a_3 a_1 a_2 e a_1 a_3^-1 e)(a_2 a_3 a_1 a_2 f a_1 a_3^-1 f) = 1 for g>=4
    _fam("Bbar1", "B̄1", "g≥4", "(a2 a3 a1 a2 e a1 a3' e)(a2 a3 a1 a2 f a1 a3' f) = 1", lambda g: g >= 4,
         "(a2 a3 a1 a2 e a1 a3' e) (a2 a3 a1 a2 f a1 a3' f) = "),
    # (Bbar2_1) y^2 = a_2 a_1 e a_1 a_2 a_1 a_2 a_1 a_2 f a_1 a_2
    _fam("Bbar2_1", "B̄2₁", "", "y2 = a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2", lambda g: True,
         "y2 = a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2"),
    # (Bbar2_2) (a_2 a_1 e a_1 a_2 a_1 a_2 a_1 a_2 f a_1 a_2)(a_2 a_1 f a_1 a_2 a_1 a_2 a_1 a_2 e a_1 a_2) = 1
    _fam("Bbar2_2", "B̄2₂", "", "(a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2)(a2 a1 f a1 a2 a1 a2 a1 a2 e a1 a2) = 1",
         lambda g: True,
         "(a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2) (a2 a1 f a1 a2 a1 a2 a1 a2 e a1 a2) = ",
         ),
    # (Bbar3) y^2 a_3 = a_3 y^2 for g>=4
    _fam("Bbar3", "B̄3", "g≥4", "y2 a3 = a3 y2", lambda g: g >= 4, "y2 a3 = a3 y2"),
    # (Bbar4_1) e a_2 = a_2 e
    _fam("Bbar4_1", "B̄4₁", "", "e a2 = a2 e", lambda g: True, "e a2 = a2 e"),
    # (Bbar4_2) f a_2 = a_2 f
    _fam("Bbar4_2", "B̄4₂", "", "f a2 = a2 f", lambda g: True, "f a2 = a2 f"),
    # (Bbar6_1) b c = (a_1 a_2 a_3 f^-1 a_3^-1 a_2^-1 a_1^-1)(a_2^-1 a_3^-1 e^-1 a_3 a_2) for g>=4
    _fam("Bbar6_1", "B̄6₁", "g≥4", "b c = (a1 a2 a3 f' a3' a2' a1')(a2' a3' e' a3 a2)", lambda g: g >= 4,
         "b c = (a1 a2 a3 f' a3' a2' a1') (a2' a3' e' a3 a2)"),
    # (Bbar6_2) c (y^2 b y^-2) = (a_1^-1 e^-1 a_3 a_2 a_3^-1 e a_1)(e a_3^-1 y^2 a_2 y^-2 a_3 e^-1) for g=4,5
    _fam("Bbar6_2", "B̄6₂", "g=4,5", "c (y2 b y2') = (a1' e' a3 a2 a3' e a1)(e a3' y2 a2 y2' a3 e')",
         lambda g: g in (4, 5), "c (y2 b y2') = (a1' e' a3 a2 a3' e a1) (e a3' y2 a2 y2' a3 e')"),
    # (Bbar7_1) (a4 a5 a3 a4 a2 a3 a1 a2 e a1 a3^-1 e a4^-1 a3^-1 a5^-1 a4^-1) c = b (same) for g>=6
    _fam("Bbar7_1", "B̄7₁", "g≥6", "X c = b X, X = a4 a5 a3 a4 a2 a3 a1 a2 e a1 a3' e a4' a3' a5' a4'",
         lambda g: g >= 6,
         "(a4 a5 a3 a4 a2 a3 a1 a2 e a1 a3' e a4' a3' a5' a4') c"
         " = b (a4 a5 a3 a4 a2 a3 a1 a2 e a1 a3' e a4' a3' a5' a4')"),
    # (Bbar7_2) (a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1) b (a4 a5 a3 a4 a2 a3 a1 a2) y^2 = y^2 (same) for g>=6
    _fam("Bbar7_2", "B̄7₂", "g≥6", "Y y2 = y2 Y, Y = (a2' a1' a3' a2' a4' a3' a5' a4') b (a4 a5 a3 a4 a2 a3 a1 a2)",
         lambda g: g >= 6,
         "(a2' a1' a3' a2' a4' a3' a5' a4') b (a4 a5 a3 a4 a2 a3 a1 a2) y2"
         " = y2 (a2' a1' a3' a2' a4' a3' a5' a4') b (a4 a5 a3 a4 a2 a3 a1 a2)"),
    # (Bbar8_1) (a1 e a3^-1 a4^-1 c a4 a3 e^-1 a1^-1)(a1^-1 a2^-1 a3^-1 a4^-1 b^-1 a4 a3 a2 a1)
    #           = a4^-1 (a3^-1 a2^-1 e^-1 a3 a4 a3^-1 e a2 a3) a2^-1 e^-1 for g>=5
    _fam("Bbar8_1", "B̄8₁", "g≥5",
         "(a1 e a3' a4' c a4 a3 e' a1')(a1' a2' a3' a4' b' a4 a3 a2 a1) = a4' (a3' a2' e' a3 a4 a3' e a2 a3) a2' e'",
         lambda g: g >= 5,
         "(a1 e a3' a4' c a4 a3 e' a1') (a1' a2' a3' a4' b' a4 a3 a2 a1)"
         " = a4' (a3' a2' e' a3 a4 a3' e a2 a3) a2' e'"),
    # (Bbar8_2) (a1^-1 a2^-1 a3^-1 a4^-1 b a4 a3 a2 a1)(a1 f a3^-1 a4^-1 y^-2 c^-1 y^2 a4 a3 f^-1 a1^-1)
    #           = a4^-1 (a3^-1 f a2 a3 a4 a3^-1 a2^-1 f^-1 a3) f a2 for g=5,6
    _fam("Bbar8_2", "B̄8₂", "g=5,6",
         "(a1' a2' a3' a4' b a4 a3 a2 a1)(a1 f a3' a4' y2' c' y2 a4 a3 f' a1') = a4' (a3' f a2 a3 a4 a3' a2' f' a3) f a2",
         lambda g: g in (5, 6),
         "(a1' a2' a3' a4' b a4 a3 a2 a1) (a1 f a3' a4' y2' c' y2 a4 a3 f' a1')"
         " = a4' (a3' f a2 a3 a4 a3' a2' f' a3) f a2"),
)

EVEN_EXTRA_FAMILIES: tuple[RelatorFamily, ...] = (
    # (A7) b_0 = a, b_1 = b; the symbol a is read as a_1 (see CatalogOptions.assume_a7)
    _fam("A7", "A7", "g≥6 even", "b0 = a, b1 = b", lambda g: True,
         lambda g, o: [("[b0]", f"b0 = {o.assume_a7}"), ("[b1]", "b1 = b")]),
    # (A8) b_{i+1} = (b_{i-1} a_{2i} a_{2i+1} a_{2i+2} a_{2i+3} b_i)^5 (b_{i-1} a_{2i} ... a_{2i+3})^-6
    #      for 1 <= i <= (g-4)/2
    _fam("A8", "A8", "1≤i≤(g−4)/2",
         "b{i+1} = (b{i-1} a{2i} a{2i+1} a{2i+2} a{2i+3} b{i})^5 (b{i-1} a{2i} a{2i+1} a{2i+2} a{2i+3})^-6",
         lambda g: True,
         lambda g, o: [(f"[i={i}]", f"b{i+1} = " + _chain8(f"b{i-1}", seq(2 * i, 2 * i + 3), f"b{i}"))
                       for i in range(1, (g - 4) // 2 + 1)]),
    # (A9a) b_2 b = b b_2 for g=6
    _fam("A9a", "A9a", "g=6", "b2 b = b b2", lambda g: g == 6, "b2 b = b b2"),
    # (A9b) b_{(g-2)/2} a_{g-5} = a_{g-5} b_{(g-2)/2} for g>=8
    _fam("A9b", "A9b", "g≥8", "b{(g-2)/2} a{g-5} = a{g-5} b{(g-2)/2}", lambda g: g >= 8,
         lambda g, o: [("", f"b{(g-2)//2} a{g-5} = a{g-5} b{(g-2)//2}")]),
    # (Abar7a) bbar_0 = a_1^-1, bbar_1 = c for g=6
    _fam("Abar7a", "Ā7a", "g=6", "bbar0 = a1', bbar1 = c", lambda g: g == 6,
         lambda g, o: [("[bbar0]", "bbar0 = a1'"), ("[bbar1]", "bbar1 = c")]),
    # (Abar7b) bbar_1 = c for g=8
    _fam("Abar7b", "Ā7b", "g=8", "bbar1 = c", lambda g: g == 8, "bbar1 = c"),
    # (Abar7c) bbar_i = z_{g-1} b_i z_{g-1}^-1, i=(g-6)/2,(g-4)/2, i>=2; z_{g-1} names a_g, which
    # is outside the generating set, so the family is opt-in with a user-supplied z
    _fam("Abar7c", "Ā7c", "i=(g−6)/2,(g−4)/2, i≥2", "bbar{i} = z b{i} z'", lambda g: g >= 8, _a7c, opt_in=True),
    # (Abar8a) bbar_2 = (bbar_0 e^-1 a_3 a_4 a_5 bbar_1)^5 (bbar_0 e^-1 a_3 a_4 a_5)^-6 for g=6
    _fam("Abar8a", "Ā8a", "g=6", "bbar2 = (bbar0 e' a3 a4 a5 bbar1)^5 (bbar0 e' a3 a4 a5)^-6", lambda g: g == 6,
         "bbar2 = " + _chain8("bbar0", "e' a3 a4 a5", "bbar1")),
    # (Abar8b) bbar_{(g-2)/2} = (bbar_{(g-6)/2} a_{g-4} ... a_{g-1} bbar_{(g-4)/2})^5
    #          (bbar_{(g-6)/2} a_{g-4} ... a_{g-1})^-6 for g>=8
    _fam("Abar8b", "Ā8b", "g≥8",
         "bbar{(g-2)/2} = (bbar{(g-6)/2} a{g-4} … a{g-1} bbar{(g-4)/2})^5 (bbar{(g-6)/2} a{g-4} … a{g-1})^-6",
         lambda g: g >= 8,
         lambda g, o: [("", f"bbar{(g-2)//2} = "
                        + _chain8(f"bbar{(g-6)//2}", seq(g - 4, g - 1), f"bbar{(g-4)//2}"))]),
    # (Abar9a) bbar_2 c = c bbar_2 for g=6
    _fam("Abar9a", "Ā9a", "g=6", "bbar2 c = c bbar2", lambda g: g == 6, "bbar2 c = c bbar2"),
    # (Abar9b) bbar_{(g-2)/2} a_{g-5} = a_{g-5} bbar_{(g-2)/2} for g>=8
    _fam("Abar9b", "Ā9b", "g≥8", "bbar{(g-2)/2} a{g-5} = a{g-5} bbar{(g-2)/2}", lambda g: g >= 8,
         lambda g, o: [("", f"bbar{(g-2)//2} a{g-5} = a{g-5} bbar{(g-2)//2}")]),
)


def rho_word(g: int) -> str:
    """(a_1 a_2 ... a_{g-1})^g, the value of rho for odd g."""
    return f"({seq(1, g - 1)})^{g}"


def rhobar_word(g: int) -> str:
    """(a_2 ... a_{g-1} e^-1 a_3 ... a_{g-1})^{(g-2)/2} a_2 ... a_{g-1}, the value of rhobar for even g."""
    return f"({seq(2, g - 1)} e' {seq(3, g - 1)})^{(g - 2) // 2} {seq(2, g - 1)}"


CLOSED_ODD_FAMILIES: tuple[RelatorFamily, ...] = (
    # (C1a) (a_1 a_2 ... a_{g-1})^g = rho
    _fam("C1a", "C1a", "g≥5 odd", "(a1 a2 … a{g-1})^g = rho", lambda g: True,
         lambda g, o: [("", f"{rho_word(g)} = rho")]),
    # (Cbar1a) (a_1^-1 e^-1 a_3 ... a_{g-1})^g = y^2 rho
    _fam("Cbar1a", "C̄1a", "g≥5 odd", "(a1' e' a3 … a{g-1})^g = y2 rho", lambda g: True,
         lambda g, o: [("", f"(a1' e' {seq(3, g - 1)})^{g} = y2 rho")]),
    # (C2) a_i rho = rho a_i for 1 <= i <= g-1
    _fam("C2", "C2", "1≤i≤g−1", "a{i} rho = rho a{i}", lambda g: True,
         lambda g, o: [(f"[i={i}]", f"a{i} rho = rho a{i}") for i in range(1, g)]),
    # (Cbar2) rho e = f rho
    _fam("Cbar2", "C̄2", "", "rho e = f rho", lambda g: True, "rho e = f rho"),
    # (Cbar5_1) rho y^2 = y^-2 rho
    _fam("Cbar5_1", "C̄5₁", "", "rho y2 = y2' rho", lambda g: True, "rho y2 = y2' rho"),
    # (C3) rho^2 = 1
    _fam("C3", "C3", "", "rho^2 = 1", lambda g: True, "rho rho = "),
    # (Cbar4a) (a_2 a_3 ... a_{g-1} e^-1 a_3 ... a_{g-1})^{(g-1)/2} = 1
    _fam("Cbar4a", "C̄4a", "", "(a2 … a{g-1} e' a3 … a{g-1})^((g-1)/2) = 1", lambda g: True,
         lambda g, o: [("", f"({seq(2, g - 1)} e' {seq(3, g - 1)})^{(g - 1) // 2} = ")]),
)

CLOSED_EVEN_FAMILIES: tuple[RelatorFamily, ...] = (
    # (C1b) (a_1 a_2 ... a_{g-1})^g = 1
    _fam("C1b", "C1b", "g≥4 even", "(a1 a2 … a{g-1})^g = 1", lambda g: True,
         lambda g, o: [("", f"{rho_word(g)} = ")]),
    # (Cbar2_1) rhobar a_1 = a_1^-1 rhobar
    _fam("Cbar2_1", "C̄2₁", "", "rhobar a1 = a1' rhobar", lambda g: True, "rhobar a1 = a1' rhobar"),
    # (Cbar2_2) rhobar a_i = a_i rhobar for 3 <= i <= g-1
    _fam("Cbar2_2", "C̄2₂", "3≤i≤g−1", "rhobar a{i} = a{i} rhobar", lambda g: True,
         lambda g, o: [(f"[i={i}]", f"rhobar a{i} = a{i} rhobar") for i in range(3, g)]),
    # (Cbar2_3) rhobar a_2 = e^-1 rhobar
    _fam("Cbar2_3", "C̄2₃", "", "rhobar a2 = e' rhobar", lambda g: True, "rhobar a2 = e' rhobar"),
    # (Cbar5_2) rhobar y^2 = y^-2 rhobar
    _fam("Cbar5_2", "C̄5₂", "", "rhobar y2 = y2' rhobar", lambda g: True, "rhobar y2 = y2' rhobar"),
    # (Cbar3) rhobar^2 = 1
    _fam("Cbar3", "C̄3", "", "rhobar^2 = 1", lambda g: True, "rhobar rhobar = "),
    # (Cbar4) (rhobar a_2 a_3 ... a_{g-1})^{g-1} = 1
    _fam("Cbar4", "C̄4", "", "(rhobar a2 … a{g-1})^(g-1) = 1", lambda g: True,
         lambda g, o: [("", f"(rhobar {seq(2, g - 1)})^{g - 1} = ")]),
)

SUPERFLUOUS_IN_CLOSED = {
    "odd": ("Abar1_2", "Bbar2_2", "Bbar4_2"),
    "even": ("Abar1_1", "Abar2_1", "Abar2_2"),
}
_flag = {lab: par for par, labs in SUPERFLUOUS_IN_CLOSED.items() for lab in labs}
ODD_OR_FOUR_FAMILIES = tuple(replace(f, superfluous_in_closed=_flag.get(f.label, "")) for f in ODD_OR_FOUR_FAMILIES)


# fixed presentations

M_PRESENTATIONS = {
    # mapping class groups written out for the low-genus cases
    "m_n2_0": (2, 0, ["a1", "y"], [("M1", "a1 a1"), ("M2", "y y"), ("M3", "(a1 y)^2")]),
    "m_n2_1": (2, 1, ["a1", "y"], [("M1", "y a1 y' a1")]),
    "m_n3_0": (3, 0, ["a1", "a2", "y"], [
        ("M1", "a1 a2 a1 a2' a1' a2'"), ("M2", "(a1 a2)^6"), ("M3", "y y"),
        ("M4", "(a1 y)^2"), ("M5", "(a2 y)^2")]),
}

T_SMALL = {
    (1, 0): ([], []),
    (1, 1): ([], []),
    (2, 0): (["a1"], [("T1", "a1 a1")]),
    (2, 1): (["a1", "y2"], [("T1", "a1 y2 a1' y2'")]),
    (3, 0): (["a1", "a2"], [("T1", "a1 a2 a1 a2' a1' a2'"), ("T2", "(a1 a2)^6")]),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    admissible: Callable[[int, int], bool]
    guard: str

    def families(self, g: int, n: int) -> list[RelatorFamily]:
        if self.name.startswith("t_ng"):
            fams = list(ODD_OR_FOUR_FAMILIES)
            if g % 2 == 0 and g >= 6:
                fams += EVEN_EXTRA_FAMILIES
            if n == 0:
                fams += CLOSED_ODD_FAMILIES if g % 2 else CLOSED_EVEN_FAMILIES
            return fams
        return []


ENTRIES: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("m_n2_0", "M(N_{2,0}) = <a1, y | a1^2, y^2, (a1 y)^2>",
                     lambda g, n: (g, n) == (2, 0), "(g,n)=(2,0)"),
        CatalogEntry("m_n2_1", "M(N_{2,1}) = <a1, y | y a1 y^-1 a1>",
                     lambda g, n: (g, n) == (2, 1), "(g,n)=(2,1)"),
        CatalogEntry("m_n3_0", "M(N_{3,0}) = <a1, a2, y | braid, (a1 a2)^6, y^2, (a1 y)^2, (a2 y)^2>",
                     lambda g, n: (g, n) == (3, 0), "(g,n)=(3,0)"),
        CatalogEntry("t_small", "T(N_{g,n}) for g+n<=3",
                     lambda g, n: (g, n) in T_SMALL, "(g,n) in {(1,0),(1,1),(2,0),(2,1),(3,0)}"),
        CatalogEntry("t_ng1_odd", "T(N_{g,1}), g odd",
                     lambda g, n: n == 1 and g % 2 == 1 and g + n > 3, "g odd, n=1, g+n>3"),
        CatalogEntry("t_ng1_even", "T(N_{g,1}), g even",
                     lambda g, n: n == 1 and g % 2 == 0 and g >= 4, "g even, g≥4, n=1"),
        CatalogEntry("t_ng0_odd", "T(N_{g,0}), g odd, with rho",
                     lambda g, n: n == 0 and g % 2 == 1 and g >= 5, "g odd, g≥5, n=0"),
        CatalogEntry("t_ng0_even", "T(N_{g,0}), g even, with rhobar",
                     lambda g, n: n == 0 and g % 2 == 0 and g >= 4, "g even, g≥4, n=0"),
    )
}


def get_entry(name: str) -> CatalogEntry:
    try:
        return ENTRIES[name]
    except KeyError:
        raise UnknownEntry(name) from None


def entry_for(g: int, n: int) -> str:
    """The t-entry covering (g, n)."""
    for name in ("t_small", "t_ng1_odd", "t_ng1_even", "t_ng0_odd", "t_ng0_even"):
        if ENTRIES[name].admissible(g, n):
            return name
    raise InadmissibleParameters(f"no twist-subgroup entry for (g,n)=({g},{n})")


def generators(entry: str, g: int, n: int, options: CatalogOptions = DEFAULT_OPTIONS) -> list[str]:
    e = get_entry(entry)
    if not e.admissible(g, n):
        raise InadmissibleParameters(f"{entry} at (g,n)=({g},{n}): guard {e.guard} fails")
    if entry in M_PRESENTATIONS:
        return list(M_PRESENTATIONS[entry][2])
    if entry == "t_small":
        return list(T_SMALL[(g, n)][0])
    gens = [f"a{i}" for i in range(1, g)] + ["e", "f", "y2"]
    if g >= 4:
        gens += ["b", "c"]
    if g % 2 == 0 and g >= 6:
        gens += [f"b{i}" for i in range(0, (g - 2) // 2 + 1)]
        gens += [f"bbar{i}" for i in ((g - 6) // 2, (g - 4) // 2, (g - 2) // 2)]
    if n == 0 and not options.subst_rho:
        gens.append("rho" if g % 2 else "rhobar")
    return gens


_BARE_GROUP = re.compile(r"\)(?!\s*\^)")


def _relation_word(text: str, alphabet: Alphabet) -> Word:
    # relation texts group factors with bare parentheses for readability
    text = _BARE_GROUP.sub(")^1", text)
    lhs, _, rhs = text.partition("=")
    return parse_word(lhs, alphabet) * invert(parse_word(rhs, alphabet))


def instantiate(entry: str, g: int, n: int, options: CatalogOptions = DEFAULT_OPTIONS) -> Presentation:
    """Concrete presentation of ``entry`` at (g, n) with every guard-passing relator."""
    gens = generators(entry, g, n, options)
    if entry in M_PRESENTATIONS:
        return Presentation.build(gens, M_PRESENTATIONS[entry][3])
    if entry == "t_small":
        return Presentation.build(gens, T_SMALL[(g, n)][1])
    full = list(gens)
    subst: dict[str, Word] = {}
    if n == 0 and options.subst_rho:
        name = "rho" if g % 2 else "rhobar"
        full.append(name)
        subst[name] = parse_word(rho_word(g) if g % 2 else rhobar_word(g))
    work = Alphabet(full)
    alph = Alphabet(gens)
    parity = "odd" if g % 2 else "even"
    rels = []
    for fam in get_entry(entry).families(g, n):
        if not fam.applies(g):
            continue
        if fam.opt_in and not options.include_a7c:
            continue
        if n == 0 and not options.include_superfluous and fam.label in SUPERFLUOUS_IN_CLOSED[parity]:
            continue
        for suffix, text in fam.instances(g, options):
            w = _relation_word(text, work)
            if subst:
                w = substitute(w.with_alphabet(None), subst)
                if w.is_empty():
                    continue  # (C1a) becomes the definition of rho
            rels.append(Relator(w.with_alphabet(alph), fam.label + suffix, fam.guard or None))
    return Presentation(alph, tuple(rels))


def relator_count(entry: str, g: int, n: int, options: CatalogOptions = DEFAULT_OPTIONS) -> int:
    return len(instantiate(entry, g, n, options).relators)


def all_families() -> list[RelatorFamily]:
    return list(ODD_OR_FOUR_FAMILIES + EVEN_EXTRA_FAMILIES + CLOSED_ODD_FAMILIES + CLOSED_EVEN_FAMILIES)


def guard_manifest() -> str:
    """Manifest text: one ``family <label> guard "<text>" template "<word>"`` line per family."""
    lines = ["# relator families: label, guard as stated, display template"]
    for fam in all_families():
        flags = ""
        if fam.superfluous_in_closed:
            flags += f" superfluous_in_closed={fam.superfluous_in_closed}"
        if fam.opt_in:
            flags += " opt_in"
        lines.append(f'family {fam.label} guard "{fam.guard}" template "{fam.template}"{flags}')
    return "\n".join(lines) + "\n"


# curve classes

GREEK = {"α": "alpha", "β̄": "betabar", "β": "beta", "γ": "gamma", "δ": "delta", "ε": "epsilon", "ζ": "zeta"}
SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def normalize_curve_name(name: str) -> str:
    s = name.strip().translate(SUBSCRIPTS).replace("_", "")
    for k in sorted(GREEK, key=len, reverse=True):
        if s.startswith(k):
            s = GREEK[k] + s[len(k):]
            break
    return s


def curve_of_generator(gen: str) -> str | None:
    """Curve whose twist is the generator (None for rho, rhobar and y)."""
    fixed = {"b": "beta", "c": "gamma", "e": "epsilon", "f": "zeta", "y2": "delta"}
    if gen in fixed:
        return fixed[gen]
    m = re.fullmatch(r"(a|b|bbar)([0-9]+)", gen)
    if not m:
        return None
    stem = {"a": "alpha", "b": "beta", "bbar": "betabar"}[m.group(1)]
    return stem + m.group(2)


def seed_classes(model: SurfaceModel, gens: Iterable[str]) -> dict[str, np.ndarray]:
    """Seed convention: alpha_i = mu_i + mu_{i+1}, beta = mu_1+...+mu_4, beta_i = mu_1+...+mu_{2i+2}."""
    out = {}
    for gen in gens:
        curve = curve_of_generator(gen)
        if curve is None:
            continue
        m = re.fullmatch(r"alpha([0-9]+)", curve)
        if m:
            i = int(m.group(1))
            out[curve] = model.mu(i, i + 1)
        elif curve == "beta" and model.genus >= 4:
            out[curve] = model.mu(1, 2, 3, 4)
        elif (m := re.fullmatch(r"beta([0-9]+)", curve)):
            i = int(m.group(1))
            if 2 * i + 2 <= model.genus:
                out[curve] = model.mu(*range(1, 2 * i + 3))
    return out


SOLVED_CURVES_ORDER = ("delta", "epsilon", "zeta", "gamma")


@dataclass
class SolvedClasses:
    genus: int
    boundary: int
    classes: dict[str, np.ndarray]
    provenance: dict[str, str] = field(default_factory=dict)


def solve_classes(g: int, n: int) -> SolvedClasses:
    """Reconstruct the curve classes at (g, n) from the catalog relators.

    Seeds fix alpha_i, beta, beta_i; every other curve is searched for under
    the pairing constraints read off braid and commutation relators plus the
    requirement that every relator evaluates to the identity.
    """
    model = SurfaceModel(g, n)
    entry = entry_for(g, n)
    p = instantiate(entry, g, n, CatalogOptions(subst_rho=True))
    seeds = seed_classes(model, p.alphabet)
    curves = {gen: curve_of_generator(gen) for gen in p.alphabet}
    unknown = [c for c in curves.values() if c is not None and c not in seeds]
    order = [c for c in SOLVED_CURVES_ORDER if c in unknown]
    order += sorted((c for c in unknown if c not in order), key=lambda s: (re.sub(r"[0-9]+", "", s),
                                                                           int(re.sub(r"[^0-9]", "", s) or 0)))
    cmap = tuple(sorted(curves.items()))
    cons: list = [PairingConstraint(c, c, 0, "two-sided") for c in order]
    for r in p.relators:
        cons += relator_pairing_constraints(r.label, r.word, curves)
    cons += [RelatorConstraint(r.label, r.word, cmap) for r in p.relators]
    hints = _class_hints(model, order)
    res = class_solver(model, order, cons, seeds, prefer=hints)
    if not res.solved:
        raise CatalogError(f"no class assignment at (g,n)=({g},{n}); violated: {[getattr(c, 'label', c) for c in res.violated]}")
    prov = {c: "seed" for c in seeds}
    for c in order:
        alts = res.alternatives[c]
        if len(alts) == 1:
            prov[c] = "solved, unique"
        else:
            prov[c] = (f"solved, {len(alts)} candidates: " + " | ".join(format_class(a, model) for a in alts)
                       + ("; listed value is the tie-break hint" if c in hints
                          else "; listed value is first in search order"))
    return SolvedClasses(g, n, res.assignment, prov)


def _class_hints(model: SurfaceModel, unknowns: Iterable[str]) -> dict[str, np.ndarray]:
    """Tie-breaks for underdetermined classes: epsilon and zeta take the class of
    alpha_2 (their unique solution at every other genus in range), and
    betabar_i takes the seed class of beta_i (forced at g = 6)."""
    hints = {}
    for c in unknowns:
        if c in ("epsilon", "zeta") and model.genus >= 3:
            hints[c] = model.mu(2, 3)
        m = re.fullmatch(r"betabar([0-9]+)", c)
        if m and 2 * int(m.group(1)) + 2 <= model.genus:
            hints[c] = model.mu(*range(1, 2 * int(m.group(1)) + 3))
    return hints


CLASS_TABLE_RANGE = [(2, 1), (3, 0)] + [(g, n) for g in range(3, 9) for n in (0, 1) if (g, n) != (3, 0)]


def format_class_table(solved: Iterable[SolvedClasses]) -> str:
    lines = [
        "# Mod-2 curve classes, basis mu_i (crosscaps) and d_j (boundary).",
        "# alpha_i, beta, beta_i follow the seed convention; the rest are solver output.",
        "# Regenerate with twistkit.catalog.write_class_table().",
    ]
    for s in solved:
        model = SurfaceModel(s.genus, s.boundary)
        for name in sorted(s.classes, key=_curve_sort_key):
            lines.append(f"# {name} g={s.genus} n={s.boundary}: {s.provenance.get(name, '')}")
            lines.append(f"class {name} g={s.genus} n={s.boundary}: {format_class(s.classes[name], model)}")
    return "\n".join(lines) + "\n"


def _curve_sort_key(name: str):
    m = re.fullmatch(r"([a-z]+?)([0-9]*)", name)
    return (m.group(1), int(m.group(2) or -1))


def build_class_table() -> str:
    return format_class_table(solve_classes(g, n) for g, n in CLASS_TABLE_RANGE)


def write_class_table(path=None) -> None:
    path = path or resources.files("twistkit") / "data" / "classes.txt"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(build_class_table())


_CLASS_LINE = re.compile(r"class\s+(\S+)\s+g=(\d+)\s+n=(\d+):\s*(.*)")


def parse_class_table(text: str) -> dict[tuple[str, int, int], np.ndarray]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        m = _CLASS_LINE.fullmatch(s)
        if not m:
            raise CatalogError(f"class table line {lineno}: cannot parse {s!r}")
        name, g, n, cls = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
        out[(name, g, n)] = parse_class(cls, SurfaceModel(g, n))
    return out


@lru_cache(maxsize=1)
def frozen_classes() -> dict[tuple[str, int, int], np.ndarray]:
    text = (resources.files("twistkit") / "data" / "classes.txt").read_text(encoding="utf-8")
    return parse_class_table(text)


def curve_class(name: str, g: int, n: int) -> np.ndarray:
    key = (normalize_curve_name(name), g, n)
    table = frozen_classes()
    if key not in table:
        raise UnknownCurve(f"{name} at (g,n)=({g},{n})")
    return table[key].copy()


def generator_classes(gens: Iterable[str], g: int, n: int) -> dict[str, np.ndarray]:
    """Frozen class of each generator that is a twist."""
    out = {}
    for gen in gens:
        curve = curve_of_generator(gen)
        if curve is not None:
            out[gen] = curve_class(curve, g, n)
    return out


def homology_assignment(p: Presentation, g: int, n: int) -> dict[str, np.ndarray]:
    """Matrices for every generator of a catalog presentation; rho and rhobar
    get the image of the word they stand for."""
    from .homology import evaluate

    model = SurfaceModel(g, n)
    assign = {gen: transvection(model, c) for gen, c in generator_classes(p.alphabet, g, n).items()}
    if "rho" in p.alphabet:
        assign["rho"] = evaluate(parse_word(rho_word(g)), assign, model)
    if "rhobar" in p.alphabet:
        assign["rhobar"] = evaluate(parse_word(rhobar_word(g)), assign, model)
    return assign


def catalog_file(name: str) -> Presentation:
    """A presentation shipped under data/catalog."""
    text = (resources.files("twistkit") / "data" / "catalog" / f"{name}.pres").read_text(encoding="utf-8")
    return parse_presentation(text)


def shipped_catalog_files() -> list[str]:
    d = resources.files("twistkit") / "data" / "catalog"
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".pres"))


def shipped_texts() -> dict[str, str]:
    """File name -> contents for everything under data/catalog."""
    out = {}
    for name, (g, n, _, _) in M_PRESENTATIONS.items():
        p = instantiate(name, g, n)
        out[f"{name}.pres"] = format_presentation(p, [f"mapping class group, g={g} n={n}"])
    for (g, n), (gens, _) in T_SMALL.items():
        if not gens:
            continue
        p = instantiate("t_small", g, n)
        out[f"t_n{g}_{n}.pres"] = format_presentation(p, [f"twist subgroup, g={g} n={n}"])
    out["guards.manifest"] = guard_manifest()
    return out


def write_catalog_files(directory=None) -> None:
    from pathlib import Path

    d = Path(directory) if directory else Path(__file__).parent / "data" / "catalog"
    d.mkdir(parents=True, exist_ok=True)
    for name, text in shipped_texts().items():
        (d / name).write_text(text, encoding="utf-8")
