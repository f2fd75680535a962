"""Relation schemata for Dehn twists: chain, lantern (plain and extended),
boundary-trivial, and push-map macros.

Curves are referred to by twist symbols; a trailing ``'`` marks the opposite
orientation, so ``t'`` stands for the inverse twist.  The symbol ``1`` is a
curve bounding a disc (its twist is the identity).  Preconditions are checked
on mod-2 classes, which is a necessary condition only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .homology import SurfaceModel, format_class
from .words import Word, invert, power

TRIVIAL = "1"


class SchemaError(Exception):
    pass


class BadChainConfiguration(SchemaError):
    pass


class BadLanternConfiguration(SchemaError):
    pass


class MissingSideData(SchemaError):
    pass


class MissingClass(SchemaError):
    pass


@dataclass(frozen=True)
class TwistSymbol:
    curve: str
    orientation: int = 1  # t_{c;-} is the inverse of t_{c;+}

    @classmethod
    def parse(cls, token: str) -> "TwistSymbol":
        token = token.strip()
        if token.endswith("'"):
            return cls(token[:-1], -1)
        return cls(token, 1)

    @property
    def trivial(self) -> bool:
        return self.curve == TRIVIAL

    def word(self) -> Word:
        return Word() if self.trivial else Word(((self.curve, self.orientation),))

    def __str__(self) -> str:
        return self.curve + ("'" if self.orientation == -1 else "")


def _class(sym: TwistSymbol, classes: Mapping[str, np.ndarray], model: SurfaceModel) -> np.ndarray:
    if sym.trivial:
        return model.zero()
    if sym.curve not in classes:
        raise MissingClass(f"no class for curve {sym.curve!r}")
    return np.asarray(classes[sym.curve], dtype=np.uint8) & 1


def _sym(x) -> TwistSymbol:
    return x if isinstance(x, TwistSymbol) else TwistSymbol.parse(x)


def gen_chain(
    curves: Sequence[str | TwistSymbol],
    classes: Mapping[str, np.ndarray],
    model: SurfaceModel,
    c0: str | TwistSymbol | None = None,
    c0p: str | TwistSymbol | None = None,
    rot: int = 0,
) -> Word:
    """Chain relator for c_1..c_k.

    k odd:  (t_1 ... t_k)^{k+1} (t_{c0} t_{c0'})^{-1}
    k even: (t_1 ... t_k)^{2k+2} t_{c0}^{-1}

    ``rot`` cyclically rotates the product to t_{r+1} ... t_k t_1 ... t_r.
    A boundary curve given as ``None`` is taken to bound a disc; its class
    must then vanish.
    """
    syms = [_sym(c) for c in curves]
    k = len(syms)
    if k < 1:
        raise BadChainConfiguration("empty chain")
    cls = [_class(s, classes, model) for s in syms]
    for i, (s, c) in enumerate(zip(syms, cls)):
        if s.trivial:
            raise BadChainConfiguration("chain curves must be essential")
        if model.pairing(c, c):
            raise BadChainConfiguration(f"{s} has a one-sided class")
        for j in range(i + 1, k):
            want = 1 if j == i + 1 else 0
            if model.pairing(c, cls[j]) != want:
                raise BadChainConfiguration(f"pairing of {s} and {syms[j]} is not {want}")
    if k % 2:
        expected = np.bitwise_xor.reduce(np.array(cls[0::2]), axis=0)
        ends = [c0, c0p]
    else:
        expected = model.zero()
        if c0p is not None:
            raise BadChainConfiguration("an even chain has a single boundary curve")
        ends = [c0]
    end_syms = [TwistSymbol(TRIVIAL) if e is None else _sym(e) for e in ends]
    for e in end_syms:
        got = _class(e, classes, model)
        if not np.array_equal(got, expected):
            raise BadChainConfiguration(
                f"boundary curve {e} has class {format_class(got, model)}, expected {format_class(expected, model)}")
    r = rot % k
    order = syms[r:] + syms[:r]
    prod = Word(tuple(l for s in order for l in s.word().letters))
    lhs = power(prod, k + 1 if k % 2 else 2 * k + 2)
    rhs = Word(tuple(l for e in end_syms for l in e.word().letters))
    return lhs * invert(rhs)


def gen_lantern(
    d: Sequence[str | TwistSymbol],
    classes: Mapping[str, np.ndarray],
    model: SurfaceModel,
    trivial: Sequence[str] = (),
) -> Word:
    """Lantern relator t_{d1} t_{d2} t_{d3} (t_{d4} t_{d5} t_{d6} t_{d7})^{-1}.

    d4..d7 are the boundary curves of the four-holed sphere and d1, d2, d3 the
    interior curves.  Curves named in ``trivial`` (and the symbol ``1``) bound
    a disc or a disc with one marked point and are dropped from the word; the
    extended lantern is the case of one such boundary curve.
    """
    syms = [_sym(x) for x in d]
    if len(syms) != 7:
        raise BadLanternConfiguration("a lantern needs seven curves")
    dropped = {TRIVIAL} | set(trivial)
    cls = [_class(s, classes, model) for s in syms]
    for s, c in zip(syms, cls):
        if model.pairing(c, c):
            raise BadLanternConfiguration(f"{s} has a one-sided class")
        if s.curve in dropped and c.any():
            raise BadLanternConfiguration(f"{s} is declared trivial but has class {format_class(c, model)}")
    for i in range(7):
        for j in range(i + 1, 7):
            if model.pairing(cls[i], cls[j]):
                raise BadLanternConfiguration(f"{syms[i]} and {syms[j]} have odd intersection")
    if np.bitwise_xor.reduce(np.array(cls[3:]), axis=0).any():
        raise BadLanternConfiguration("boundary classes d4..d7 do not sum to zero")
    inner = sorted(tuple(int(x) for x in c) for c in cls[:3])
    want = sorted(tuple(int(x) for x in (cls[3] ^ cls[j])) for j in (4, 5, 6))
    if inner != want:
        raise BadLanternConfiguration("interior classes are not d4+d5, d4+d6, d4+d7")

    def part(ss):
        return Word(tuple(l for s in ss if s.curve not in dropped for l in s.word().letters))

    return part(syms[:3]) * invert(part(syms[3:]))


def boundary_trivial(symbol: str | TwistSymbol, classes: Mapping[str, np.ndarray], model: SurfaceModel) -> Word:
    """Relator t_c for a curve bounding a disc (or a disc with one marked point)."""
    s = _sym(symbol)
    c = _class(s, classes, model)
    if c.any():
        raise SchemaError(f"{s} has nonzero class {format_class(c, model)}; it cannot bound a disc")
    return s.word()


@dataclass(frozen=True)
class Macro:
    name: str
    word: Word


def expand_push(kind: str, loop: str, side: Mapping[str, str | None] | None) -> Macro:
    """Push map along a simple loop as a twist word.

    ``kind`` is ``point`` or ``crosscap``.  ``side`` names the boundary curves
    of a regular neighbourhood of the loop: ``right`` and ``left``; the push is
    t_right t_left^{-1}.  A side given as ``None`` is null-homotopic.  For
    ``kind="crosscap_square"`` the side data is ``{"curve": name}`` and the
    square of the crosscap slide is the single twist about that curve.
    """
    if side is None:
        raise MissingSideData(f"no side data for loop {loop!r}")
    if kind == "crosscap_square":
        if "curve" not in side:
            raise MissingSideData("crosscap_square needs 'curve'")
        c = side["curve"]
        return Macro(loop, Word() if c is None else _sym(c).word())
    if kind not in ("point", "crosscap"):
        raise SchemaError(f"unknown push kind {kind!r}")
    if "right" not in side or "left" not in side:
        raise MissingSideData(f"loop {loop!r} needs both 'right' and 'left' curves")
    right = Word() if side["right"] is None else _sym(side["right"]).word()
    left = Word() if side["left"] is None else _sym(side["left"]).word()
    return Macro(loop, right * invert(left))


def standard_chain_classes(model: SurfaceModel, k: int) -> list[np.ndarray]:
    """alpha_1..alpha_k = mu_i + mu_{i+1}; needs k < genus."""
    if k >= model.genus:
        raise BadChainConfiguration(f"a standard {k}-chain needs genus > {k}")
    return [model.mu(i, i + 1) for i in range(1, k + 1)]


def chain_boundary_class(model: SurfaceModel, chain: Sequence[np.ndarray]) -> np.ndarray:
    """Mod-2 class of the boundary curve(s) of a chain neighbourhood."""
    if len(chain) % 2 == 0:
        return model.zero()
    return np.bitwise_xor.reduce(np.array(chain[0::2]), axis=0)


def lantern_configurations(model: SurfaceModel) -> list[tuple[np.ndarray, ...]]:
    """Every mod-2 class tuple (d1..d7) that passes the lantern checks, up to the
    order of the boundary curves: d4..d6 two-sided and pairwise orthogonal, d7 their sum,
    d1..d3 the sums d4+d5, d4+d6, d4+d7."""
    two = [c for c in model.all_classes() if not model.pairing(c, c)]
    out = []
    for i, b4 in enumerate(two):
        for j in range(i, len(two)):
            b5 = two[j]
            if model.pairing(b4, b5):
                continue
            for k in range(j, len(two)):
                b6 = two[k]
                if model.pairing(b4, b6) or model.pairing(b5, b6):
                    continue
                b7 = b4 ^ b5 ^ b6
                out.append((b4 ^ b5, b4 ^ b6, b4 ^ b7, b4, b5, b6, b7))
    return out
