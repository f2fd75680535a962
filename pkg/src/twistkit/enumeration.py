"""Todd-Coxeter coset enumeration (HLT strategy) and Reidemeister-Schreier rewriting."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .presentation import Presentation, Relator
from .words import Alphabet, Word, invert, parse_word

DEFAULT_MAX_COSETS = 10**6

COMPLETE = "Complete"
INCONCLUSIVE = "Inconclusive"


class EnumerationError(Exception):
    pass


class InvalidSubgroupSpec(EnumerationError):
    pass


class IncompleteTable(EnumerationError):
    pass


@dataclass(frozen=True)
class SubgroupSpec:
    """Either explicit generator words, or a parity map whose kernel is the subgroup."""

    words: tuple[Word, ...] | None = None
    parity: Mapping[str, int] | None = None
    odd: str | None = None  # designated odd generator for the transversal

    @classmethod
    def trivial(cls) -> "SubgroupSpec":
        return cls(words=())

    @classmethod
    def from_words(cls, texts: Sequence[str] | str, alphabet=None) -> "SubgroupSpec":
        if isinstance(texts, str):
            texts = [t for t in texts.split(";") if t.strip()]
        return cls(words=tuple(parse_word(t, alphabet) for t in texts))

    @classmethod
    def parity_of(cls, odd: str, alphabet: Sequence[str]) -> "SubgroupSpec":
        """Kernel of the map sending ``odd`` to 1 and every other generator to 0."""
        if odd not in alphabet:
            raise InvalidSubgroupSpec(f"{odd!r} is not a generator")
        return cls(parity={g: int(g == odd) for g in alphabet}, odd=odd)


def kernel_generators(alphabet: Sequence[str], parity: Mapping[str, int], odd: str | None = None) -> list[Word]:
    """Schreier generators of the parity kernel with respect to the transversal {1, y}."""
    unknown = set(parity) - set(alphabet)
    if unknown:
        raise InvalidSubgroupSpec(f"parity map names unknown generators {sorted(unknown)}")
    odds = [g for g in alphabet if parity.get(g, 0) % 2]
    if not odds:
        raise InvalidSubgroupSpec("parity map sends every generator to 0")
    y = odd if odd is not None else odds[0]
    if y not in odds:
        raise InvalidSubgroupSpec(f"designated generator {y} is not odd")
    Y = Word(((y, 1),))
    out = []
    for g in alphabet:
        x = Word(((g, 1),))
        if g == y:
            out.append(Y * Y)
        elif parity.get(g, 0) % 2:
            out.append(x * invert(Y))
            out.append(Y * x)
        else:
            out.append(x)
            out.append(Y * x * invert(Y))
    return out


@dataclass
class CosetTable:
    """Coset table with 0-based coset numbers; column ``2k`` is generator ``k``,
    column ``2k+1`` its inverse.  ``transversal[0]`` is the empty word."""

    alphabet: Alphabet
    rows: list[list[int]]
    status: str
    transversal: list[Word]

    @property
    def index(self) -> int:
        return len(self.rows)

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def column(self, name: str, sign: int) -> int:
        return 2 * self.alphabet.index(name) + (0 if sign == 1 else 1)

    def act(self, coset: int, w: Word) -> int:
        c = coset
        for n, s in w.letters:
            c = self.rows[c][self.column(n, s)]
            if c < 0:
                raise IncompleteTable("undefined entry while tracing")
        return c


class _Overflow(Exception):
    pass


class _Enumerator:
    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max = max_cosets
        self.table: list[list[int]] = [[-1] * ncols]
        self.p: list[int] = [0]

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max:
            raise _Overflow
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        t = self.table
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(self.ncols):
                d = t[g][x]
                if d < 0:
                    continue
                if t[d][x ^ 1] == g:
                    t[d][x ^ 1] = -1
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][x] >= 0:
                    self.merge(nu, t[mu][x], queue)
                elif t[nu][x ^ 1] >= 0:
                    self.merge(mu, t[nu][x ^ 1], queue)
                else:
                    t[mu][x] = nu
                    t[nu][x ^ 1] = mu

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        t = self.table
        while True:
            f, b = c, c
            i, j = 0, len(w) - 1
            while i <= j and t[f][w[i]] >= 0:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] >= 0:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])


def _max_cosets(value: int | None) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("TWISTKIT_MAX_COSETS")
    return int(env) if env else DEFAULT_MAX_COSETS


def todd_coxeter(
    p: Presentation,
    s: SubgroupSpec | None = None,
    max_cosets: int | None = None,
    *,
    transversal_sign: int = 1,
) -> CosetTable:
    """Enumerate cosets of the subgroup ``s`` in the group presented by ``p``.

    Returns an ``Inconclusive`` table (rows empty) if more than ``max_cosets``
    cosets would be needed.  For parity subgroups the Schreier transversal is
    ``{1, y}`` (or ``{1, y^-1}`` with ``transversal_sign=-1``).
    """
    s = s if s is not None else SubgroupSpec.trivial()
    alph = p.alphabet
    cols = {n: 2 * k for k, n in enumerate(alph)}

    def encode(w: Word) -> list[int]:
        return [cols[n] + (0 if sg == 1 else 1) for n, sg in w.letters]

    if s.parity is not None:
        subgens = kernel_generators(alph, s.parity, s.odd)
        odd = s.odd or next(g for g in alph if s.parity.get(g, 0) % 2)
    elif s.words is not None:
        for w in s.words:
            extra = w.generators() - set(alph)
            if extra:
                raise InvalidSubgroupSpec(f"subgroup word uses unknown generators {sorted(extra)}")
        subgens = list(s.words)
        odd = None
    else:
        raise InvalidSubgroupSpec("empty subgroup specification")

    limit = _max_cosets(max_cosets)
    en = _Enumerator(2 * len(alph), max(limit, 1))
    rels = [encode(r.word) for r in p.relators if not r.word.is_empty()]
    try:
        for w in subgens:
            if not w.is_empty():
                en.scan_and_fill(0, encode(w))
        a = 0
        while a < len(en.table):
            if en.p[a] == a:
                for r in rels:
                    if en.p[a] != a:
                        break
                    en.scan_and_fill(a, r)
                if en.p[a] == a:
                    for x in range(en.ncols):
                        if en.table[a][x] < 0:
                            en.define(a, x)
            a += 1
    except _Overflow:
        return CosetTable(alph, [], INCONCLUSIVE, [])

    order = list(range(en.ncols))
    if odd is not None:
        first = cols[odd] + (0 if transversal_sign == 1 else 1)
        order.remove(first)
        order.insert(0, first)
    return _standardize(alph, en, order)


def _standardize(alph: Alphabet, en: _Enumerator, order: list[int]) -> CosetTable:
    t = en.table
    names = [(n, sg) for n in alph for sg in (1, -1)]
    number = {0: 0}
    reps = [Word()]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in order:
            d = en.rep(t[c][x])
            if d not in number:
                number[d] = len(reps)
                reps.append(Word(reps[number[c]].letters + (names[x],)))
                queue.append(d)
    rows = [[-1] * en.ncols for _ in reps]
    for old, new in number.items():
        rows[new] = [number[en.rep(t[old][x])] for x in range(en.ncols)]
    return CosetTable(alph, rows, COMPLETE, [r.with_alphabet(alph) for r in reps])


def check_table(p: Presentation, t: CosetTable) -> bool:
    """Every relator traced from every coset returns to its start."""
    if not t.complete:
        return False
    return all(t.act(c, r.word) == c for c in range(t.index) for r in p.relators)


# Reidemeister-Schreier

@dataclass(frozen=True)
class SchreierGenerator:
    name: str
    coset: int
    generator: str
    value: Word

    @property
    def trivial(self) -> bool:
        return self.value.is_empty()


def schreier_generators(p: Presentation, t: CosetTable) -> list[SchreierGenerator]:
    """All ``index * |alphabet|`` Schreier generators, trivial ones included."""
    if not t.complete:
        raise IncompleteTable("table is not complete")
    out = []
    for c in range(t.index):
        for n in p.alphabet:
            d = t.rows[c][t.column(n, 1)]
            value = Word(t.transversal[c].letters + ((n, 1),)) * invert(t.transversal[d].with_alphabet(None))
            out.append(SchreierGenerator(f"{n}@{c + 1}", c, n, value.with_alphabet(None)))
    return out


def reidemeister_schreier(
    p: Presentation,
    t: CosetTable,
    names: Mapping[str, str] | None = None,
) -> Presentation:
    """Subgroup presentation on the non-trivial Schreier generators.

    Generators are named ``x@r`` (coset ``r`` counted from 1) unless ``names``
    renames them.  One rewritten relator per (coset, relator) pair, labelled
    ``label@r``; rewrites that come out empty are kept.
    """
    gens = schreier_generators(p, t)
    names = dict(names or {})
    lookup = {(g.coset, g.generator): g for g in gens}
    alph = Alphabet(names.get(g.name, g.name) for g in gens if not g.trivial)
    rels = []
    for c in range(t.index):
        for r in p.relators:
            cur = c
            letters = []
            for n, s in r.word.letters:
                if s == 1:
                    g = lookup[(cur, n)]
                    cur = t.rows[cur][t.column(n, 1)]
                else:
                    cur = t.rows[cur][t.column(n, -1)]
                    g = lookup[(cur, n)]
                if not g.trivial:
                    letters.append((names.get(g.name, g.name), s))
            rels.append(Relator(Word(tuple(letters), alph), f"{r.label}@{c + 1}", r.guard))
    return Presentation(alph, tuple(rels))


def schreier_counts(p: Presentation, t: CosetTable) -> dict[str, int]:
    gens = schreier_generators(p, t)
    return {
        "index": t.index,
        "raw_generators": len(gens),
        "nontrivial_generators": sum(not g.trivial for g in gens),
        "raw_relators": t.index * len(p.relators),
    }


def twist_names(p: Presentation, t: CosetTable, odd: str) -> dict[str, str]:
    """Readable names: a Schreier generator equal to ``x`` is called ``x``, one
    equal to ``odd odd`` is called ``odd + '2'``; others keep ``x@r``."""
    out = {}
    taken = set()
    for g in schreier_generators(p, t):
        if g.trivial:
            continue
        if len(g.value) == 1 and g.value.letters[0][1] == 1:
            new = g.value.letters[0][0]
        elif g.value.letters == ((odd, 1), (odd, 1)):
            new = f"{odd}2"
        else:
            continue
        if new not in taken:
            out[g.name] = new
            taken.add(new)
    return out


def twist_subgroup(p: Presentation, odd: str = "y", *, simplified: bool = True, transversal_sign: int = 1,
                   max_cosets: int | None = None) -> Presentation:
    """Presentation of the parity kernel with readable generator names."""
    from .presentation import simplify

    t = todd_coxeter(p, SubgroupSpec.parity_of(odd, p.alphabet), max_cosets, transversal_sign=transversal_sign)
    if not t.complete:
        raise IncompleteTable("coset enumeration did not close")
    sub = reidemeister_schreier(p, t, twist_names(p, t, odd))
    return simplify(sub) if simplified else sub
