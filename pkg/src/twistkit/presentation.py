"""Finite presentations: data model, text format, Tietze moves, simplification,
and abelian invariants through an integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .words import (
    Alphabet,
    Word,
    WordError,
    canonical_relator,
    cyclic_reduce,
    invert,
    parse_letters,
    parse_word,
    substitute,
)


class PresentationError(Exception):
    pass


class NameCollision(PresentationError):
    pass


class NoDefiningRelator(PresentationError):
    pass


class RelatorRemovalRefused(PresentationError):
    pass


class PresentationFormatError(PresentationError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Relator:
    word: Word
    label: str
    guard: str | None = None
    # letters exactly as written, kept only when the source text was not reduced
    raw: tuple | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Relator, ...] = ()

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(self.alphabet))
        object.__setattr__(self, "relators", tuple(self.relators))

    @classmethod
    def build(cls, alphabet: Iterable[str], relators: Iterable[tuple[str, str] | tuple[str, str, str | None]]):
        """Convenience constructor from ``(label, word_text[, guard])`` tuples."""
        alph = Alphabet(alphabet)
        rels = []
        for item in relators:
            label, text = item[0], item[1]
            guard = item[2] if len(item) > 2 else None
            rels.append(Relator(parse_word(text, alph), label, guard))
        return cls(alph, tuple(rels))

    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def relator(self, label: str) -> Relator:
        for r in self.relators:
            if r.label == label:
                return r
        raise KeyError(label)

    def labels(self) -> list[str]:
        return [r.label for r in self.relators]


@dataclass(frozen=True)
class Diagnostic:
    kind: str  # UnknownGenerator | UnreducedRelator | DuplicateLabel
    label: str
    detail: str


def validate(p: Presentation) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    seen: set[str] = set()
    for r in p.relators:
        unknown = sorted(r.word.generators() - set(p.alphabet))
        if r.raw is not None:
            unknown = sorted({n for n, _ in r.raw} - set(p.alphabet))
        for u in unknown:
            out.append(Diagnostic("UnknownGenerator", r.label, u))
        if r.raw is not None and len(r.raw) != len(r.word):
            out.append(Diagnostic("UnreducedRelator", r.label, f"{len(r.raw)} letters reduce to {len(r.word)}"))
        if r.label in seen:
            out.append(Diagnostic("DuplicateLabel", r.label, r.label))
        seen.add(r.label)
    return out


# text format

def parse_presentation(text: str) -> Presentation:
    """Parse ``gen:`` / ``rel[label]:`` lines.  Unknown generators are kept for ``validate``."""
    gens: list[str] = []
    rels: list[Relator] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("gen:"):
            gens.extend(s[4:].split())
        elif s.startswith("rel["):
            close = s.find("]:")
            if close < 0:
                raise PresentationFormatError(lineno, "expected 'rel[<label>]: <word>'")
            label = s[4:close]
            body = s[close + 2 :]
            guard = None
            if "#" in body:
                body, guard = body.split("#", 1)
                guard = guard.strip() or None
            try:
                raw = tuple(parse_letters(body))
            except WordError as exc:
                raise PresentationFormatError(lineno, str(exc)) from exc
            w = Word(raw)
            rels.append(Relator(w, label, guard, raw if len(raw) != len(w) else None))
        else:
            raise PresentationFormatError(lineno, f"unrecognised line {s!r}")
    try:
        alph = Alphabet(gens)
    except WordError as exc:
        raise PresentationFormatError(0, str(exc)) from exc
    fixed = []
    for r in rels:
        if r.word.generators() <= set(alph):
            fixed.append(replace(r, word=r.word.with_alphabet(alph)))
        else:
            fixed.append(replace(r, raw=r.raw if r.raw is not None else r.word.letters))
    return Presentation(alph, tuple(fixed))


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def format_presentation(p: Presentation, header: Sequence[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append("gen: " + " ".join(p.alphabet))
    for r in p.relators:
        line = f"rel[{r.label}]: {r.word}"
        if r.guard:
            line += f"  # {r.guard}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# Tietze moves

def tietze_add_generator(p: Presentation, g: str, defining: Word, label: str | None = None) -> Presentation:
    if g in p.alphabet:
        raise NameCollision(g)
    extra = defining.generators() - set(p.alphabet)
    if extra:
        raise PresentationError(f"defining word uses unknown generators {sorted(extra)}")
    alph = Alphabet(tuple(p.alphabet) + (g,))
    rel = Word(((g, 1),)) * invert(defining.with_alphabet(None))
    rels = [replace(r, word=r.word.with_alphabet(alph)) for r in p.relators]
    rels.append(Relator(rel.with_alphabet(alph), label or f"def_{g}"))
    return Presentation(alph, tuple(rels))


def _defining_word(w: Word, g: str) -> Word | None:
    """If ``g`` occurs exactly once in ``w``, return ``v`` with ``w ~ 1`` iff ``g = v``."""
    idx = [i for i, (n, _) in enumerate(w.letters) if n == g]
    if len(idx) != 1:
        return None
    i = idx[0]
    rest = Word(w.letters[i + 1 :] + w.letters[:i])  # g^s * rest is a rotation of w
    return invert(rest) if w.letters[i][1] == 1 else rest


def tietze_remove_generator(p: Presentation, g: str) -> Presentation:
    """Eliminate ``g`` using the shortest relator in which it occurs exactly once."""
    if g not in p.alphabet:
        raise PresentationError(f"{g} is not a generator")
    best = None
    for k, r in enumerate(p.relators):
        v = _defining_word(r.word, g)
        if v is not None and (best is None or len(r.word) < len(p.relators[best[0]].word)):
            best = (k, v)
    if best is None:
        raise NoDefiningRelator(g)
    k, v = best
    alph = Alphabet(x for x in p.alphabet if x != g)
    rels = []
    for j, r in enumerate(p.relators):
        if j == k:
            continue
        w = substitute(r.word.with_alphabet(None), {g: v})
        if w.is_empty():
            continue
        rels.append(replace(r, word=w.with_alphabet(alph), raw=None))
    return Presentation(alph, tuple(rels))


def tietze_remove_relator(p: Presentation, label: str, certificate=None) -> Presentation:
    """Drop a relator that is freely trivial, duplicated, or derived by ``certificate``.

    A certificate qualifies only if it is valid, starts at the relator (up to
    rotation and inversion), ends at the empty word, and uses nothing but
    relator applications of the remaining relators and free reductions.
    """
    target = p.relator(label)
    others = [r for r in p.relators if r.label != label]
    key = canonical_relator(target.word, p.alphabet)
    ok = key.is_empty() or any(canonical_relator(r.word, p.alphabet) == key for r in others)
    if not ok and certificate is not None:
        from .certificate import check_certificate

        report = check_certificate(certificate)
        other_keys = {canonical_relator(r.word, p.alphabet) for r in others}
        used_ok = all(s.kind in ("rel", "reduce") for s in certificate.steps)
        rel_ok = all(
            canonical_relator(certificate.relators[s.label], p.alphabet) in other_keys
            for s in certificate.steps
            if s.kind == "rel"
        )
        ok = (
            report.valid
            and used_ok
            and rel_ok
            and certificate.target.is_empty()
            and canonical_relator(certificate.start, p.alphabet) == key
        )
    if not ok:
        raise RelatorRemovalRefused(label)
    return Presentation(p.alphabet, tuple(others))


def simplify(p: Presentation) -> Presentation:
    """Greedy cleanup.

    Repeats until stable: canonicalise relators (least rotation over the word
    and its inverse), drop empty ones and duplicates, then eliminate one
    generator defined by a relator of length one (``g = 1``) or of length two
    with a different second generator (``g = x^{+-1}``).  The latest eligible
    generator in alphabet order goes first.
    """
    while True:
        alph = p.alphabet
        seen = set()
        rels = []
        for r in p.relators:
            w = canonical_relator(r.word, alph)
            if w.is_empty() or w in seen:
                continue
            seen.add(w)
            rels.append(replace(r, word=w.with_alphabet(alph), raw=None))
        p = Presentation(alph, tuple(rels))
        pos = {n: i for i, n in enumerate(alph)}
        cand = None
        for r in rels:
            names = [n for n, _ in r.word.letters]
            if len(names) == 1 or (len(names) == 2 and names[0] != names[1]):
                for n in names:
                    if cand is None or pos[n] > pos[cand]:
                        cand = n
        if cand is None:
            return p
        p = tietze_remove_generator(p, cand)


# abelianization

@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank if self.free_rank > 1 else "Z")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    pos = {n: i for i, n in enumerate(p.alphabet)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.alphabet)
        for n, s in r.word.letters:
            row[pos[n]] += s
        rows.append(row)
    return rows


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, pi, pj = min(cands)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianization(p: Presentation) -> AbelianInvariants:
    diag = smith_diagonal(exponent_matrix(p)) if p.relators else []
    free = len(p.alphabet) - len(diag)
    return AbelianInvariants(free, tuple(d for d in diag if d > 1))
