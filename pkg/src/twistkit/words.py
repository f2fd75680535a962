"""Free-group words over named generator alphabets, and the word text parser.

A word is an immutable tuple of letters.  A letter is a pair ``(name, sign)``
with ``sign`` in ``{+1, -1}``.  Text syntax::

    WORD := TERM*
    TERM := GEN ['] | '(' WORD ')' '^' SIGNED_INT
    GEN  := [a-z][a-z0-9_]* ('@' [0-9]+)?

The ``@`` suffix is only produced by Reidemeister-Schreier naming.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Letter = tuple[str, int]

EXPONENT_BOUND = 2**31 - 1
MAX_WORD_LENGTH = 10**6

NAME_RE = re.compile(r"[a-z][a-z0-9_]*(?:@[0-9]+)?")


class WordError(Exception):
    pass


class UnknownGenerator(WordError):
    def __init__(self, token: str):
        super().__init__(f"unknown generator {token!r}")
        self.token = token


class WordSyntaxError(WordError):
    def __init__(self, position: int, message: str):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


class ExponentOverflow(WordError):
    pass


class WordTooLong(WordError):
    pass


class AlphabetMismatch(WordError):
    pass


class Alphabet(tuple):
    """Ordered tuple of distinct generator names."""

    def __new__(cls, names: Iterable[str] = ()):
        names = tuple(names)
        for n in names:
            if not isinstance(n, str) or not NAME_RE.fullmatch(n):
                raise WordError(f"invalid generator name {n!r}")
        if len(set(names)) != len(names):
            raise WordError("generator names must be unique")
        return super().__new__(cls, names)

    def index_of(self, name: str) -> int:
        return self.index(name)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self)})"


def _free_reduce(letters: Iterable[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for x in letters:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return out


@dataclass(frozen=True)
class Word:
    """Freely reduced word.  ``alphabet`` is ``None`` for an open alphabet."""

    letters: tuple[Letter, ...] = ()
    alphabet: Alphabet | None = field(default=None, compare=False)

    def __post_init__(self):
        letters = tuple((str(n), int(s)) for n, s in self.letters)
        for n, s in letters:
            if s not in (1, -1):
                raise WordError(f"bad sign {s} on letter {n}")
        if self.alphabet is not None:
            for n, _ in letters:
                if n not in self.alphabet:
                    raise UnknownGenerator(n)
        reduced = tuple(_free_reduce(letters))
        if len(reduced) > MAX_WORD_LENGTH:
            raise WordTooLong(f"word length {len(reduced)} exceeds cap {MAX_WORD_LENGTH}")
        object.__setattr__(self, "letters", reduced)

    @classmethod
    def from_names(cls, names: Sequence[str], alphabet: Alphabet | None = None) -> "Word":
        """Build from tokens like ``["a1", "e'"]``."""
        letters = [(t[:-1], -1) if t.endswith("'") else (t, 1) for t in names]
        return cls(tuple(letters), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i], self.alphabet)
        return self.letters[i]

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def is_empty(self) -> bool:
        return not self.letters

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def tokens(self) -> list[str]:
        return [n if s == 1 else n + "'" for n, s in self.letters]

    def with_alphabet(self, alphabet: Alphabet | None) -> "Word":
        return Word(self.letters, alphabet)

    def __str__(self) -> str:
        return " ".join(self.tokens())

    def __repr__(self) -> str:
        return f"Word({str(self) or '1'!r})"


def _merge_alphabet(u: Word, v: Word) -> Alphabet | None:
    if u.alphabet is not None and v.alphabet is not None and u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet!r} vs {v.alphabet!r}")
    return u.alphabet if u.alphabet is not None else v.alphabet


def multiply(u: Word, v: Word) -> Word:
    return Word(u.letters + v.letters, _merge_alphabet(u, v))


def invert(w: Word) -> Word:
    return Word(tuple((n, -s) for n, s in reversed(w.letters)), w.alphabet)


def power(w: Word, k: int) -> Word:
    if abs(k) > EXPONENT_BOUND:
        raise ExponentOverflow(f"exponent {k} exceeds bound {EXPONENT_BOUND}")
    base = w if k >= 0 else invert(w)
    if len(base) * abs(k) > MAX_WORD_LENGTH:
        # a cyclically reduced core could still be shorter; check exactly
        core, conj = cyclic_reduce(base)
        if len(core) * abs(k) + 2 * len(conj) > MAX_WORD_LENGTH:
            raise WordTooLong(f"power of length {len(core) * abs(k)} exceeds cap")
        return Word(conj.letters + core.letters * abs(k) + invert(conj).letters, w.alphabet)
    return Word(base.letters * abs(k), w.alphabet)


def conjugate(f: Word, w: Word) -> Word:
    """Return ``f w f^-1``."""
    return multiply(multiply(f, w), invert(f))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return Word(letters[i : j + 1], w.alphabet), Word(letters[:i], w.alphabet)


def exponent_sum(w: Word, g: str) -> int:
    return sum(s for n, s in w.letters if n == g)


def substitute(w: Word, mapping: Mapping[str, Word], alphabet: Alphabet | None = None) -> Word:
    """Homomorphic image of ``w``; generators absent from ``mapping`` map to themselves."""
    out: list[Letter] = []
    for n, s in w.letters:
        if n in mapping:
            img = mapping[n]
            if alphabet is not None and img.alphabet is not None and img.alphabet != alphabet:
                raise AlphabetMismatch(f"image of {n} is over {img.alphabet!r}")
            out.extend(img.letters if s == 1 else invert(img).letters)
        else:
            out.append((n, s))
        if len(out) > 2 * MAX_WORD_LENGTH:
            out = _free_reduce(out)
    return Word(tuple(out), alphabet)


def rotations(w: Word) -> list[Word]:
    n = len(w)
    return [Word(w.letters[i:] + w.letters[:i], w.alphabet) for i in range(max(n, 1))]


def is_rotation_of_relator(u: Word, r: Word) -> bool:
    """True if ``u`` equals, as a reduced word, a cyclic rotation of ``r`` or of ``r^-1``."""
    core, _ = cyclic_reduce(r)
    for cand in (core, invert(core)):
        n = len(cand.letters)
        if n == 0:
            if u.is_empty():
                return True
            continue
        for i in range(n):
            rot = cand.letters[i:] + cand.letters[:i]
            if Word(rot).letters == u.letters:
                return True
    return False


# parser

_TOKEN_RE = re.compile(
    r"\s+|(?P<gen>[a-z][a-z0-9_]*(?:@[0-9]+)?)(?P<prime>')?|(?P<open>\()|(?P<close>\))|(?P<caret>\^)"
    r"|(?P<int>[+-]?[0-9]+)"
)


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None, exponent_bound: int):
        self.text = text
        self.alphabet = alphabet
        self.bound = exponent_bound
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                raise WordSyntaxError(pos, f"unexpected character {text[pos]!r}")
            kind = m.lastgroup
            if kind == "prime":
                kind = "gen"
            if kind is not None:
                self.toks.append((kind, m.group(0), pos))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def parse(self) -> list[Letter]:
        letters = self.word()
        tok = self.peek()
        if tok is not None:
            raise WordSyntaxError(tok[2], f"unexpected {tok[1]!r}")
        return letters

    def word(self) -> list[Letter]:
        out: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or tok[0] == "close":
                return out
            kind, val, pos = tok
            if kind == "gen":
                self.i += 1
                inv = val.endswith("'")
                name = val[:-1] if inv else val
                if self.alphabet is not None and name not in self.alphabet:
                    raise UnknownGenerator(name)
                out.append((name, -1 if inv else 1))
            elif kind == "open":
                self.i += 1
                inner = _free_reduce(self.word())
                close = self.peek()
                if close is None or close[0] != "close":
                    raise WordSyntaxError(len(self.text) if close is None else close[2], "expected ')'")
                self.i += 1
                caret = self.peek()
                if caret is None or caret[0] != "caret":
                    raise WordSyntaxError(len(self.text) if caret is None else caret[2], "expected '^' after ')'")
                self.i += 1
                num = self.peek()
                if num is None or num[0] != "int":
                    raise WordSyntaxError(len(self.text) if num is None else num[2], "expected integer exponent")
                self.i += 1
                k = int(num[1])
                if abs(k) > self.bound:
                    raise ExponentOverflow(f"exponent {k} at position {num[2]} exceeds bound {self.bound}")
                out.extend(power(Word(tuple(inner)), k).letters)
                if len(out) > 2 * MAX_WORD_LENGTH:
                    out = _free_reduce(out)
                    if len(out) > MAX_WORD_LENGTH:
                        raise WordTooLong("expanded word exceeds length cap")
            else:
                raise WordSyntaxError(pos, f"unexpected {val!r}")


def parse_letters(text: str, alphabet: Iterable[str] | None = None, *, exponent_bound: int = EXPONENT_BOUND) -> list[Letter]:
    """Parse without free reduction (used to detect unreduced relators)."""
    alph = None if alphabet is None else (alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet))
    return _Parser(text, alph, exponent_bound).parse()


def parse_word(text: str, alphabet: Iterable[str] | None = None, *, exponent_bound: int = EXPONENT_BOUND) -> Word:
    """Parse word text; ``alphabet=None`` accepts any well-formed generator name."""
    alph = None if alphabet is None else (alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet))
    letters = _Parser(text, alph, exponent_bound).parse()
    return Word(tuple(letters), alph)


def letter_key(alphabet: Sequence[str]):
    """Sort key on letters: alphabet position, then positive before inverse."""
    pos = {n: i for i, n in enumerate(alphabet)}
    return lambda x: (pos.get(x[0], len(pos)), x[0], 0 if x[1] == 1 else 1)


def canonical_relator(w: Word, alphabet: Sequence[str] | None = None) -> Word:
    """Least rotation of the cyclic reduction of ``w`` or ``w^-1``."""
    core, _ = cyclic_reduce(w)
    if core.is_empty():
        return core
    key = letter_key(alphabet if alphabet is not None else sorted(core.generators()))
    best = None
    for cand in (core, invert(core)):
        lets = cand.letters
        for i in range(len(lets)):
            rot = lets[i:] + lets[:i]
            k = [key(x) for x in rot]
            if best is None or k < best[0]:
                best = (k, rot)
    return Word(best[1], w.alphabet)
