"""Mod-2 first homology of N_{g,n} and the transvection action of Dehn twists.

Basis: crosscap classes mu_1..mu_g, then boundary classes d_1..d_{n-1}.  The
intersection pairing is diagonal with 1 on the mu's and 0 on the boundary
classes.  A twist about a two-sided class c acts by x -> x + <x,c> c.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .presentation import Presentation
from .words import Word, cyclic_reduce


class HomologyError(Exception):
    pass


class OneSidedClass(HomologyError):
    pass


class MissingAssignment(HomologyError):
    def __init__(self, name: str):
        super().__init__(f"no matrix assigned to generator {name!r}")
        self.name = name


class ClassParseError(HomologyError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 1 or self.boundary < 0:
            raise HomologyError(f"bad surface N_{{{self.genus},{self.boundary}}}")

    @property
    def rank(self) -> int:
        return self.genus + max(self.boundary - 1, 0)

    @property
    def basis(self) -> list[str]:
        return [f"μ{i}" for i in range(1, self.genus + 1)] + [f"∂{j}" for j in range(1, self.boundary)]

    @property
    def form(self) -> np.ndarray:
        d = np.zeros(self.rank, dtype=np.uint8)
        d[: self.genus] = 1
        return np.diag(d)

    def pairing(self, x, y) -> int:
        x, y = np.asarray(x, dtype=np.uint8), np.asarray(y, dtype=np.uint8)
        return int(np.dot(x[: self.genus].astype(np.int64), y[: self.genus])) & 1

    def zero(self) -> np.ndarray:
        return np.zeros(self.rank, dtype=np.uint8)

    def identity(self) -> np.ndarray:
        return np.eye(self.rank, dtype=np.uint8)

    def mu(self, *indices: int) -> np.ndarray:
        v = self.zero()
        for i in indices:
            v[i - 1] ^= 1
        return v

    def parse_class(self, text: str) -> np.ndarray:
        return parse_class(text, self)

    def format_class(self, c) -> str:
        return format_class(c, self)

    def all_classes(self) -> list[np.ndarray]:
        """Every vector of the space, ordered by weight then lexicographically."""
        out = []
        for w in range(self.rank + 1):
            for idx in combinations(range(self.rank), w):
                v = self.zero()
                v[list(idx)] = 1
                out.append(v)
        return out


_TERM_RE = re.compile(r"(μ|mu|∂|d)\s*([0-9]+)")


def parse_class(text: str, model: SurfaceModel) -> np.ndarray:
    """Parse ``μ1+μ3+∂1`` (ASCII ``mu1+mu3+d1`` also accepted; ``0`` is zero)."""
    v = model.zero()
    s = text.strip()
    if s == "0":
        return v
    for term in s.split("+"):
        m = _TERM_RE.fullmatch(term.strip())
        if not m:
            raise ClassParseError(f"bad class term {term!r}")
        k = int(m.group(2))
        if m.group(1) in ("μ", "mu"):
            if not 1 <= k <= model.genus:
                raise ClassParseError(f"μ{k} out of range for genus {model.genus}")
            v[k - 1] ^= 1
        else:
            if not 1 <= k <= model.boundary - 1:
                raise ClassParseError(f"∂{k} out of range for {model.boundary} boundary components")
            v[model.genus + k - 1] ^= 1
    return v


def format_class(c, model: SurfaceModel) -> str:
    c = np.asarray(c)
    terms = [model.basis[i] for i in range(model.rank) if c[i]]
    return "+".join(terms) if terms else "0"


def transvection(model: SurfaceModel, c) -> np.ndarray:
    c = np.asarray(c, dtype=np.uint8) & 1
    if model.pairing(c, c):
        raise OneSidedClass(f"class {format_class(c, model)} is one-sided")
    # column j is e_j + <e_j,c> c
    jc = (model.form @ c) & 1
    return (model.identity() ^ np.outer(c, jc).astype(np.uint8)) & 1


def matmul2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ((a.astype(np.int64) @ b.astype(np.int64)) & 1).astype(np.uint8)


def inverse2(a: np.ndarray) -> np.ndarray:
    """Inverse over GF(2) by Gauss-Jordan elimination."""
    n = a.shape[0]
    m = np.concatenate([a.astype(np.uint8) & 1, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r, col]), None)
        if piv is None:
            raise HomologyError("matrix is singular mod 2")
        if piv != col:
            m[[col, piv]] = m[[piv, col]]
        for r in range(n):
            if r != col and m[r, col]:
                m[r] ^= m[col]
    return m[:, n:].copy()


def evaluate(w: Word, assign: Mapping[str, np.ndarray], model: SurfaceModel | None = None) -> np.ndarray:
    """Product of the assigned matrices in word order; inverses are honoured."""
    if model is None:
        if not assign:
            if w.is_empty():
                raise HomologyError("need a model to evaluate the empty word with no assignment")
            raise MissingAssignment(w.letters[0][0])
        rank = next(iter(assign.values())).shape[0]
    else:
        rank = model.rank
    out = np.eye(rank, dtype=np.uint8)
    inv_cache: dict[str, np.ndarray] = {}
    for n, s in w.letters:
        if n not in assign:
            raise MissingAssignment(n)
        m = assign[n]
        if s == -1:
            if n not in inv_cache:
                inv_cache[n] = inverse2(m)
            m = inv_cache[n]
        out = matmul2(out, m)
    return out


def twist_assignment(model: SurfaceModel, classes: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
    return {n: transvection(model, c) for n, c in classes.items()}


@dataclass(frozen=True)
class RelatorCheck:
    label: str
    passed: bool


def verify_relators(p: Presentation, model: SurfaceModel, assign: Mapping[str, np.ndarray]) -> list[RelatorCheck]:
    missing = sorted(set(p.alphabet) - set(assign))
    if missing:
        raise MissingAssignment(missing[0])
    ident = model.identity()
    return [RelatorCheck(r.label, bool(np.array_equal(evaluate(r.word, assign, model), ident))) for r in p.relators]


# fast path for words whose letters are all transvections: classes as bitmasks

def _mask(c) -> int:
    return int(sum(1 << i for i, b in enumerate(np.asarray(c)) if b))


def _apply_word_masks(letters: Sequence[int], v: int, mu_mask: int) -> int:
    # word x1 x2 ... xk acts as x1(x2(...xk(v))); transvections are involutions
    for c in reversed(letters):
        if bin(v & c & mu_mask).count("1") & 1:
            v ^= c
    return v


def word_is_identity(w: Word, classes: Mapping[str, int], model: SurfaceModel) -> bool:
    """Identity test of a twist word with class bitmasks; all images are involutions."""
    mu_mask = (1 << model.genus) - 1
    letters = [classes[n] for n, _ in w.letters]
    for j in range(model.rank):
        if _apply_word_masks(letters, 1 << j, mu_mask) != 1 << j:
            return False
    return True


# class solver

@dataclass(frozen=True)
class PairingConstraint:
    left: str
    right: str
    value: int
    source: str = ""

    def names(self) -> set[str]:
        return {self.left, self.right}


@dataclass(frozen=True)
class RelatorConstraint:
    label: str
    word: Word
    curve_of: tuple[tuple[str, str], ...] = ()  # generator -> curve name, when they differ

    def curve_map(self) -> dict[str, str]:
        return dict(self.curve_of)

    def names(self) -> set[str]:
        m = self.curve_map()
        return {m.get(n, n) for n in self.word.generators()}


@dataclass
class SolverResult:
    status: str  # "Solved" | "Unsatisfiable"
    assignment: dict[str, np.ndarray] = field(default_factory=dict)
    alternatives: dict[str, list[np.ndarray]] = field(default_factory=dict)
    solution_count: int = 0
    violated: list = field(default_factory=list)

    @property
    def solved(self) -> bool:
        return self.status == "Solved"

    def ambiguous(self) -> list[str]:
        return sorted(n for n, alts in self.alternatives.items() if len(alts) > 1)


def _satisfied(con, values: Mapping[str, int], model: SurfaceModel) -> bool:
    mu_mask = (1 << model.genus) - 1
    if isinstance(con, PairingConstraint):
        return (bin(values[con.left] & values[con.right] & mu_mask).count("1") & 1) == con.value
    m = con.curve_map()
    classes = {n: values[m.get(n, n)] for n in con.word.generators()}
    for c in classes.values():
        if bin(c & c & mu_mask).count("1") & 1:
            return False
    return word_is_identity(con.word, classes, model)


def class_solver(
    model: SurfaceModel,
    unknowns: Sequence[str],
    constraints: Iterable,
    seeds: Mapping[str, np.ndarray] | None = None,
    *,
    max_solutions: int = 10**6,
    prefer: Mapping[str, np.ndarray] | None = None,
) -> SolverResult:
    """Backtracking search for classes of ``unknowns`` satisfying every constraint.

    Candidates are tried by weight then lexicographic order, so the reported
    assignment is the first solution in that order.  All solutions are counted
    (up to ``max_solutions``) and the distinct values per unknown are kept in
    ``alternatives``.  ``prefer`` moves a hinted class to the front of an
    unknown's candidate list; it only changes which solution is reported first.
    With no solution, ``violated`` is a minimal subset of
    constraints that is already unsatisfiable.
    """
    seeds = {k: _mask(v) for k, v in (seeds or {}).items()}
    cons = list(constraints)
    order = list(unknowns)
    hints = {k: _mask(v) for k, v in (prefer or {}).items()}
    solutions = _search(model, order, cons, seeds, max_solutions, hints)
    if not solutions:
        return SolverResult("Unsatisfiable", violated=_core(model, order, cons, seeds))

    def vec(m: int) -> np.ndarray:
        return np.array([(m >> i) & 1 for i in range(model.rank)], dtype=np.uint8)

    first = solutions[0]
    assignment = {k: vec(v) for k, v in seeds.items()}
    assignment.update({k: vec(first[k]) for k in order})
    alts = {}
    for k in order:
        seen = []
        for s in solutions:
            if s[k] not in seen:
                seen.append(s[k])
        alts[k] = [vec(m) for m in seen]
    return SolverResult("Solved", assignment, alts, len(solutions))


def _search(model, order, cons, seeds, max_solutions, hints=None):
    base = [_mask(v) for v in model.all_classes()]
    hints = hints or {}
    cands = {k: ([hints[k]] + [m for m in base if m != hints[k]]) if k in hints else base for k in order}
    known = set(seeds)
    # attach each constraint to the last unknown it mentions
    stage: dict[int, list] = {i: [] for i in range(len(order))}
    pre = []
    for c in cons:
        names = c.names()
        missing = names - known - set(order)
        if missing:
            raise HomologyError(f"constraint {c} mentions unknown names {sorted(missing)}")
        idx = [order.index(n) for n in names if n in order]
        (stage[max(idx)] if idx else pre).append(c)
    values = dict(seeds)
    if not all(_satisfied(c, values, model) for c in pre):
        return []
    solutions = []

    def rec(i):
        if len(solutions) >= max_solutions:
            return
        if i == len(order):
            solutions.append({k: values[k] for k in order})
            return
        for m in cands[order[i]]:
            values[order[i]] = m
            if all(_satisfied(c, values, model) for c in stage[i]):
                rec(i + 1)
        values.pop(order[i], None)

    rec(0)
    return solutions


def _core(model, order, cons, seeds):
    if len(cons) > 60:
        return cons
    core = list(cons)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1 :]
        used = set().union(*(c.names() for c in trial)) if trial else set()
        sub_order = [n for n in order if n in used]
        if not _search(model, sub_order, trial, {k: v for k, v in seeds.items()}, 1):
            core = trial
        else:
            i += 1
    return core


def relator_pairing_constraints(label: str, w: Word, curve_of: Mapping[str, str] | None = None) -> list[PairingConstraint]:
    """Pairings forced by commutator (``x y x^-1 y^-1``, pairing 0) and braid
    (``x y x y^-1 x^-1 y^-1``, pairing 1) relators, up to rotation, inversion
    and the orientation of each letter."""
    m = dict(curve_of or {})
    core, _ = cyclic_reduce(w)
    lets = core.letters
    n = len(lets)
    out = []
    for i in range(n):
        rot = lets[i:] + lets[:i]
        names = [x for x, _ in rot]
        signs = [s for _, s in rot]
        if n == 4 and names[0] == names[2] and names[1] == names[3] and names[0] != names[1]:
            if signs[0] == -signs[2] and signs[1] == -signs[3]:
                out.append(PairingConstraint(m.get(names[0], names[0]), m.get(names[1], names[1]), 0, label))
                break
        if n == 6 and names[0] == names[2] == names[4] and names[1] == names[3] == names[5] and names[0] != names[1]:
            s = signs
            if s[0] == s[2] == -s[4] and s[1] == -s[3] == -s[5]:
                out.append(PairingConstraint(m.get(names[0], names[0]), m.get(names[1], names[1]), 1, label))
                break
    return out
