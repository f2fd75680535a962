"""Replayable derivation certificates.

File format, one item per line (``#`` starts a comment)::

    ctx surface g=<g> n=<n>
    ctx catalog <entry> g=<g> n=<n> [subst-rho]   # generators, relators, classes
    ctx gen: <name> ...
    ctx macro <name>: <word>
    ctx class <name>: <mod-2 class>
    ctx rel[<label>]: <word>
    ctx proves <label>          # start must be that relator, target empty
    ctx claim: <word> = <word>  # start must be lhs * rhs^-1
    start: <word>
    step rel <label> : <pos> insert|delete <word> [=> <word>]
    step schema chain curves=<c1,...> [c0=<x>] [c0p=<x>] [rot=<r>] : <pos> insert|delete <word> [=> <word>]
    step schema lantern d=<d1,...,d7> [trivial=<x,...>] : <pos> insert|delete <word> [=> <word>]
    step schema extended-lantern d=<d1,...,d7> trivial=<x> : ...
    step schema boundary curve=<x> : <pos> insert|delete <word> [=> <word>]
    step conj <pos> <from> -> <to> by <word> [=> <word>]
    step macro <name> <pos> expand|contract [=> <word>]
    step reduce [=> <word>]
    target: <word>

Every step acts on the freely reduced current word; positions are 0-based
letter offsets.  ``=>`` asserts the word after the step.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .homology import HomologyError, SurfaceModel, format_class, matmul2, parse_class, transvection
from .schema import SchemaError, boundary_trivial, gen_chain, gen_lantern
from .words import (
    Alphabet,
    Word,
    WordError,
    canonical_relator,
    invert,
    is_rotation_of_relator,
    parse_word,
)


class CertificateFormatError(Exception):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Step:
    kind: str  # rel | schema | conj | macro | reduce
    line: int
    text: str
    label: str = ""
    schema: str = ""
    params: dict = field(default_factory=dict)
    pos: int = 0
    direction: str = ""
    word_text: str = ""
    source: str = ""
    image: str = ""
    by_text: str = ""
    asserted: str | None = None


@dataclass
class Certificate:
    model: SurfaceModel | None = None
    generators: list[str] = field(default_factory=list)
    macros: dict[str, str] = field(default_factory=dict)
    classes: dict[str, np.ndarray] = field(default_factory=dict)
    relator_texts: dict[str, str] = field(default_factory=dict)
    proves: str | None = None
    claim: tuple[str, str] | None = None
    start_text: str = ""
    start_line: int = 0
    steps: list[Step] = field(default_factory=list)
    target_text: str = ""
    target_line: int = 0
    lines: list[str] = field(default_factory=list)

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(dict.fromkeys(self.generators + list(self.macros)))

    def word(self, text: str) -> Word:
        if text.strip() in ("", "1"):
            return Word()
        return parse_word(text, self.alphabet).with_alphabet(None)

    @property
    def relators(self) -> dict[str, Word]:
        return {k: self.word(v) for k, v in self.relator_texts.items()}

    @property
    def start(self) -> Word:
        return self.word(self.start_text)

    @property
    def target(self) -> Word:
        return self.word(self.target_text)


@dataclass
class CertificateReport:
    valid: bool
    failed_step: int | None = None  # 0 = start/context, len(steps)+1 = target
    line: int | None = None
    message: str = ""
    words: list[Word] = field(default_factory=list)

    def __str__(self) -> str:
        if self.valid:
            return f"Valid ({len(self.words) - 1} steps)"
        return f"Invalid at step {self.failed_step} (line {self.line}): {self.message}"


_STEP_SPLIT = re.compile(r"\s+=>\s*|\s*=>\s+|=>")


def parse_certificate(text: str) -> Certificate:
    from . import catalog as cat

    cert = Certificate(lines=text.splitlines())
    for lineno, raw in enumerate(cert.lines, 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        try:
            if s.startswith("ctx "):
                _parse_ctx(cert, s[4:].strip(), lineno, cat)
            elif s.startswith("start:"):
                cert.start_text, cert.start_line = s[6:].strip(), lineno
            elif s.startswith("target:"):
                cert.target_text, cert.target_line = s[7:].strip(), lineno
            elif s.startswith("step "):
                cert.steps.append(_parse_step(s[5:].strip(), lineno))
            else:
                raise CertificateFormatError(lineno, f"unrecognised line {s!r}")
        except CertificateFormatError:
            raise
        except (ValueError, KeyError, IndexError, WordError, HomologyError, cat.CatalogError) as exc:
            raise CertificateFormatError(lineno, str(exc)) from exc
    if not cert.start_line:
        raise CertificateFormatError(0, "missing start line")
    if not cert.target_line:
        raise CertificateFormatError(0, "missing target line")
    return cert


def _kv(tokens: Iterable[str]) -> dict[str, str]:
    out = {}
    for t in tokens:
        if "=" not in t:
            raise ValueError(f"expected key=value, got {t!r}")
        k, v = t.split("=", 1)
        out[k] = v
    return out


def _parse_ctx(cert: Certificate, s: str, lineno: int, cat) -> None:
    if s.startswith("surface"):
        kv = _kv(s.split()[1:])
        cert.model = SurfaceModel(int(kv["g"]), int(kv["n"]))
    elif s.startswith("catalog"):
        parts = s.split()
        entry, kv = parts[1], _kv(p for p in parts[2:] if "=" in p)
        g, n = int(kv["g"]), int(kv["n"])
        opts = cat.CatalogOptions(subst_rho="subst-rho" in parts)
        p = cat.instantiate(entry, g, n, opts)
        cert.model = cert.model or SurfaceModel(g, n)
        cert.generators += [x for x in p.alphabet if x not in cert.generators]
        for r in p.relators:
            cert.relator_texts[r.label] = str(r.word)
        for gen, c in cat.generator_classes(p.alphabet, g, n).items():
            cert.classes.setdefault(gen, c)
    elif s.startswith("gen:"):
        cert.generators += [x for x in s[4:].split() if x not in cert.generators]
    elif s.startswith("macro "):
        name, _, body = s[6:].partition(":")
        cert.macros[name.strip()] = body.strip()
    elif s.startswith("class "):
        name, _, body = s[6:].partition(":")
        if cert.model is None:
            raise CertificateFormatError(lineno, "ctx class before ctx surface")
        cert.classes[name.strip()] = parse_class(body, cert.model)
    elif s.startswith("rel["):
        label, _, body = s[4:].partition("]:")
        cert.relator_texts[label] = body.strip()
    elif s.startswith("proves "):
        cert.proves = s[7:].strip()
    elif s.startswith("claim:"):
        lhs, _, rhs = s[6:].partition("=")
        cert.claim = (lhs.strip(), rhs.strip())
    else:
        raise CertificateFormatError(lineno, f"unknown context item {s!r}")


def _parse_step(s: str, lineno: int) -> Step:
    parts = _STEP_SPLIT.split(s, maxsplit=1)
    body = parts[0].strip()
    asserted = parts[1].strip() if len(parts) > 1 else None
    kind = body.split()[0]
    st = Step(kind, lineno, s, asserted=asserted)
    rest = body[len(kind):].strip()
    if kind in ("rel", "schema"):
        head, sep, tail = rest.partition(" : ")
        if not sep:
            raise CertificateFormatError(lineno, "expected ' : ' before the position")
        htoks = head.split()
        if kind == "rel":
            if len(htoks) != 1:
                raise CertificateFormatError(lineno, "rel step takes one label")
            st.label = htoks[0]
        else:
            st.schema = htoks[0]
            st.params = _kv(htoks[1:])
        ttoks = tail.split(None, 2)
        if len(ttoks) < 2:
            raise CertificateFormatError(lineno, "expected '<pos> insert|delete <word>'")
        st.pos, st.direction = int(ttoks[0]), ttoks[1]
        st.word_text = ttoks[2] if len(ttoks) > 2 else ""
        if st.direction not in ("insert", "delete"):
            raise CertificateFormatError(lineno, f"direction must be insert or delete, not {st.direction!r}")
    elif kind == "conj":
        m = re.fullmatch(r"(\d+)\s+(\S+)\s+->\s+(\S+)\s+by\s*(.*)", rest)
        if not m:
            raise CertificateFormatError(lineno, "expected 'conj <pos> <from> -> <to> by <word>'")
        st.pos, st.source, st.image, st.by_text = int(m.group(1)), m.group(2), m.group(3), m.group(4).strip()
    elif kind == "macro":
        toks = rest.split()
        if len(toks) != 3 or toks[2] not in ("expand", "contract"):
            raise CertificateFormatError(lineno, "expected 'macro <name> <pos> expand|contract'")
        st.label, st.pos, st.direction = toks[0], int(toks[1]), toks[2]
    elif kind == "reduce":
        if rest:
            raise CertificateFormatError(lineno, "reduce takes no arguments")
    else:
        raise CertificateFormatError(lineno, f"unknown step kind {kind!r}")
    return st


class StepFailure(Exception):
    pass


def expand_macros(w: Word, cert: Certificate, depth: int = 0) -> Word:
    if depth > 32:
        raise StepFailure("macro expansion too deep")
    if not (w.generators() & set(cert.macros)):
        return w
    out = []
    for n, s in w.letters:
        if n in cert.macros:
            body = expand_macros(cert.word(cert.macros[n]), cert, depth + 1)
            out.extend((body if s == 1 else invert(body)).letters)
        else:
            out.append((n, s))
    return Word(tuple(out))


def image_matrix(w: Word, cert: Certificate) -> np.ndarray:
    """Mod-2 image of a certificate word: macros expanded, symbols as transvections."""
    model = cert.model
    if model is None:
        raise StepFailure("no surface declared")
    out = model.identity()
    cache: dict[str, np.ndarray] = {}
    for n, _ in expand_macros(w, cert).letters:
        if n not in cache:
            if n not in cert.classes:
                raise StepFailure(f"no class for {n!r}")
            try:
                cache[n] = transvection(model, cert.classes[n])
            except HomologyError as exc:
                raise StepFailure(str(exc)) from exc
        out = matmul2(out, cache[n])
    return out


def schema_relator(step: Step, cert: Certificate) -> Word:
    model = cert.model
    if model is None:
        raise StepFailure("schema step needs ctx surface")
    p = step.params
    try:
        if step.schema == "chain":
            curves = p["curves"].split(",")
            return gen_chain(curves, cert.classes, model, p.get("c0"), p.get("c0p"), int(p.get("rot", 0)))
        if step.schema in ("lantern", "extended-lantern"):
            d = p["d"].split(",")
            trivial = [t for t in p.get("trivial", "").split(",") if t]
            if step.schema == "extended-lantern" and len(trivial) != 1:
                raise StepFailure("extended lantern needs exactly one trivial boundary curve")
            if step.schema == "extended-lantern" and trivial[0] not in [x.rstrip("'") for x in d[3:]]:
                raise StepFailure("the trivial curve of an extended lantern must be a boundary curve")
            return gen_lantern(d, cert.classes, model, trivial)
        if step.schema == "boundary":
            return boundary_trivial(p["curve"], cert.classes, model)
    except KeyError as exc:
        raise StepFailure(f"missing schema parameter {exc}") from exc
    except SchemaError as exc:
        raise StepFailure(str(exc)) from exc
    raise StepFailure(f"unknown schema {step.schema!r}")


def _splice(cur: Word, step: Step, relator: Word, cert: Certificate) -> Word:
    w = cert.word(step.word_text)
    if not is_rotation_of_relator(w, relator):
        raise StepFailure(f"{w} is not a cyclic rotation of the relator or its inverse")
    lets = cur.letters
    if not 0 <= step.pos <= len(lets):
        raise StepFailure(f"position {step.pos} outside word of length {len(lets)}")
    if step.direction == "insert":
        return Word(lets[: step.pos] + w.letters + lets[step.pos :])
    if lets[step.pos : step.pos + len(w)] != w.letters:
        raise StepFailure(f"word at position {step.pos} is not {w}")
    return Word(lets[: step.pos] + lets[step.pos + len(w) :])


def apply_step(cur: Word, step: Step, cert: Certificate) -> Word:
    try:
        if step.kind == "rel":
            if step.label not in cert.relator_texts:
                raise StepFailure(f"unknown relator {step.label!r}")
            return _splice(cur, step, cert.word(cert.relator_texts[step.label]), cert)
        if step.kind == "schema":
            return _splice(cur, step, schema_relator(step, cert), cert)
        if step.kind == "conj":
            return _conj(cur, step, cert)
        if step.kind == "macro":
            return _macro(cur, step, cert)
        if step.kind == "reduce":
            return cur
    except WordError as exc:
        raise StepFailure(str(exc)) from exc
    raise StepFailure(f"unknown step kind {step.kind!r}")


def _letter(token: str, cert: Certificate) -> tuple[str, int]:
    w = cert.word(token)
    if len(w) != 1:
        raise StepFailure(f"{token!r} is not a single letter")
    return w.letters[0]


def _conj(cur: Word, step: Step, cert: Certificate) -> Word:
    src = _letter(step.source, cert)
    img = _letter(step.image, cert)
    f = cert.word(step.by_text)
    lets = cur.letters
    if not 0 <= step.pos < len(lets) or lets[step.pos] != src:
        raise StepFailure(f"letter at position {step.pos} is not {step.source}")
    for n in (src[0], img[0]):
        if n in cert.macros:
            raise StepFailure("conjugation acts on twist symbols, not macros")
        if n not in cert.classes:
            raise StepFailure(f"no class for {n!r}")
    model = cert.model
    moved = matmul2(image_matrix(f, cert), cert.classes[src[0]].reshape(-1, 1)).ravel()
    if not np.array_equal(moved, cert.classes[img[0]]):
        raise StepFailure(
            f"class of {img[0]} is {format_class(cert.classes[img[0]], model)}, "
            f"but the image of {src[0]} under {f} is {format_class(moved, model)}")
    repl = invert(f).letters + (img,) + f.letters
    return Word(lets[: step.pos] + repl + lets[step.pos + 1 :])


def _macro(cur: Word, step: Step, cert: Certificate) -> Word:
    name = step.label
    if name not in cert.macros:
        raise StepFailure(f"unknown macro {name!r}")
    body = cert.word(cert.macros[name])
    lets = cur.letters
    if step.direction == "expand":
        if not 0 <= step.pos < len(lets) or lets[step.pos][0] != name:
            raise StepFailure(f"letter at position {step.pos} is not {name}")
        repl = body if lets[step.pos][1] == 1 else invert(body)
        return Word(lets[: step.pos] + repl.letters + lets[step.pos + 1 :])
    for s, repl in ((1, body), (-1, invert(body))):
        if len(repl) and lets[step.pos : step.pos + len(repl)] == repl.letters:
            return Word(lets[: step.pos] + ((name, s),) + lets[step.pos + len(repl) :])
    raise StepFailure(f"no occurrence of {name} or its inverse at position {step.pos}")


def check_certificate(cert: Certificate | str) -> CertificateReport:
    """Replay every step.  Invalid results name the first failing step."""
    if isinstance(cert, str):
        try:
            cert = parse_certificate(cert)
        except CertificateFormatError as exc:
            return CertificateReport(False, 0, exc.line, str(exc))
    try:
        cur = cert.start
    except WordError as exc:
        return CertificateReport(False, 0, cert.start_line, str(exc))
    words = [cur]
    try:
        if cert.proves is not None:
            if cert.proves not in cert.relator_texts:
                raise StepFailure(f"unknown relator {cert.proves!r}")
            rel = cert.word(cert.relator_texts[cert.proves])
            if canonical_relator(rel) != canonical_relator(cur):
                raise StepFailure(f"start is not the relator {cert.proves}")
        if cert.claim is not None:
            lhs, rhs = cert.word(cert.claim[0]), cert.word(cert.claim[1])
            if (lhs * invert(rhs)).letters != cur.letters:
                raise StepFailure("start is not lhs * rhs^-1 of the claim")
    except (StepFailure, WordError) as exc:
        return CertificateReport(False, 0, cert.start_line, str(exc), words)
    for i, step in enumerate(cert.steps, 1):
        try:
            cur = apply_step(cur, step, cert)
            if step.asserted is not None and cert.word(step.asserted).letters != cur.letters:
                raise StepFailure(f"asserted {step.asserted or '1'} but step gives {cur or '1'}")
        except (StepFailure, WordError, HomologyError) as exc:
            return CertificateReport(False, i, step.line, str(exc), words)
        words.append(cur)
    try:
        target = cert.target
    except WordError as exc:
        return CertificateReport(False, len(cert.steps) + 1, cert.target_line, str(exc), words)
    if target.letters != cur.letters:
        return CertificateReport(False, len(cert.steps) + 1, cert.target_line,
                                 f"final word {cur or '1'} differs from target {target or '1'}", words)
    if cert.proves is not None and not target.is_empty():
        return CertificateReport(False, len(cert.steps) + 1, cert.target_line, "a relator proof must end at 1", words)
    return CertificateReport(True, None, None, "", words)


def annotate(text: str) -> str:
    """Fill in or refresh the ``=>`` word of every step by replaying the certificate."""
    cert = parse_certificate(text)
    cur = cert.start
    out = list(cert.lines)
    for step in cert.steps:
        cur = apply_step(cur, step, cert)
        raw = out[step.line - 1]
        comment = ""
        if "#" in raw:
            raw, comment = raw.split("#", 1)
            comment = "  #" + comment
        body = _STEP_SPLIT.split(raw.rstrip(), maxsplit=1)[0].rstrip()
        out[step.line - 1] = f"{body} => {cur or 1}" + comment
    return "\n".join(out) + "\n"


def step_images(cert: Certificate, report: CertificateReport) -> list[np.ndarray]:
    """Mod-2 images of the successive words of a replayed certificate."""
    return [image_matrix(w, cert) for w in report.words]


def load_certificate(path) -> Certificate:
    with open(path, encoding="utf-8") as fh:
        return parse_certificate(fh.read())


def shipped_certificates() -> dict[str, str]:
    from importlib import resources

    d = resources.files("twistkit") / "data" / "certs"
    return {p.name: p.read_text(encoding="utf-8") for p in sorted(d.iterdir(), key=lambda p: p.name)
            if p.name.endswith(".cert")}
