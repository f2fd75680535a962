"""Builders for the shipped derivation certificates.

Each builder replays its steps while writing them, so positions and the
``=>`` words are computed rather than typed.  ``write_certificates`` refreshes
the files under ``data/certs``.
"""

from __future__ import annotations

from pathlib import Path

from .certificate import _parse_step, apply_step, image_matrix, parse_certificate
from .homology import format_class, matmul2
from .words import Word, invert


class Builder:
    def __init__(self, header: list[str], context: list[str], start: str):
        self.lines = [f"# {h}" for h in header] + context
        self.cert = parse_certificate("\n".join(context + [f"start: {start}", "target: 1"]))
        self.cur = self.cert.start
        self.lines.append(f"start: {self.cur}")

    def word(self, text: str) -> Word:
        return self.cert.word(text)

    def _emit(self, body: str, comment: str = "") -> None:
        s = _parse_step(body, 0)
        self.cur = apply_step(self.cur, s, self.cert)
        line = f"step {body} => {self.cur or 1}"
        self.lines.append(line + (f"  # {comment}" if comment else ""))

    def find(self, sub: str, start: int = 0) -> int:
        needle = self.word(sub).letters
        lets = self.cur.letters
        for i in range(start, len(lets) - len(needle) + 1):
            if lets[i : i + len(needle)] == needle:
                return i
        raise ValueError(f"{sub!r} not found in {self.cur}")

    def replace(self, label: str, old: str, new: str, start: int = 0, comment: str = "") -> None:
        """Rewrite ``old`` as ``new`` by inserting new*old^-1 in front of it."""
        pos = self.find(old, start)
        ins = self.word(new) * invert(self.word(old))
        self._emit(f"rel {label} : {pos} insert {ins}", comment)

    def schema_replace(self, schema: str, params: str, old: str, new: str, start: int = 0, comment: str = "") -> None:
        pos = self.find(old, start)
        ins = self.word(new) * invert(self.word(old))
        self._emit(f"schema {schema} {params} : {pos} insert {ins}", comment)

    def schema(self, schema: str, params: str, pos: int, direction: str, w: str, comment: str = "") -> None:
        self._emit(f"schema {schema} {params} : {pos} {direction} {w}", comment)

    def drop(self, symbol: str, comment: str = "") -> None:
        """Delete a letter whose curve bounds a disc."""
        pos = self.find(symbol)
        self._emit(f"schema boundary curve={symbol.rstrip(chr(39))} : {pos} delete {symbol}", comment)

    def conj(self, src: str, dst: str, by: str, start: int = 0, comment: str = "") -> None:
        pos = self.find(src, start)
        self._emit(f"conj {pos} {src} -> {dst} by {by}", comment)

    def macro(self, name: str, direction: str, token: str | None = None, start: int = 0, comment: str = "") -> None:
        pos = self.find(token or name, start)
        self._emit(f"macro {name} {pos} {direction}", comment)

    def finish(self) -> str:
        self.lines.append(f"target: {self.cur or 1}")
        return "\n".join(self.lines) + "\n"


def bbar2_1() -> str:
    ctx = [
        "ctx catalog t_ng1_odd g=3 n=1",
        "ctx proves Bbar2_1",
        "ctx gen: t_a t_b t_c t_d t_cp",
        "ctx class t_a: mu1+mu2",
        "ctx class t_b: mu1+mu2",
        "ctx class t_c: 0",
        "ctx class t_d: 0",
        "ctx class t_cp: 0",
    ]
    b = Builder(["y2 as a product of the lantern curves around the second crosscap pair, N_{3,1}"],
                ctx, "y2 a2' a1' f' a2' a1' a2' a1' a2' a1' e' a1' a2'")
    b.schema("lantern", "d=y2,a1,a1',t_a,t_b,t_c,t_d", 0, "insert", "t_a t_b t_c t_d y2'",
             "y2 = t_a t_b t_c t_d a1 a1'")
    b.drop("t_d")
    b.conj("t_a", "e", "a1' a2'", comment="t_a = a2 a1 e a1' a2'")
    b.conj("t_b", "f'", "a1' a2'", comment="t_b = a2 a1 f' a1' a2'")
    b.schema_replace("chain", "curves=f,a1,a2 c0=t_c c0p=t_cp", "t_c", "f a1 a2 f a1 a2 f a1 a2 f a1 a2 t_cp'",
                     comment="3-chain: (f a1 a2)^4 = t_c t_cp")
    b.drop("t_cp'")
    b.replace("Bbar4_2", "a2' f", "f a2'")
    b.replace("Abar2_3", "f' a1' f", "a1 f' a1'")
    b.replace("Bbar4_2", "a2 f", "f a2", start=b.find("a2 f a2'"))
    b.replace("Abar2_3", "f a1 f", "a1 f a1")
    b.replace("A2[i=1]", "a1 a2 a1", "a2 a1 a2", start=b.find("a2' a1 a2 a1"))
    b.replace("Bbar4_2", "a2 f", "f a2", start=b.find("f' a2 f"))
    return b.finish()


def _half(b: Builder, x: str, y: str, start: int) -> None:
    # a2 a1 x a1 a2 a1 a2 a1 a2 y a1 a2  ->  (a2 x a1)^2 (a2 y a1)^2
    lab = {"e": "Abar2_1", "f": "Abar2_3"}
    com = {"e": "Bbar4_1", "f": "Bbar4_2"}
    b.replace(lab[x], f"a1 {x} a1", f"{x} a1 {x}", start)
    b.replace(com[y], f"a2 {y}", f"{y} a2", start)
    b.replace(com[x], f"{x} a2", f"a2 {x}", start)
    b.replace("A2[i=1]", "a2 a1 a2", "a1 a2 a1", b.find(f"{y} a2 a1 a2", start) + 1)
    b.replace(lab[y], f"a1 {y} a1", f"{y} a1 {y}", b.find(f"a1 {y} a1", start))
    b.replace(com[y], f"{y} a2", f"a2 {y}", b.find(f"{y} a1 {y}", start) + 2)


def bbar2_2() -> str:
    ctx = [
        "ctx catalog t_ng1_odd g=3 n=1",
        "ctx proves Bbar2_2",
        "ctx gen: t_c t_cp t_cq",
        "ctx class t_c: 0",
        "ctx class t_cp: 0",
        "ctx class t_cq: 0",
    ]
    start = "a2 a1 e a1 a2 a1 a2 a1 a2 f a1 a2 a2 a1 f a1 a2 a1 a2 a1 a2 e a1 a2"
    b = Builder(["(a2 e a1)^2 (a2 f a1)^4 (a2 e a1)^2 = 1 in N_{3,1}"], ctx, start)
    _half(b, "e", "f", 0)
    _half(b, "f", "e", 12)
    four_f = " ".join(["a2 f a1"] * 4)
    four_e = " ".join(["a2 e a1"] * 4)
    b.schema_replace("chain", "curves=f,a1,a2 c0=t_c c0p=t_cp rot=2", four_f, "t_c t_cp",
                     comment="t_c t_cp = (a2 f a1)^4")
    b.drop("t_cp")
    b.conj("t_c", "t_c", "a1' e' a2' a1' e' a2'", comment="(a2 e a1)^2 t_c (a2 e a1)^2 = (a2 e a1)^4 t_c")
    b.schema_replace("chain", "curves=e,a1,a2 c0=t_c' c0p=t_cq rot=2", four_e, "t_c' t_cq",
                     comment="t_c' t_cq = (a2 e a1)^4")
    b.drop("t_cq")
    return b.finish()


def _ascii(c, model) -> str:
    return format_class(c, model).replace("\u03bc", "mu")


def crosscap_push(g: int) -> str:
    """P(gamma_1) Phi^2 P(gamma_1) = P(gamma_2) Phi^2 for odd g >= 5, no boundary."""
    phi = "e' " + " ".join(f"a{i}" for i in range(3, g))
    base = [
        f"ctx catalog t_ng0_odd g={g} n=0 subst-rho",
        f"ctx macro phi: {phi}",
        "ctx macro p1: a2 e",
        "ctx macro p2: h_ab h_o'",
        "ctx gen: d_a d_ad h_ab h_o star",
    ]
    probe = parse_certificate("\n".join(base + ["start: 1", "target: 1"]))
    m = probe.model
    rot = image_matrix(probe.word("phi phi"), probe)
    d_a = matmul2(rot, probe.classes["a2"].reshape(-1, 1)).ravel()
    d_ad = matmul2(rot, probe.classes["e"].reshape(-1, 1)).ravel()
    h = d_a ^ probe.classes["a2"]
    ctx = base + [
        f"ctx class d_a: {_ascii(d_a, m)}",
        f"ctx class d_ad: {_ascii(d_ad, m)}",
        f"ctx class h_ab: {_ascii(h, m)}",
        f"ctx class h_o: {_ascii(h, m)}",
        "ctx class star: 0",
        "ctx claim: p1 phi phi p1 = p2 phi phi",
    ]
    b = Builder([f"crosscap push telescoping, N_{{{g},0}}: p1 = a2 e, phi = {phi}"],
                ctx, "p1 phi phi p1 phi' phi' p2'")
    b.macro("p1", "expand", start=1)
    b.conj("a2", "d_a", "phi phi", comment="phi^2 a2 phi^-2 = t_{d_a}")
    b.conj("e", "d_ad'", "phi phi", comment="phi^2 e phi^-2 = t_{d_ad}^-1")
    b.macro("p1", "expand")
    b.macro("p2", "expand", "p2'")
    b.conj("e", "e", "d_a'", comment="boundary twists commute with the lantern")
    b.conj("d_ad'", "d_ad'", "h_o'")
    b.conj("e", "e", "h_o'")
    b.conj("a2", "a2", "d_a'")
    b.schema("extended-lantern", "d=h_ab,d_ad,e',star,d_a,a2,h_o trivial=star", 0, "delete",
             str(b.cur), "extended lantern about the blown-down point")
    return b.finish()


BUILDERS = {
    "bbar2_1.cert": bbar2_1,
    "bbar2_2.cert": bbar2_2,
    "crosscap_push_g5.cert": lambda: crosscap_push(5),
    "crosscap_push_g7.cert": lambda: crosscap_push(7),
}


def build_certificates() -> dict[str, str]:
    return {name: fn() for name, fn in BUILDERS.items()}


def write_certificates(directory: str | Path | None = None) -> list[Path]:
    d = Path(directory) if directory else Path(__file__).parent / "data" / "certs"
    d.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in build_certificates().items():
        (d / name).write_text(text, encoding="utf-8")
        out.append(d / name)
    return out
