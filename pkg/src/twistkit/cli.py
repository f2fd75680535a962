"""Command line entry point: ``twistkit <subcommand> ...``.

Exit codes: 0 all requested checks passed, 1 some check failed,
2 usage or input error.  Reports are TSV with a ``#`` provenance header.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from . import catalog as cat
from .certificate import (
    CertificateFormatError,
    annotate,
    check_certificate,
    image_matrix,
    parse_certificate,
    schema_relator,
    shipped_certificates,
)
from .enumeration import EnumerationError, SubgroupSpec, reidemeister_schreier, todd_coxeter, twist_names
from .homology import (
    HomologyError,
    SurfaceModel,
    evaluate,
    format_class,
    matmul2,
    parse_class,
    transvection,
    verify_relators,
)
from .presentation import (
    Presentation,
    PresentationError,
    abelianization,
    format_presentation,
    load_presentation,
    simplify,
)
from .schema import (
    SchemaError,
    chain_boundary_class,
    gen_chain,
    gen_lantern,
    lantern_configurations,
    standard_chain_classes,
)
from .words import Word, WordError, canonical_relator, invert, parse_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


class Report:
    def __init__(self, args: argparse.Namespace, columns: Sequence[str]):
        self.args = args
        self.columns = list(columns)
        self.rows: list[tuple] = []

    def add(self, *row) -> None:
        self.rows.append(tuple(str(x) for x in row))

    def render(self, sort: bool = True) -> str:
        cfg = {k: v for k, v in sorted(vars(self.args).items()) if k not in ("func", "report")}
        seed = cfg.pop("seed", None)
        lines = [
            f"# twistkit {__version__}",
            "# config: " + " ".join(f"{k}={_fmt(v)}" for k, v in cfg.items()),
            f"# seed: {seed if seed is not None else 'none'}",
            "\t".join(self.columns),
        ]
        rows = sorted(self.rows, key=_row_key) if sort else self.rows
        lines += ["\t".join(r) for r in rows]
        return "\n".join(lines) + "\n"

    def emit(self, out) -> None:
        text = self.render()
        if getattr(self.args, "report", None):
            Path(self.args.report).write_text(text, encoding="utf-8")
        else:
            out.write(text)


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


def _row_key(row):
    return tuple((0, int(x), "") if x.isdigit() else (1, 0, x) for x in row)


def _options(args) -> cat.CatalogOptions:
    return cat.CatalogOptions(subst_rho=getattr(args, "subst_rho", False),
                              assume_a7=getattr(args, "assume_a7", "a1"),
                              include_a7c=getattr(args, "include_a7c", False),
                              a7c_z=getattr(args, "a7c_z", None))


def _load_pres(path: str) -> Presentation:
    p = Path(path)
    if not p.exists() and not p.suffix:
        p = p.with_suffix(".pres")
    if not p.exists():
        name = Path(path).name.removesuffix(".pres")
        if name in cat.shipped_catalog_files():
            return cat.catalog_file(name)
        raise UsageError(f"no such presentation file: {path}")
    return load_presentation(p)


# subcommands

def cmd_catalog(args, out) -> int:
    if args.action == "list":
        rep = Report(args, ["entry", "admissible", "description"])
        for e in cat.ENTRIES.values():
            rep.add(e.name, e.guard, e.description)
        rep.emit(out)
        return 0
    if args.action == "manifest":
        out.write(cat.guard_manifest())
        return 0
    if args.entry is None:
        raise UsageError("--entry is required")
    entry = cat.get_entry(args.entry)
    if args.action == "show":
        out.write(f"# {entry.name}: {entry.description}\n# admissible: {entry.guard}\n")
        g, n = args.genus, args.boundary
        if g is not None and n is not None:
            for fam in entry.families(g, n):
                out.write(f"family {fam.label}\tguard: {fam.guard}\ttemplate: {fam.template}\n")
        return 0
    return cmd_instantiate(args, out)


def cmd_instantiate(args, out) -> int:
    if args.entry is None or args.genus is None or args.boundary is None:
        raise UsageError("--entry, --genus and --boundary are required")
    opts = _options(args)
    p = cat.instantiate(args.entry, args.genus, args.boundary, opts)
    out.write(format_presentation(p, [
        f"twistkit {__version__}",
        f"entry {args.entry} g={args.genus} n={args.boundary}",
        f"options {opts.describe()}",
    ]))
    return 0


def _classes_file(path: str) -> tuple[SurfaceModel, dict[str, np.ndarray]]:
    model = None
    classes: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("surface"):
            kv = dict(t.split("=", 1) for t in s.split()[1:])
            model = SurfaceModel(int(kv["g"]), int(kv["n"]))
        elif s.startswith("class ") and model is not None:
            name, _, body = s[6:].partition(":")
            classes[name.strip()] = parse_class(body, model)
        else:
            raise UsageError(f"{path}:{lineno}: expected 'surface g= n=' then 'class <name>: <class>' lines")
    if model is None:
        raise UsageError(f"{path}: missing 'surface g= n=' line")
    return model, classes


def _verify_one(p: Presentation, g: int, n: int) -> list[tuple[str, bool]]:
    model = SurfaceModel(g, n)
    assign = cat.homology_assignment(p, g, n)
    return [(c.label, c.passed) for c in verify_relators(p, model, assign)]


def cmd_verify(args, out) -> int:
    rep = Report(args, ["entry", "genus", "boundary", "relator", "status"])
    jobs: list[tuple[str, int, int, cat.CatalogOptions]] = []
    if args.pres:
        p = _load_pres(args.pres)
        if args.classes:
            model, classes = _classes_file(args.classes)
            assign = {k: transvection(model, v) for k, v in classes.items()}
            g, n = model.genus, model.boundary
        else:
            if args.genus is None or args.boundary is None:
                raise UsageError("--pres needs --classes or --genus/--boundary")
            g, n = parse_range(args.genus)[0], args.boundary
            model = SurfaceModel(g, n)
            assign = cat.homology_assignment(p, g, n)
        checks = verify_relators(p, model, assign)
        for c in checks:
            rep.add(Path(args.pres).name, g, n, c.label, "pass" if c.passed else "FAIL")
        rep.emit(out)
        return 0 if all(c.passed for c in checks) else 1
    if args.all:
        for g in range(3, 9):
            jobs.append((cat.entry_for(g, 1), g, 1, cat.CatalogOptions()))
        for g in range(4, 9):
            jobs.append((cat.entry_for(g, 0), g, 0, cat.CatalogOptions(subst_rho=True)))
    else:
        if args.entry is None or args.genus is None or args.boundary is None:
            raise UsageError("verify needs --all, --pres, or --entry/--genus/--boundary")
        genera = parse_range(args.genus)
        entry = cat.get_entry(args.entry)
        for g in genera:
            if len(genera) > 1 and not entry.admissible(g, args.boundary):
                rep.add(args.entry, g, args.boundary, "-", f"skipped ({entry.guard})")
                continue
            jobs.append((args.entry, g, args.boundary, _options(args)))
    ok = True
    for entry, g, n, opts in jobs:
        p = cat.instantiate(entry, g, n, opts)
        for label, passed in _verify_one(p, g, n):
            ok &= passed
            rep.add(entry, g, n, label, "pass" if passed else "FAIL")
    rep.emit(out)
    return 0 if ok else 1


def _subgroup(args, p: Presentation) -> SubgroupSpec:
    if args.parity:
        return SubgroupSpec.parity_of(args.parity, p.alphabet)
    if args.subgens is not None:
        return SubgroupSpec.from_words(args.subgens, p.alphabet) if args.subgens.strip() else SubgroupSpec.trivial()
    return SubgroupSpec.trivial()


def cmd_tc(args, out) -> int:
    p = _load_pres(args.pres)
    t = todd_coxeter(p, _subgroup(args, p), args.max_cosets)
    rep = Report(args, ["quantity", "value"])
    rep.add("status", t.status)
    rep.add("index", t.index if t.complete else "unknown")
    rep.emit(out)
    return 0 if t.complete else 1


def cmd_rs(args, out) -> int:
    p = _load_pres(args.pres)
    t = todd_coxeter(p, SubgroupSpec.parity_of(args.parity, p.alphabet), args.max_cosets)
    if not t.complete:
        out.write(f"# coset enumeration inconclusive (max cosets {args.max_cosets or 'default'})\n")
        return 1
    sub = reidemeister_schreier(p, t, twist_names(p, t, args.parity))
    if args.simplify:
        sub = simplify(sub)
    if args.canonical or args.simplify:
        from dataclasses import replace

        sub = Presentation(sub.alphabet, tuple(replace(r, word=canonical_relator(r.word, sub.alphabet))
                                               for r in sub.relators))
    out.write(format_presentation(sub, [
        f"twistkit {__version__}",
        f"parity kernel of {args.parity} in {Path(args.pres).name}, index {t.index}",
        f"abelianization {abelianization(sub)}",
    ]))
    return 0


def cmd_abelianize(args, out) -> int:
    p = _load_pres(args.pres)
    out.write(f"{abelianization(p)}\n")
    return 0


def _schema_suite(args) -> tuple[Report, bool]:
    rep = Report(args, ["schema", "case", "status"])
    ok = True
    g = args.genus
    model = SurfaceModel(g, args.boundary)
    for k in range(1, min(6, g - 1) + 1):
        cls = standard_chain_classes(model, k)
        names = [f"c{i}" for i in range(1, k + 1)]
        classes = dict(zip(names, cls))
        b = chain_boundary_class(model, cls)
        classes["z"] = classes["zp"] = b
        w = gen_chain(names, classes, model, "z", "zp" if k % 2 else None)
        m = evaluate(w, {x: transvection(model, c) for x, c in classes.items()}, model)
        passed = bool(np.array_equal(m, model.identity()))
        ok &= passed
        rep.add("chain", f"k={k}", "pass" if passed else "FAIL")
    names = [f"d{i}" for i in range(1, 8)]
    lm = SurfaceModel(5, 1)
    n_plain = n_ext = 0
    passed = True
    for cfg in lantern_configurations(lm):
        classes = dict(zip(names, cfg))
        assign = {x: transvection(lm, c) for x, c in classes.items()}
        variants = [()] + [(x,) for x, c in zip(names[3:], cfg[3:]) if not c.any()]
        for trivial in variants:
            w = gen_lantern(names, classes, lm, trivial)
            passed &= bool(np.array_equal(evaluate(w, assign, lm), lm.identity()))
            n_ext += bool(trivial)
            n_plain += not trivial
    ok &= passed
    rep.add("lantern", f"all N_5,1 configurations ({n_plain}+{n_ext} extended)", "pass" if passed else "FAIL")
    for name, text in shipped_certificates().items():
        cert = parse_certificate(text)
        for step in cert.steps:
            if step.kind == "schema" and step.schema in ("lantern", "extended-lantern"):
                w = schema_relator(step, cert)
                passed = bool(np.array_equal(image_matrix(w, cert), cert.model.identity()))
                ok &= passed
                rep.add(step.schema, f"{name}:{step.line}", "pass" if passed else "FAIL")
    return rep, ok


def cmd_schema(args, out) -> int:
    if args.action == "suite":
        rep, ok = _schema_suite(args)
        rep.emit(out)
        return 0 if ok else 1
    model = SurfaceModel(args.genus, args.boundary)
    curves = [c.strip() for c in args.curves.split(";")] if args.curves else []
    classes = {f"d{i}": parse_class(c, model) for i, c in enumerate(curves, 1)}
    if args.action == "chain":
        k = args.k or len(curves)
        if not curves:
            cls = standard_chain_classes(model, k)
            classes = {f"d{i}": c for i, c in enumerate(cls, 1)}
        names = [f"d{i}" for i in range(1, k + 1)]
        b = chain_boundary_class(model, [classes[x] for x in names])
        classes["c0"] = classes["c0p"] = b
        w = gen_chain(names, classes, model, "c0", "c0p" if k % 2 else None)
    else:
        if len(curves) != 7:
            raise UsageError("lantern needs --curves with seven ';'-separated classes")
        trivial = [f"d{i}" for i in parse_range(args.trivial)] if args.trivial else []
        w = gen_lantern([f"d{i}" for i in range(1, 8)], classes, model, trivial)
    m = evaluate(w, {x: transvection(model, c) for x, c in classes.items()}, model)
    passed = bool(np.array_equal(m, model.identity()))
    out.write(f"relator\t{w or '1'}\n")
    for x in sorted(classes):
        out.write(f"class\t{x}\t{format_class(classes[x], model)}\n")
    out.write(f"homology\t{'identity' if passed else 'NOT identity'}\n")
    return 0 if passed else 1


def cmd_cert(args, out) -> int:
    if args.action == "list":
        for name in shipped_certificates():
            out.write(name + "\n")
        return 0
    if not args.file:
        raise UsageError("cert check/annotate needs a FILE")
    path = Path(args.file)
    shipped = shipped_certificates()
    if path.exists():
        text = path.read_text(encoding="utf-8")
    elif path.name in shipped or path.name + ".cert" in shipped:
        text = shipped.get(path.name) or shipped[path.name + ".cert"]
    else:
        raise UsageError(f"no such certificate: {args.file}")
    if args.action == "annotate":
        out.write(annotate(text))
        return 0
    try:
        parse_certificate(text)
    except CertificateFormatError as exc:
        raise UsageError(str(exc)) from exc
    report = check_certificate(text)
    out.write(f"{path.name}\t{report}\n")
    return 0 if report.valid else 1


def cmd_selftest(args, out) -> int:
    rng = np.random.default_rng(args.seed)
    rep = Report(args, ["check", "cases", "status"])
    ok = True

    model = SurfaceModel(8, 2)
    form = model.form
    bad_inv = bad_form = 0
    for _ in range(args.cases):
        c = rng.integers(0, 2, model.rank, dtype=np.uint8)
        if model.pairing(c, c):
            c[0] ^= 1
            if model.pairing(c, c):
                c[1] ^= 1
        t = transvection(model, c)
        bad_inv += not np.array_equal(matmul2(t, t), model.identity())
        bad_form += not np.array_equal(matmul2(matmul2(t.T, form), t), form)
    for name, bad in (("transvection_involution", bad_inv), ("transvection_preserves_form", bad_form)):
        ok &= bad == 0
        rep.add(name, args.cases, "pass" if bad == 0 else f"FAIL({bad})")

    gens = ["a1", "a2", "e", "f"]
    bad_cancel = bad_round = 0
    for _ in range(args.cases):
        n = int(rng.integers(0, 12))
        letters = tuple((gens[int(rng.integers(0, 4))], 1 if rng.integers(0, 2) else -1) for _ in range(n))
        w = Word(letters)
        bad_cancel += not (w * invert(w)).is_empty()
        if len(w):
            bad_round += parse_word(str(w)).letters != w.letters
    for name, bad in (("word_times_inverse_is_empty", bad_cancel), ("word_print_parse_roundtrip", bad_round)):
        ok &= bad == 0
        rep.add(name, args.cases, "pass" if bad == 0 else f"FAIL({bad})")

    for name, text in shipped_certificates().items():
        valid = check_certificate(text).valid
        ok &= valid
        rep.add(f"certificate:{name}", 1, "pass" if valid else "FAIL")
    rep.emit(out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="twistkit", description="Twist subgroup presentations: catalog, enumeration, "
                                               "homology checks and derivation certificates.")
    ap.add_argument("--version", action="version", version=f"twistkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def catalog_flags(sp, genus_range=False):
        sp.add_argument("--entry")
        if genus_range:
            sp.add_argument("--genus", help="G or G1..G2")
        else:
            sp.add_argument("--genus", type=int)
        sp.add_argument("--boundary", type=int)
        sp.add_argument("--subst-rho", action="store_true")
        sp.add_argument("--assume-a7", default="a1", choices=["a1"])
        sp.add_argument("--include-a7c", action="store_true")
        sp.add_argument("--a7c-z", help="word for z_{g-1} when --include-a7c is given")

    sp = sub.add_parser("catalog", help="list, show or instantiate catalog entries")
    sp.add_argument("action", choices=["list", "show", "instantiate", "manifest"])
    catalog_flags(sp)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("instantiate", help="print a catalog presentation")
    catalog_flags(sp)
    sp.set_defaults(func=cmd_instantiate)

    sp = sub.add_parser("verify", help="mod-2 homology check of every relator")
    catalog_flags(sp, genus_range=True)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--pres")
    sp.add_argument("--classes")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("tc", help="Todd-Coxeter coset enumeration")
    sp.add_argument("--pres", required=True)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--subgens", help="subgroup generators separated by ';' (empty: trivial subgroup)")
    grp.add_argument("--parity", help="kernel of the parity of this generator")
    sp.add_argument("--max-cosets", type=int)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_tc)

    sp = sub.add_parser("rs", help="Reidemeister-Schreier presentation of the parity kernel")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--parity", default="y")
    sp.add_argument("--simplify", action="store_true")
    sp.add_argument("--canonical", action="store_true")
    sp.add_argument("--max-cosets", type=int)
    sp.set_defaults(func=cmd_rs)

    sp = sub.add_parser("abelianize", help="abelian invariants")
    sp.add_argument("--pres", required=True)
    sp.set_defaults(func=cmd_abelianize)

    sp = sub.add_parser("schema", help="chain and lantern relators")
    sp.add_argument("action", choices=["chain", "lantern", "suite"])
    sp.add_argument("--genus", type=int, default=7)
    sp.add_argument("--boundary", type=int, default=0)
    sp.add_argument("--k", type=int)
    sp.add_argument("--curves", help="classes separated by ';', e.g. 'mu1+mu2;mu2+mu3'")
    sp.add_argument("--trivial", help="indices of lantern curves bounding a disc, e.g. 4")
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_schema)

    sp = sub.add_parser("cert", help="check derivation certificates")
    sp.add_argument("action", choices=["check", "annotate", "list"])
    sp.add_argument("file", nargs="?")
    sp.set_defaults(func=cmd_cert)

    sp = sub.add_parser("selftest", help="randomized invariant checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=int, default=10000)
    sp.add_argument("--report")
    sp.set_defaults(func=cmd_selftest)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as exc:
        sys.stderr.write(f"twistkit: {exc}\n")
        return 2
    except (cat.CatalogError, PresentationError, WordError, EnumerationError, HomologyError, SchemaError,
            CertificateFormatError, OSError, KeyError, ValueError) as exc:
        sys.stderr.write(f"twistkit: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
