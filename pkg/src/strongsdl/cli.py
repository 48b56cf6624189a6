"""Command line entry point: ``strongsdl {gen,build,check,analyze,roundtrip}``.

Exit codes:

    0  success, every check passed
    1  a check ran and failed (the structure does not have the property)
    2  usage error
    3  file could not be read or written
    4  file could not be parsed
    5  input is structurally invalid for the command (bad family, bad group, ...)
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fileformat as ff
from .analyze import AnalysisReport, full_analysis, roundtrip
from .core import (
    CheckResult,
    HomMap,
    MalformedTableError,
    SizeMismatchError,
    check_associative,
    check_distributive_lattice,
    check_group,
    check_semiring,
)
from .generators import (
    InstanceSpec,
    corpus,
    diamond_tables,
    non_strong_counterexample,
    pentagon_tables,
    sdl2_violating_family,
)
from .group_semiring import Flavor
from .sdl import (
    GroupComponentFamily,
    IsoFamily,
    InvalidFamilyError,
    build_strong_sdl,
    check_compatibility,
    validate_iso_family,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_INVALID = 5


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> ff.StructureFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(EXIT_IO, f"cannot read {path}: {exc.strerror}") from None
    try:
        return ff.parse(text)
    except (ff.ParseError, MalformedTableError) as exc:
        raise CommandError(EXIT_PARSE, f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CommandError(EXIT_IO, f"cannot write {out}: {exc.strerror}") from None


def _fmt_witness(w, names) -> str:
    if w is None:
        return "-"
    if isinstance(w, tuple):
        return "(" + ",".join(_fmt_witness(v, names) for v in w) + ")"
    if isinstance(w, int) and names and 0 <= w < len(names):
        return names[w]
    return str(w)


def _result_fields(prefix: str, res: CheckResult | None, names=None) -> dict[str, str]:
    if res is None:
        return {prefix: "not-evaluated"}
    out = {prefix: "yes" if res else "no"}
    if not res:
        out[prefix + ".reason"] = res.reason
        out[prefix + ".witness"] = _fmt_witness(res.witness, names)
    return out


def render(fields: dict[str, str], fmt: str) -> str:
    if fmt == "kv":
        return "".join(f"{k}={v}\n" for k, v in sorted(fields.items()))
    width = max(map(len, fields)) if fields else 0
    return "".join(f"{k.ljust(width)} : {v}\n" for k, v in fields.items())


def load_family(doc: ff.StructureFile) -> tuple[GroupComponentFamily, IsoFamily]:
    """Family from an ``iso-family`` or ``instance-spec`` document."""
    if doc.kind == "instance-spec":
        try:
            return ff.to_spec(doc).build()
        except ValueError as exc:
            raise CommandError(EXIT_INVALID, str(exc)) from None
    if doc.kind != "iso-family":
        raise CommandError(EXIT_INVALID, f"expected an iso-family file, got {doc.kind!r}")
    try:
        join, meet, ops, maps = ff.family_parts(doc)
    except ValueError as exc:
        raise CommandError(EXIT_INVALID, str(exc)) from None
    lat = check_distributive_lattice(join, meet, doc.names)
    if not lat:
        raise CommandError(EXIT_INVALID, f"lattice: {lat.reason} at {lat.witness}")
    groups = []
    for name, comp, op in zip(doc.names, doc.components, ops):
        res = check_group(op)
        if not res:
            raise CommandError(EXIT_INVALID, f"component {name}: {res.reason}")
        g = res.value
        groups.append(type(g)(g.op, g.identity, g.inverse, comp.names))
    return GroupComponentFamily(lat.value, tuple(groups)), IsoFamily(maps)


def cmd_gen(args) -> int:
    if args.corpus:
        outdir = Path(args.corpus)
        try:
            outdir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot create {outdir}: {exc.strerror}") from None
        for spec in corpus():
            fam, isos = spec.build()
            _emit(ff.serialize(ff.from_family(fam, isos)), str(outdir / f"{spec.label}.txt"))
        return EXIT_OK
    if args.preset:
        if args.preset == "counterexample":
            doc = ff.from_semiring(non_strong_counterexample())
        elif args.preset == "sdl2-violation":
            doc = ff.from_family(*sdl2_violating_family())
        else:
            join, meet = diamond_tables() if args.preset == "diamond" else pentagon_tables()
            doc = ff.StructureFile("lattice", tuple(map(str, range(join.size))),
                                   {"join": join, "meet": meet})
        _emit(ff.serialize(doc), args.out)
        return EXIT_OK
    if args.spec:
        spec_doc = _read(args.spec)
        if spec_doc.kind != "instance-spec":
            raise CommandError(EXIT_INVALID, f"expected an instance-spec file, got {spec_doc.kind!r}")
        fam, isos = load_family(spec_doc)
    else:
        if not args.lattice or not args.group:
            raise CommandError(EXIT_USAGE, "gen needs --lattice and --group, --spec, --preset or --corpus")
        kind, _, param = args.lattice.partition(":")
        try:
            spec = InstanceSpec(kind, int(param or 1), args.group, args.recipe)
            fam, isos = spec.build()
        except ValueError as exc:
            raise CommandError(EXIT_INVALID, str(exc)) from None
    _emit(ff.serialize(ff.from_family(fam, isos)), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    fam, isos = load_family(_read(args.family))
    try:
        table = build_strong_sdl(fam, isos, Flavor(args.flavor), self_check=not args.no_self_check)
    except InvalidFamilyError as exc:
        for p in exc.report.problems:
            print(f"invalid family: {p}", file=sys.stderr)
        return EXIT_INVALID
    except SizeMismatchError as exc:
        raise CommandError(EXIT_INVALID, str(exc)) from None
    _emit(ff.serialize(ff.from_semiring(table)), args.out)
    return EXIT_OK


def check_fields(doc: ff.StructureFile) -> dict[str, str]:
    names = doc.names
    if doc.kind == "semigroup":
        return {"kind": doc.kind, **_result_fields("associative", check_associative(doc.tables["op"]), names)}
    if doc.kind == "group":
        res = check_group(doc.tables["op"])
        f = {"kind": doc.kind, **_result_fields("group", res, names)}
        if res:
            f["identity"] = names[res.value.identity]
        return f
    if doc.kind == "lattice":
        res = check_distributive_lattice(doc.tables["join"], doc.tables["meet"])
        return {"kind": doc.kind, **_result_fields("distributive_lattice", res, names)}
    if doc.kind == "semiring":
        return {"kind": doc.kind,
                **_result_fields("semiring", check_semiring(doc.tables["add"], doc.tables["mul"]), names)}
    fam, isos = load_family(doc)
    try:
        report = validate_iso_family(fam, isos)
    except SizeMismatchError as exc:
        raise CommandError(EXIT_INVALID, str(exc)) from None
    f = {"kind": doc.kind, "valid": "yes" if report else "no"}
    for i, p in enumerate(report.problems):
        f[f"problem.{i}"] = str(p)
    if report:
        f.update(_result_fields("compatibility", check_compatibility(fam, isos)))
    return f


def cmd_check(args) -> int:
    fields = check_fields(_read(args.file))
    sys.stdout.write(render(fields, args.format))
    verdicts = [v for k, v in fields.items() if k not in ("kind", "identity") and "." not in k]
    return EXIT_OK if all(v == "yes" for v in verdicts) else EXIT_CHECK_FAILED


def analysis_fields(rep: AnalysisReport, names) -> dict[str, str]:
    f = _result_fields("semiring", rep.is_semiring, names)
    if rep.idempotents is not None:
        f["|E(S)|"] = str(len(rep.idempotents))
        f["E(S)"] = " ".join(names[e] for e in rep.idempotents)
    f.update(_result_fields("E(S) distributive lattice", rep.idempotent_lattice, names))
    f.update(_result_fields("clifford (S,*)", rep.is_clifford_mul, names))
    f.update(_result_fields("left normal band (S,+)", rep.is_left_normal_band_add, names))
    f.update(_result_fields("right normal band (S,+)", rep.is_right_normal_band_add, names))
    f.update(_result_fields("normal band (S,+)", rep.is_normal_band_add, names))
    if rep.components is None:
        f["components"] = "not-evaluated"
    else:
        f["components"] = str(len(rep.components))
        f["component sizes"] = " ".join(str(len(c)) for _, c in sorted(rep.components.items()))
    f.update(_result_fields("component closure", rep.component_closure, names))
    f.update(_result_fields("connecting maps", rep.recovery.result if rep.recovery else None, names))
    s = rep.is_strong_sdl_of_group_semirings
    f["strong SDL"] = "not-evaluated" if s is None else ("yes" if s else "no")
    return f


def _kv_key(k: str) -> str:
    return (k.replace("|E(S)|", "idempotent_count").replace("E(S)", "idempotents")
             .replace("(S,*)", "mul").replace("(S,+)", "add").replace(" ", "_").lower())


def cmd_analyze(args) -> int:
    doc = _read(args.file)
    if doc.kind != "semiring":
        raise CommandError(EXIT_INVALID, f"expected a semiring file, got {doc.kind!r}")
    rep = full_analysis(doc.tables["add"], doc.tables["mul"], Flavor(args.flavor))
    fields = analysis_fields(rep, doc.names)
    if args.format == "kv":
        fields = {_kv_key(k): v for k, v in fields.items()}
    sys.stdout.write(render(fields, args.format))
    return EXIT_OK if rep.is_strong_sdl_of_group_semirings else EXIT_CHECK_FAILED


def cmd_roundtrip(args) -> int:
    fam, isos = load_family(_read(args.family))
    flavor = Flavor(args.flavor)
    try:
        table = build_strong_sdl(fam, isos, flavor)
    except InvalidFamilyError as exc:
        for p in exc.report.problems:
            print(f"invalid family: {p}", file=sys.stderr)
        return EXIT_INVALID
    res = roundtrip(table, fam, isos, flavor)
    fields = {"size": str(table.size), **_result_fields("roundtrip", res, table.names)}
    sys.stdout.write(render(fields, args.format))
    return EXIT_OK if res else EXIT_CHECK_FAILED


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strongsdl", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, flavor=False):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("text", "kv"), default="text")
        if flavor:
            sp.add_argument("--flavor", choices=("left", "right"), default="left")

    g = sub.add_parser("gen", help="write a family, lattice or semiring file")
    common(g)
    g.add_argument("--lattice", help="chain:N, boolean:K or divisor:N")
    g.add_argument("--group", help="Z1 Z2 Z3 Z4 V4 S3")
    g.add_argument("--recipe", choices=("identity", "twisted"), default="identity")
    g.add_argument("--spec", help="instance-spec file")
    g.add_argument("--preset", choices=("counterexample", "sdl2-violation", "diamond", "pentagon"))
    g.add_argument("--corpus", metavar="DIR", help="write every corpus family into DIR")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build the semiring of a family")
    common(b, flavor=True)
    b.add_argument("family")
    b.add_argument("--no-self-check", action="store_true", help="skip verification (benchmarks only)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="check the laws a file's kind promises")
    common(c)
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("analyze", help="decompose a semiring")
    common(a, flavor=True)
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("roundtrip", help="build, analyze and compare recovered maps")
    common(r, flavor=True)
    r.add_argument("family")
    r.set_defaults(func=cmd_roundtrip)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"strongsdl: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
