"""Line-oriented text format for tables, lattices, semirings and families.

::

    kind: semiring
    size: 4
    names: 0.0 0.1 1.0 1.1
    labels: 0:0 0:1 1:0 1:1        # optional, semiring only
    table: add
    0 1 2 3
    ...
    table: mul
    ...

Blocks per kind: ``semigroup``/``group`` -> ``op``; ``lattice`` -> ``join meet``;
``semiring`` -> ``add mul``.  An ``iso-family`` file is a lattice followed by
one ``component: <name>`` group block per lattice element and one
``map: <alpha> <beta>`` line per ``beta <= alpha``, each followed by a line
of target indices.  An ``instance-spec`` file holds ``key: value`` recipe
lines.  ``#`` starts a comment; blank lines are ignored.  Output of
:func:`serialize` is canonical, so ``serialize(parse(text)) == text`` for
any file written by this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    BinaryOpTable,
    FiniteDistributiveLattice,
    FiniteGroup,
    HomMap,
    MalformedTableError,
)
from .group_semiring import Flavor
from .sdl import GroupComponentFamily, IsoFamily, SemiringTable

KINDS = ("semigroup", "group", "lattice", "semiring", "iso-family", "instance-spec")
BLOCKS = {
    "semigroup": ("op",),
    "group": ("op",),
    "lattice": ("join", "meet"),
    "semiring": ("add", "mul"),
    "iso-family": ("join", "meet"),
}
SPEC_KEYS = ("lattice", "group", "recipe", "flavor")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class StructureFile:
    kind: str
    names: tuple[str, ...] = ()
    tables: dict[str, BinaryOpTable] = field(default_factory=dict)
    labels: tuple[tuple[int, int], ...] | None = None
    components: tuple[StructureFile, ...] = ()
    maps: dict[tuple[int, int], tuple[int, ...]] = field(default_factory=dict)
    spec: dict[str, str] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.names)


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), 1):
            body = raw.split("#", 1)[0].rstrip()
            if body.strip():
                indent = len(body) - len(body.lstrip())
                self.items.append((no, body.strip(), indent + 1))
        self.pos = 0
        self.last = len(text.splitlines()) or 1

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, what: str):
        item = self.peek()
        if item is None:
            raise ParseError(f"unexpected end of file, expected {what}", self.last + 1)
        self.pos += 1
        return item

    def header(self, key: str) -> tuple[int, str, int]:
        no, body, col = self.next(f"'{key}:'")
        head, sep, rest = body.partition(":")
        if not sep or head.strip() != key:
            raise ParseError(f"expected '{key}: ...', got {body!r}", no, col)
        start = len(head) + 1
        while start < len(body) and body[start].isspace():
            start += 1
        return no, rest.strip(), col + start


def _int(tok: str, no: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no, col) from None


def _tokens(body: str, col: int):
    out, i = [], 0
    while i < len(body):
        if body[i].isspace():
            i += 1
            continue
        j = i
        while j < len(body) and not body[j].isspace():
            j += 1
        out.append((body[i:j], col + i))
        i = j
    return out


def _row(lines: _Lines, n: int, bound: int, what: str) -> tuple[int, ...]:
    no, body, col = lines.next(what)
    toks = _tokens(body, col)
    if len(toks) != n:
        raise ParseError(f"{what}: expected {n} entries, got {len(toks)}", no, col)
    vals = []
    for tok, c in toks:
        v = _int(tok, no, c)
        if not 0 <= v < bound:
            raise ParseError(f"index {v} out of range [0, {bound})", no, c)
        vals.append(v)
    return tuple(vals)


def _names_block(lines: _Lines) -> tuple[str, ...]:
    """``size:`` and ``names:`` lines."""
    no, rest, col = lines.header("size")
    size = _int(rest, no, col)
    if size < 1:
        raise ParseError("size must be positive", no, col)
    no, rest, col = lines.header("names")
    names = tuple(t for t, _ in _tokens(rest, col))
    if len(names) != size:
        raise ParseError(f"expected {size} names, got {len(names)}", no, col)
    if len(set(names)) != size:
        raise ParseError("duplicate element name", no, col)
    return names


def _tables(lines: _Lines, keys, n: int) -> dict[str, BinaryOpTable]:
    tables = {}
    for key in keys:
        no, rest, col = lines.header("table")
        if rest != key:
            raise ParseError(f"expected 'table: {key}', got 'table: {rest}'", no, col)
        rows = [_row(lines, n, n, f"row {i} of table {key}") for i in range(n)]
        tables[key] = BinaryOpTable(rows)
    return tables


def parse(text: str) -> StructureFile:
    lines = _Lines(text)
    no, kind, col = lines.header("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", no, col)
    if kind == "instance-spec":
        spec = {}
        while lines.peek() is not None:
            no, body, col = lines.next("recipe line")
            key, sep, val = body.partition(":")
            key = key.strip()
            if not sep or key not in SPEC_KEYS:
                raise ParseError(f"unknown recipe key {key!r}", no, col)
            spec[key] = val.strip()
        for key in ("lattice", "group"):
            if key not in spec:
                raise ParseError(f"missing '{key}:'", lines.last)
        return StructureFile(kind, spec=spec)

    names = _names_block(lines)
    n = len(names)
    labels = None
    item = lines.peek()
    if kind == "semiring" and item and item[1].startswith("labels:"):
        no, rest, col = lines.header("labels")
        toks = _tokens(rest, col)
        if len(toks) != n:
            raise ParseError(f"expected {n} labels, got {len(toks)}", no, col)
        labels = []
        for tok, c in toks:
            a, sep, g = tok.partition(":")
            if not sep:
                raise ParseError(f"label {tok!r} is not '<alpha>:<index>'", no, c)
            labels.append((_int(a, no, c), _int(g, no, c)))
        labels = tuple(labels)
    tables = _tables(lines, BLOCKS[kind], n)
    if kind != "iso-family":
        if lines.peek() is not None:
            no, body, col = lines.peek()
            raise ParseError(f"unexpected trailing content {body!r}", no, col)
        return StructureFile(kind, names, tables, labels)

    index = {name: i for i, name in enumerate(names)}
    comps: list[StructureFile | None] = [None] * n
    maps = {}
    while lines.peek() is not None:
        no, body, col = lines.peek()
        if body.startswith("component:"):
            no, rest, col = lines.header("component")
            if rest not in index:
                raise ParseError(f"unknown lattice element {rest!r}", no, col)
            if comps[index[rest]] is not None:
                raise ParseError(f"component {rest!r} given twice", no, col)
            cnames = _names_block(lines)
            comps[index[rest]] = StructureFile("group", cnames, _tables(lines, ("op",), len(cnames)))
        elif body.startswith("map:"):
            no, rest, col = lines.header("map")
            toks = _tokens(rest, col)
            if len(toks) != 2:
                raise ParseError("expected 'map: <alpha> <beta>'", no, col)
            key = []
            for tok, c in toks:
                if tok not in index:
                    raise ParseError(f"unknown lattice element {tok!r}", no, c)
                key.append(index[tok])
            a, b = key
            if comps[a] is None or comps[b] is None:
                raise ParseError("map given before its components", no, col)
            if (a, b) in maps:
                raise ParseError(f"map {rest!r} given twice", no, col)
            maps[a, b] = _row(lines, comps[a].size, comps[b].size, f"map {rest}")
        else:
            raise ParseError(f"expected 'component:' or 'map:', got {body!r}", no, col)
    for i, c in enumerate(comps):
        if c is None:
            raise ParseError(f"no component for lattice element {names[i]!r}", lines.last)
    return StructureFile(kind, names, tables, None, tuple(comps), maps)


def _emit_block(out: list[str], doc: StructureFile, keys) -> None:
    out.append(f"size: {doc.size}")
    out.append("names: " + " ".join(doc.names))
    if doc.labels is not None:
        out.append("labels: " + " ".join(f"{a}:{g}" for a, g in doc.labels))
    for key in keys:
        out.append(f"table: {key}")
        out.extend(" ".join(map(str, row)) for row in doc.tables[key].tolist())


def serialize(doc: StructureFile) -> str:
    out = [f"kind: {doc.kind}"]
    if doc.kind == "instance-spec":
        out.extend(f"{k}: {doc.spec[k]}" for k in SPEC_KEYS if k in doc.spec)
        return "\n".join(out) + "\n"
    _emit_block(out, doc, BLOCKS[doc.kind])
    if doc.kind == "iso-family":
        for name, comp in zip(doc.names, doc.components):
            out.append(f"component: {name}")
            _emit_block(out, comp, ("op",))
        for (a, b), vals in sorted(doc.maps.items()):
            out.append(f"map: {doc.names[a]} {doc.names[b]}")
            out.append(" ".join(map(str, vals)))
    return "\n".join(out) + "\n"


def _names(names, n) -> tuple[str, ...]:
    return tuple(names) if names else tuple(str(i) for i in range(n))


def from_table(kind: str, op: BinaryOpTable, names=None) -> StructureFile:
    return StructureFile(kind, _names(names, op.size), {"op": op})


def from_group(g: FiniteGroup) -> StructureFile:
    return from_table("group", g.op, g.names)


def from_lattice(lattice: FiniteDistributiveLattice) -> StructureFile:
    return StructureFile("lattice", _names(lattice.names, lattice.size),
                         {"join": lattice.join, "meet": lattice.meet})


def from_semiring(s: SemiringTable) -> StructureFile:
    return StructureFile("semiring", _names(s.names, s.size), {"add": s.add, "mul": s.mul},
                         s.labeling)


def from_family(fam: GroupComponentFamily, isos: IsoFamily) -> StructureFile:
    lat = from_lattice(fam.lattice)
    return StructureFile("iso-family", lat.names, lat.tables, None,
                         tuple(from_group(g) for g in fam.components),
                         {k: f.map for k, f in isos.maps.items()})


def from_spec(spec) -> StructureFile:
    return StructureFile("instance-spec", spec={
        "lattice": f"{spec.lattice} {spec.param}", "group": spec.group,
        "recipe": spec.recipe, "flavor": spec.flavor.value})


def to_semiring(doc: StructureFile) -> SemiringTable:
    return SemiringTable(doc.tables["add"], doc.tables["mul"], doc.labels, doc.names)


def to_spec(doc: StructureFile):
    from .generators import InstanceSpec
    kind, _, param = doc.spec["lattice"].partition(" ")
    try:
        p = int(param)
    except ValueError:
        raise ValueError(f"lattice parameter must be an integer, got {param!r}") from None
    return InstanceSpec(kind, p, doc.spec["group"], doc.spec.get("recipe", "identity"),
                        Flavor(doc.spec.get("flavor", "left")))


def family_parts(doc: StructureFile):
    """Raw pieces of an iso-family file: lattice tables, component tables, maps."""
    maps = {}
    for (a, b), vals in doc.maps.items():
        try:
            maps[a, b] = HomMap(doc.components[a].size, doc.components[b].size, vals)
        except MalformedTableError as exc:
            raise ValueError(str(exc)) from None
    return doc.tables["join"], doc.tables["meet"], [c.tables["op"] for c in doc.components], maps


def read(path) -> StructureFile:
    with open(path) as fh:
        return parse(fh.read())


def write(path, doc: StructureFile) -> None:
    with open(path, "w") as fh:
        fh.write(serialize(doc))
