from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongsdl import fileformat as ff
from strongsdl.core import BinaryOpTable, check_group
from strongsdl.generators import InstanceSpec, corpus
from strongsdl.sdl import build_strong_sdl


def golden_files():
    root = resources.files("strongsdl").joinpath("data")
    return sorted((p.name, p.read_text()) for p in root.iterdir() if p.name.endswith(".txt"))


@pytest.mark.parametrize("name,text", golden_files(), ids=[n for n, _ in golden_files()])
def test_golden_round_trip(name, text):
    doc = ff.parse(text)
    assert ff.serialize(doc) == text
    assert ff.parse(ff.serialize(doc)) == doc


def test_z2_group_file():
    text = dict(golden_files())["z2_group.txt"]
    doc = ff.parse(text)
    res = check_group(doc.tables["op"])
    assert res and doc.names[res.value.identity] == "0"


def test_comments_and_blank_lines():
    text = "# a group\nkind: group\n\nsize: 1   # trivial\nnames: e\ntable: op\n0\n"
    doc = ff.parse(text)
    assert ff.serialize(doc) == "kind: group\nsize: 1\nnames: e\ntable: op\n0\n"


@pytest.mark.parametrize("text,line,col,fragment", [
    ("kind: group\nsize: 2\nnames: a b\ntable: op\n0 1\n1\n", 6, 1, "expected 2 entries"),
    ("kind: group\nsize: 2\nnames: a b\ntable: op\n0 1\n1 2\n", 6, 3, "out of range"),
    ("kind: ring\n", 1, 7, "unknown kind"),
    ("kind: group\nsize: 2\nnames: a\n", 3, 8, "expected 2 names"),
    ("kind: group\nsize: 1\nnames: a\ntable: mul\n0\n", 4, 8, "table: op"),
    ("kind: group\nsize: 1\nnames: a\ntable: op\nx\n", 5, 1, "integer"),
    ("kind: group\nsize: 1\nnames: a\ntable: op\n", 5, 1, "end of file"),
    ("kind: group\nsize: 1\nnames: a\ntable: op\n0\nextra\n", 6, 1, "trailing"),
])
def test_errors_carry_position(text, line, col, fragment):
    with pytest.raises(ff.ParseError) as info:
        ff.parse(text)
    assert info.value.line == line
    assert info.value.column == col
    assert fragment in str(info.value)


def test_family_errors():
    good = ff.serialize(ff.from_family(*InstanceSpec("chain", 2, "Z2").build()))
    with pytest.raises(ff.ParseError, match="unknown lattice element"):
        ff.parse(good.replace("map: 1 0", "map: 1 7"))
    with pytest.raises(ff.ParseError, match="no component"):
        ff.parse(good.split("component: 1")[0])
    with pytest.raises(ff.ParseError, match="given twice"):
        ff.parse(good + "map: 1 0\n0 1\n")


@pytest.mark.parametrize("spec", corpus()[:6], ids=lambda s: s.label)
def test_family_and_semiring_round_trip(spec):
    fam, isos = spec.build()
    doc = ff.from_family(fam, isos)
    assert ff.parse(ff.serialize(doc)) == doc
    sdoc = ff.from_semiring(build_strong_sdl(fam, isos))
    back = ff.parse(ff.serialize(sdoc))
    assert back == sdoc and ff.to_semiring(back).labeling == sdoc.labels


def test_instance_spec_round_trip():
    spec = InstanceSpec("divisor", 12, "S3", "twisted")
    doc = ff.from_spec(spec)
    assert ff.to_spec(ff.parse(ff.serialize(doc))) == spec


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_random_tables_round_trip(rows):
    doc = ff.from_table("semigroup", BinaryOpTable(rows))
    text = ff.serialize(doc)
    assert ff.parse(text) == doc
    assert ff.serialize(ff.parse(text)) == text
