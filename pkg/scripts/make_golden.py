"""Regenerate the golden files shipped in src/strongsdl/data/.

The non-strong counterexample comes from a bounded search; its tables are
persisted here so later runs can compare against the first discovery.
"""
from pathlib import Path

from strongsdl import fileformat as ff
from strongsdl.core import BinaryOpTable
from strongsdl.generators import (
    InstanceSpec,
    cyclic_group,
    diamond_tables,
    non_strong_counterexample,
    sdl2_violating_family,
)
from strongsdl.sdl import build_strong_sdl

DATA = Path(__file__).resolve().parents[1] / "src" / "strongsdl" / "data"


def main():
    DATA.mkdir(exist_ok=True)
    chain2 = InstanceSpec("chain", 2, "Z2")
    fam, isos = chain2.build()
    join, meet = diamond_tables()
    files = {
        "z2_group.txt": ff.from_group(cyclic_group(2)),
        "left_zero_semigroup.txt": ff.from_table("semigroup", BinaryOpTable([[0, 0], [1, 1]])),
        "chain2_z2_family.txt": ff.from_family(fam, isos),
        "chain2_z2_semiring.txt": ff.from_semiring(build_strong_sdl(fam, isos)),
        "chain3_z4_twisted_spec.txt": ff.from_spec(InstanceSpec("chain", 3, "Z4", "twisted")),
        "boolean2_s3_twisted_family.txt": ff.from_family(*InstanceSpec("boolean", 2, "S3", "twisted").build()),
        "m3_lattice.txt": ff.StructureFile("lattice", ("0", "a", "b", "c", "1"),
                                           {"join": join, "meet": meet}),
        "sdl2_violation_family.txt": ff.from_family(*sdl2_violating_family()),
        "non_strong_counterexample.txt": ff.from_semiring(non_strong_counterexample()),
    }
    for name, doc in files.items():
        ff.write(DATA / name, doc)
        print(f"wrote {name}")


if __name__ == "__main__":
    main()
