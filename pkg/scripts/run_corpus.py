"""Build every corpus family, analyze the result and print one row per instance.

    python scripts/run_corpus.py [--flavor right]
"""
import argparse
import time

from strongsdl.analyze import full_analysis, roundtrip, stronglattice_suite
from strongsdl.generators import corpus
from strongsdl.group_semiring import Flavor
from strongsdl.sdl import build_strong_sdl


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--flavor", choices=("left", "right"), default="left")
    flavor = Flavor(ap.parse_args().flavor)
    print(f"{'instance':28} {'|S|':>4} {'|E|':>4} strong roundtrip clauses   secs")
    total = time.perf_counter()
    for spec in corpus():
        t = time.perf_counter()
        fam, isos = spec.build()
        table = build_strong_sdl(fam, isos, flavor)
        rep = full_analysis(table.add, table.mul, flavor)
        rt = roundtrip(table, fam, isos, flavor)
        suite = stronglattice_suite(table, fam, isos, flavor)
        clauses = "".join("+" if v else "-" for v in suite.values())
        print(f"{spec.label:28} {table.size:4} {len(rep.idempotents):4} "
              f"{str(rep.is_strong_sdl_of_group_semirings):6} {str(bool(rt)):9} {clauses:9} "
              f"{time.perf_counter() - t:6.3f}")
    print(f"total {time.perf_counter() - total:.2f}s")


if __name__ == "__main__":
    main()
