import math
import random
from importlib import resources

import pytest

from oracles import associativity_failures, semiring_failures
from strongsdl import fileformat as ff
from strongsdl.core import HomMap, check_distributive_lattice, check_group
from strongsdl.generators import (
    InstanceSpec,
    automorphism_order,
    boolean_lattice,
    chain_lattice,
    conjugation,
    corpus,
    cyclic_group,
    divisor_lattice,
    heights,
    klein_four,
    non_strong_counterexample,
    power_automorphism,
    random_associative_table,
    search_distributive_lattice_semiring,
    symmetric_group_3,
    twisted_family,
)
from strongsdl.sdl import constant_family, validate_iso_family


class TestGroups:
    def test_trivial(self):
        assert cyclic_group(1).size == 1

    def test_cyclic_entry(self):
        assert cyclic_group(4).mul(3, 2) == 1

    def test_s3(self):
        g = symmetric_group_3()
        assert g.size == 6 and check_group(g.op)
        assert any(g.mul(x, y) != g.mul(y, x) for x in range(6) for y in range(6))

    def test_klein(self):
        g = klein_four()
        assert all(g.mul(x, x) == g.identity for x in range(4))

    def test_bad_order(self):
        with pytest.raises(ValueError):
            cyclic_group(0)


class TestLattices:
    def test_chain(self):
        assert chain_lattice(2).leq(0, 1) and not chain_lattice(2).leq(1, 0)

    def test_boolean(self):
        assert boolean_lattice(2).size == 4

    def test_divisor_12(self):
        D = divisor_lattice(12)
        names = list(D.names)
        assert D.size == 6
        assert names[D.meet(names.index("4"), names.index("6"))] == str(math.gcd(4, 6))
        assert names[D.join(names.index("4"), names.index("6"))] == "12"

    def test_bounds(self):
        with pytest.raises(ValueError):
            boolean_lattice(5)
        with pytest.raises(ValueError):
            divisor_lattice(720720)    # 240 divisors

    def test_heights(self):
        assert heights(chain_lattice(4)) == (0, 1, 2, 3)
        assert heights(boolean_lattice(2)) == (0, 1, 1, 2)
        D = divisor_lattice(12)
        # height = number of prime factors with multiplicity
        omega = {1: 0, 2: 1, 3: 1, 4: 2, 6: 2, 12: 3}
        assert heights(D) == tuple(omega[int(n)] for n in D.names)


class TestFamilies:
    def test_identity_twist_is_constant(self):
        g = cyclic_group(3)
        assert twisted_family(chain_lattice(3), g, HomMap.identity(3)) == \
            constant_family(chain_lattice(3), g)

    def test_two_levels_of_doubling_on_z3(self):
        _, isos = twisted_family(chain_lattice(3), cyclic_group(3), power_automorphism(3, 2))
        assert isos[2, 0].map == tuple(4 * x % 3 for x in range(3)) == (0, 1, 2)
        assert isos[2, 1].map == (0, 2, 1)

    def test_boolean_s3_conjugation(self):
        s3 = symmetric_group_3()
        a = conjugation(s3, 1)
        assert automorphism_order(a) == 2
        fam, isos = twisted_family(boolean_lattice(2), s3, a)
        for x, y, z in fam.chains():
            assert isos[x, y].then(isos[y, z]) == isos[x, z]
        assert isos[3, 0] == HomMap.identity(6)

    def test_rejects_non_automorphism(self):
        with pytest.raises(ValueError):
            twisted_family(chain_lattice(2), cyclic_group(3), HomMap.of([0, 0, 0]))
        with pytest.raises(ValueError):
            power_automorphism(4, 2)

    @pytest.mark.parametrize("spec", [s for s in corpus() if s.recipe == "twisted"], ids=lambda s: s.label)
    def test_twisted_corpus_is_nontrivial(self, spec):
        fam, isos = spec.build()
        assert any(f != HomMap.identity(f.source_size) for f in isos.maps.values())

    @pytest.mark.parametrize("spec", corpus(), ids=lambda s: s.label)
    def test_corpus_families_valid(self, spec):
        fam, isos = spec.build()
        assert validate_iso_family(fam, isos)
        assert check_distributive_lattice(fam.lattice.join, fam.lattice.meet)

    def test_unknown_recipe(self):
        with pytest.raises(ValueError):
            InstanceSpec("chain", 2, "Z2", "bogus").build()
        with pytest.raises(ValueError):
            InstanceSpec("chain", 2, "Z2", "twisted").build()


class TestCounterexample:
    def test_top_trivial_placement_has_no_semiring(self):
        assert search_distributive_lattice_semiring(
            chain_lattice(2), (cyclic_group(2), cyclic_group(1))) is None

    def test_found_tables(self):
        t = non_strong_counterexample()
        assert t.size == 3
        assert semiring_failures(t.add, t.mul) == []
        assert [a for a, _ in t.labeling] == [0, 1, 1]

    def test_matches_golden_file(self):
        text = resources.files("strongsdl").joinpath("data/non_strong_counterexample.txt").read_text()
        assert ff.to_semiring(ff.parse(text)) == non_strong_counterexample()


def test_random_tables_are_associative():
    rng = random.Random(0)
    for _ in range(100):
        t = random_associative_table(rng)
        assert t.size <= 5
        assert associativity_failures(t) == []
