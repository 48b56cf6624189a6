import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import idempotents, lattice_isomorphisms, semiring_failures
from strongsdl.analyze import (
    component_isomorphisms,
    decompose_components,
    full_analysis,
    idempotent_subsemiring,
    is_band,
    is_clifford,
    is_clifford_by_regularity,
    is_left_normal_band,
    is_normal_band,
    is_right_normal_band,
    lattice_isomorphism,
    multiplicative_idempotents,
    recover_connecting_maps,
    roundtrip,
    stronglattice_suite,
)
from strongsdl.core import (
    BinaryOpTable,
    FiniteDistributiveLattice,
    HomMap,
    check_semiring,
    is_group_isomorphism,
)
from strongsdl.generators import (
    boolean_lattice,
    chain_lattice,
    conjugation,
    cyclic_group,
    divisor_lattice,
    non_strong_counterexample,
    power_automorphism,
    random_associative_table,
    symmetric_group_3,
    twisted_family,
)
from strongsdl.group_semiring import Flavor, zero_band
from strongsdl.sdl import SemiringTable, build_strong_sdl, constant_family


def built(fam_isos, flavor=Flavor.LEFT):
    fam, isos = fam_isos
    return fam, isos, build_strong_sdl(fam, isos, flavor)


@pytest.fixture(scope="module")
def chain2_z2():
    return built(constant_family(chain_lattice(2), cyclic_group(2)))


@pytest.fixture(scope="module")
def boolean_s3():
    s3 = symmetric_group_3()
    return built(twisted_family(boolean_lattice(2), s3, conjugation(s3, 1)))


def unit_elements(fam, table):
    w = {lab: i for i, lab in enumerate(table.labeling)}
    return [w[a, g.identity] for a, g in enumerate(fam.components)]


class TestCheckSemiring:
    def test_group_semiring(self, chain2_z2):
        _, _, t = chain2_z2
        assert check_semiring(t.add, t.mul)

    def test_z2_for_both_operations(self):
        z2 = [[0, 1], [1, 0]]
        res = check_semiring(z2, z2)
        fails = semiring_failures(z2, z2)
        assert bool(res) == (not fails)
        assert not res
        assert res.witness in fails

    def test_built_boolean(self, boolean_s3):
        assert check_semiring(boolean_s3[2].add, boolean_s3[2].mul)


class TestIdempotents:
    def test_group(self):
        assert multiplicative_idempotents(symmetric_group_3().op) == (0,)

    def test_built(self, boolean_s3):
        fam, _, t = boolean_s3
        E = multiplicative_idempotents(t.mul)
        assert len(E) == fam.lattice.size
        assert sorted(unit_elements(fam, t)) == list(E)

    def test_left_zero_band(self):
        assert multiplicative_idempotents(zero_band(3)) == (0, 1, 2)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 5).flatmap(lambda n: st.lists(
        st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_oracle(self, t):
        assert list(multiplicative_idempotents(t)) == idempotents(t)


class TestIdempotentSubsemiring:
    def test_two_chain(self, chain2_z2):
        _, _, t = chain2_z2
        res = idempotent_subsemiring(t.add, t.mul, multiplicative_idempotents(t.mul))
        assert res.value == chain_lattice(2)

    def test_boolean_isomorphic_to_source(self, boolean_s3):
        fam, _, t = boolean_s3
        res = idempotent_subsemiring(t.add, t.mul, multiplicative_idempotents(t.mul))
        found = lattice_isomorphism(res.value, fam.lattice)
        assert found is not None
        assert found in lattice_isomorphisms(res.value, fam.lattice)

    def test_mutated_table_breaks_closure(self, chain2_z2):
        _, _, t = chain2_z2
        e0, e1 = multiplicative_idempotents(t.mul)
        add = t.add.tolist()
        add[e0][e1] = 3        # 1.1 is not idempotent
        res = idempotent_subsemiring(add, t.mul, (e0, e1))
        assert not res
        assert res.witness == (e0, e1) and "addition" in res.reason


class TestClifford:
    @pytest.mark.parametrize("g", [cyclic_group(5), symmetric_group_3()])
    def test_group(self, g):
        assert is_clifford(g.op)

    def test_left_zero(self):
        res = is_clifford(zero_band(2))
        assert not res
        assert res.reason == "idempotent not central" and res.witness == (0, 1)

    def test_not_associative(self):
        assert is_clifford([[1, 0], [0, 0]]).reason == "not associative"

    def test_built(self, boolean_s3):
        assert is_clifford(boolean_s3[2].mul)

    def test_element_outside_subgroups(self):
        # null semigroup {0, 1}: 1*1 = 0, 1 lies in no subgroup
        res = is_clifford([[0, 0], [0, 0]])
        assert not res and res.witness == 1
        assert not is_clifford_by_regularity([[0, 0], [0, 0]])

    def test_agrees_with_regularity_definition(self):
        rng = random.Random(7)
        for _ in range(200):
            t = random_associative_table(rng, 6)
            assert bool(is_clifford(t)) == bool(is_clifford_by_regularity(t))


class TestBands:
    def test_left_zero(self):
        assert is_left_normal_band(zero_band(3))
        assert not is_right_normal_band(zero_band(3))
        assert is_right_normal_band(zero_band(3, Flavor.RIGHT))

    def test_z2_group_addition(self):
        res = is_left_normal_band([[0, 1], [1, 0]])
        assert not res and res.witness == 1

    def test_built(self, boolean_s3):
        t = boolean_s3[2]
        assert is_left_normal_band(t.add)
        assert is_normal_band(t.add)

    def test_semilattice_is_both(self):
        D = divisor_lattice(12)
        assert is_left_normal_band(D.join) and is_right_normal_band(D.join)

    def test_normal_without_left_normal(self):
        # right-zero band: x+y+z+w = w on both sides, but x+y+z = z != y
        rz = zero_band(3, Flavor.RIGHT)
        assert is_normal_band(rz)
        assert not is_left_normal_band(rz)

    def test_non_associative_rejected(self):
        assert is_band([[1, 0], [0, 0]]).reason == "not associative"


class TestDecompose:
    def test_group(self):
        assert decompose_components(cyclic_group(4).op) == {0: (0, 1, 2, 3)}

    def test_two_chain_z2(self, chain2_z2):
        comps = decompose_components(chain2_z2[2].mul)
        assert sorted(len(c) for c in comps.values()) == [2, 2]

    def test_three_chain_z4(self):
        _, _, t = built(constant_family(chain_lattice(3), cyclic_group(4)))
        comps = decompose_components(t.mul)
        assert [len(c) for c in comps.values()] == [4, 4, 4]
        assert sorted(itertools.chain(*comps.values())) == list(range(12))

    def test_requires_clifford(self):
        with pytest.raises(ValueError):
            decompose_components(zero_band(2))


class TestRecover:
    def _recover(self, t, flavor=Flavor.LEFT):
        comps = decompose_components(t.mul)
        lat = idempotent_subsemiring(t.add, t.mul, sorted(comps)).value
        return recover_connecting_maps(t, comps, lat, flavor)

    def test_identity_family(self, chain2_z2):
        rec = self._recover(chain2_z2[2])
        assert rec.result
        assert all(f == HomMap.identity(f.source_size) for f in rec.phi.maps.values())
        assert all(f == HomMap.identity(f.source_size) for f in rec.psi.maps.values())

    def test_twisted_s3_round_trip(self, boolean_s3):
        fam, isos, t = boolean_s3
        rec = self._recover(t)
        assert rec.result
        assert rec.phi == isos
        assert roundtrip(t, fam, isos)

    def test_non_isomorphic_components(self):
        t = non_strong_counterexample()
        rec = self._recover(t)
        assert not rec.result
        assert "not-isomorphism" in rec.result.reason

    def test_component_isomorphisms(self, boolean_s3):
        fam, _, t = boolean_s3
        rec = self._recover(t)
        isos = component_isomorphisms(rec)
        G = rec.family.components
        for (a, b), f in isos.items():
            assert is_group_isomorphism(f, G[a], G[b])

    def test_right_flavor(self):
        fam, isos, t = built(twisted_family(chain_lattice(3), cyclic_group(3),
                                            power_automorphism(3, 2)), Flavor.RIGHT)
        rec = self._recover(t, Flavor.RIGHT)
        assert rec.result and rec.phi == isos
        assert roundtrip(t, fam, isos, Flavor.RIGHT)
        assert not self._recover(t, Flavor.LEFT).result


class TestLatticeIsomorphism:
    def test_self(self):
        D = divisor_lattice(12)
        assert lattice_isomorphism(D, D) == tuple(range(6))

    def test_size_differs(self):
        assert lattice_isomorphism(chain_lattice(3), boolean_lattice(2)) is None

    def test_same_size_not_isomorphic(self):
        assert lattice_isomorphism(chain_lattice(4), boolean_lattice(2)) is None
        assert lattice_isomorphisms(chain_lattice(4), boolean_lattice(2)) == []

    def test_idempotents_recover_source(self, boolean_s3):
        fam, _, t = boolean_s3
        E = multiplicative_idempotents(t.mul)
        lat = idempotent_subsemiring(t.add, t.mul, E).value
        units = unit_elements(fam, t)
        # position of e_a inside E, for each a
        canonical = tuple(E.index(u) for u in units)
        assert canonical in lattice_isomorphisms(fam.lattice, lat)
        assert lattice_isomorphism(fam.lattice, lat) in lattice_isomorphisms(fam.lattice, lat)

    @pytest.mark.parametrize("seed", range(5))
    def test_relabelled_divisor_lattice(self, seed):
        D = divisor_lattice(30)
        rng = random.Random(seed)
        p = list(range(D.size))
        rng.shuffle(p)
        inv = [p.index(i) for i in range(D.size)]
        E = FiniteDistributiveLattice(
            BinaryOpTable([[p[D.join(inv[x], inv[y])] for y in range(8)] for x in range(8)]),
            BinaryOpTable([[p[D.meet(inv[x], inv[y])] for y in range(8)] for x in range(8)]))
        f = lattice_isomorphism(D, E)
        assert f is not None
        assert f in lattice_isomorphisms(D, E)


class TestFullAnalysis:
    def test_built_instance(self, boolean_s3):
        t = boolean_s3[2]
        rep = full_analysis(t.add, t.mul)
        assert rep.is_semiring and rep.idempotent_lattice and rep.is_clifford_mul
        assert rep.is_left_normal_band_add and rep.component_closure
        assert rep.is_strong_sdl_of_group_semirings is True

    def test_random_magma(self):
        rep = full_analysis([[1, 0], [1, 1]], [[0, 0], [1, 0]])
        assert not rep.is_semiring
        assert rep.idempotents is None and rep.is_clifford_mul is None
        assert rep.is_strong_sdl_of_group_semirings is None

    def test_non_clifford_semiring(self):
        rep = full_analysis(zero_band(2), zero_band(2))
        assert rep.is_semiring and not rep.is_clifford_mul
        assert rep.components is None and rep.recovery is None
        assert rep.is_strong_sdl_of_group_semirings is None

    def test_counterexample(self):
        t = non_strong_counterexample()
        rep = full_analysis(t.add, t.mul)
        assert rep.is_semiring and rep.component_closure
        assert rep.is_strong_sdl_of_group_semirings is False
        assert not rep.is_left_normal_band_add


class TestTheoremSuite:
    def test_all_clauses_on_twisted(self, boolean_s3):
        fam, isos, t = boolean_s3
        assert all(stronglattice_suite(t, fam, isos).values())

    def test_wrong_maps_fail_clause_iii(self, boolean_s3):
        fam, isos, t = boolean_s3
        _, ident = constant_family(fam.lattice, fam.components[0])
        suite = stronglattice_suite(t, fam, ident)
        assert not suite["iii"]
        assert suite["i"] and suite["ii"] and suite["vi"]

    def test_needs_labels(self, boolean_s3):
        fam, isos, t = boolean_s3
        with pytest.raises(ValueError):
            stronglattice_suite(SemiringTable(t.add, t.mul), fam, isos)
