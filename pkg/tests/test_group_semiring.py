import itertools

import pytest

from oracles import semiring_failures
from strongsdl.core import check_semiring
from strongsdl.generators import cyclic_group, small_groups, symmetric_group_3
from strongsdl.group_semiring import Flavor, make_group_semiring


def test_trivial_group():
    gs = make_group_semiring(cyclic_group(1))
    assert gs.add.tolist() == gs.mul.tolist() == [[0]]


def test_z2_left_zero():
    gs = make_group_semiring(cyclic_group(2), Flavor.LEFT)
    assert gs.add.tolist() == [[0, 0], [1, 1]]
    assert gs.mul.tolist() == [[0, 1], [1, 0]]


def test_z2_right_zero():
    gs = make_group_semiring(cyclic_group(2), Flavor.RIGHT)
    assert gs.add.tolist() == [[0, 1], [0, 1]]


def test_s3_brute_force():
    g = symmetric_group_3()
    gs = make_group_semiring(g)
    assert gs.mul == g.op
    assert semiring_failures(gs.add, gs.mul) == []
    assert check_semiring(gs.add, gs.mul)


@pytest.mark.parametrize("flavor", list(Flavor))
@pytest.mark.parametrize("name", sorted(small_groups()))
def test_every_small_group_is_a_semiring(name, flavor):
    gs = make_group_semiring(small_groups()[name], flavor)
    assert check_semiring(gs.add, gs.mul)


@pytest.mark.parametrize("name", ["Z5", "Q8", "D4"])
def test_left_zero_band(name):
    gs = make_group_semiring(small_groups()[name])
    for x, y, z in itertools.product(range(gs.size), repeat=3):
        assert gs.add(x, x) == x
        assert gs.add(gs.add(x, y), z) == x


def test_small_groups_cover_orders_up_to_8():
    orders = sorted(g.size for g in small_groups().values())
    assert orders == [1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]
