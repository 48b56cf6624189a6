"""A finite group made into a semiring by a left-zero (or right-zero) addition."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import BinaryOpTable, FiniteGroup


class Flavor(enum.Enum):
    LEFT = "left"     # x + y = x
    RIGHT = "right"   # x + y = y


def zero_band(n: int, flavor: Flavor = Flavor.LEFT) -> BinaryOpTable:
    idx = np.arange(n)
    if flavor is Flavor.LEFT:
        return BinaryOpTable(np.repeat(idx[:, None], n, axis=1))
    return BinaryOpTable(np.repeat(idx[None, :], n, axis=0))


@dataclass(frozen=True)
class GroupSemiring:
    group: FiniteGroup
    flavor: Flavor
    add: BinaryOpTable
    mul: BinaryOpTable

    @property
    def size(self) -> int:
        return self.group.size


def make_group_semiring(group: FiniteGroup, flavor: Flavor = Flavor.LEFT) -> GroupSemiring:
    return GroupSemiring(group, flavor, zero_band(group.size, flavor), group.op)
