"""Small groups, lattices, connecting families and test instances.

Every factory runs its output through the matching checker before
returning it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import (
    BinaryOpTable,
    FiniteDistributiveLattice,
    FiniteGroup,
    HomMap,
    check_distributive_lattice,
    check_group,
    check_semiring,
    is_group_isomorphism,
)
from .group_semiring import Flavor
from .sdl import (
    GroupComponentFamily,
    IsoFamily,
    SemiringTable,
    constant_family,
    validate_iso_family,
)


def _group(rows, names=None) -> FiniteGroup:
    res = check_group(BinaryOpTable(rows))
    if not res:
        raise AssertionError(f"generated table is not a group: {res.reason}")
    g = res.value
    return FiniteGroup(g.op, g.identity, g.inverse, tuple(names) if names else None)


def _lattice(join, meet, names=None) -> FiniteDistributiveLattice:
    res = check_distributive_lattice(join, meet, tuple(names) if names else None)
    if not res:
        raise AssertionError(f"generated tables are not a distributive lattice: {res.reason}")
    return res.value


def group_from_elements(elements, op, names=None) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    return _group([[index[op(x, y)] for y in elements] for x in elements], names)


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    return _group([[(x + y) % n for y in range(n)] for x in range(n)])


def klein_four() -> FiniteGroup:
    return _group([[x ^ y for y in range(4)] for x in range(4)], ["e", "a", "b", "c"])


def _compose(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def symmetric_group_3() -> FiniteGroup:
    perms = sorted(itertools.permutations(range(3)))
    names = ["".join(map(str, p)) for p in perms]
    return group_from_elements(perms, _compose, names)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, elements ``(s, r)`` meaning ``f^s r^k``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    elems = [(s, r) for s in range(2) for r in range(n)]

    def op(x, y):
        s1, r1 = x
        s2, r2 = y
        return ((s1 + s2) % 2, ((-r1 if s2 else r1) + r2) % n)

    return group_from_elements(elems, op)


def quaternion_group() -> FiniteGroup:
    units = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}
    elems = [tuple(s * c for c in v) for v in units.values() for s in (1, -1)]

    def op(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    names = [("" if s > 0 else "-") + k for k in units for s in (1, -1)]
    return group_from_elements(elems, op, names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(x, y) for x in range(g.size) for y in range(h.size)]
    return group_from_elements(elems, lambda p, q: (g.mul(p[0], q[0]), h.mul(p[1], q[1])))


def small_groups() -> dict[str, FiniteGroup]:
    """One group from each isomorphism class of order at most 8."""
    out = {f"Z{n}": cyclic_group(n) for n in range(1, 9)}
    out["V4"] = klein_four()
    out["S3"] = symmetric_group_3()
    out["Z2xZ4"] = direct_product(cyclic_group(2), cyclic_group(4))
    out["Z2^3"] = direct_product(klein_four(), cyclic_group(2))
    out["D4"] = dihedral_group(4)
    out["Q8"] = quaternion_group()
    return out


def chain_lattice(n: int) -> FiniteDistributiveLattice:
    if n < 1:
        raise ValueError("chain needs n >= 1")
    r = range(n)
    return _lattice([[max(x, y) for y in r] for x in r], [[min(x, y) for y in r] for x in r])


def boolean_lattice(k: int) -> FiniteDistributiveLattice:
    if not 0 <= k <= 4:
        raise ValueError("boolean_lattice supports 0 <= k <= 4")
    r = range(2 ** k)
    names = [format(x, f"0{k}b") if k else "0" for x in r]
    return _lattice([[x | y for y in r] for x in r], [[x & y for y in r] for x in r], names)


def divisor_lattice(n: int) -> FiniteDistributiveLattice:
    if n < 1:
        raise ValueError("divisor lattice needs n >= 1")
    divs = [d for d in range(1, n + 1) if n % d == 0]
    if len(divs) > 16:
        raise ValueError(f"{n} has {len(divs)} divisors, limit is 16")
    idx = {d: i for i, d in enumerate(divs)}
    join = [[idx[x * y // math.gcd(x, y)] for y in divs] for x in divs]
    meet = [[idx[math.gcd(x, y)] for y in divs] for x in divs]
    return _lattice(join, meet, [str(d) for d in divs])


def diamond_tables() -> tuple[BinaryOpTable, BinaryOpTable]:
    """M3: bottom 0, atoms 1 2 3, top 4.  A lattice, but not distributive."""
    return _bounded_tables(5, {1: {0}, 2: {0}, 3: {0}}, 4)


def pentagon_tables() -> tuple[BinaryOpTable, BinaryOpTable]:
    """N5: 0 < 1 < 2 < 4 and 0 < 3 < 4."""
    return _bounded_tables(5, {1: {0}, 2: {0, 1}, 3: {0}}, 4)


def _bounded_tables(n, below, top):
    down = {x: set(below.get(x, set())) | {x} for x in range(n)}
    down[top] = set(range(n))
    down[0] = {0}

    def meet(x, y):
        common = down[x] & down[y]
        return max(common, key=lambda z: len(down[z]))

    def join(x, y):
        ups = [z for z in range(n) if x in down[z] and y in down[z]]
        return min(ups, key=lambda z: len(down[z]))

    r = range(n)
    return (BinaryOpTable([[join(x, y) for y in r] for x in r]),
            BinaryOpTable([[meet(x, y) for y in r] for x in r]))


def heights(lattice: FiniteDistributiveLattice) -> tuple[int, ...]:
    """Length of the longest chain from the bottom to each element."""
    n = lattice.size
    h = [0] * n
    order = sorted(range(n), key=lambda a: sum(lattice.leq(b, a) for b in range(n)))
    for a in order:
        below = [b for b in range(n) if b != a and lattice.leq(b, a)]
        h[a] = max((h[b] + 1 for b in below), default=0)
    return tuple(h)


def power_automorphism(n: int, k: int) -> HomMap:
    """``x -> kx`` on Z_n."""
    f = HomMap.of(k * x % n for x in range(n))
    if not is_group_isomorphism(f, cyclic_group(n), cyclic_group(n)):
        raise ValueError(f"x -> {k}x is not an automorphism of Z{n}")
    return f


def conjugation(group: FiniteGroup, g: int) -> HomMap:
    """``x -> g^-1 x g``."""
    gi = group.inverse[g]
    return HomMap.of(group.mul(group.mul(gi, x), g) for x in range(group.size))


def automorphism_order(a: HomMap) -> int:
    f, k = a, 1
    ident = HomMap.identity(a.source_size)
    while f != ident:
        f, k = f.then(a), k + 1
    return k


def twisted_family(lattice: FiniteDistributiveLattice, group: FiniteGroup,
                   automorphism: HomMap) -> tuple[GroupComponentFamily, IsoFamily]:
    """``phi[(a, b)] = automorphism ** (h(a) - h(b))`` with ``h`` the height."""
    if not is_group_isomorphism(automorphism, group, group):
        raise ValueError("twist is not an automorphism of the group")
    fam = GroupComponentFamily(lattice, (group,) * lattice.size)
    h = heights(lattice)
    powers = [HomMap.identity(group.size)]
    for _ in range(max(h) + 1):
        powers.append(powers[-1].then(automorphism))
    isos = IsoFamily({(a, b): powers[h[a] - h[b]] for a, b in fam.order_pairs()})
    report = validate_iso_family(fam, isos)
    if not report:
        raise AssertionError(f"twisted family invalid: {report.problems[0]}")
    return fam, isos


# canonical non-trivial automorphisms used by the corpus
TWISTS = {
    "Z3": lambda: power_automorphism(3, 2),
    "Z4": lambda: power_automorphism(4, 3),
    "V4": lambda: HomMap.of([0, 2, 1, 3]),
    "S3": lambda: conjugation(symmetric_group_3(), 1),
}

GROUPS = {
    "Z1": lambda: cyclic_group(1),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "V4": klein_four,
    "S3": symmetric_group_3,
}

LATTICES = {
    "chain": chain_lattice,
    "boolean": boolean_lattice,
    "divisor": divisor_lattice,
}


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one family: ``lattice=chain, param=3, group=Z4, recipe=twisted``."""

    lattice: str
    param: int
    group: str
    recipe: str = "identity"
    flavor: Flavor = Flavor.LEFT
    expected_invalid: bool = False

    @property
    def label(self) -> str:
        return f"{self.lattice}{self.param}-{self.group}-{self.recipe}"

    def build(self) -> tuple[GroupComponentFamily, IsoFamily]:
        try:
            lattice = LATTICES[self.lattice](self.param)
            group = GROUPS[self.group]()
        except KeyError as exc:
            raise ValueError(f"unknown lattice or group: {exc.args[0]}") from None
        if self.recipe == "identity":
            return constant_family(lattice, group)
        if self.recipe == "twisted":
            if self.group not in TWISTS:
                raise ValueError(f"no canonical twist for {self.group}")
            return twisted_family(lattice, group, TWISTS[self.group]())
        raise ValueError(f"unknown recipe {self.recipe!r}")


def corpus() -> list[InstanceSpec]:
    """Valid families spanning chains 1-4, boolean lattices 1-2 and divisors of 12."""
    specs = []
    for n, g in [(1, "Z1"), (1, "Z2"), (2, "Z2"), (2, "Z3"), (3, "Z4"), (4, "S3"), (4, "V4")]:
        specs.append(InstanceSpec("chain", n, g))
    for n, g in [(2, "Z3"), (3, "Z4"), (3, "S3"), (4, "V4")]:
        specs.append(InstanceSpec("chain", n, g, "twisted"))
    for k, g in [(1, "Z2"), (2, "Z1"), (2, "S3"), (2, "V4")]:
        specs.append(InstanceSpec("boolean", k, g))
    for k, g in [(1, "Z4"), (2, "S3"), (2, "Z3")]:
        specs.append(InstanceSpec("boolean", k, g, "twisted"))
    specs.append(InstanceSpec("divisor", 12, "Z2"))
    specs.append(InstanceSpec("divisor", 12, "Z3", "twisted"))
    specs.append(InstanceSpec("divisor", 12, "S3", "twisted"))
    return specs


def sdl2_violating_family() -> tuple[GroupComponentFamily, IsoFamily]:
    """3-chain over Z3 where every map is ``a: x -> 2x``.

    The two short steps compose to ``a`` twice, the identity, which differs
    from the long map ``a``.
    """
    fam = GroupComponentFamily(chain_lattice(3), (cyclic_group(3),) * 3)
    a = power_automorphism(3, 2)
    maps = {k: HomMap.identity(3) for k in fam.order_pairs()}
    maps[2, 1] = maps[1, 0] = maps[2, 0] = a
    return fam, IsoFamily(maps)


def search_distributive_lattice_semiring(lattice: FiniteDistributiveLattice,
                                         groups) -> SemiringTable | None:
    """First semiring (in table order) that is a distributive lattice of the
    given group semirings, or ``None``.

    Inside each component the product is the group's and the sum is
    left-zero; every cross entry ranges over the component forced by
    join/meet.
    """
    offsets, k = [], 0
    for g in groups:
        offsets.append(k)
        k += g.size
    labeling = [(a, x) for a, g in enumerate(groups) for x in range(g.size)]
    n = len(labeling)
    add = [[None] * n for _ in range(n)]
    mul = [[None] * n for _ in range(n)]
    free = []
    for i, (a, x) in enumerate(labeling):
        for j, (b, y) in enumerate(labeling):
            if a == b:
                mul[i][j] = offsets[a] + groups[a].mul(x, y)
                add[i][j] = i
                continue
            for t, c in ((mul, lattice.meet(a, b)), (add, lattice.join(a, b))):
                choices = range(offsets[c], offsets[c] + groups[c].size)
                if len(choices) == 1:
                    t[i][j] = choices[0]
                else:
                    free.append((t, i, j, choices))
    for pick in itertools.product(*(c for *_, c in free)):
        for (t, i, j, _), v in zip(free, pick):
            t[i][j] = v
        if check_semiring(add, mul):
            return SemiringTable(BinaryOpTable(add), BinaryOpTable(mul), tuple(labeling))
    return None


def non_strong_counterexample() -> SemiringTable:
    """A 3-element distributive lattice of group semirings that is not strong.

    The 2-chain carries the trivial group and Z2.  With the trivial group on
    top no semiring exists, so the search falls through to the other
    placement.
    """
    trivial, z2 = cyclic_group(1), cyclic_group(2)
    chain = chain_lattice(2)
    for groups in ((z2, trivial), (trivial, z2)):
        found = search_distributive_lattice_semiring(chain, groups)
        if found is not None:
            names = tuple(f"{a}.{x}" for a, x in found.labeling)
            return SemiringTable(found.add, found.mul, found.labeling, names)
    raise AssertionError("no distributive lattice of Z1 and Z2 group semirings found")


def random_associative_table(rng, max_size: int = 5) -> BinaryOpTable:
    """A random finite semigroup of at most ``max_size`` elements.

    Takes the transformation semigroup generated by a few random self-maps
    of a small set, sometimes adjoins an identity, and relabels at random.
    """
    while True:
        m = rng.randint(2, 4)
        gens = {tuple(rng.randrange(m) for _ in range(m)) for _ in range(rng.randint(1, 3))}
        if rng.random() < 0.25:
            gens.add(tuple(range(m)))
        elems = set(gens)
        frontier = list(gens)
        while frontier and len(elems) <= max_size:
            p = frontier.pop()
            for g in gens:
                q = tuple(g[i] for i in p)   # apply p then g
                if q not in elems:
                    elems.add(q)
                    frontier.append(q)
        if len(elems) > max_size:
            continue
        elems = sorted(elems)
        rng.shuffle(elems)
        idx = {e: i for i, e in enumerate(elems)}
        return BinaryOpTable([[idx[tuple(q[i] for i in p)] for q in elems] for p in elems])
