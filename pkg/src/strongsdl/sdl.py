"""Strong distributive lattices of group semirings.

Given a distributive lattice ``D``, one finite group per lattice element and
a family of connecting isomorphisms ``phi[(a, b)]: G_a -> G_b`` for
``b <= a``, :func:`build_strong_sdl` lays out the disjoint union of the
groups and fills in

    x * y = phi[(a, ab)](x) * phi[(b, ab)](y)      (product lands in G_{ab})
    x + y = psi[(a, a+b)](x)                       (sum lands in G_{a+b})

with ``psi[(b, a)]`` the inverse of ``phi[(a, b)]``.  Maps compose left to
right: ``f.then(g)`` applies ``f`` first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .core import (
    BinaryOpTable,
    CheckResult,
    FiniteDistributiveLattice,
    FiniteGroup,
    HomMap,
    SizeMismatchError,
    check_semiring,
    failed,
    is_group_isomorphism,
    passed,
)
from .group_semiring import Flavor


class InvalidFamilyError(ValueError):
    def __init__(self, report: ValidationReport):
        super().__init__(f"invalid connecting family: {report.problems[0]}")
        self.report = report


class SelfCheckError(RuntimeError):
    """The constructed tables failed the semiring axioms."""


@dataclass(frozen=True)
class GroupComponentFamily:
    lattice: FiniteDistributiveLattice
    components: tuple[FiniteGroup, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.lattice.size:
            raise SizeMismatchError(
                f"{len(self.components)} components for a lattice of size {self.lattice.size}")

    def identity_of(self, a: int) -> int:
        return self.components[a].identity

    def order_pairs(self) -> Iterator[tuple[int, int]]:
        """All ``(a, b)`` with ``b <= a``, in index order."""
        D = self.lattice
        for a in range(D.size):
            for b in range(D.size):
                if D.leq(b, a):
                    yield a, b

    def chains(self) -> Iterator[tuple[int, int, int]]:
        """All ``(a, b, c)`` with ``c <= b <= a``."""
        D = self.lattice
        for a, b in self.order_pairs():
            for c in range(D.size):
                if D.leq(c, b):
                    yield a, b, c


@dataclass(frozen=True)
class IsoFamily:
    """Maps keyed by ``(source, target)`` lattice elements."""

    maps: Mapping[tuple[int, int], HomMap]

    def __post_init__(self):
        object.__setattr__(self, "maps", dict(sorted(self.maps.items())))

    def __getitem__(self, key: tuple[int, int]) -> HomMap:
        return self.maps[key]

    def __contains__(self, key) -> bool:
        return key in self.maps

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IsoFamily):
            return NotImplemented
        return self.maps == other.maps


@dataclass(frozen=True, eq=False)
class SemiringTable:
    add: BinaryOpTable
    mul: BinaryOpTable
    labeling: tuple[tuple[int, int], ...] | None = None
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.add.size != self.mul.size:
            raise SizeMismatchError("add and mul tables differ in size")
        if self.labeling is not None:
            lab = tuple((int(a), int(g)) for a, g in self.labeling)
            if len(lab) != self.size:
                raise SizeMismatchError("labeling length differs from carrier size")
            object.__setattr__(self, "labeling", lab)

    @property
    def size(self) -> int:
        return self.add.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiringTable):
            return NotImplemented
        return (self.add, self.mul, self.labeling) == (other.add, other.mul, other.labeling)


@dataclass(frozen=True)
class Problem:
    clause: str
    where: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.clause} at {self.where}" + (f": {self.detail}" if self.detail else "")


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[Problem, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def clauses(self) -> set[str]:
        return {p.clause for p in self.problems}


def _first_diff(f: HomMap, g: HomMap) -> int | None:
    for x, (u, v) in enumerate(zip(f.map, g.map)):
        if u != v:
            return x
    return None


def validate_iso_family(fam: GroupComponentFamily, isos: IsoFamily) -> ValidationReport:
    """Check keys, isomorphism, SDL1 and SDL2; every violation is listed."""
    D, G = fam.lattice, fam.components
    for (a, b), f in isos.maps.items():
        if not (0 <= a < D.size and 0 <= b < D.size):
            raise SizeMismatchError(f"map key {(a, b)} outside lattice of size {D.size}")
        if f.source_size != G[a].size or f.target_size != G[b].size:
            raise SizeMismatchError(
                f"map {(a, b)} is {f.source_size}->{f.target_size}, "
                f"groups have orders {G[a].size}->{G[b].size}")
    problems = []
    pairs = list(fam.order_pairs())
    expected = set(pairs)
    for key in isos.maps:
        if key not in expected:
            problems.append(Problem("extra-key", key, "target is not below source"))
    for key in pairs:
        if key not in isos:
            problems.append(Problem("missing-key", key))
    for a, b in pairs:
        if (a, b) not in isos:
            continue
        res = is_group_isomorphism(isos[a, b], G[a], G[b])
        if not res:
            problems.append(Problem("not-isomorphism", (a, b), res.reason))
    for a in range(D.size):
        if (a, a) in isos:
            x = _first_diff(isos[a, a], HomMap.identity(G[a].size))
            if x is not None:
                problems.append(Problem("SDL1", (a, x), "phi[a,a] is not the identity"))
    for a, b, c in fam.chains():
        if not ((a, b) in isos and (b, c) in isos and (a, c) in isos):
            continue
        x = _first_diff(isos[a, b].then(isos[b, c]), isos[a, c])
        if x is not None:
            problems.append(Problem("SDL2", (a, b, c, x), "phi[a,b] then phi[b,c] != phi[a,c]"))
    return ValidationReport(tuple(problems))


def derive_psi(isos: IsoFamily) -> IsoFamily:
    """``psi[(b, a)] = phi[(a, b)]^-1``."""
    return IsoFamily({(b, a): f.inverse() for (a, b), f in isos.maps.items()})


def check_psi_family(fam: GroupComponentFamily, psi: IsoFamily) -> CheckResult:
    """Upward identities: ``psi[a,a] = id`` and ``psi[c,b] then psi[b,a] = psi[c,a]``."""
    for a in range(fam.lattice.size):
        x = _first_diff(psi[a, a], HomMap.identity(fam.components[a].size))
        if x is not None:
            return failed("psi[a,a] is not the identity", (a, x))
    for a, b, c in fam.chains():
        x = _first_diff(psi[c, b].then(psi[b, a]), psi[c, a])
        if x is not None:
            return failed("psi[c,b] then psi[b,a] != psi[c,a]", (a, b, c, x))
    return passed()


def check_compatibility(fam: GroupComponentFamily, phi: IsoFamily,
                        psi: IsoFamily | None = None, *, meet_only: bool = False) -> CheckResult:
    """For ``a+b <= d`` and ``c <= ab``: ``phi[a,c] then psi[c,b] == psi[a,d] then phi[d,b]``.

    With ``meet_only`` the lower index is pinned to ``c = ab``.
    Witness is ``(a, b, c, d, x)``.
    """
    if psi is None:
        psi = derive_psi(phi)
    D = fam.lattice
    n = D.size
    for a in range(n):
        for b in range(n):
            j, m = D.join(a, b), D.meet(a, b)
            for d in range(n):
                if not D.leq(j, d):
                    continue
                lows = [m] if meet_only else [c for c in range(n) if D.leq(c, m)]
                for c in lows:
                    x = _first_diff(phi[a, c].then(psi[c, b]), psi[a, d].then(phi[d, b]))
                    if x is not None:
                        return failed("compatibility identity fails", (a, b, c, d, x))
    return passed()


def layout(fam: GroupComponentFamily) -> tuple[int, ...]:
    """Offset of each component in the disjoint union."""
    offsets, k = [], 0
    for g in fam.components:
        offsets.append(k)
        k += g.size
    return tuple(offsets)


def element_names(fam: GroupComponentFamily) -> tuple[str, ...]:
    D = fam.lattice
    out = []
    for a, g in enumerate(fam.components):
        an = D.names[a] if D.names else str(a)
        for x in range(g.size):
            out.append(f"{an}.{g.names[x] if g.names else x}")
    return tuple(out)


def build_strong_sdl(fam: GroupComponentFamily, isos: IsoFamily,
                     flavor: Flavor = Flavor.LEFT, *, self_check: bool = True) -> SemiringTable:
    """Tables of the strong distributive lattice of group semirings.

    Raises :class:`InvalidFamilyError` before building anything if ``isos``
    fails validation.  ``self_check=False`` skips the final exhaustive
    semiring check and exists only for benchmarking.
    """
    report = validate_iso_family(fam, isos)
    if not report:
        raise InvalidFamilyError(report)
    psi = derive_psi(isos)
    D, G = fam.lattice, fam.components
    offsets = layout(fam)
    labeling = [(a, x) for a, g in enumerate(G) for x in range(g.size)]
    n = len(labeling)
    mul = [[0] * n for _ in range(n)]
    add = [[0] * n for _ in range(n)]
    for i, (a, x) in enumerate(labeling):
        for j, (b, y) in enumerate(labeling):
            m = D.meet(a, b)
            mul[i][j] = offsets[m] + G[m].mul(isos[a, m](x), isos[b, m](y))
            s = D.join(a, b)
            if flavor is Flavor.LEFT:
                add[i][j] = offsets[s] + psi[a, s](x)
            else:
                add[i][j] = offsets[s] + psi[b, s](y)
    out = SemiringTable(BinaryOpTable(add), BinaryOpTable(mul), tuple(labeling),
                        element_names(fam))
    if self_check:
        res = check_semiring(out.add, out.mul)
        if not res:
            raise SelfCheckError(f"{res.reason} at {res.witness}")
    return out


def constant_family(lattice: FiniteDistributiveLattice,
                    group: FiniteGroup) -> tuple[GroupComponentFamily, IsoFamily]:
    """Every component is ``group`` and every connecting map is the identity."""
    fam = GroupComponentFamily(lattice, (group,) * lattice.size)
    isos = IsoFamily({k: HomMap.identity(group.size) for k in fam.order_pairs()})
    return fam, isos


build_free_product_example = constant_family
