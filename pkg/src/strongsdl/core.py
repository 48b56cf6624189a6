"""Finite binary operations as Cayley tables, plus exhaustive law checkers.

Elements are dense indices ``0..n-1``.  Every checker returns a
:class:`CheckResult` carrying the lexicographically first counterexample,
so results are deterministic and easy to assert on.  Only malformed
tables (ragged, out of range, mismatched sizes) raise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np


class MalformedTableError(ValueError):
    """A table is not square, is empty, or has an entry out of range."""


class SizeMismatchError(ValueError):
    """Two structures that must share a carrier do not."""


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive check.

    Truthy iff the check passed.  ``witness`` is the first failing tuple,
    ``value`` carries whatever the check constructed on success (a group,
    a lattice, ...).
    """

    ok: bool
    reason: str = ""
    witness: Any = None
    value: Any = None

    def __bool__(self) -> bool:
        return self.ok


def passed(value: Any = None) -> CheckResult:
    return CheckResult(True, value=value)


def failed(reason: str, witness: Any = None) -> CheckResult:
    return CheckResult(False, reason, witness)


@dataclass(frozen=True, eq=False)
class BinaryOpTable:
    """An ``n x n`` operation table; ``table[x, y]`` is the product ``xy``."""

    table: np.ndarray

    def __init__(self, rows: Sequence[Sequence[int]] | np.ndarray):
        try:
            arr = np.array(rows, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise MalformedTableError(f"table is not rectangular: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise MalformedTableError(f"table must be square, got shape {arr.shape}")
        n = arr.shape[0]
        if n < 1:
            raise MalformedTableError("table must have at least one element")
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            x, y = map(int, bad[0])
            raise MalformedTableError(f"entry ({x},{y}) = {arr[x, y]} outside [0, {n})")
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryOpTable):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"BinaryOpTable({self.table.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.table.tolist()

    def restrict(self, elements: Sequence[int]) -> BinaryOpTable:
        """Restriction to a closed subset, reindexed by position in ``elements``."""
        pos = {e: i for i, e in enumerate(elements)}
        sub = self.table[np.ix_(elements, elements)]
        try:
            return BinaryOpTable([[pos[int(v)] for v in row] for row in sub])
        except KeyError as exc:
            raise MalformedTableError(f"subset not closed: produces {exc.args[0]}") from None


@dataclass(frozen=True, eq=False)
class HomMap:
    """A total map between carriers of sizes ``source_size`` and ``target_size``."""

    source_size: int
    target_size: int
    map: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.map)
        object.__setattr__(self, "map", m)
        if len(m) != self.source_size:
            raise SizeMismatchError(f"map has {len(m)} entries, source has {self.source_size}")
        for i, v in enumerate(m):
            if not 0 <= v < self.target_size:
                raise MalformedTableError(f"map[{i}] = {v} outside [0, {self.target_size})")

    @classmethod
    def of(cls, values: Iterable[int], target_size: int | None = None) -> HomMap:
        vals = tuple(int(v) for v in values)
        return cls(len(vals), len(vals) if target_size is None else target_size, vals)

    @classmethod
    def identity(cls, n: int) -> HomMap:
        return cls(n, n, tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomMap):
            return NotImplemented
        return (self.source_size, self.target_size, self.map) == (
            other.source_size, other.target_size, other.map)

    def __hash__(self) -> int:
        return hash((self.source_size, self.target_size, self.map))

    def __repr__(self) -> str:
        return f"HomMap({list(self.map)} -> {self.target_size})"

    def then(self, other: HomMap) -> HomMap:
        """Apply ``self`` first, then ``other`` (maps act on the right)."""
        if self.target_size != other.source_size:
            raise SizeMismatchError("cannot compose: target/source sizes differ")
        return HomMap(self.source_size, other.target_size,
                      tuple(other.map[v] for v in self.map))

    def is_bijective(self) -> bool:
        return self.source_size == self.target_size and len(set(self.map)) == self.source_size

    def inverse(self) -> HomMap:
        if not self.is_bijective():
            raise ValueError("map is not a bijection")
        inv = [0] * self.source_size
        for x, v in enumerate(self.map):
            inv[v] = x
        return HomMap(self.target_size, self.source_size, tuple(inv))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    op: BinaryOpTable
    identity: int
    inverse: tuple[int, ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.op.size

    def mul(self, x: int, y: int) -> int:
        return self.op(x, y)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.op == other.op

    def __hash__(self) -> int:
        return hash(self.op)


@dataclass(frozen=True, eq=False)
class FiniteDistributiveLattice:
    """Join and meet over a shared carrier; ``b <= a`` iff ``meet(a, b) == b``."""

    join: BinaryOpTable
    meet: BinaryOpTable
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.join.size != self.meet.size:
            raise SizeMismatchError("join and meet tables differ in size")

    @property
    def size(self) -> int:
        return self.join.size

    def leq(self, b: int, a: int) -> bool:
        return self.meet(a, b) == b

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteDistributiveLattice):
            return NotImplemented
        return self.join == other.join and self.meet == other.meet

    def __hash__(self) -> int:
        return hash((self.join, self.meet))

    @property
    def bottom(self) -> int:
        b = 0
        for x in range(1, self.size):
            b = self.meet(b, x)
        return b

    @property
    def top(self) -> int:
        t = 0
        for x in range(1, self.size):
            t = self.join(t, x)
        return t


def as_table(op) -> BinaryOpTable:
    return op if isinstance(op, BinaryOpTable) else BinaryOpTable(op)


def _first(mask: np.ndarray):
    hit = np.argwhere(mask)
    return tuple(int(v) for v in hit[0]) if len(hit) else None


def check_associative(op) -> CheckResult:
    """``(xy)z == x(yz)`` over all n^3 triples."""
    t = as_table(op).table
    n = t.shape[0]
    left = t[t, :]                       # left[x, y, z] = (xy)z
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # x(yz)
    w = _first(left != right)
    return failed("not associative", w) if w else passed()


def find_identity(op) -> int | None:
    t = as_table(op).table
    n = t.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            return e
    return None


def check_group(op) -> CheckResult:
    """Locate identity and inverses; ``value`` is the :class:`FiniteGroup`."""
    op = as_table(op)
    res = check_associative(op)
    if not res:
        return res
    e = find_identity(op)
    if e is None:
        return failed("no identity")
    t = op.table
    inverse = []
    for x in range(op.size):
        cands = np.flatnonzero((t[x] == e) & (t[:, x] == e))
        if not len(cands):
            return failed("element without inverse", x)
        inverse.append(int(cands[0]))
    return passed(FiniteGroup(op, e, tuple(inverse)))


def _first_triple(pred, n: int):
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not pred(x, y, z):
                    return (x, y, z)
    return None


def check_distributive_lattice(join, meet, names=None) -> CheckResult:
    """Exhaustively check every lattice law; ``value`` is the lattice."""
    join, meet = as_table(join), as_table(meet)
    if join.size != meet.size:
        raise SizeMismatchError(f"join has {join.size} elements, meet has {meet.size}")
    n = join.size
    J, M = join.table, meet.table
    for name, t in (("join", join), ("meet", meet)):
        res = check_associative(t)
        if not res:
            return failed(f"{name} not associative", res.witness)
        w = _first(t.table != t.table.T)
        if w:
            return failed(f"{name} not commutative", w)
        d = np.diagonal(t.table)
        w = _first(d != np.arange(n))
        if w:
            return failed(f"{name} not idempotent", w[0])
    idx = np.arange(n)
    w = _first(J[idx[:, None], M] != idx[:, None])
    if w:
        return failed("absorption a+(ab)=a violated", w)
    w = _first(M[idx[:, None], J] != idx[:, None])
    if w:
        return failed("absorption a(a+b)=a violated", w)
    # a(b+c) vs ab+ac over all triples
    lhs = M[idx[:, None, None], J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    w = _first(lhs != rhs)
    if w:
        return failed("distributivity violated", w)
    # order from meet agrees with order from join
    w = _first((M == idx[None, :]) != (J == idx[:, None]))
    if w:
        return failed("meet order and join order disagree", w)
    return passed(FiniteDistributiveLattice(join, meet, names))


def partial_order(lattice: FiniteDistributiveLattice) -> frozenset[tuple[int, int]]:
    """Pairs ``(b, a)`` with ``b <= a``."""
    n = lattice.size
    return frozenset((b, a) for a in range(n) for b in range(n) if lattice.meet(a, b) == b)


def partial_order_from_join(lattice: FiniteDistributiveLattice) -> frozenset[tuple[int, int]]:
    n = lattice.size
    return frozenset((b, a) for a in range(n) for b in range(n) if lattice.join(a, b) == a)


def is_homomorphism(f: HomMap, src, dst) -> CheckResult:
    """``f(xy) == f(x)f(y)`` for all pairs; witness is the first failing pair."""
    src, dst = as_table(src), as_table(dst)
    if f.source_size != src.size or f.target_size != dst.size:
        raise SizeMismatchError(
            f"map {f.source_size}->{f.target_size} vs tables {src.size}->{dst.size}")
    m = np.array(f.map)
    w = _first(m[src.table] != dst.table[m[:, None], m[None, :]])
    return failed("not a homomorphism", w) if w else passed()


def is_semiring_homomorphism(f: HomMap, src_add, src_mul, dst_add, dst_mul) -> CheckResult:
    res = is_homomorphism(f, src_add, dst_add)
    if not res:
        return failed("does not preserve addition", res.witness)
    res = is_homomorphism(f, src_mul, dst_mul)
    if not res:
        return failed("does not preserve multiplication", res.witness)
    return passed()


def is_group_isomorphism(f: HomMap, src: FiniteGroup, dst: FiniteGroup) -> CheckResult:
    if not f.is_bijective():
        return failed("not a bijection")
    res = is_homomorphism(f, src.op, dst.op)
    return res if not res else passed()


def check_semiring(add, mul) -> CheckResult:
    """Both associativities and both distributive laws, first failure reported."""
    add, mul = as_table(add), as_table(mul)
    if add.size != mul.size:
        raise SizeMismatchError(f"add has {add.size} elements, mul has {mul.size}")
    for name, t in (("addition", add), ("multiplication", mul)):
        res = check_associative(t)
        if not res:
            return failed(f"{name} not associative", res.witness)
    A, M = add.table, mul.table
    n = add.size
    x = np.arange(n)[:, None, None]
    # x(y+z) vs xy+xz
    w = _first(M[x, A[None, :, :]] != A[M[:, :, None], M[:, None, :]])
    if w:
        return failed("left distributivity x(y+z)=xy+xz violated", w)
    # (x+y)z vs xz+yz
    w = _first(M[A[:, :, None], x.reshape(1, 1, n)] != A[M[:, None, :], M[None, :, :]])
    if w:
        return failed("right distributivity (x+y)z=xz+yz violated", w)
    return passed()
