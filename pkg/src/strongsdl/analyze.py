"""Decompose an arbitrary finite semiring and test it for strong structure.

The pipeline in :func:`full_analysis` runs, in order: semiring axioms,
multiplicative idempotents, the idempotent sublattice, Clifford test on
``(S, *)``, normal-band tests on ``(S, +)``, H-class decomposition,
component closure, and recovery of the connecting maps

    phi[(a, b)](x) = x * e_b          psi[(b, a)](y) = y + e_a

for ``b <= a``.  A stage whose prerequisites failed is left as ``None``
(not evaluated) rather than reported as false.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    BinaryOpTable,
    CheckResult,
    FiniteDistributiveLattice,
    HomMap,
    as_table,
    check_associative,
    check_distributive_lattice,
    check_group,
    check_semiring,
    failed,
    is_group_isomorphism,
    passed,
)
from .group_semiring import Flavor
from .sdl import (
    GroupComponentFamily,
    IsoFamily,
    SemiringTable,
    check_compatibility,
    check_psi_family,
    derive_psi,
    validate_iso_family,
)

__all__ = [
    "AnalysisReport", "Recovery", "check_semiring", "multiplicative_idempotents",
    "idempotent_subsemiring", "green_classes", "h_class", "is_clifford",
    "is_clifford_by_regularity", "is_band", "is_left_normal_band", "is_right_normal_band",
    "is_normal_band", "decompose_components", "component_closure",
    "recover_connecting_maps", "component_isomorphisms", "lattice_isomorphism",
    "full_analysis", "stronglattice_suite", "roundtrip",
]


def multiplicative_idempotents(mul) -> tuple[int, ...]:
    t = as_table(mul).table
    return tuple(int(x) for x in np.flatnonzero(np.diagonal(t) == np.arange(t.shape[0])))


def idempotent_subsemiring(add, mul, E: Sequence[int]) -> CheckResult:
    """Close ``E`` under both operations and test it as a distributive lattice.

    ``value`` is the lattice on positions ``0..len(E)-1``, join = ``add``
    and meet = ``mul`` restricted.
    """
    add, mul = as_table(add), as_table(mul)
    E = tuple(E)
    members = set(E)
    if not E:
        return failed("no idempotents")
    for name, t in (("addition", add), ("multiplication", mul)):
        for x in E:
            for y in E:
                if t(x, y) not in members:
                    return failed(f"E(S) not closed under {name}", (x, y))
    res = check_distributive_lattice(add.restrict(E), mul.restrict(E))
    if not res:
        return failed(f"E(S) is not a distributive lattice: {res.reason}",
                      _lift_witness(res.witness, E))
    return res


def _lift_witness(w, E):
    if w is None:
        return None
    if isinstance(w, tuple):
        return tuple(E[i] for i in w)
    return E[w]


def green_classes(mul) -> tuple[list[frozenset], list[frozenset]]:
    """Principal right ideals ``xS^1`` and left ideals ``S^1x`` of every element."""
    t = as_table(mul).table
    n = t.shape[0]
    R = [frozenset(t[x].tolist()) | {x} for x in range(n)]
    L = [frozenset(t[:, x].tolist()) | {x} for x in range(n)]
    return R, L


def h_class(mul, x: int, _ideals=None) -> tuple[int, ...]:
    R, L = _ideals or green_classes(mul)
    return tuple(y for y in range(len(R)) if R[y] == R[x] and L[y] == L[x])


def is_clifford(mul) -> CheckResult:
    """Every H-class holds an idempotent and idempotents are central.

    Witness is the element whose H-class has no idempotent, or the first
    ``(e, x)`` with ``ex != xe``.
    """
    mul = as_table(mul)
    if not check_associative(mul):
        return failed("not associative")
    E = set(multiplicative_idempotents(mul))
    ideals = green_classes(mul)
    for x in range(mul.size):
        if not E.intersection(h_class(mul, x, ideals)):
            return failed("element not in a subgroup", x)
    for e in sorted(E):
        for x in range(mul.size):
            if mul(e, x) != mul(x, e):
                return failed("idempotent not central", (e, x))
    return passed()


def is_clifford_by_regularity(mul) -> CheckResult:
    """Independent definition: each ``x = xyx`` for some ``y`` commuting with it,
    plus central idempotents."""
    mul = as_table(mul)
    if not check_associative(mul):
        return failed("not associative")
    n = mul.size
    for x in range(n):
        if not any(mul(x, y) == mul(y, x) and mul(mul(x, y), x) == x for y in range(n)):
            return failed("not completely regular", x)
    for e in range(n):
        if mul(e, e) != e:
            continue
        for x in range(n):
            if mul(e, x) != mul(x, e):
                return failed("idempotent not central", (e, x))
    return passed()


def is_band(add) -> CheckResult:
    add = as_table(add)
    res = check_associative(add)
    if not res:
        return failed("not associative", res.witness)
    for x in range(add.size):
        if add(x, x) != x:
            return failed("not idempotent", x)
    return passed()


def _triples(add, lhs, rhs, reason) -> CheckResult:
    res = is_band(add)
    if not res:
        return res
    A = as_table(add).table
    w = np.argwhere(lhs(A) != rhs(A))
    if len(w):
        return failed(reason, tuple(int(v) for v in w[0]))
    return passed()


def is_left_normal_band(add) -> CheckResult:
    """``x+x = x`` and ``x+y+z = x+z+y``."""
    return _triples(add, lambda A: A[A[:, :, None], np.arange(len(A))[None, None, :]],
                    lambda A: A[A[:, None, :], np.arange(len(A))[None, :, None]],
                    "x+y+z != x+z+y")


def is_right_normal_band(add) -> CheckResult:
    """``x+x = x`` and ``x+y+z = y+x+z``."""
    return _triples(add, lambda A: A[A[:, :, None], np.arange(len(A))[None, None, :]],
                    lambda A: A[A.T[:, :, None], np.arange(len(A))[None, None, :]],
                    "x+y+z != y+x+z")


def is_normal_band(add) -> CheckResult:
    """``x+x = x`` and ``x+y+z+w = x+z+y+w``."""
    res = is_band(add)
    if not res:
        return res
    A = as_table(add).table
    n = len(A)
    xyz = A[A[:, :, None], np.arange(n)[None, None, :]]
    xzy = xyz.transpose(0, 2, 1)
    w = np.argwhere(A[xyz[..., None], np.arange(n)] != A[xzy[..., None], np.arange(n)])
    if len(w):
        return failed("x+y+z+w != x+z+y+w", tuple(int(v) for v in w[0]))
    return passed()


def decompose_components(mul) -> dict[int, tuple[int, ...]]:
    """Map each idempotent to its H-class.  Requires a Clifford semigroup."""
    mul = as_table(mul)
    res = is_clifford(mul)
    if not res:
        raise ValueError(f"not a Clifford semigroup: {res.reason} at {res.witness}")
    ideals = green_classes(mul)
    return {e: h_class(mul, e, ideals) for e in multiplicative_idempotents(mul)}


def component_closure(add, mul, components: dict[int, tuple[int, ...]]) -> CheckResult:
    """``x*y`` lies in the component of ``e_x*e_y`` and ``x+y`` in that of ``e_x+e_y``."""
    add, mul = as_table(add), as_table(mul)
    owner = {x: e for e, comp in components.items() for x in comp}
    n = add.size
    for x in range(n):
        for y in range(n):
            ex, ey = owner[x], owner[y]
            if owner[mul(x, y)] != mul(ex, ey):
                return failed("product leaves the meet component", (x, y))
            if owner[add(x, y)] != add(ex, ey):
                return failed("sum leaves the join component", (x, y))
    return passed()


@dataclass(frozen=True)
class Recovery:
    """Connecting maps read off a semiring, indexed by idempotent-lattice positions."""

    family: GroupComponentFamily
    elements: tuple[tuple[int, ...], ...]   # elements[a][i] is the carrier element
    phi: IsoFamily | None
    psi: IsoFamily | None
    result: CheckResult


def recover_connecting_maps(semiring: SemiringTable, components: dict[int, tuple[int, ...]],
                            lattice: FiniteDistributiveLattice,
                            flavor: Flavor = Flavor.LEFT) -> Recovery:
    """Read ``phi`` and ``psi`` off the tables and decide whether they present
    the semiring as a strong distributive lattice of group semirings.

    ``lattice`` is the idempotent lattice whose position ``a`` is the
    ``a``-th smallest idempotent.
    """
    add, mul = semiring.add, semiring.mul
    idem = sorted(components)
    elements = tuple(components[e] for e in idem)
    pos = [{x: i for i, x in enumerate(comp)} for comp in elements]
    groups = []
    for comp in elements:
        res = check_group(mul.restrict(comp))
        if not res:
            raise ValueError(f"component {comp} is not a group: {res.reason}")
        groups.append(res.value)
    fam = GroupComponentFamily(lattice, tuple(groups))

    def read(op, a, b, side):
        e = idem[b]
        out = []
        for x in elements[a]:
            v = op(x, e) if side == "right" else op(e, x)
            if v not in pos[b]:
                return None, x
            out.append(pos[b][v])
        return HomMap(len(elements[a]), len(elements[b]), tuple(out)), None

    phi, psi = {}, {}
    for a, b in fam.order_pairs():
        f, bad = read(mul, a, b, "right")
        if f is None:
            return Recovery(fam, elements, None, None,
                            failed("x*e_b leaves component b", (bad, idem[b])))
        phi[a, b] = f
        g, bad = read(add, b, a, "right" if flavor is Flavor.LEFT else "left")
        if g is None:
            return Recovery(fam, elements, None, None,
                            failed("y+e_a leaves component a", (bad, idem[a])))
        psi[b, a] = g
    phi, psi = IsoFamily(phi), IsoFamily(psi)

    report = validate_iso_family(fam, phi)
    if not report:
        p = report.problems[0]
        return Recovery(fam, elements, phi, psi, failed(f"recovered phi: {p.clause}", p.where))
    for (b, a), g in psi.maps.items():
        back = phi[a, b].then(g)
        if back != HomMap.identity(fam.components[a].size):
            return Recovery(fam, elements, phi, psi,
                            failed("psi[b,a] is not the inverse of phi[a,b]", (a, b)))
    D, G = lattice, fam.components
    for a, A in enumerate(elements):
        for b, B in enumerate(elements):
            m, s = D.meet(a, b), D.join(a, b)
            for i, x in enumerate(A):
                for j, y in enumerate(B):
                    if mul(x, y) != elements[m][G[m].mul(phi[a, m](i), phi[b, m](j))]:
                        return Recovery(fam, elements, phi, psi,
                                        failed("product does not factor through phi", (x, y)))
                    want = psi[a, s](i) if flavor is Flavor.LEFT else psi[b, s](j)
                    if add(x, y) != elements[s][want]:
                        return Recovery(fam, elements, phi, psi,
                                        failed("sum does not factor through psi", (x, y)))
    return Recovery(fam, elements, phi, psi, passed())


def component_isomorphisms(rec: Recovery) -> dict[tuple[int, int], HomMap]:
    """Isomorphism ``G_a -> G_b`` for every pair, routed up to ``a+b`` and back down."""
    D = rec.family.lattice
    out = {}
    for a in range(D.size):
        for b in range(D.size):
            s = D.join(a, b)
            out[a, b] = rec.psi[a, s].then(rec.phi[s, b])
    return out


def lattice_isomorphism(a: FiniteDistributiveLattice,
                        b: FiniteDistributiveLattice) -> tuple[int, ...] | None:
    """A join- and meet-preserving bijection ``a -> b`` by backtracking, or ``None``."""
    n = a.size
    if n != b.size:
        return None
    from .core import partial_order
    if len(partial_order(a)) != len(partial_order(b)):
        return None
    down_a = [sum(a.leq(y, x) for y in range(n)) for x in range(n)]
    down_b = [sum(b.leq(y, x) for y in range(n)) for x in range(n)]
    f = [-1] * n
    used = [False] * n

    def consistent(k):
        for u in range(k + 1):
            for v in range(k + 1):
                for opa, opb in ((a.join, b.join), (a.meet, b.meet)):
                    w = opa(u, v)
                    if w <= k and f[w] != opb(f[u], f[v]):
                        return False
        return True

    def search(k):
        if k == n:
            return True
        for t in range(n):
            if used[t] or down_a[k] != down_b[t]:
                continue
            f[k], used[t] = t, True
            if consistent(k) and search(k + 1):
                return True
            f[k], used[t] = -1, False
        return False

    return tuple(f) if search(0) else None


@dataclass
class AnalysisReport:
    flavor: Flavor
    is_semiring: CheckResult
    idempotents: tuple[int, ...] | None = None
    idempotent_lattice: CheckResult | None = None
    is_clifford_mul: CheckResult | None = None
    is_left_normal_band_add: CheckResult | None = None
    is_right_normal_band_add: CheckResult | None = None
    is_normal_band_add: CheckResult | None = None
    components: dict[int, tuple[int, ...]] | None = None
    component_closure: CheckResult | None = None
    recovery: Recovery | None = field(default=None, repr=False)
    is_strong_sdl_of_group_semirings: bool | None = None

    @property
    def recovered_phi(self) -> IsoFamily | None:
        return self.recovery.phi if self.recovery else None

    @property
    def recovered_psi(self) -> IsoFamily | None:
        return self.recovery.psi if self.recovery else None

    @property
    def additive_band(self) -> CheckResult | None:
        if self.flavor is Flavor.LEFT:
            return self.is_left_normal_band_add
        return self.is_right_normal_band_add


def full_analysis(add, mul, flavor: Flavor = Flavor.LEFT) -> AnalysisReport:
    add, mul = as_table(add), as_table(mul)
    rep = AnalysisReport(flavor, check_semiring(add, mul))
    if not rep.is_semiring:
        return rep
    rep.idempotents = multiplicative_idempotents(mul)
    rep.idempotent_lattice = idempotent_subsemiring(add, mul, rep.idempotents)
    rep.is_clifford_mul = is_clifford(mul)
    rep.is_left_normal_band_add = is_left_normal_band(add)
    rep.is_right_normal_band_add = is_right_normal_band(add)
    rep.is_normal_band_add = is_normal_band(add)
    if not rep.is_clifford_mul:
        return rep
    rep.components = decompose_components(mul)
    rep.component_closure = component_closure(add, mul, rep.components)
    if not rep.idempotent_lattice:
        return rep
    if not rep.component_closure:
        rep.is_strong_sdl_of_group_semirings = False
        return rep
    rep.recovery = recover_connecting_maps(SemiringTable(add, mul), rep.components,
                                           rep.idempotent_lattice.value, flavor)
    rep.is_strong_sdl_of_group_semirings = bool(rep.recovery.result) and bool(rep.additive_band)
    return rep


def stronglattice_suite(table: SemiringTable, fam: GroupComponentFamily, phi: IsoFamily,
                        flavor: Flavor = Flavor.LEFT) -> dict[str, CheckResult]:
    """Each clause of the structure theorem for a built, labelled instance.

    ``table`` must carry the labeling produced by the builder.
    """
    if table.labeling is None:
        raise ValueError("instance needs a component labeling")
    add, mul = table.add, table.mul
    D, G = fam.lattice, fam.components
    where = {lab: i for i, lab in enumerate(table.labeling)}
    unit = [where[a, g.identity] for a, g in enumerate(G)]
    comps = [[where[a, x] for x in range(g.size)] for a, g in enumerate(G)]
    out = {}

    def clause_i():
        for a, b in fam.order_pairs():
            if mul(unit[a], unit[b]) != unit[b]:
                return failed("e_a e_b != e_b", (a, b))
            if add(unit[a], unit[b]) != unit[a]:
                return failed("e_a + e_b != e_a", (a, b))
        return passed()

    def clause_ii():
        for x in range(table.size):
            for b in range(D.size):
                vals = {add(x, y) if flavor is Flavor.LEFT else add(y, x) for y in comps[b]}
                if len(vals) != 1:
                    return failed("sum depends on the choice within a component", (x, b))
        return passed()

    def clause_iii():
        psi = derive_psi(phi)
        for a, b in fam.order_pairs():
            for x in range(G[a].size):
                if mul(comps[a][x], unit[b]) != comps[b][phi[a, b](x)]:
                    return failed("phi[a,b](x) != x e_b", (a, b, x))
            for y in range(G[b].size):
                s = (add(comps[b][y], unit[a]) if flavor is Flavor.LEFT
                     else add(unit[a], comps[b][y]))
                if s != comps[a][psi[b, a](y)]:
                    return failed("psi[b,a](y) != y + e_a", (a, b, y))
        return passed()

    rep = full_analysis(add, mul, flavor)
    rec = rep.recovery
    if rec is None or rec.phi is None:
        miss = failed("maps not recoverable")
        out.update(i=clause_i(), ii=clause_ii(), iii=clause_iii(), iv=miss, v=miss, vi=miss)
        return out

    def clause_iv():
        for a, b, c in rec.family.chains():
            if rec.phi[a, b].then(rec.phi[b, c]) != rec.phi[a, c]:
                return failed("phi[a,b] then phi[b,c] != phi[a,c]", (a, b, c))
        return passed()

    def clause_v():
        for a, b in rec.family.order_pairs():
            if not is_group_isomorphism(rec.phi[a, b], rec.family.components[a],
                                        rec.family.components[b]):
                return failed("phi[a,b] not an isomorphism", (a, b))
            if rec.phi[a, b].then(rec.psi[b, a]) != HomMap.identity(rec.phi[a, b].source_size):
                return failed("phi then psi is not the identity", (a, b))
            if rec.psi[b, a].then(rec.phi[a, b]) != HomMap.identity(rec.phi[a, b].target_size):
                return failed("psi then phi is not the identity", (a, b))
        return check_psi_family(rec.family, rec.psi)

    out.update(i=clause_i(), ii=clause_ii(), iii=clause_iii(), iv=clause_iv(), v=clause_v(),
               vi=check_compatibility(rec.family, rec.phi, rec.psi))
    return out


def roundtrip(table: SemiringTable, fam: GroupComponentFamily, phi: IsoFamily,
              flavor: Flavor = Flavor.LEFT) -> CheckResult:
    """Analyze a built instance and compare what comes back with the inputs.

    Checks the idempotent lattice against ``fam.lattice`` through
    ``a -> e_a``, component orders, and recovered maps pointwise.
    """
    rep = full_analysis(table.add, table.mul, flavor)
    if not rep.is_strong_sdl_of_group_semirings:
        return failed("not classified strong", _first_failure(rep))
    where = {lab: i for i, lab in enumerate(table.labeling)}
    G = fam.components
    unit = [where[a, g.identity] for a, g in enumerate(G)]
    rec = rep.recovery
    idem = list(rep.idempotents)
    if sorted(unit) != idem:
        return failed("idempotents differ from component identities")
    # recovered index r corresponds to lattice element a with unit[a] == idem[r]
    to_rec = [idem.index(u) for u in unit]
    D, E = fam.lattice, rec.family.lattice
    for a in range(D.size):
        for b in range(D.size):
            if to_rec[D.join(a, b)] != E.join(to_rec[a], to_rec[b]) or \
               to_rec[D.meet(a, b)] != E.meet(to_rec[a], to_rec[b]):
                return failed("a -> e_a is not a lattice isomorphism", (a, b))
    psi = derive_psi(phi)
    for a, g in enumerate(G):
        ra = to_rec[a]
        if [where[a, x] for x in range(g.size)] != list(rec.elements[ra]):
            return failed("component differs from G_a", a)
    for a, b in fam.order_pairs():
        if phi[a, b] != rec.phi[to_rec[a], to_rec[b]]:
            return failed("recovered phi differs from input", (a, b))
        if psi[b, a] != rec.psi[to_rec[b], to_rec[a]]:
            return failed("recovered psi differs from inverse of input", (b, a))
    return passed()


def _first_failure(rep: AnalysisReport):
    for name in ("is_semiring", "idempotent_lattice", "is_clifford_mul", "component_closure"):
        res = getattr(rep, name)
        if res is not None and not res:
            return name, res.reason, res.witness
    if rep.recovery is not None and not rep.recovery.result:
        return "recovery", rep.recovery.result.reason, rep.recovery.result.witness
    band = rep.additive_band
    if band is not None and not band:
        return "additive_band", band.reason, band.witness
    return None
