"""Geometric nerves: simplicial sets of (normal) (op)lax functors [p] ~~> B.

A p-simplex is a labelling of the 2-skeleton of the standard p-simplex:
objects F_i on vertices, 1-cells F_{i,j}: Fj -> Fi on edges (i <= j),
constraint 2-cells Fhat_{i,j,k} on triangles (i <= j <= k), and unit cells
Fhat_i, subject to the tetrahedron coherence square on every i<=j<=k<=l and
the two unit diagrams on every i<=j.  Lax triangles run
F_{i,j} o F_{j,k} => F_{i,k}; oplax ones are reversed.  Normal variants
force F_{i,i} = 1, unit cells identities, and the degenerate triangles to
the unit constraints.

Simplices are keyed by their full data tuple; operators act by reindexing
along the cosimplicial generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..bicat import Bicategory
from ..horns import coskeletal_check
from ..report import Budget, CheckReport
from ..simplicial import SSet, sset_from_functions, sset_relabel
from ..util import canon_sorted

VARIANTS = ("lax", "normal-lax", "oplax", "normal-oplax")
ALIASES = {
    "delta": "lax", "delta-u": "normal-lax",
    "nabla": "oplax", "nabla-u": "normal-oplax",
}


def resolve_variant(name: str) -> str:
    v = ALIASES.get(name, name)
    if v not in VARIANTS:
        raise ValueError(f"unknown nerve variant {name!r}")
    return v


def _pairs(p: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(p + 1) for j in range(i, p + 1)]


def _strict_pairs(p: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(p + 1) for j in range(i + 1, p + 1)]


def _triples(p: int) -> list[tuple[int, int, int]]:
    return [(i, j, k) for i in range(p + 1) for j in range(i, p + 1) for k in range(j, p + 1)]


def gs_key(objs: tuple, edge: dict, tri: dict, unit: dict) -> tuple:
    p = len(objs) - 1
    return ("gs", objs,
            tuple(edge[ij] for ij in _pairs(p)),
            tuple(tri[ijk] for ijk in _triples(p)),
            tuple(unit[i] for i in range(p + 1)))


def gs_unpack(key: tuple) -> tuple[tuple, dict, dict, dict]:
    _, objs, edges, tris, units = key
    p = len(objs) - 1
    edge = dict(zip(_pairs(p), edges))
    tri = dict(zip(_triples(p), tris))
    unit = dict(enumerate(units))
    return objs, edge, tri, unit


def gs_dim(key: tuple) -> int:
    return len(key[1]) - 1


def gs_reindex(key: tuple, m: tuple[int, ...]) -> tuple:
    """Restriction along the monotone map m: [q] -> [p] (composition F . m)."""
    objs, edge, tri, unit = gs_unpack(key)
    new_objs = tuple(objs[mi] for mi in m)
    q = len(m) - 1
    new_edge = {(i, j): edge[(m[i], m[j])] for (i, j) in _pairs(q)}
    new_tri = {(i, j, k): tri[(m[i], m[j], m[k])] for (i, j, k) in _triples(q)}
    new_unit = {i: unit[m[i]] for i in range(q + 1)}
    return gs_key(new_objs, new_edge, new_tri, new_unit)


def face_map(p: int, i: int) -> tuple[int, ...]:
    """The coface d^i: [p-1] -> [p], omitting i."""
    return tuple(v if v < i else v + 1 for v in range(p))


def degeneracy_map(p: int, i: int) -> tuple[int, ...]:
    """The codegeneracy s^i: [p+1] -> [p], repeating i."""
    return tuple(v if v <= i else v - 1 for v in range(p + 2))


def _tetra_ok(b: Bicategory, lax: bool, edge, tri, q: tuple[int, int, int, int]) -> bool:
    i, j, k, l = q
    e_ij, e_jk, e_kl = edge[(i, j)], edge[(j, k)], edge[(k, l)]
    a = b.assoc[(e_ij, e_jk, e_kl)]
    if lax:
        lhs = b.vert(b.hc2(b.vid[e_ij], tri[(j, k, l)]), tri[(i, j, l)])
        rhs = b.vert(a, b.hc2(tri[(i, j, k)], b.vid[e_kl]), tri[(i, k, l)])
    else:
        lhs = b.vert(tri[(i, j, l)], b.hc2(b.vid[e_ij], tri[(j, k, l)]), a)
        rhs = b.vert(tri[(i, k, l)], b.hc2(tri[(i, j, k)], b.vid[e_kl]))
    return lhs == rhs


def _unit_r_ok(b: Bicategory, lax: bool, edge, tri, unit, i: int, j: int) -> bool:
    e = edge[(i, j)]
    if lax:
        return b.vert(b.hc2(b.vid[e], unit[j]), tri[(i, j, j)]) == b.runit[e]
    return b.vert(tri[(i, j, j)], b.hc2(b.vid[e], unit[j]), b.runit[e]) == b.vid[e]


def _unit_l_ok(b: Bicategory, lax: bool, edge, tri, unit, i: int, j: int) -> bool:
    e = edge[(i, j)]
    if lax:
        return b.vert(b.hc2(unit[i], b.vid[e]), tri[(i, i, j)]) == b.lunit[e]
    return b.vert(tri[(i, i, j)], b.hc2(unit[i], b.vid[e]), b.lunit[e]) == b.vid[e]


def validate_geometric_simplex(b: Bicategory, variant: str, key: tuple) -> CheckReport:
    variant = resolve_variant(variant)
    lax = variant in ("lax", "normal-lax")
    normal = variant.startswith("normal")
    rep = CheckReport(subject=f"{variant} geometric simplex")
    objs, edge, tri, unit = gs_unpack(key)
    p = len(objs) - 1

    for (i, j), e in edge.items():
        if b.one_cells.get(e) != (objs[j], objs[i]):
            rep.add("edge-endpoints", (i, j), kind="structural")
    if rep.structural():
        return rep
    for i in range(p + 1):
        want = (b.id1[objs[i]], edge[(i, i)]) if lax else (edge[(i, i)], b.id1[objs[i]])
        if b.two_cells.get(unit[i]) != want:
            rep.add("unit-cell-endpoints", (i,), kind="structural")
    for (i, j, k), t in tri.items():
        comp = b.hc1(edge[(i, j)], edge[(j, k)])
        want = (comp, edge[(i, k)]) if lax else (edge[(i, k)], comp)
        if b.two_cells.get(t) != want:
            rep.add("triangle-endpoints", (i, j, k), kind="structural")
    if rep.structural():
        return rep

    if normal:
        for i in range(p + 1):
            if edge[(i, i)] != b.id1[objs[i]]:
                rep.add("normal-diagonal-edge", (i,))
            if unit[i] != b.vid[b.id1[objs[i]]]:
                rep.add("normal-unit-cell", (i,))

    for q in [(i, j, k, l) for i in range(p + 1) for j in range(i, p + 1)
              for k in range(j, p + 1) for l in range(k, p + 1)]:
        rep.checked += 1
        if not _tetra_ok(b, lax, edge, tri, q):
            rep.add("tetrahedron", q)
    for (i, j) in _pairs(p):
        rep.checked += 1
        if not _unit_r_ok(b, lax, edge, tri, unit, i, j):
            rep.add("right-unit-diagram", (i, j))
        if not _unit_l_ok(b, lax, edge, tri, unit, i, j):
            rep.add("left-unit-diagram", (i, j))
    return rep


def _enumerate_level(b: Bicategory, variant: str, p: int, budget: Budget) -> list[tuple]:
    lax = variant in ("lax", "normal-lax")
    normal = variant.startswith("normal")
    out: list[tuple] = []
    spairs = _strict_pairs(p)
    tris = _triples(p)

    # checks runnable as soon as triangle T is assigned (T lex-maximal)
    tetra_after = {t: [] for t in tris}
    for i in range(p + 1):
        for j in range(i, p + 1):
            for k in range(j, p + 1):
                for l in range(k, p + 1):
                    tetra_after[(j, k, l)].append((i, j, k, l))

    def tri_candidates(edge, unit, t):
        i, j, k = t
        comp = b.hc1(edge[(i, j)], edge[(j, k)])
        src, tgt = (comp, edge[(i, k)]) if lax else (edge[(i, k)], comp)
        if normal:
            # degenerate triangles are forced to the unit constraints
            if i == j:
                c = b.lunit[edge[(i, k)]] if lax else b.inv2(b.lunit[edge[(i, k)]])
                return [c]
            if j == k:
                c = b.runit[edge[(i, j)]] if lax else b.inv2(b.runit[edge[(i, j)]])
                return [c]
        return list(b.cells2_between(src, tgt))

    def solve_tris(edge, unit):
        tri: dict = {}

        def rec(idx: int):
            if idx == len(tris):
                out.append(gs_key(objs, edge, tri, unit))
                return
            t = tris[idx]
            i, j, k = t
            for c in tri_candidates(edge, unit, t):
                budget.tick()
                tri[t] = c
                ok = all(_tetra_ok(b, lax, edge, tri, q) for q in tetra_after[t]
                         if all(tt in tri for tt in
                                ((q[0], q[1], q[2]), (q[0], q[1], q[3]), (q[0], q[2], q[3]))))
                if ok and i == j:
                    ok = _unit_l_ok(b, lax, edge, tri, unit, i, k)
                if ok and j == k:
                    ok = _unit_r_ok(b, lax, edge, tri, unit, i, j)
                if ok:
                    rec(idx + 1)
                del tri[t]

        rec(0)

    def solve_units(edge):
        if normal:
            solve_tris(edge, {i: b.vid[b.id1[objs[i]]] for i in range(p + 1)})
            return
        slots = []
        for i in range(p + 1):
            src, tgt = (b.id1[objs[i]], edge[(i, i)]) if lax else (edge[(i, i)], b.id1[objs[i]])
            slots.append(b.cells2_between(src, tgt))
        for choice in product(*slots):
            budget.tick()
            solve_tris(edge, dict(enumerate(choice)))

    def solve_edges():
        edge: dict = {}

        def rec(idx: int, slots):
            if idx == len(slots):
                solve_units(dict(edge))
                return
            (i, j) = slots[idx]
            for u in b.one_cells:
                if b.one_cells[u] != (objs[j], objs[i]):
                    continue
                budget.tick()
                edge[(i, j)] = u
                rec(idx + 1, slots)
                del edge[(i, j)]

        if normal:
            for i in range(p + 1):
                edge[(i, i)] = b.id1[objs[i]]
            rec(0, spairs)
        else:
            rec(0, _pairs(p))

    for objs in product(*([tuple(canon_sorted(b.objects))] * (p + 1))):
        budget.tick()
        solve_edges()
    return out


@dataclass
class GeometricNerve:
    b: Bicategory
    variant: str
    bound: int
    sset: SSet

    def simplex(self, key: tuple):
        return gs_unpack(key)


def geometric_nerve(b: Bicategory, variant: str, n: int, budget: Budget | None = None) -> GeometricNerve:
    variant = resolve_variant(variant)
    budget = budget or Budget()
    levels = {p: _enumerate_level(b, variant, p, budget) for p in range(n + 1)}
    level_sets = {p: set(levels[p]) for p in levels}

    def face(p, i, key):
        out = gs_reindex(key, face_map(p, i))
        assert out in level_sets[p - 1], "face left the enumerated nerve"
        return out

    def degen(p, i, key):
        out = gs_reindex(key, degeneracy_map(p, i))
        assert out in level_sets[p + 1], "degeneracy left the enumerated nerve"
        return out

    return GeometricNerve(b, variant, n, sset_from_functions(n, levels, face, degen))


def edge_string_relabel(gn: GeometricNerve) -> SSet:
    """Relabel simplices by vertex (p = 0) or consecutive-edge strings.

    This is the canonical identification Delta C ~ N C; it is injective for
    discrete bicategories, where the relabelled nerve equals the classical
    nerve of the underlying category on the nose.
    """

    def key_fn(p, key):
        objs, edge, _, _ = gs_unpack(key)
        if p == 0:
            return objs[0]
        return tuple(edge[(i, i + 1)] for i in range(p))

    return sset_relabel(gn.sset, key_fn)


def nerve_coskeletal_check(b: Bicategory, variant: str, n: int,
                           nerve: GeometricNerve | None = None,
                           budget: Budget | None = None) -> CheckReport:
    """Boundary determinacy for p >= 3 and boundary fillability for p >= 4."""
    gn = nerve if nerve is not None else geometric_nerve(b, variant, n, budget)
    rep = coskeletal_check(gn.sset, determinacy_from=3, fillability_from=4, budget=budget)
    rep.subject = f"coskeletality of {resolve_variant(variant)} nerve"
    return rep
