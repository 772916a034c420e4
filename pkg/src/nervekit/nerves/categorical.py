"""Categorical geometric nerves: simplicial categories of simplices and icons.

Level p of each family has the geometric p-simplices of the matching
variant as objects and relative-to-objects lax transformations (icons) as
arrows; the Segal family keeps only normal homomorphism simplices.  Icons
compose entrywise, operators act by strict reindexing, so the levels
assemble to a genuine simplicial object in Cat.

Composable-pair tables explode combinatorially before arrow sets do, so a
level's full FiniteCategory (with its composition table) is materialized
only below a configurable pair budget; arrows themselves are enumerated up
to ``arrow_bound`` and composed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bicat import Bicategory, LaxFunctor
from ..fincat import FiniteCategory, validate_category
from ..report import Budget, CheckReport
from ..simplicial import BisimplicialSet, bisset_from_functions
from ..util import canon_sorted
from .geometric import (
    GeometricNerve,
    _pairs,
    _triples,
    degeneracy_map,
    face_map,
    geometric_nerve,
    gs_key,
    gs_reindex,
    gs_unpack,
    resolve_variant,
)

CAT_VARIANTS = ("delta", "delta-u", "segal", "nabla", "nabla-u")
SIMPLEX_VARIANT = {
    "delta": "lax", "delta-u": "normal-lax", "segal": "normal-lax",
    "nabla": "oplax", "nabla-u": "normal-oplax",
}


def icon_key(src: tuple, tgt: tuple, comps: tuple) -> tuple:
    return ("icon", src, tgt, comps)


def _icon_cond(b: Bicategory, lax: bool, triF, triG, comp, i, j, k) -> bool:
    if lax:
        return b.vert(b.hc2(comp[(i, j)], comp[(j, k)]), triG[(i, j, k)]) == \
            b.vert(triF[(i, j, k)], comp[(i, k)])
    return b.vert(triF[(i, j, k)], b.hc2(comp[(i, j)], comp[(j, k)])) == \
        b.vert(comp[(i, k)], triG[(i, j, k)])


def _icon_unit(b: Bicategory, lax: bool, unitF, unitG, comp, i) -> bool:
    if lax:
        return b.vert(unitF[i], comp[(i, i)]) == unitG[i]
    return b.vert(comp[(i, i)], unitG[i]) == unitF[i]


def validate_icon_components(b: Bicategory, variant: str, src: tuple, tgt: tuple,
                             comps: dict) -> CheckReport:
    lax = resolve_variant(SIMPLEX_VARIANT.get(variant, variant)) in ("lax", "normal-lax")
    rep = CheckReport(subject="icon")
    objsF, edgeF, triF, unitF = gs_unpack(src)
    objsG, edgeG, triG, unitG = gs_unpack(tgt)
    if objsF != objsG:
        rep.add("objects-differ", (), kind="structural")
        return rep
    p = len(objsF) - 1
    for ij in _pairs(p):
        c = comps.get(ij)
        if c is None or b.two_cells.get(c) != (edgeF[ij], edgeG[ij]):
            rep.add("component-endpoints", ij, kind="structural")
    if rep.structural():
        return rep
    for (i, j, k) in _triples(p):
        rep.checked += 1
        if not _icon_cond(b, lax, triF, triG, comps, i, j, k):
            rep.add("icon-compatibility", (i, j, k))
    for i in range(p + 1):
        rep.checked += 1
        if not _icon_unit(b, lax, unitF, unitG, comps, i):
            rep.add("icon-unit-compatibility", (i,))
    return rep


def icons_between(b: Bicategory, lax: bool, src: tuple, tgt: tuple,
                  budget: Budget | None = None) -> list[tuple]:
    """All icon component tuples src => tgt, by backtracking over the pair
    lattice with the compatibility equations as pruning constraints."""
    budget = budget or Budget()
    objsF, edgeF, triF, unitF = gs_unpack(src)
    objsG, edgeG, triG, unitG = gs_unpack(tgt)
    if objsF != objsG:
        return []
    p = len(objsF) - 1
    pairs = _pairs(p)
    out: list[tuple] = []
    comp: dict = {}

    def rec(idx: int):
        if idx == len(pairs):
            out.append(tuple(comp[ij] for ij in pairs))
            return
        (a_, b_) = pairs[idx]
        for c in b.cells2_between(edgeF[(a_, b_)], edgeG[(a_, b_)]):
            budget.tick()
            comp[(a_, b_)] = c
            ok = all(_icon_cond(b, lax, triF, triG, comp, i, a_, b_)
                     for i in range(a_ + 1) if (i, a_) in comp and (i, b_) in comp)
            if ok and a_ == b_:
                ok = _icon_unit(b, lax, unitF, unitG, comp, a_)
            if ok:
                rec(idx + 1)
            del comp[(a_, b_)]

    rec(0)
    return out


@dataclass
class CategoricalNerve:
    b: Bicategory
    variant: str
    bound: int
    arrow_bound: int
    gnerve: GeometricNerve
    objects: list[tuple]  # per level, tuples of simplex keys
    arrows: dict[int, tuple]  # level -> icon keys, for levels <= arrow_bound
    _arrow_sets: dict = field(default_factory=dict, repr=False)
    _out: dict = field(default_factory=dict, repr=False)

    @property
    def lax(self) -> bool:
        return self.variant in ("delta", "delta-u", "segal")

    def icon_src(self, k):
        return k[1]

    def icon_tgt(self, k):
        return k[2]

    def identity_icon(self, simplex: tuple) -> tuple:
        _, edge, _, _ = gs_unpack(simplex)
        p = len(simplex[1]) - 1
        return icon_key(simplex, simplex, tuple(self.b.vid[edge[ij]] for ij in _pairs(p)))

    def compose_icons(self, k2: tuple, k1: tuple) -> tuple:
        """k2 . k1 (k1 first): entrywise vertical composition."""
        assert k1[2] == k2[1], "icons not composable"
        comps = tuple(self.b.vcomp[(c2, c1)] for c2, c1 in zip(k2[3], k1[3]))
        return icon_key(k1[1], k2[2], comps)

    def arrows_out(self, p: int, simplex: tuple) -> tuple:
        if p not in self._out:
            table: dict = {}
            for k in self.arrows[p]:
                table.setdefault(k[1], []).append(k)
            self._out[p] = {s: tuple(ks) for s, ks in table.items()}
        return self._out[p].get(simplex, ())

    def arrow_set(self, p: int) -> set:
        if p not in self._arrow_sets:
            self._arrow_sets[p] = set(self.arrows[p])
        return self._arrow_sets[p]

    def op_obj(self, m: tuple, key: tuple) -> tuple:
        out = gs_reindex(key, m)
        return out

    def op_icon(self, m: tuple, k: tuple) -> tuple:
        src, tgt = gs_reindex(k[1], m), gs_reindex(k[2], m)
        p = len(k[1][1]) - 1
        comp = dict(zip(_pairs(p), k[3]))
        q = len(m) - 1
        comps = tuple(comp[(m[i], m[j])] for (i, j) in _pairs(q))
        return icon_key(src, tgt, comps)

    def cat(self, p: int, pair_budget: int = 200_000) -> FiniteCategory:
        """The level-p FiniteCategory with an explicit composition table."""
        arrows = self.arrows[p]
        by_src: dict = {}
        for k in arrows:
            by_src.setdefault(k[1], []).append(k)
        npairs = sum(len(by_src.get(k[2], ())) * 1 for k in arrows)
        if npairs > pair_budget:
            raise ValueError(f"level {p} has {npairs} composable icon pairs > budget")
        compose = {}
        for k1 in arrows:
            for k2 in by_src.get(k1[2], ()):
                compose[(k2, k1)] = self.compose_icons(k2, k1)
        return FiniteCategory(
            tuple(self.objects[p]),
            {k: (k[1], k[2]) for k in arrows},
            compose,
            {s: self.identity_icon(s) for s in self.objects[p]},
        )

    def double_nerve(self, region) -> BisimplicialSet:
        """The bisimplicial set (p, q) |-> N(level_q)_p of icon strings.

        A (p, q)-simplex is a simplex key (p = 0) or a tuple of p composable
        icons at level q; horizontal operators are the nerve formulas,
        vertical ones apply the reindexing functors entrywise.
        """
        region = frozenset(region)
        levels: dict = {}
        for (p, q) in region:
            if p == 0:
                levels[(p, q)] = list(self.objects[q])
            else:
                strings = [(k,) for k in self.arrows[q]]
                for _ in range(p - 1):
                    strings = [(k,) + s for s in strings for k in self.arrows_out(q, s[0][2])]
                levels[(p, q)] = strings

        def tgt_of(p, x):
            return x if p == 0 else x[0][2]

        def dh(p, q, i, x):
            if p == 1:
                return x[0][2] if i == 1 else x[0][1]
            if i == 0:
                return x[1:]
            if i == p:
                return x[:-1]
            return x[: i - 1] + (self.compose_icons(x[i - 1], x[i]),) + x[i + 1:]

        def sh(p, q, i, x):
            if p == 0:
                return (self.identity_icon(x),)
            e = self.identity_icon(x[i][2] if i < p else x[p - 1][1])
            return x[:i] + (e,) + x[i:]

        def dv(p, q, j, x):
            m = face_map(q, j)
            if p == 0:
                return self.op_obj(m, x)
            return tuple(self.op_icon(m, k) for k in x)

        def sv(p, q, j, x):
            m = degeneracy_map(q, j)
            if p == 0:
                return self.op_obj(m, x)
            return tuple(self.op_icon(m, k) for k in x)

        return bisset_from_functions(region, levels, dh, sh, dv, sv)


def _is_homomorphism_simplex(b: Bicategory, key: tuple) -> bool:
    for c in key[3] + key[4]:
        try:
            b.inv2(c)
        except ValueError:
            return False
    return True


def categorical_nerve(b: Bicategory, variant: str, n: int, arrow_bound: int | None = None,
                      budget: Budget | None = None,
                      gnerve: GeometricNerve | None = None) -> CategoricalNerve:
    if variant not in CAT_VARIANTS:
        raise ValueError(f"unknown categorical nerve variant {variant!r}")
    budget = budget or Budget()
    arrow_bound = n if arrow_bound is None else arrow_bound
    gn = gnerve if gnerve is not None else geometric_nerve(b, SIMPLEX_VARIANT[variant], n, budget)
    lax = variant in ("delta", "delta-u", "segal")

    objects = []
    for p in range(n + 1):
        level = list(gn.sset.levels[p])
        if variant == "segal":
            level = [k for k in level if _is_homomorphism_simplex(b, k)]
        objects.append(tuple(level))

    arrows: dict[int, tuple] = {}
    for p in range(min(arrow_bound, n) + 1):
        ks = []
        for src in objects[p]:
            for tgt in objects[p]:
                if src[1] != tgt[1]:
                    continue
                for comps in icons_between(b, lax, src, tgt, budget):
                    ks.append(icon_key(src, tgt, comps))
        arrows[p] = tuple(canon_sorted(ks))

    return CategoricalNerve(b, variant, n, min(arrow_bound, n), gn, objects, arrows)


def validate_categorical_nerve(cn: CategoricalNerve, pair_budget: int = 200_000) -> CheckReport:
    """Level categories, functoriality of the operators, and the strict
    simplicial identities, on everything materialized.

    Category laws quantified over composable pairs/triples run only on
    levels whose pair count fits the budget; composite-closure and icon
    validity run on every materialized level.
    """
    rep = CheckReport(subject=f"categorical nerve {cn.variant}")
    b = cn.b
    for p, ks in sorted(cn.arrows.items()):
        for k in ks:
            sub = validate_icon_components(b, cn.variant, k[1], k[2],
                                           dict(zip(_pairs(p), k[3])))
            if not sub.ok:
                rep.add("invalid-icon", (p, k))
        # identity and composition closure
        aset = cn.arrow_set(p)
        for s in cn.objects[p]:
            if cn.identity_icon(s) not in aset:
                rep.add("identity-icon-missing", (p, s))
        for k1 in ks:
            for k2 in cn.arrows_out(p, k1[2]):
                rep.checked += 1
                if cn.compose_icons(k2, k1) not in aset:
                    rep.add("composition-not-closed", (p, k2, k1))
        try:
            cat = cn.cat(p, pair_budget)
        except ValueError:
            rep.notes[f"level-{p}-category-laws"] = "skipped: pair budget"
            continue
        sub = validate_category(cat)
        for v in sub.violations:
            rep.add(f"level-{p} " + v.rule, v.witness, kind=v.kind)
        rep.checked += sub.checked

    # operators are functors and satisfy the strict simplicial identities
    for p in range(1, cn.bound + 1):
        below = set(cn.objects[p - 1])
        for i in range(p + 1):
            mp = face_map(p, i)
            for s in cn.objects[p]:
                if cn.op_obj(mp, s) not in below:
                    rep.add("face-not-closed-on-objects", (p, i, s))
            if p in cn.arrows and p - 1 in cn.arrows:
                tset = cn.arrow_set(p - 1)
                for k in cn.arrows[p]:
                    rep.checked += 1
                    if cn.op_icon(mp, k) not in tset:
                        rep.add("face-not-closed-on-icons", (p, i, k))
                npairs = sum(len(cn.arrows_out(p, k[2])) for k in cn.arrows[p])
                if npairs <= pair_budget:
                    for k1 in cn.arrows[p]:
                        for k2 in cn.arrows_out(p, k1[2]):
                            rep.checked += 1
                            if cn.op_icon(mp, cn.compose_icons(k2, k1)) != \
                                    cn.compose_icons(cn.op_icon(mp, k2), cn.op_icon(mp, k1)):
                                rep.add("face-not-functorial", (p, i, k2, k1))
                else:
                    rep.notes[f"level-{p}-face-functoriality"] = "skipped: pair budget"
    # exhaustive strict simplicial identities on object tables
    for p in range(2, cn.bound + 1):
        for j in range(p + 1):
            for i in range(j):
                for s in cn.objects[p]:
                    rep.checked += 1
                    if cn.op_obj(face_map(p - 1, i), cn.op_obj(face_map(p, j), s)) != \
                            cn.op_obj(face_map(p - 1, j - 1), cn.op_obj(face_map(p, i), s)):
                        rep.add("object-simplicial-identity", (p, i, j, s))
    return rep


def compose_with_homomorphism(h: LaxFunctor, key: tuple, variant: str) -> tuple:
    """The simplex h . F obtained by composing a geometric simplex with a
    homomorphism h (constraints composed by the lax-functor rule)."""
    variant = resolve_variant(variant)
    lax = variant in ("lax", "normal-lax")
    b = h.cod
    objs, edge, tri, unit = gs_unpack(key)
    p = len(objs) - 1
    new_objs = tuple(h.omap[x] for x in objs)
    new_edge = {ij: h.map1[edge[ij]] for ij in _pairs(p)}
    new_tri = {}
    for (i, j, k) in _triples(p):
        hhat = h.comp[(edge[(i, j)], edge[(j, k)])]
        if lax:
            new_tri[(i, j, k)] = b.vert(hhat, h.map2[tri[(i, j, k)]])
        else:
            new_tri[(i, j, k)] = b.vert(h.map2[tri[(i, j, k)]], b.inv2(hhat))
    new_unit = {}
    for i in range(p + 1):
        uhat = h.unit[objs[i]]
        if lax:
            new_unit[i] = b.vert(uhat, h.map2[unit[i]])
        else:
            new_unit[i] = b.vert(h.map2[unit[i]], b.inv2(uhat))
    return gs_key(new_objs, new_edge, new_tri, new_unit)
