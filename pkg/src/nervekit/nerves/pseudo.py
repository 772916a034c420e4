"""The pseudo-simplicial nerve: level categories of composable strings.

Level p has composable 1-cell strings as objects and entrywise 2-cell
strings as arrows.  Faces compose adjacent entries, degeneracies insert
identities, and any simplicial operator a: [q] -> [p] acts through its
canonical face/degeneracy factorization.  Because horizontal composition
is only coherently associative, b* a* and (ab)* agree only up to the
canonical natural isomorphisms generated by the associativity and unit
constraints; supercoherence_check verifies that this system is natural,
unital, and satisfies the cocycle equation on every composable pair and
triple of maps in the truncated simplex category.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..bicat import Bicategory, Coherence
from ..fincat import FiniteCategory
from ..report import CheckReport
from ..util import canon_sorted


def hom_delta(q: int, p: int) -> list[tuple[int, ...]]:
    """Nondecreasing maps [q] -> [p]."""
    out = [()]
    for _ in range(q + 1):
        out = [t + (v,) for t in out for v in range(t[-1] if t else 0, p + 1)]
    return out


def compose_delta(a: tuple, b: tuple) -> tuple:
    """a . b for b: [r] -> [q], a: [q] -> [p]."""
    return tuple(a[i] for i in b)


def _word_for_map(a: tuple, p: int) -> list[tuple[str, int]]:
    image = set(a)
    faces = sorted((i for i in range(p + 1) if i not in image), reverse=True)
    degens = sorted(j for j in range(len(a) - 1) if a[j] == a[j + 1])
    return [("d", i) for i in faces] + [("s", j) for j in degens]


def _apply_word(word, trees: list, verts: list) -> tuple[list, list]:
    trees, verts = list(trees), list(verts)
    for op, i in word:
        if op == "d":
            if i == 0:
                trees.pop(0)
            elif i == len(trees):
                trees.pop()
            else:
                trees[i - 1] = ("N", trees[i - 1], trees[i])
                trees.pop(i)
            verts.pop(i)
        else:
            trees.insert(i, ("U", verts[i]))
            verts.insert(i, verts[i])
    return trees, verts


def _state_for_map(a: tuple, p: int) -> tuple[list, list]:
    word = _word_for_map(a, p)
    trees, verts = _apply_word(word, [("L", k) for k in range(1, p + 1)], list(range(p + 1)))
    assert tuple(verts) == a, "canonical factorization does not reproduce the map"
    return trees, verts


@dataclass
class PseudoSimplicialNerve:
    b: Bicategory
    bound: int
    levels: list[FiniteCategory]
    coh: Coherence
    _states: dict = field(default_factory=dict, repr=False)
    _functors: dict = field(default_factory=dict, repr=False)
    _isos: dict = field(default_factory=dict, repr=False)

    # -- raw string helpers ---------------------------------------------

    def vertex_obj(self, x, v: int):
        if isinstance(x, tuple) and x and x[0] == "str":
            us = x[1]
            return self.b.one_cells[us[0]][1] if v == 0 else self.b.one_cells[us[v - 1]][0]
        return x  # level-0 object

    def _resolve(self, tree, x):
        tag = tree[0]
        if tag == "L":
            return ("l", x[1][tree[1] - 1])
        if tag == "U":
            return ("u", self.vertex_obj(x, tree[1]))
        return ("n", self._resolve(tree[1], x), self._resolve(tree[2], x))

    def state(self, a: tuple, p: int):
        key = (a, p)
        if key not in self._states:
            self._states[key] = _state_for_map(a, p)
        return self._states[key]

    def op_obj(self, a: tuple, p: int, x):
        trees, verts = self.state(a, p)
        if not trees:
            return self.vertex_obj(x, verts[0])
        return ("str", tuple(self.coh.value(self._resolve(t, x)) for t in trees))

    def op_arr(self, a: tuple, p: int, arrow):
        src, xs = arrow
        trees, verts = self.state(a, p)
        new_src = self.op_obj(a, p, src)
        if not trees:
            return (new_src, ())

        def leaf2(k):
            return xs[k - 1]

        def ev(tree):
            tag = tree[0]
            if tag == "L":
                return leaf2(tree[1])
            if tag == "U":
                return self.b.vid[self.b.id1[self.vertex_obj(src, tree[1])]]
            return self.b.hc2(ev(tree[1]), ev(tree[2]))

        return (new_src, tuple(ev(t) for t in trees))

    def functor(self, a: tuple, p: int) -> FiniteCategory | object:
        """The induced functor a*: level p -> level q, as explicit tables."""
        from ..fincat import Functor

        key = (a, p)
        if key not in self._functors:
            src_cat = self.levels[p]
            tgt_cat = self.levels[len(a) - 1]
            omap = {x: self.op_obj(a, p, x) for x in src_cat.objects}
            amap = {f: self.op_arr(a, p, f) for f in src_cat.arrows}
            self._functors[key] = Functor(src_cat, tgt_cat, omap, amap)
        return self._functors[key]

    def arrow_target(self, arrow):
        src, xs = arrow
        if not xs:
            return src
        return ("str", tuple(self.b.tgt2(c) for c in xs))

    # -- derived isomorphisms b* a* => (ab)* ------------------------------

    def derived_iso(self, a: tuple, b_: tuple, p: int) -> dict:
        """Component arrows of the canonical iso b* a* => (ab)* at each
        object of level p (a: [q] -> [p], b: [r] -> [q])."""
        key = (a, b_, p)
        if key in self._isos:
            return self._isos[key]
        q = len(a) - 1
        trees_a, verts_a = self.state(a, p)
        trees_ba, verts_ba = _apply_word(_word_for_map(b_, q), trees_a, verts_a)
        ab = compose_delta(a, b_)
        trees_ab, verts_ab = self.state(ab, p)
        assert verts_ba == list(verts_ab)
        comps = {}
        for x in self.levels[p].objects:
            if not trees_ba:
                comps[x] = (self.vertex_obj(x, verts_ba[0]), ())
                continue
            src = ("str", tuple(self.coh.value(self._resolve(t, x)) for t in trees_ba))
            cells = tuple(
                self.coh.between(self._resolve(t1, x), self._resolve(t2, x))
                for t1, t2 in zip(trees_ba, trees_ab))
            comps[x] = (src, cells)
        self._isos[key] = comps
        return comps


def _level_category(b: Bicategory, p: int) -> FiniteCategory:
    if p == 0:
        objs = tuple(canon_sorted(b.objects))
        arrows = {(x, ()): (x, x) for x in objs}
        compose = {((x, ()), (x, ())): (x, ()) for x in objs}
        return FiniteCategory(objs, arrows, compose, {x: (x, ()) for x in objs})
    strings = [()]
    for _ in range(p):
        strings = [s + (u,) for s in strings for u in canon_sorted(b.one_cells)
                   if not s or b.one_cells[u][1] == b.one_cells[s[-1]][0]]
    objs = tuple(("str", s) for s in strings)
    out2: dict = {}
    for c in canon_sorted(b.two_cells):
        out2.setdefault(b.src2(c), []).append(c)
    arrows = {}
    for x in objs:
        for xs in product(*[out2.get(u, []) for u in x[1]]):
            arrows[(x, xs)] = (x, ("str", tuple(b.tgt2(c) for c in xs)))
    compose = {}
    for (src1, xs1), (_, tgt1) in arrows.items():
        for (src2, xs2), _v in arrows.items():
            if src2 == tgt1:
                compose[(((src2, xs2)), (src1, xs1))] = \
                    (src1, tuple(b.vcomp[(c2, c1)] for c2, c1 in zip(xs2, xs1)))
    identity = {x: (x, tuple(b.vid[u] for u in x[1])) for x in objs}
    return FiniteCategory(objs, arrows, compose, identity)


def pseudo_simplicial_nerve(b: Bicategory, n: int) -> PseudoSimplicialNerve:
    levels = [_level_category(b, p) for p in range(n + 1)]
    return PseudoSimplicialNerve(b, n, levels, Coherence(b))


def supercoherence_check(ps: PseudoSimplicialNerve, use_numpy: bool = True) -> CheckReport:
    """Naturality, unitality, and the cocycle equation of the derived
    isomorphism system, over all composable pairs/triples in Delta<=n."""
    rep = CheckReport(subject="supercoherence")
    n = ps.bound
    homs = {(q, p): hom_delta(q, p) for p in range(n + 1) for q in range(n + 1)}

    # unit: identities act strictly and the isos against them are identities
    for p in range(n + 1):
        ident = tuple(range(p + 1))
        lv = ps.levels[p]
        fun = ps.functor(ident, p)
        for x in lv.objects:
            rep.checked += 1
            if fun.omap[x] != x:
                rep.add("identity-map-not-strict", (p, x))
        for q in range(n + 1):
            for a in homs[(q, p)]:
                iso1 = ps.derived_iso(a, tuple(range(q + 1)), p)
                iso2 = ps.derived_iso(ident, a, p)
                lq = ps.levels[q]
                for x in lv.objects:
                    rep.checked += 1
                    ax = ps.op_obj(a, p, x)
                    if iso1[x] != lq.identity[ax] or iso2[x] != lq.identity[ax]:
                        rep.add("unit-iso-not-identity", (p, a, x))

    # naturality of each derived iso
    for p in range(n + 1):
        lv = ps.levels[p]
        for q in range(n + 1):
            for a in homs[(q, p)]:
                fa = ps.functor(a, p)
                for r in range(n + 1):
                    for b_ in homs[(r, q)]:
                        fb = ps.functor(b_, q)
                        ab = compose_delta(a, b_)
                        fab = ps.functor(ab, p)
                        iso = ps.derived_iso(a, b_, p)
                        lr = ps.levels[r]
                        for f, (sx, tx) in lv.arrows.items():
                            rep.checked += 1
                            lhs = lr.compose[(iso[tx], fb.amap[fa.amap[f]])]
                            rhs = lr.compose[(fab.amap[f], iso[sx])]
                            if lhs != rhs:
                                rep.add("derived-iso-not-natural", (a, b_, f))

    # cocycle over composable triples
    if use_numpy:
        sub = _cocycle_check_numpy(ps, homs)
    else:
        sub = _cocycle_check_python(ps, homs)
    rep.merge(sub)
    return rep


def _cocycle_check_python(ps: PseudoSimplicialNerve, homs) -> CheckReport:
    rep = CheckReport(subject="cocycle")
    n = ps.bound
    for p in range(n + 1):
        lv = ps.levels[p]
        for q in range(n + 1):
            for a in homs[(q, p)]:
                fa = ps.functor(a, p)
                for r in range(n + 1):
                    for b_ in homs[(r, q)]:
                        ab = compose_delta(a, b_)
                        iso_ab = ps.derived_iso(a, b_, p)
                        for s in range(n + 1):
                            for c in homs[(s, r)]:
                                fc = ps.functor(c, r)
                                bc = compose_delta(b_, c)
                                iso_bc = ps.derived_iso(b_, c, q)
                                iso1 = ps.derived_iso(ab, c, p)
                                iso2 = ps.derived_iso(a, bc, p)
                                ls = ps.levels[s]
                                for x in lv.objects:
                                    rep.checked += 1
                                    side1 = ls.compose[(iso1[x], fc.amap[iso_ab[x]])]
                                    side2 = ls.compose[(iso2[x], iso_bc[fa.omap[x]])]
                                    if side1 != side2:
                                        rep.add("cocycle", (a, b_, c, x))
    return rep


def _cocycle_check_numpy(ps: PseudoSimplicialNerve, homs) -> CheckReport:
    import numpy as np

    rep = CheckReport(subject="cocycle")
    n = ps.bound
    obj_idx = [ {x: i for i, x in enumerate(ps.levels[m].objects)} for m in range(n + 1) ]
    arr_list = [ list(ps.levels[m].arrows) for m in range(n + 1) ]
    arr_idx = [ {f: i for i, f in enumerate(arr_list[m])} for m in range(n + 1) ]

    comp_dense = []
    for m in range(n + 1):
        na = len(arr_list[m])
        cd = np.full((na, na), -1, dtype=np.int32)
        for (g, f), h in ps.levels[m].compose.items():
            cd[arr_idx[m][f], arr_idx[m][g]] = arr_idx[m][h]  # cd[first, second]
        comp_dense.append(cd)

    maps = [(q, p, a) for p in range(n + 1) for q in range(n + 1) for a in homs[(q, p)]]
    OBJ: dict = {}
    ARR: dict = {}
    for (q, p, a) in maps:
        fa = ps.functor(a, p)
        OBJ[(a, p)] = np.array([obj_idx[q][fa.omap[x]] for x in ps.levels[p].objects],
                               dtype=np.int32)
        ARR[(a, p)] = np.array([arr_idx[q][fa.amap[f]] for f in arr_list[p]], dtype=np.int32)

    PHI: dict = {}

    def phi_arr(a, b_, p):
        key = (a, b_, p)
        if key not in PHI:
            r = len(b_) - 1
            iso = ps.derived_iso(a, b_, p)
            PHI[key] = np.array([arr_idx[r][iso[x]] for x in ps.levels[p].objects],
                                dtype=np.int32)
        return PHI[key]

    bad = 0
    witness = None
    for p in range(n + 1):
        for q in range(n + 1):
            for a in homs[(q, p)]:
                for r in range(n + 1):
                    for b_ in homs[(r, q)]:
                        ab = compose_delta(a, b_)
                        pab = phi_arr(a, b_, p)
                        for s in range(n + 1):
                            cs = homs[(s, r)]
                            if not cs:
                                continue
                            m1 = np.stack([phi_arr(ab, c, p) for c in cs])
                            ca = np.stack([ARR[(c, r)] for c in cs])[:, pab]
                            side1 = comp_dense[s][ca, m1]
                            m2 = np.stack([phi_arr(a, compose_delta(b_, c), p) for c in cs])
                            pb = np.stack([phi_arr(b_, c, q) for c in cs])[:, OBJ[(a, p)]]
                            side2 = comp_dense[s][pb, m2]
                            rep.checked += int(side1.size)
                            assert (side1 >= 0).all() and (side2 >= 0).all()
                            if not (side1 == side2).all():
                                bad += int((side1 != side2).sum())
                                if witness is None:
                                    ci, xi = map(int, np.argwhere(side1 != side2)[0])
                                    witness = (a, b_, cs[ci], ps.levels[p].objects[xi])
    if bad:
        rep.add("cocycle", witness, detail=f"{bad} failing components")
    return rep
