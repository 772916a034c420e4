"""Finite categories, functors, natural transformations, and the nerve.

All data is explicit finite tables keyed by hashable ids (strings in JSON
interchange; constructions may key cells by tuples).  Composition follows
``compose[(f, g)] = f . g``, defined exactly when src(f) = tgt(g), with
src/tgt of the composite src(g)/tgt(f).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from .report import CheckReport
from .simplicial import SSet, sset_from_functions
from .util import canon_sorted


@dataclass
class FiniteCategory:
    objects: tuple[Hashable, ...]
    arrows: dict[Hashable, tuple[Hashable, Hashable]]  # id -> (src, tgt)
    compose: dict[tuple[Hashable, Hashable], Hashable]  # (f, g) -> f.g
    identity: dict[Hashable, Hashable]  # object -> identity arrow

    def src(self, f):
        return self.arrows[f][0]

    def tgt(self, f):
        return self.arrows[f][1]

    def comp(self, f, g):
        return self.compose[(f, g)]

    def comp_chain(self, fs):
        """Compose a nonempty list of arrows, leftmost applied last."""
        out = fs[0]
        for f in fs[1:]:
            out = self.compose[(out, f)]
        return out

    def hom(self, x, y) -> tuple:
        return tuple(f for f in canon_sorted(self.arrows) if self.arrows[f] == (x, y))

    def is_iso(self, f) -> bool:
        x, y = self.arrows[f]
        return any(
            self.arrows[g] == (y, x)
            and self.compose[(f, g)] == self.identity[y]
            and self.compose[(g, f)] == self.identity[x]
            for g in self.arrows
        )

    def iso_classes(self) -> list[frozenset]:
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self.arrows:
            if self.is_iso(f):
                a, b = find(self.src(f)), find(self.tgt(f))
                if a != b:
                    parent[a] = b
        out: dict = {}
        for x in self.objects:
            out.setdefault(find(x), set()).add(x)
        return [frozenset(v) for v in out.values()]


def validate_category(cat: FiniteCategory) -> CheckReport:
    rep = CheckReport(subject="finite category")
    objs = set(cat.objects)
    if len(objs) != len(cat.objects):
        rep.add("duplicate-object", (), kind="structural")
    for f, (x, y) in cat.arrows.items():
        if x not in objs or y not in objs:
            rep.add("arrow-endpoint-dangling", (f,), kind="structural")
    for x in cat.objects:
        e = cat.identity.get(x)
        if e is None or e not in cat.arrows:
            rep.add("identity-missing", (x,), kind="structural")
        elif cat.arrows[e] != (x, x):
            rep.add("identity-endpoints", (x,), kind="structural")
    composable = {
        (f, g)
        for f in cat.arrows
        for g in cat.arrows
        if cat.arrows[f][0] == cat.arrows[g][1]
    }
    if set(cat.compose) != composable:
        missing = composable - set(cat.compose)
        extra = set(cat.compose) - composable
        for pair in canon_sorted(missing)[:5]:
            rep.add("compose-missing", pair, kind="structural")
        for pair in canon_sorted(extra)[:5]:
            rep.add("compose-on-noncomposable", pair, kind="structural")
    if rep.structural():
        return rep

    for (f, g), h in cat.compose.items():
        rep.checked += 1
        if h not in cat.arrows:
            rep.add("compose-dangling", (f, g), kind="structural")
        elif cat.arrows[h] != (cat.src(g), cat.tgt(f)):
            rep.add("compose-endpoints", (f, g, h))
    for f in cat.arrows:
        x, y = cat.arrows[f]
        rep.checked += 1
        if cat.compose[(f, cat.identity[x])] != f:
            rep.add("right-identity", (f,))
        if cat.compose[(cat.identity[y], f)] != f:
            rep.add("left-identity", (f,))
    for (f, g) in cat.compose:
        for h in cat.arrows:
            if cat.arrows[g][0] == cat.arrows[h][1]:
                rep.checked += 1
                if cat.compose[(cat.compose[(f, g)], h)] != cat.compose[(f, cat.compose[(g, h)])]:
                    rep.add("associativity", (f, g, h))
    return rep


@dataclass
class Functor:
    domain: FiniteCategory
    codomain: FiniteCategory
    omap: dict
    amap: dict

    def obj(self, x):
        return self.omap[x]

    def arr(self, f):
        return self.amap[f]


def identity_functor(cat: FiniteCategory) -> Functor:
    return Functor(cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.arrows})


def compose_functors(g: Functor, f: Functor) -> Functor:
    return Functor(
        f.domain,
        g.codomain,
        {x: g.omap[f.omap[x]] for x in f.domain.objects},
        {a: g.amap[f.amap[a]] for a in f.domain.arrows},
    )


def validate_functor(fun: Functor) -> CheckReport:
    rep = CheckReport(subject="functor")
    dom, cod = fun.domain, fun.codomain
    if set(fun.omap) != set(dom.objects) or any(y not in set(cod.objects) for y in fun.omap.values()):
        rep.add("object-map-domain", (), kind="structural")
    if set(fun.amap) != set(dom.arrows) or any(g not in cod.arrows for g in fun.amap.values()):
        rep.add("arrow-map-domain", (), kind="structural")
    if rep.structural():
        return rep
    for f, (x, y) in dom.arrows.items():
        rep.checked += 1
        if cod.arrows[fun.amap[f]] != (fun.omap[x], fun.omap[y]):
            rep.add("preserves-endpoints", (f,))
    for x in dom.objects:
        rep.checked += 1
        if fun.amap[dom.identity[x]] != cod.identity[fun.omap[x]]:
            rep.add("preserves-identity", (x,))
    for (f, g), h in dom.compose.items():
        rep.checked += 1
        if cod.compose[(fun.amap[f], fun.amap[g])] != fun.amap[h]:
            rep.add("preserves-composition", (f, g))
    return rep


@dataclass
class NaturalTransformation:
    source: Functor
    target: Functor
    components: dict  # object -> arrow of the codomain


def validate_nat(nat: NaturalTransformation) -> CheckReport:
    rep = CheckReport(subject="natural transformation")
    f, g = nat.source, nat.target
    dom, cod = f.domain, f.codomain
    if g.domain is not dom and g.domain.objects != dom.objects:
        rep.add("common-domain", (), kind="structural")
        return rep
    if set(nat.components) != set(dom.objects):
        rep.add("component-domain", (), kind="structural")
        return rep
    for x in dom.objects:
        c = nat.components[x]
        if c not in cod.arrows or cod.arrows[c] != (f.omap[x], g.omap[x]):
            rep.add("component-endpoints", (x,), kind="structural")
    if rep.structural():
        return rep
    for u, (x, y) in dom.arrows.items():
        rep.checked += 1
        if cod.compose[(nat.components[y], f.amap[u])] != cod.compose[(g.amap[u], nat.components[x])]:
            rep.add("naturality", (u,))
    return rep


def validate_functor_and_nat(entity) -> CheckReport:
    if isinstance(entity, Functor):
        return validate_functor(entity)
    if isinstance(entity, NaturalTransformation):
        rep = validate_nat(entity)
        return rep
    raise TypeError(f"expected Functor or NaturalTransformation, got {type(entity)!r}")


# ---------------------------------------------------------------------------
# Nerve.  A p-simplex is a length-p string of composable arrows
# x_0 <-u_1- x_1 <-u_2- ... <-u_p- x_p, keyed by the arrow tuple (object id
# at p = 0).  Faces drop an end or compose at a spot; degeneracies insert an
# identity.
# ---------------------------------------------------------------------------


def nerve_of_category(cat: FiniteCategory, n: int) -> SSet:
    levels: dict[int, list] = {0: list(cat.objects)}
    for p in range(1, n + 1):
        prev = levels[p - 1]
        cur = []
        for s in prev:
            tail = cat.arrows[s[-1]][0] if p > 1 else s
            for u in cat.arrows:
                if cat.tgt(u) == tail:
                    cur.append((s + (u,)) if p > 1 else (u,))
        levels[p] = cur

    def vertex(s, p, k):
        # object sitting at vertex k of the string s
        if p == 0:
            return s
        return cat.tgt(s[0]) if k == 0 else cat.src(s[k - 1])

    def face(p, i, s):
        if p == 1:
            return vertex(s, p, 1 - i)
        if i == 0:
            return s[1:]
        if i == p:
            return s[:-1]
        return s[: i - 1] + (cat.compose[(s[i - 1], s[i])],) + s[i + 1:]

    def degen(p, i, s):
        e = cat.identity[vertex(s, p, i)]
        if p == 0:
            return (e,)
        return s[:i] + (e,) + s[i:]

    return sset_from_functions(n, levels, face, degen)


def nerve_map(fun: Functor, n: int, src: SSet | None = None, tgt: SSet | None = None):
    """Simplicial map N(fun): N(dom) -> N(cod) induced levelwise."""
    from .simplicial import simplicial_map_from_function

    src = nerve_of_category(fun.domain, n) if src is None else src
    tgt = nerve_of_category(fun.codomain, n) if tgt is None else tgt

    def comp(p, s):
        if p == 0:
            return fun.omap[s]
        return tuple(fun.amap[u] for u in s)

    return simplicial_map_from_function(src, tgt, comp, bound=n)


def standard_simplex(n: int, trunc: int) -> SSet:
    """Delta[n] truncated; p-simplices are nondecreasing int tuples [p] -> [n]."""
    def maps(p):
        out = [()]
        for _ in range(p + 1):
            out = [t + (v,) for t in out for v in range(t[-1] if t else 0, n + 1)]
        return out

    return sset_from_functions(
        trunc,
        {p: maps(p) for p in range(trunc + 1)},
        lambda p, i, t: t[:i] + t[i + 1:],
        lambda p, i, t: t[:i] + (t[i],) + t[i:],
    )


def nerve_vertex_relabel(s: SSet, cat: FiniteCategory, int_objects: bool = True) -> SSet:
    """Relabel nerve simplices by their vertex tuples (Delta[n] convention).

    Only lawful for thin categories such as [n], where a simplex is
    determined by its vertices; raises otherwise.
    """
    from .simplicial import sset_relabel

    def key(p, x):
        if p == 0:
            return (int(x),) if int_objects else (x,)
        verts = [cat.tgt(x[0])] + [cat.src(u) for u in x]
        return tuple(int(v) for v in verts) if int_objects else tuple(verts)

    return sset_relabel(s, key)


# ---------------------------------------------------------------------------
# Stock categories.
# ---------------------------------------------------------------------------


def poset_category(n: int) -> FiniteCategory:
    """The ordinal [n]: objects "0".."n", one arrow j>i for each i <= j."""
    objects = tuple(str(i) for i in range(n + 1))
    arrows = {f"{j}>{i}": (str(j), str(i)) for i in range(n + 1) for j in range(i, n + 1)}
    compose = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                compose[(f"{j}>{i}", f"{k}>{j}")] = f"{k}>{i}"
    identity = {str(i): f"{i}>{i}" for i in range(n + 1)}
    return FiniteCategory(objects, arrows, compose, identity)


def monoid_category(elements: tuple[str, ...], mult: dict, unit: str, obj: str = "*") -> FiniteCategory:
    """A monoid as a one-object category; ``mult[(a, b)]`` is "a after b"."""
    arrows = {e: (obj, obj) for e in elements}
    compose = {(a, b): mult[(a, b)] for a in elements for b in elements}
    return FiniteCategory((obj,), arrows, compose, {obj: unit})


def cyclic_group_category(m: int, obj: str = "*") -> FiniteCategory:
    elems = tuple(f"g{k}" for k in range(m))
    mult = {(f"g{a}", f"g{b}"): f"g{(a + b) % m}" for a in range(m) for b in range(m)}
    return monoid_category(elems, mult, "g0", obj)
