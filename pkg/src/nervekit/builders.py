"""Stock categories, monoidal categories, and bicategories used throughout."""

from __future__ import annotations

from .bicat import (
    Bicategory,
    LaxFunctor,
    MonoidalCategory,
    MonoidalFunctor,
    deloop_monoidal,
    discrete_bicategory,
)
from .fincat import FiniteCategory, cyclic_group_category, monoid_category, poset_category


def z2_monoidal() -> MonoidalCategory:
    """The abelian group Z/2 as a one-object strict monoidal category."""
    cat = cyclic_group_category(2)
    arrs = tuple(cat.arrows)
    add = {(f"g{a}", f"g{b}"): f"g{(a + b) % 2}" for a in range(2) for b in range(2)}
    return MonoidalCategory(
        cat,
        tensor_obj={("*", "*"): "*"},
        tensor_arr=add,
        unit="*",
        assoc={("*", "*", "*"): "g0"},
        lunit={"*": "g0"},
        runit={"*": "g0"},
    )


def twisted_z2_monoidal() -> MonoidalCategory:
    """Objects Z/2, arrows Z/2 on each object, associator twisted by x*y*z.

    The twisting function is a normalized 3-cocycle on Z/2, so the pentagon
    and triangles hold while the associator is genuinely nonidentity.
    """
    objs = ("0", "1")
    arrows = {f"m{x}:{g}": (x, x) for x in objs for g in range(2)}

    def arr(x: int, g: int) -> str:
        return f"m{x % 2}:{g % 2}"

    compose = {}
    for x in range(2):
        for g in range(2):
            for h in range(2):
                compose[(arr(x, g), arr(x, h))] = arr(x, g + h)
    cat = FiniteCategory(objs, arrows, compose, {x: f"m{x}:0" for x in objs})
    tensor_obj = {(str(x), str(y)): str((x + y) % 2) for x in range(2) for y in range(2)}
    tensor_arr = {}
    for x in range(2):
        for g in range(2):
            for y in range(2):
                for h in range(2):
                    tensor_arr[(arr(x, g), arr(y, h))] = arr(x + y, g + h)
    assoc = {(str(x), str(y), str(z)): arr(x + y + z, x * y * z)
             for x in range(2) for y in range(2) for z in range(2)}
    unitc = {str(x): arr(x, 0) for x in range(2)}
    return MonoidalCategory(cat, tensor_obj, tensor_arr, "0", assoc, unitc, dict(unitc))


def monoid_1e_monoidal() -> MonoidalCategory:
    """The monoid {1, e}, e*e = e, as a discrete monoidal category."""
    objs = ("1", "e")
    arrows = {f"id{x}": (x, x) for x in objs}
    compose = {(f"id{x}", f"id{x}"): f"id{x}" for x in objs}
    cat = FiniteCategory(objs, arrows, compose, {x: f"id{x}" for x in objs})
    mult = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    tensor_arr = {(f"id{x}", f"id{y}"): f"id{mult[(x, y)]}" for x in objs for y in objs}
    assoc = {(x, y, z): f"id{mult[(mult[(x, y)], z)]}" for x in objs for y in objs for z in objs}
    unitc = {x: f"id{x}" for x in objs}
    return MonoidalCategory(cat, mult, tensor_arr, "1", assoc, unitc, dict(unitc))


def deloop_z2() -> Bicategory:
    return deloop_monoidal(z2_monoidal())


def deloop_twisted_z2() -> Bicategory:
    return deloop_monoidal(twisted_z2_monoidal())


def deloop_monoid_1e() -> Bicategory:
    return deloop_monoidal(monoid_1e_monoidal())


def terminal_bicategory() -> Bicategory:
    return discrete_bicategory(poset_category(0))


def two_object_bigroupoid() -> Bicategory:
    """Two objects, one 1-cell between any two, Z/2 worth of 2-cells each.

    A strict bigroupoid modelling K(Z/2, 2) spread over two equivalent
    objects.
    """
    objs = ("x", "y")
    one = {f"e{a}{b}": (a, b) for a in objs for b in objs}

    def cell(u: str, g: int) -> str:
        return f"{u}:{g % 2}"

    two = {cell(u, g): (u, u) for u in one for g in range(2)}
    vcomp = {}
    for u in one:
        for g in range(2):
            for h in range(2):
                vcomp[(cell(u, g), cell(u, h))] = cell(u, g + h)
    hcomp1 = {}
    hcomp2 = {}
    for u, (b1, c1) in one.items():
        for v, (a2, b2) in one.items():
            if b1 != b2:
                continue
            uv = f"e{a2}{c1}"
            hcomp1[(u, v)] = uv
            for g in range(2):
                for h in range(2):
                    hcomp2[(cell(u, g), cell(v, h))] = cell(uv, g + h)
    assoc = {}
    for (u, v) in hcomp1:
        for w, (aw, bw) in one.items():
            if one[v][0] == bw:
                assoc[(u, v, w)] = cell(hcomp1[(hcomp1[(u, v)], w)], 0)
    return Bicategory(
        objects=objs,
        one_cells=one,
        two_cells=two,
        vcomp=vcomp,
        vid={u: cell(u, 0) for u in one},
        hcomp1=hcomp1,
        hcomp2=hcomp2,
        id1={a: f"e{a}{a}" for a in objs},
        assoc=assoc,
        lunit={u: cell(u, 0) for u in one},
        runit={u: cell(u, 0) for u in one},
    )


def collapse_to_deloop_z2(b2: Bicategory, dz2: Bicategory) -> LaxFunctor:
    """The strict homomorphism squashing the two-object bigroupoid onto
    the delooping of Z/2 (2-cell labels are preserved)."""
    omap = {x: "*" for x in b2.objects}
    map1 = {u: "*" for u in b2.one_cells}
    map2 = {a: f"g{a.split(':')[1]}" for a in b2.two_cells}
    comp = {(u, v): "g0" for (u, v) in b2.hcomp1}
    unit = {x: "g0" for x in b2.objects}
    return LaxFunctor("lax", b2, dz2, omap, map1, map2, comp, unit,
                      normal=True, homomorphism=True)


def twist_endo_deloop_z2(dz2: Bicategory) -> LaxFunctor:
    """The nonstrict self-homomorphism of the Z/2 delooping: identity on
    cells, with every comparison 2-cell the nonidentity deformation g1."""
    return LaxFunctor(
        "lax", dz2, dz2,
        {"*": "*"},
        {u: u for u in dz2.one_cells},
        {a: a for a in dz2.two_cells},
        {(u, v): "g1" for (u, v) in dz2.hcomp1},
        {"*": "g1"},
        normal=False, homomorphism=True,
    )


def z2_monoidal_functor_twisted() -> MonoidalFunctor:
    """Identity functor on the Z/2 one-object monoidal category with the
    nontrivial comparison cells; the delooped form of twist_endo_deloop_z2."""
    m = z2_monoidal()
    return MonoidalFunctor(
        m, m,
        {x: x for x in m.cat.objects},
        {a: a for a in m.cat.arrows},
        {("*", "*"): "g1"},
        "g1",
    )


def identity_monoidal_functor(m: MonoidalCategory) -> MonoidalFunctor:
    return MonoidalFunctor(
        m, m,
        {x: x for x in m.cat.objects},
        {a: a for a in m.cat.arrows},
        {(x, y): m.cat.identity[m.tensor_obj[(x, y)]] for (x, y) in m.tensor_obj},
        m.cat.identity[m.unit],
    )
