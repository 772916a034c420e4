"""The embedding J into the Segal nerve, the Segal projections P, the
counit of J -| P, and the normalization adjunction of the unitary nerve."""

from __future__ import annotations

from ..bicat import Bicategory
from ..report import CheckReport
from .categorical import CategoricalNerve, icon_key, validate_icon_components
from .geometric import _pairs, _triples, gs_key, gs_unpack
from .pseudo import PseudoSimplicialNerve


def embed_string(b: Bicategory, string) -> tuple:
    """J on objects: the normal geometric simplex of a composable string.

    Edges are the left-bracketed partial composites F^e_{i,j+1} =
    F^e_{i,j} o F_{j,j+1}; the triangles (i,j,j+1) are identities and the
    rest are generated by the associativity constraint through
    Fhat^e_{i,j,k+1} = (Fhat^e_{i,j,k} o 1) . a.
    """
    us = string[1] if isinstance(string, tuple) and string and string[0] == "str" else string
    if not isinstance(us, tuple):
        # a level-0 object
        x = string
        return gs_key((x,), {(0, 0): b.id1[x]}, {(0, 0, 0): b.lunit[b.id1[x]]},
                      {0: b.vid[b.id1[x]]})
    p = len(us)
    objs = tuple([b.one_cells[us[0]][1]] + [b.one_cells[u][0] for u in us])
    edge = {}
    for i in range(p + 1):
        edge[(i, i)] = b.id1[objs[i]]
    for i in range(p):
        edge[(i, i + 1)] = us[i]
    for i in range(p + 1):
        for j in range(i + 2, p + 1):
            edge[(i, j)] = b.hc1(edge[(i, j - 1)], us[j - 1])
    tri = {}
    for (i, j, k) in _triples(p):
        if i == j:
            tri[(i, j, k)] = b.lunit[edge[(i, k)]]
        elif j == k:
            tri[(i, j, k)] = b.runit[edge[(i, j)]]
        elif k == j + 1:
            tri[(i, j, k)] = b.vid[edge[(i, k)]]
    for span in range(2, p + 1):
        for i in range(p + 1):
            for j in range(i + 1, p + 1):
                k = j + span
                if k > p:
                    continue
                tri[(i, j, k)] = b.vert(
                    b.assoc[(edge[(i, j)], edge[(j, k - 1)], us[k - 1])],
                    b.hc2(tri[(i, j, k - 1)], b.vid[us[k - 1]]))
    unit = {i: b.vid[b.id1[objs[i]]] for i in range(p + 1)}
    return gs_key(objs, edge, tri, unit)


def embed_arrow(b: Bicategory, arrow) -> tuple:
    """J on arrows: the icon alpha^e with alpha^e_{i,j+1} = alpha^e_{i,j} o alpha_{j,j+1}."""
    src, xs = arrow
    if not xs:
        key = embed_string(b, src)
        return icon_key(key, key, (b.vid[b.id1[src]],))
    p = len(xs)
    ksrc = embed_string(b, src)
    tgt_us = tuple(b.tgt2(c) for c in xs)
    ktgt = embed_string(b, ("str", tgt_us))
    objs = ksrc[1]
    comp = {}
    for i in range(p + 1):
        comp[(i, i)] = b.vid[b.id1[objs[i]]]
    for i in range(p):
        comp[(i, i + 1)] = xs[i]
    for i in range(p + 1):
        for j in range(i + 2, p + 1):
            comp[(i, j)] = b.hc2(comp[(i, j - 1)], xs[j - 1])
    return icon_key(ksrc, ktgt, tuple(comp[ij] for ij in _pairs(p)))


def project_simplex(key: tuple):
    """P on objects: the string of consecutive edges."""
    objs, edge, _, _ = gs_unpack(key)
    p = len(objs) - 1
    if p == 0:
        return objs[0]
    return ("str", tuple(edge[(i, i + 1)] for i in range(p)))


def project_icon(k: tuple):
    """P on arrows: the string of consecutive components."""
    p = len(k[1][1]) - 1
    comp = dict(zip(_pairs(p), k[3]))
    if p == 0:
        return (k[1][1][0], ())
    return (project_simplex(k[1]), tuple(comp[(i, i + 1)] for i in range(p)))


def counit_icon(b: Bicategory, key: tuple) -> tuple:
    """epsilon_F: J P (F) => F, built by pasting the consecutive triangles."""
    objs, edge, tri, _ = gs_unpack(key)
    p = len(objs) - 1
    ksrc = embed_string(b, project_simplex(key))
    comp = {}
    for i in range(p + 1):
        comp[(i, i)] = b.vid[b.id1[objs[i]]]
    for i in range(p):
        comp[(i, i + 1)] = b.vid[edge[(i, i + 1)]]
    for i in range(p + 1):
        for j in range(i + 2, p + 1):
            comp[(i, j)] = b.vert(
                b.hc2(comp[(i, j - 1)], b.vid[edge[(j - 1, j)]]),
                tri[(i, j - 1, j)])
    return icon_key(ksrc, key, tuple(comp[ij] for ij in _pairs(p)))


def segal_embedding_projection(b: Bicategory, n: int, ps: PseudoSimplicialNerve,
                               cn: CategoricalNerve) -> CheckReport:
    """Verify P_p J_p = 1, the triangle identities of J -| P with identity
    unit and counit epsilon, naturality of epsilon, and invertibility of
    epsilon on every Segal (normal homomorphism) simplex.

    ``cn`` must be the delta-u or segal categorical nerve with arrows
    materialized to level n.
    """
    rep = CheckReport(subject="Segal embedding/projection")
    for p in range(n + 1):
        lv = ps.levels[p]
        objset = set(cn.objects[p])
        arrset = cn.arrow_set(p) if p in cn.arrows else None

        for x in lv.objects:
            rep.checked += 1
            jx = embed_string(b, x)
            if cn.variant == "segal" and jx not in objset:
                rep.add("J-object-not-in-segal-nerve", (p, x))
            if project_simplex(jx) != x:
                rep.add("PJ-not-identity-on-objects", (p, x))
        for f in lv.arrows:
            rep.checked += 1
            jf = embed_arrow(b, f)
            if arrset is not None and jf not in arrset:
                rep.add("J-arrow-not-an-icon", (p, f))
            if project_icon(jf) != f:
                rep.add("PJ-not-identity-on-arrows", (p, f))
        # J is a functor
        for (g, f), h in lv.compose.items():
            rep.checked += 1
            if cn.compose_icons(embed_arrow(b, g), embed_arrow(b, f)) != embed_arrow(b, h):
                rep.add("J-not-functorial", (p, g, f))
        for x in lv.objects:
            if embed_arrow(b, lv.identity[x]) != cn.identity_icon(embed_string(b, x)):
                rep.add("J-identity", (p, x))

        # epsilon: counit of J -| P with identity unit
        for s in cn.objects[p]:
            rep.checked += 1
            eps = counit_icon(b, s)
            sub = validate_icon_components(b, cn.variant, eps[1], eps[2],
                                           dict(zip(_pairs(p), eps[3])))
            if not sub.ok:
                rep.add("counit-not-an-icon", (p, s))
            if eps[1] != embed_string(b, project_simplex(s)) or eps[2] != s:
                rep.add("counit-endpoints", (p, s))
            # triangle P(eps) = 1_P
            if project_icon(eps) != lv.identity[project_simplex(s)]:
                rep.add("triangle-P-epsilon", (p, s))
            if _is_hom(b, s):
                try:
                    inv_comps = tuple(b.inv2(c) for c in eps[3])
                except ValueError:
                    rep.add("counit-not-invertible-on-segal", (p, s))
                else:
                    sub = validate_icon_components(b, cn.variant, s, eps[1],
                                                   dict(zip(_pairs(p), inv_comps)))
                    if not sub.ok:
                        rep.add("counit-inverse-not-an-icon", (p, s))
        # triangle epsilon J = 1_J
        for x in lv.objects:
            rep.checked += 1
            jx = embed_string(b, x)
            if counit_icon(b, jx) != cn.identity_icon(jx):
                rep.add("triangle-epsilon-J", (p, x))
        # naturality of epsilon
        if p in cn.arrows:
            for k in cn.arrows[p]:
                rep.checked += 1
                jp_k = embed_arrow(b, project_icon(k))
                lhs = cn.compose_icons(k, counit_icon(b, k[1]))
                rhs = cn.compose_icons(counit_icon(b, k[2]), jp_k)
                if lhs != rhs:
                    rep.add("counit-not-natural", (p, k))
    return rep


def _is_hom(b: Bicategory, key: tuple) -> bool:
    for c in key[3] + key[4]:
        try:
            b.inv2(c)
        except ValueError:
            return False
    return True


# ---------------------------------------------------------------------------
# Normalization: the right adjoint to the inclusion of the unitary nerve.
# ---------------------------------------------------------------------------


def normalize_simplex(b: Bicategory, key: tuple) -> tuple:
    """F^u: same strict data, diagonal cells replaced by the forced
    normal values."""
    objs, edge, tri, unit = gs_unpack(key)
    p = len(objs) - 1
    n_edge = dict(edge)
    for i in range(p + 1):
        n_edge[(i, i)] = b.id1[objs[i]]
    n_tri = {}
    for (i, j, k) in _triples(p):
        if i == j:
            n_tri[(i, j, k)] = b.lunit[n_edge[(i, k)]]
        elif j == k:
            n_tri[(i, j, k)] = b.runit[n_edge[(i, j)]]
        else:
            n_tri[(i, j, k)] = tri[(i, j, k)]
    n_unit = {i: b.vid[b.id1[objs[i]]] for i in range(p + 1)}
    return gs_key(objs, n_edge, n_tri, n_unit)


def normalize_icon(b: Bicategory, k: tuple) -> tuple:
    p = len(k[1][1]) - 1
    comp = dict(zip(_pairs(p), k[3]))
    objs = k[1][1]
    n_comp = {}
    for (i, j) in _pairs(p):
        n_comp[(i, j)] = b.vid[b.id1[objs[i]]] if i == j else comp[(i, j)]
    return icon_key(normalize_simplex(b, k[1]), normalize_simplex(b, k[2]),
                    tuple(n_comp[ij] for ij in _pairs(p)))


def counit_nu(b: Bicategory, key: tuple) -> tuple:
    """nu_F: F^u => F; identity on off-diagonal edges, Fhat_i on the diagonal."""
    objs, edge, _, unit = gs_unpack(key)
    p = len(objs) - 1
    comps = tuple(unit[i] if i == j else b.vid[edge[(i, j)]] for (i, j) in _pairs(p))
    return icon_key(normalize_simplex(b, key), key, comps)


def normalization(b: Bicategory, p: int, full: CategoricalNerve,
                  unitary: CategoricalNerve, pair_budget: int = 200_000) -> CheckReport:
    """Verify (-)^u: level p of the full nerve -> unitary level p is a
    functor right adjoint to the inclusion (identity unit, counit nu).

    Object-quantified checks (both triangle identities) are exhaustive;
    pair-quantified functoriality runs when the composable-pair count fits
    the budget.
    """
    rep = CheckReport(subject="normalization")
    uset = set(unitary.objects[p])
    u_arrset = unitary.arrow_set(p) if p in unitary.arrows else None

    for s in full.objects[p]:
        rep.checked += 1
        su = normalize_simplex(b, s)
        if su not in uset:
            rep.add("normalization-left-unitary-nerve", (p, s))
        nu = counit_nu(b, s)
        sub = validate_icon_components(b, full.variant, nu[1], nu[2],
                                       dict(zip(_pairs(p), nu[3])))
        if not sub.ok:
            rep.add("nu-not-an-icon", (p, s))
        # triangle 1: on a normal simplex, normalization is the identity
        # and nu is the identity icon
        if s in uset:
            if su != s:
                rep.add("normalization-not-identity-on-normal", (p, s))
            if nu != full.identity_icon(s):
                rep.add("triangle-nu-on-normal", (p, s))
        # triangle 2: (nu_F)^u is the identity icon of F^u
        if normalize_icon(b, nu) != full.identity_icon(su):
            rep.add("triangle-nu-normalized", (p, s))

    if p in full.arrows:
        for k in full.arrows[p]:
            rep.checked += 1
            ku = normalize_icon(b, k)
            if u_arrset is not None and ku not in u_arrset:
                rep.add("normalized-icon-not-unitary", (p, k))
            # naturality of nu: nu_G . (k)^u = k . nu_F
            lhs = full.compose_icons(counit_nu(b, k[2]), ku)
            rhs = full.compose_icons(k, counit_nu(b, k[1]))
            if lhs != rhs:
                rep.add("nu-not-natural", (p, k))
        npairs = sum(len(full.arrows_out(p, k[2])) for k in full.arrows[p])
        if npairs <= pair_budget:
            for k1 in full.arrows[p]:
                for k2 in full.arrows_out(p, k1[2]):
                    rep.checked += 1
                    if normalize_icon(b, full.compose_icons(k2, k1)) != \
                            full.compose_icons(normalize_icon(b, k2), normalize_icon(b, k1)):
                        rep.add("normalization-not-functorial", (p, k2, k1))
        else:
            rep.notes[f"level-{p}-functoriality-pairs"] = "skipped: pair budget"
        for s in full.objects[p]:
            if normalize_icon(b, full.identity_icon(s)) != \
                    full.identity_icon(normalize_simplex(b, s)):
                rep.add("normalization-identity", (p, s))
    return rep
