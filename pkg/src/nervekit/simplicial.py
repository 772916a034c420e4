"""Truncated simplicial and bisimplicial sets, their maps and homotopies.

Simplicial sets are truncated at a bound N; an operator is defined within
the truncation iff both its source and target levels exist, and every law
is quantified over defined instances only.  Bisimplicial sets carry an
explicit materialized region of bidegrees (a rectangle or a total-degree
staircase) under the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .report import CheckReport, InsufficientTruncation
from .util import canon_sorted, enc

SimplexId = Hashable


@dataclass
class SSet:
    """A simplicial set truncated at ``bound``.

    ``levels[p]`` lists the p-simplices in canonical order; ``face[(p, i)]``
    and ``degen[(p, i)]`` are the total operator tables d_i: S_p -> S_{p-1}
    and s_i: S_p -> S_{p+1}.  Immutable after construction.
    """

    bound: int
    levels: tuple[tuple[SimplexId, ...], ...]
    face: dict[tuple[int, int], dict]
    degen: dict[tuple[int, int], dict]
    _index: dict = field(default_factory=dict, repr=False)

    def level(self, p: int) -> tuple[SimplexId, ...]:
        if not 0 <= p <= self.bound:
            raise InsufficientTruncation(f"level {p} beyond bound {self.bound}")
        return self.levels[p]

    def d(self, p: int, i: int, x: SimplexId) -> SimplexId:
        return self.face[(p, i)][x]

    def s(self, p: int, i: int, x: SimplexId) -> SimplexId:
        return self.degen[(p, i)][x]

    def index(self, p: int) -> dict:
        if p not in self._index:
            self._index[p] = {x: k for k, x in enumerate(self.levels[p])}
        return self._index[p]

    def degenerate(self, p: int) -> set:
        """Simplices of S_p lying in the image of some degeneracy."""
        if p == 0 or p > self.bound:
            return set()
        out: set = set()
        for i in range(p):
            out.update(self.degen[(p - 1, i)].values())
        return out

    def nondegenerate(self, p: int) -> tuple[SimplexId, ...]:
        deg = self.degenerate(p)
        return tuple(x for x in self.levels[p] if x not in deg)


def sset_from_functions(
    bound: int,
    levels: dict[int, Iterable[SimplexId]],
    face_fn: Callable[[int, int, SimplexId], SimplexId],
    degen_fn: Callable[[int, int, SimplexId], SimplexId],
) -> SSet:
    lv = tuple(canon_sorted(levels.get(p, ())) for p in range(bound + 1))
    face = {}
    degen = {}
    for p in range(1, bound + 1):
        for i in range(p + 1):
            face[(p, i)] = {x: face_fn(p, i, x) for x in lv[p]}
    for p in range(bound):
        for i in range(p + 1):
            degen[(p, i)] = {x: degen_fn(p, i, x) for x in lv[p]}
    return SSet(bound, lv, face, degen)


def sset_equal(a: SSet, b: SSet) -> bool:
    """Strict equality: same bound, same simplex ids, same operator tables."""
    return (
        a.bound == b.bound
        and a.levels == b.levels
        and a.face == b.face
        and a.degen == b.degen
    )


def sset_relabel(s: SSet, key_fn: Callable[[int, SimplexId], SimplexId]) -> SSet:
    """Rename simplices by ``key_fn(p, x)``; raises if the renaming collides."""
    fwd = []
    inv = []
    for p in range(s.bound + 1):
        m = {x: key_fn(p, x) for x in s.levels[p]}
        if len(set(m.values())) != len(m):
            raise ValueError(f"relabeling not injective at level {p}")
        fwd.append(m)
        inv.append({v: k for k, v in m.items()})
    return sset_from_functions(
        s.bound,
        {p: fwd[p].values() for p in range(s.bound + 1)},
        lambda p, i, x: fwd[p - 1][s.d(p, i, inv[p][x])],
        lambda p, i, x: fwd[p + 1][s.s(p, i, inv[p][x])],
    )


def validate_simplicial_set(s: SSet) -> CheckReport:
    rep = CheckReport(subject="simplicial set")
    for p in range(s.bound + 1):
        seen = set(s.levels[p])
        if len(seen) != len(s.levels[p]):
            rep.add("duplicate-simplex", (p,), kind="structural")
        # tables total, values land in the right level
        for i in range(p + 1):
            if p >= 1:
                tab = s.face.get((p, i))
                if tab is None or set(tab) != seen:
                    rep.add("face-table-domain", (p, i), kind="structural")
                    continue
                lower = set(s.levels[p - 1])
                for x, y in tab.items():
                    if y not in lower:
                        rep.add("face-dangling", (p, i, x), kind="structural")
            if p + 1 <= s.bound:
                tab = s.degen.get((p, i))
                if tab is None or set(tab) != seen:
                    rep.add("degeneracy-table-domain", (p, i), kind="structural")
                    continue
                upper = set(s.levels[p + 1])
                for x, y in tab.items():
                    if y not in upper:
                        rep.add("degeneracy-dangling", (p, i, x), kind="structural")
    if rep.structural():
        return rep

    for p in range(2, s.bound + 1):
        for j in range(p + 1):
            for i in range(j):
                # d_i d_j = d_{j-1} d_i  (i < j)
                for x in s.levels[p]:
                    rep.checked += 1
                    if s.d(p - 1, i, s.d(p, j, x)) != s.d(p - 1, j - 1, s.d(p, i, x)):
                        rep.add("d_i d_j = d_{j-1} d_i", (p, i, j, x))
    for p in range(s.bound - 1):
        for i in range(p + 1):
            for j in range(i, p + 1):
                # s_i s_j = s_{j+1} s_i  (i <= j)
                for x in s.levels[p]:
                    rep.checked += 1
                    if s.s(p + 1, i, s.s(p, j, x)) != s.s(p + 1, j + 1, s.s(p, i, x)):
                        rep.add("s_i s_j = s_{j+1} s_i", (p, i, j, x))
    for p in range(s.bound):
        for j in range(p + 1):
            for i in range(p + 2):
                for x in s.levels[p]:
                    rep.checked += 1
                    y = s.d(p + 1, i, s.s(p, j, x))
                    if i < j:
                        ok = y == s.s(p - 1, j - 1, s.d(p, i, x)) if p >= 1 else y == x
                        rule = "d_i s_j = s_{j-1} d_i"
                    elif i in (j, j + 1):
                        ok = y == x
                        rule = "d_j s_j = 1 = d_{j+1} s_j"
                    else:
                        ok = y == s.s(p - 1, j, s.d(p, i - 1, x)) if p >= 1 else y == x
                        rule = "d_i s_j = s_j d_{i-1}"
                    if not ok:
                        rep.add(rule, (p, i, j, x))
    return rep


@dataclass
class SimplicialMap:
    source: SSet
    target: SSet
    comps: dict[int, dict]

    @property
    def bound(self) -> int:
        return min(self.source.bound, self.target.bound, max(self.comps) if self.comps else -1)

    def __call__(self, p: int, x: SimplexId) -> SimplexId:
        return self.comps[p][x]


def simplicial_map_from_function(source: SSet, target: SSet, fn, bound: int | None = None) -> SimplicialMap:
    b = min(source.bound, target.bound) if bound is None else bound
    return SimplicialMap(source, target, {p: {x: fn(p, x) for x in source.levels[p]} for p in range(b + 1)})


def identity_map(s: SSet) -> SimplicialMap:
    return simplicial_map_from_function(s, s, lambda p, x: x)


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    b = min(f.bound, g.bound)
    return SimplicialMap(f.source, g.target, {p: {x: g(p, f(p, x)) for x in f.source.levels[p]} for p in range(b + 1)})


def validate_simplicial_map(f: SimplicialMap) -> CheckReport:
    rep = CheckReport(subject="simplicial map")
    b = f.bound
    for p in range(b + 1):
        comp = f.comps.get(p)
        if comp is None or set(comp) != set(f.source.levels[p]):
            rep.add("component-domain", (p,), kind="structural")
            continue
        tgt = set(f.target.levels[p])
        for x, y in comp.items():
            if y not in tgt:
                rep.add("component-dangling", (p, x), kind="structural")
    if rep.structural():
        return rep
    for p in range(1, b + 1):
        for i in range(p + 1):
            for x in f.source.levels[p]:
                rep.checked += 1
                if f(p - 1, f.source.d(p, i, x)) != f.target.d(p, i, f(p, x)):
                    rep.add("commutes-with-face", (p, i, x))
    for p in range(b):
        for i in range(p + 1):
            for x in f.source.levels[p]:
                rep.checked += 1
                if f(p + 1, f.source.s(p, i, x)) != f.target.s(p, i, f(p, x)):
                    rep.add("commutes-with-degeneracy", (p, i, x))
    return rep


# ---------------------------------------------------------------------------
# Simplicial homotopies.
#
# A homotopy H: f => g between maps S -> S' is a system H_m: S_q -> S'_{q+1},
# 0 <= m <= q, with d_0 H_0 = f and d_{q+1} H_q = g at the ends.  The
# identity list below is the conventional one keyed to that orientation; the
# prism form is a map S x Delta[1] -> S' with f along the vertex-1 end.
# ---------------------------------------------------------------------------


@dataclass
class SimplicialHomotopy:
    f: SimplicialMap
    g: SimplicialMap
    comps: dict[tuple[int, int], dict]  # (q, m) -> map S_q -> S'_{q+1}

    @property
    def bound(self) -> int:
        qs = [q for q, _ in self.comps]
        return max(qs) if qs else -1

    def h(self, q: int, m: int, x: SimplexId) -> SimplexId:
        return self.comps[(q, m)][x]


def check_homotopy_identities(
    qmax: int,
    domain_level: Callable[[int], Iterable],
    f_fn: Callable[[int, SimplexId], SimplexId],
    g_fn: Callable[[int, SimplexId], SimplexId],
    h_fn: Callable[[int, int, SimplexId], SimplexId],
    d_src: Callable[[int, int, SimplexId], SimplexId],
    s_src: Callable[[int, int, SimplexId], SimplexId] | None,
    d_tgt: Callable[[int, int, SimplexId], SimplexId],
    s_tgt: Callable[[int, int, SimplexId], SimplexId] | None,
    src_degen_bound: int,
    tgt_degen_bound: int,
) -> CheckReport:
    """Functional core of the homotopy identity suite.

    Checks, for every q <= qmax and every q-simplex x of the domain:
    d_0 H_0 = f, d_{q+1} H_q = g, d_i H_m = H_{m-1} d_i (i < m),
    d_{m+1} H_{m+1} = d_{m+1} H_m, d_i H_m = H_m d_{i-1} (i > m+1),
    s_i H_m = H_{m+1} s_i (i <= m), s_i H_m = H_m s_{i-1} (i > m),
    the degeneracy rows only where both sides are defined.
    """
    rep = CheckReport(subject="simplicial homotopy")
    for q in range(qmax + 1):
        for x in domain_level(q):
            hs = [h_fn(q, m, x) for m in range(q + 1)]
            rep.checked += 1
            if d_tgt(q + 1, 0, hs[0]) != f_fn(q, x):
                rep.add("d_0 H_0 = f", (q, x))
            if d_tgt(q + 1, q + 1, hs[q]) != g_fn(q, x):
                rep.add("d_{q+1} H_q = g", (q, x))
            for m in range(q + 1):
                for i in range(m):
                    if d_tgt(q + 1, i, hs[m]) != h_fn(q - 1, m - 1, d_src(q, i, x)):
                        rep.add("d_i H_m = H_{m-1} d_i", (q, i, m, x))
                for i in range(m + 2, q + 2):
                    if m == q and i == q + 1:
                        continue  # covered by the g end condition
                    if d_tgt(q + 1, i, hs[m]) != h_fn(q - 1, m, d_src(q, i - 1, x)):
                        rep.add("d_i H_m = H_m d_{i-1}", (q, i, m, x))
            for m in range(q):
                if d_tgt(q + 1, m + 1, hs[m + 1]) != d_tgt(q + 1, m + 1, hs[m]):
                    rep.add("d_{m+1} H_{m+1} = d_{m+1} H_m", (q, m, x))
            if s_src is None or s_tgt is None:
                continue
            if q + 1 > src_degen_bound or q + 2 > tgt_degen_bound or q + 1 > qmax:
                continue
            for m in range(q + 1):
                for i in range(q + 2):
                    if i <= m:
                        if s_tgt(q + 1, i, hs[m]) != h_fn(q + 1, m + 1, s_src(q, i, x)):
                            rep.add("s_i H_m = H_{m+1} s_i", (q, i, m, x))
                    else:
                        if s_tgt(q + 1, i, hs[m]) != h_fn(q + 1, m, s_src(q, i - 1, x)):
                            rep.add("s_i H_m = H_m s_{i-1}", (q, i, m, x))
    return rep


def check_simplicial_homotopy(hty: SimplicialHomotopy) -> CheckReport:
    f, g = hty.f, hty.g
    rep = CheckReport(subject="simplicial homotopy")
    if f.source is not g.source or f.target is not g.target:
        if f.source.levels != g.source.levels or f.target.levels != g.target.levels:
            rep.add("common-endpoints", (), kind="structural")
            return rep
    src, tgt = f.source, f.target
    qmax = hty.bound
    for q in range(qmax + 1):
        for m in range(q + 1):
            comp = hty.comps.get((q, m))
            if comp is None or set(comp) != set(src.levels[q]):
                rep.add("component-domain", (q, m), kind="structural")
    if rep.structural():
        return rep
    rep.merge(check_homotopy_identities(
        qmax,
        lambda q: src.levels[q],
        lambda q, x: f(q, x),
        lambda q, x: g(q, x),
        hty.h,
        src.d,
        src.s,
        tgt.d,
        tgt.s,
        src.bound - 1,
        tgt.bound - 1,
    ))
    return rep


def constant_homotopy(f: SimplicialMap, qmax: int | None = None) -> SimplicialHomotopy:
    """H_m = s_m . f_q, the identity homotopy f => f."""
    q_hi = min(f.bound, f.target.bound - 1) if qmax is None else qmax
    comps = {
        (q, m): {x: f.target.s(q, m, f(q, x)) for x in f.source.levels[q]}
        for q in range(q_hi + 1)
        for m in range(q + 1)
    }
    return SimplicialHomotopy(f, f, comps)


def product_sset(x: SSet, y: SSet, bound: int | None = None) -> SSet:
    b = min(x.bound, y.bound) if bound is None else bound
    return sset_from_functions(
        b,
        {p: [(a, c) for a in x.levels[p] for c in y.levels[p]] for p in range(b + 1)},
        lambda p, i, ac: (x.d(p, i, ac[0]), y.d(p, i, ac[1])),
        lambda p, i, ac: (x.s(p, i, ac[0]), y.s(p, i, ac[1])),
    )


def interval_sset(bound: int) -> SSet:
    """Delta[1] truncated at ``bound``; p-simplices are 0/1 tuples (v_0<=...<=v_p)."""
    def maps(p):
        return [tuple([0] * (p + 1 - k) + [1] * k) for k in range(p + 2)]
    return sset_from_functions(
        bound,
        {p: maps(p) for p in range(bound + 1)},
        lambda p, i, t: t[:i] + t[i + 1:],
        lambda p, i, t: t[:i] + (t[i],) + t[i:],
    )


def homotopy_to_prism(hty: SimplicialHomotopy) -> SimplicialMap:
    """Prism form S x Delta[1] -> S' of a component-form homotopy.

    A prism p-simplex is (x, tau) with tau in Delta[1]_p; tau = const 1 maps
    to f(x), tau = const 0 to g(x), and a jump after slot m to d_{m+1} H_m(x).
    """
    src, tgt = hty.f.source, hty.f.target
    b = min(hty.bound, src.bound, tgt.bound)
    prod = product_sset(src, interval_sset(b), bound=b)

    def comp(p, xt):
        x, tau = xt
        zeros = sum(1 for v in tau if v == 0)
        m = zeros - 1
        if m == -1:
            return hty.f(p, x)
        if m == p:
            return hty.g(p, x)
        return tgt.d(p + 1, m + 1, hty.h(p, m, x))

    return simplicial_map_from_function(prod, tgt, comp, bound=b)


def prism_to_homotopy(prism: SimplicialMap, f: SimplicialMap, g: SimplicialMap) -> SimplicialHomotopy:
    """Component form of a prism map; inverse to :func:`homotopy_to_prism`."""
    src = f.source
    b = min(prism.bound, src.bound - 1, f.target.bound - 1)
    comps = {}
    for q in range(b + 1):
        for m in range(q + 1):
            zeta = tuple([0] * (m + 1) + [1] * (q + 1 - m))
            comps[(q, m)] = {x: prism(q + 1, (src.s(q, m, x), zeta)) for x in src.levels[q]}
    return SimplicialHomotopy(f, g, comps)


# ---------------------------------------------------------------------------
# Bisimplicial sets.
# ---------------------------------------------------------------------------


def rect_region(pmax: int, qmax: int) -> frozenset:
    return frozenset((p, q) for p in range(pmax + 1) for q in range(qmax + 1))


def staircase_region(total: int) -> frozenset:
    return frozenset((p, q) for p in range(total + 1) for q in range(total + 1 - p))


@dataclass
class BisimplicialSet:
    """Bisimplicial set materialized on an explicit region of bidegrees.

    Horizontal operators move p, vertical ones move q; the two families
    commute.  A table is present iff both endpoints lie in the region.
    """

    region: frozenset
    levels: dict[tuple[int, int], tuple]
    dh: dict[tuple[int, int, int], dict]
    sh: dict[tuple[int, int, int], dict]
    dv: dict[tuple[int, int, int], dict]
    sv: dict[tuple[int, int, int], dict]

    def has(self, p: int, q: int) -> bool:
        return (p, q) in self.region

    def level(self, p: int, q: int) -> tuple:
        if (p, q) not in self.region:
            raise InsufficientTruncation(f"bidegree ({p},{q}) not materialized")
        return self.levels[(p, q)]

    def face_h(self, p, q, i, x):
        return self.dh[(p, q, i)][x]

    def face_v(self, p, q, j, x):
        return self.dv[(p, q, j)][x]

    def degen_h(self, p, q, i, x):
        return self.sh[(p, q, i)][x]

    def degen_v(self, p, q, j, x):
        return self.sv[(p, q, j)][x]

    def h_degenerate(self, p: int, q: int) -> set:
        out: set = set()
        if p >= 1 and (p - 1, q) in self.region:
            for i in range(p):
                out.update(self.sh[(p - 1, q, i)].values())
        return out

    def v_degenerate(self, p: int, q: int) -> set:
        out: set = set()
        if q >= 1 and (p, q - 1) in self.region:
            for j in range(q):
                out.update(self.sv[(p, q - 1, j)].values())
        return out


def bisset_from_functions(region, levels, dh_fn, sh_fn, dv_fn, sv_fn) -> BisimplicialSet:
    region = frozenset(region)
    lv = {pq: canon_sorted(levels.get(pq, ())) for pq in region}
    dh, sh, dv, sv = {}, {}, {}, {}
    for (p, q) in region:
        if p >= 1 and (p - 1, q) in region:
            for i in range(p + 1):
                dh[(p, q, i)] = {x: dh_fn(p, q, i, x) for x in lv[(p, q)]}
        if (p + 1, q) in region:
            for i in range(p + 1):
                sh[(p, q, i)] = {x: sh_fn(p, q, i, x) for x in lv[(p, q)]}
        if q >= 1 and (p, q - 1) in region:
            for j in range(q + 1):
                dv[(p, q, j)] = {x: dv_fn(p, q, j, x) for x in lv[(p, q)]}
        if (p, q + 1) in region:
            for j in range(q + 1):
                sv[(p, q, j)] = {x: sv_fn(p, q, j, x) for x in lv[(p, q)]}
    return BisimplicialSet(region, lv, dh, sh, dv, sv)


def validate_bisimplicial_set(s: BisimplicialSet) -> CheckReport:
    rep = CheckReport(subject="bisimplicial set")

    def row(q):
        ps = sorted(p for (p, qq) in s.region if qq == q)
        if ps != list(range(len(ps))):
            return None
        return SSet(
            len(ps) - 1,
            tuple(s.levels[(p, q)] for p in ps),
            {(p, i): s.dh[(p, q, i)] for p in ps if p >= 1 and (p - 1, q) in s.region for i in range(p + 1)},
            {(p, i): s.sh[(p, q, i)] for p in ps if (p + 1, q) in s.region for i in range(p + 1)},
        )

    def col(p):
        qs = sorted(q for (pp, q) in s.region if pp == p)
        if qs != list(range(len(qs))):
            return None
        return SSet(
            len(qs) - 1,
            tuple(s.levels[(p, q)] for q in qs),
            {(q, j): s.dv[(p, q, j)] for q in qs if q >= 1 and (p, q - 1) in s.region for j in range(q + 1)},
            {(q, j): s.sv[(p, q, j)] for q in qs if (p, q + 1) in s.region for j in range(q + 1)},
        )

    for q in sorted({q for (_, q) in s.region}):
        r = row(q)
        if r is None:
            rep.add("row-region-not-contiguous", (q,), kind="structural")
            continue
        sub = validate_simplicial_set(r)
        for v in sub.violations:
            rep.add("row " + v.rule, (q,) + v.witness, kind=v.kind)
        rep.checked += sub.checked
    for p in sorted({p for (p, _) in s.region}):
        c = col(p)
        if c is None:
            rep.add("column-region-not-contiguous", (p,), kind="structural")
            continue
        sub = validate_simplicial_set(c)
        for v in sub.violations:
            rep.add("column " + v.rule, (p,) + v.witness, kind=v.kind)
        rep.checked += sub.checked

    # horizontal operators commute with vertical ones
    for (p, q) in sorted(s.region):
        for x in s.levels[(p, q)]:
            if p >= 1 and q >= 1 and (p - 1, q) in s.region and (p, q - 1) in s.region \
                    and (p - 1, q - 1) in s.region:
                for i in range(p + 1):
                    for j in range(q + 1):
                        rep.checked += 1
                        if s.face_v(p - 1, q, j, s.face_h(p, q, i, x)) != \
                                s.face_h(p, q - 1, i, s.face_v(p, q, j, x)):
                            rep.add("dh-dv-commute", (p, q, i, j, x))
            if p >= 1 and (p - 1, q) in s.region and (p, q + 1) in s.region and (p - 1, q + 1) in s.region:
                for i in range(p + 1):
                    for j in range(q + 1):
                        if s.degen_v(p - 1, q, j, s.face_h(p, q, i, x)) != \
                                s.face_h(p, q + 1, i, s.degen_v(p, q, j, x)):
                            rep.add("dh-sv-commute", (p, q, i, j, x))
            if q >= 1 and (p, q - 1) in s.region and (p + 1, q) in s.region and (p + 1, q - 1) in s.region:
                for i in range(p + 1):
                    for j in range(q + 1):
                        if s.face_v(p + 1, q, j, s.degen_h(p, q, i, x)) != \
                                s.degen_h(p, q - 1, i, s.face_v(p, q, j, x)):
                            rep.add("sh-dv-commute", (p, q, i, j, x))
            if (p + 1, q) in s.region and (p, q + 1) in s.region and (p + 1, q + 1) in s.region:
                for i in range(p + 1):
                    for j in range(q + 1):
                        if s.degen_v(p + 1, q, j, s.degen_h(p, q, i, x)) != \
                                s.degen_h(p, q + 1, i, s.degen_v(p, q, j, x)):
                            rep.add("sh-sv-commute", (p, q, i, j, x))
    return rep


def external_product(x: SSet, y: SSet) -> BisimplicialSet:
    """The bisimplicial set (p, q) |-> X_p x Y_q."""
    region = rect_region(x.bound, y.bound)
    return bisset_from_functions(
        region,
        {(p, q): [(a, b) for a in x.levels[p] for b in y.levels[q]] for (p, q) in region},
        lambda p, q, i, ab: (x.d(p, i, ab[0]), ab[1]),
        lambda p, q, i, ab: (x.s(p, i, ab[0]), ab[1]),
        lambda p, q, j, ab: (ab[0], y.d(q, j, ab[1])),
        lambda p, q, j, ab: (ab[0], y.s(q, j, ab[1])),
    )


def diag(s: BisimplicialSet) -> SSet:
    """Diagonal simplicial set n |-> S_{n,n} with d_i = d_i^h d_i^v, s_i = s_i^h s_i^v."""
    n = 0
    while s.has(n + 1, n + 1) and (s.has(n, n + 1) or s.has(n + 1, n)):
        n += 1
    if not s.has(0, 0):
        raise InsufficientTruncation("bidegree (0,0) missing")

    def face(p, i, x):
        if s.has(p - 1, p):
            return s.face_v(p - 1, p, i, s.face_h(p, p, i, x))
        return s.face_h(p, p - 1, i, s.face_v(p, p, i, x))

    def degen(p, i, x):
        if s.has(p + 1, p):
            return s.degen_v(p + 1, p, i, s.degen_h(p, p, i, x))
        return s.degen_h(p, p + 1, i, s.degen_v(p, p, i, x))

    return sset_from_functions(n, {p: s.level(p, p) for p in range(n + 1)}, face, degen)


def wbar(s: BisimplicialSet) -> SSet:
    """Codiagonal (bar/total) simplicial set of a bisimplicial set.

    A p-simplex is a tuple (t_0, ..., t_p) with t_m in S_{m, p-m} subject to
    the matching condition d_0^v t_m = d_{m+1}^h t_{m+1}.
    """
    n = 0
    while all(s.has(m, n + 1 - m) for m in range(n + 2)):
        n += 1

    levels: dict[int, list] = {}
    for p in range(n + 1):
        # assemble matching tuples from the top entry down
        partial: list[tuple] = [(t,) for t in s.level(p, 0)]
        for m in range(p - 1, -1, -1):
            fibers: dict = {}
            for t in s.level(m, p - m):
                fibers.setdefault(s.face_v(m, p - m, 0, t), []).append(t)
            nxt = []
            for tup in partial:
                key = s.face_h(m + 1, p - m - 1, m + 1, tup[0])
                for t in fibers.get(key, ()):
                    nxt.append((t,) + tup)
            partial = nxt
        levels[p] = [tuple(tup) for tup in partial]

    def face(p, i, tup):
        out = []
        for m in range(p):
            if m < i:
                out.append(s.face_v(m, p - m, i - m, tup[m]))
            else:
                out.append(s.face_h(m + 1, p - m - 1, i, tup[m + 1]))
        return tuple(out)

    def degen(p, i, tup):
        out = []
        for m in range(p + 2):
            if m <= i:
                out.append(s.degen_v(m, p - m, i - m, tup[m]))
            else:
                out.append(s.degen_h(m - 1, p - m + 1, i, tup[m - 1]))
        return tuple(out)

    return sset_from_functions(n, levels, face, degen)


def phi(s: BisimplicialSet, diag_s: SSet | None = None, wbar_s: SSet | None = None) -> SimplicialMap:
    """The natural comparison map diag S -> Wbar S.

    Carries a p-simplex t in S_{p,p} to the tuple whose m-th entry is
    (d_{m+1}^h)^{p-m} (d_0^v)^m t.
    """
    dg = diag(s) if diag_s is None else diag_s
    wb = wbar(s) if wbar_s is None else wbar_s
    b = min(dg.bound, wb.bound)

    def comp(p, t):
        out = []
        for m in range(p + 1):
            u = t
            for k in range(m):
                u = s.face_v(p, p - k, 0, u)
            for k in range(p - m):
                u = s.face_h(p - k, p - m, m + 1, u)
            out.append(u)
        return tuple(out)

    return simplicial_map_from_function(dg, wb, comp, bound=b)
