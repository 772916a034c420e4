"""Horn filling, coskeletality, and low homotopy invariants of a simplicial set."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .report import Budget, CheckReport
from .simplicial import SSet
from .util import canon_sorted, enc


def _compatible_tuples(s: SSet, n: int, positions: list[int], budget: Budget | None):
    """All ways to fill the given face positions of an n-simplex boundary.

    Yields dicts position -> (n-1)-simplex satisfying d_i x_j = d_{j-1} x_i
    for i < j (both assigned).
    """
    budget = budget or Budget()
    lower = s.levels[n - 1]

    def extend(assign: dict, remaining: list[int]):
        if not remaining:
            yield dict(assign)
            return
        j = remaining[0]
        for x in lower:
            budget.tick()
            ok = True
            for i, xi in assign.items():
                if i < j:
                    if n >= 2 and s.d(n - 1, i, x) != s.d(n - 1, j - 1, xi):
                        ok = False
                        break
                else:
                    if n >= 2 and s.d(n - 1, j, xi) != s.d(n - 1, i - 1, x):
                        ok = False
                        break
            if ok:
                assign[j] = x
                yield from extend(assign, remaining[1:])
                del assign[j]

    yield from extend({}, positions)


def horn_check(s: SSet, n: int, k: int, unique: bool = False, budget: Budget | None = None) -> CheckReport:
    """Enumerate every Lambda^k[n]-horn in ``s`` and count its fillers.

    Reports any horn without a filler (Kan failure) and, when ``unique`` is
    set, any horn with more than one (hypergroupoid failure).
    """
    if not (0 <= k <= n <= s.bound):
        raise ValueError(f"horn (n={n}, k={k}) out of range for bound {s.bound}")
    rep = CheckReport(subject=f"horn Lambda^{k}[{n}]")
    positions = [i for i in range(n + 1) if i != k]

    fillers: dict[tuple, int] = {}
    for y in s.levels[n]:
        key = tuple(s.d(n, i, y) for i in positions)
        fillers[key] = fillers.get(key, 0) + 1

    horns = 0
    for assign in _compatible_tuples(s, n, positions, budget):
        horns += 1
        key = tuple(assign[i] for i in positions)
        count = fillers.get(key, 0)
        rep.checked += 1
        if count == 0:
            rep.add("horn-without-filler", (n, k, key))
        elif unique and count != 1:
            rep.add("horn-with-multiple-fillers", (n, k, key), detail=f"{count} fillers")
    rep.notes["horns"] = horns
    return rep


def coskeletal_check(s: SSet, determinacy_from: int = 3, fillability_from: int = 4,
                     budget: Budget | None = None) -> CheckReport:
    """Boundary determinacy for p >= determinacy_from and boundary fillability
    for p >= fillability_from, up to the truncation bound."""
    rep = CheckReport(subject="coskeletality")
    for p in range(determinacy_from, s.bound + 1):
        seen: dict[tuple, object] = {}
        for y in s.levels[p]:
            bdry = tuple(s.d(p, i, y) for i in range(p + 1))
            rep.checked += 1
            if bdry in seen:
                rep.add("boundary-not-determining", (p, seen[bdry], y))
            seen[bdry] = y
    for p in range(fillability_from, s.bound + 1):
        filled = {tuple(s.d(p, i, y) for i in range(p + 1)) for y in s.levels[p]}
        for assign in _compatible_tuples(s, p, list(range(p + 1)), budget):
            bdry = tuple(assign[i] for i in range(p + 1))
            rep.checked += 1
            if bdry not in filled:
                rep.add("compatible-boundary-unfilled", (p, bdry))
    return rep


# ---------------------------------------------------------------------------
# pi_0 and the edge-path presentation of pi_1.
# ---------------------------------------------------------------------------


@dataclass
class Pi1Result:
    status: str  # "computed" | "undecided"
    generators: tuple
    relators: tuple  # words in generator indices; negative k means inverse of k-1
    order: int | None = None
    table: tuple | None = None  # multiplication table, elements 0..order-1, 0 = identity
    element_of_generator: dict = field(default_factory=dict)

    def abelian_invariants(self) -> tuple[int, ...]:
        """Invariant factors of the abelianization (0 = a free Z summand)."""
        from .homology import smith_normal_form

        ngen = len(self.generators)
        entries: dict = {}
        for r, word in enumerate(self.relators):
            for g in word:
                idx = abs(g) - 1
                entries[(r, idx)] = entries.get((r, idx), 0) + (1 if g > 0 else -1)
        inv = smith_normal_form({k: v for k, v in entries.items() if v})
        rank = ngen - len(inv)
        torsion = tuple(m for m in inv if m > 1)
        return torsion + (0,) * rank


def pi0(s: SSet) -> list[frozenset]:
    parent = {x: x for x in s.levels[0]}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in s.levels[1]:
        a, b = find(s.d(1, 0, e)), find(s.d(1, 1, e))
        if a != b:
            parent[a] = b
    comps: dict = {}
    for x in s.levels[0]:
        comps.setdefault(find(x), set()).add(x)
    return [frozenset(v) for v in sorted(comps.values(), key=lambda c: min(enc(x) for x in c))]


def _coset_enumeration(ngen: int, relators: list[list[int]], max_cosets: int):
    """HLT Todd-Coxeter over the trivial subgroup.

    Returns the closed coset table (rows = group elements, columns alternate
    g_i, g_i^-1; row 0 is the identity coset) or None when more than
    ``max_cosets`` cosets would be needed.
    """
    ncols = 2 * ngen

    def col(g: int) -> int:
        return 2 * (abs(g) - 1) + (0 if g > 0 else 1)

    table: list[list[int | None]] = [[None] * ncols]
    parent: list[int] = [0]
    pending: list[tuple[int, int]] = []

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def set_entry(a: int, c: int, b: int) -> None:
        a, b = find(a), find(b)
        cur = table[a][c]
        if cur is None:
            table[a][c] = b
        elif find(cur) != b:
            pending.append((cur, b))
        cur = table[b][c ^ 1]
        if cur is None:
            table[b][c ^ 1] = a
        elif find(cur) != a:
            pending.append((cur, a))

    def process_pending() -> None:
        while pending:
            x, y = pending.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if x > y:
                x, y = y, x
            parent[y] = x
            for c in range(ncols):
                t = table[y][c]
                table[y][c] = None
                if t is not None:
                    set_entry(x, c, find(t))

    def new_coset() -> int | None:
        if len(table) >= max_cosets:
            return None
        table.append([None] * ncols)
        parent.append(len(table) - 1)
        return len(table) - 1

    def scan(a: int, word: list[int]) -> bool:
        # enforce a . word = a, filling gaps HLT-style; False on overflow
        while True:
            a = find(a)
            f, i = a, 0
            while i < len(word):
                nxt = table[find(f)][col(word[i])]
                if nxt is None:
                    break
                f, i = find(nxt), i + 1
            b, j = a, len(word)
            while j > i:
                nxt = table[find(b)][col(word[j - 1]) ^ 1]
                if nxt is None:
                    break
                b, j = find(nxt), j - 1
            if i == j:
                if f != b:
                    pending.append((f, b))
                return True
            if j == i + 1:
                set_entry(f, col(word[i]), b)
                return True
            d = new_coset()
            if d is None:
                return False
            set_entry(f, col(word[i]), d)

    def fingerprint() -> tuple:
        live = [a for a in range(len(table)) if find(a) == a]
        holes = sum(1 for a in live for c in range(ncols) if table[a][c] is None)
        return (len(table), len(live), holes)

    while True:
        fp = None
        while fp != fingerprint():
            fp = fingerprint()
            for a in range(len(table)):
                if find(a) != a:
                    continue
                for word in relators:
                    if not scan(a, word):
                        return None
                    process_pending()
        hole = next(((a, c) for a in range(len(table)) if find(a) == a
                     for c in range(ncols) if table[a][c] is None), None)
        if hole is None:
            break
        d = new_coset()
        if d is None:
            return None
        set_entry(hole[0], hole[1], d)
        process_pending()

    live = [a for a in range(len(table)) if find(a) == a]
    renum = {a: i for i, a in enumerate(live)}
    return [[renum[find(table[a][c])] for c in range(ncols)] for a in live]


def pi1(s: SSet, basepoint=None, cutoff: int = 12) -> Pi1Result:
    """Edge-path presentation of pi_1 at the basepoint's component.

    Generators are the 1-simplices of the component; relators kill the
    spanning tree, the degenerate edges, and impose g(d_1 t) = g(d_2 t) g(d_0 t)
    for every 2-simplex t.  The group is then closed by bounded coset
    enumeration (at most 2**cutoff cosets); an overflow yields "undecided",
    never a wrong group.
    """
    if s.bound < 2:
        raise ValueError("pi1 needs truncation >= 2")
    verts = list(s.levels[0])
    if basepoint is None:
        basepoint = verts[0] if verts else None
    comp = next(c for c in pi0(s) if basepoint in c)

    edges = [e for e in s.levels[1] if s.d(1, 1, e) in comp]
    eidx = {e: i + 1 for i, e in enumerate(edges)}

    # spanning tree by BFS over the component; edge e runs d_1(e) <- ... wait:
    # e has vertices d_1(e) (vertex 0, target) and d_0(e) (vertex 1, source).
    tree: set = set()
    seen = {basepoint}
    frontier = [basepoint]
    adj: dict = {}
    for e in edges:
        a, b = s.d(1, 1, e), s.d(1, 0, e)
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    while frontier:
        v = frontier.pop(0)
        for w, e in sorted(adj.get(v, ()), key=lambda p: enc(p[1])):
            if w not in seen:
                seen.add(w)
                tree.add(e)
                frontier.append(w)

    relators: list[list[int]] = []
    for e in edges:
        if e in tree:
            relators.append([eidx[e]])
    degenerate = {s.s(0, 0, v) for v in comp}
    for e in edges:
        if e in degenerate:
            relators.append([eidx[e]])
    for t in s.levels[2]:
        e2, e1, e0 = s.d(2, 2, t), s.d(2, 1, t), s.d(2, 0, t)
        if e1 in eidx and e2 in eidx and e0 in eidx:
            # g(e1) = g(e2) g(e0)
            relators.append([-eidx[e1], eidx[e2], eidx[e0]])

    gens = tuple(edges)
    table = _coset_enumeration(len(gens), relators, max_cosets=2 ** cutoff)
    if table is None:
        return Pi1Result("undecided", gens, tuple(tuple(w) for w in relators))

    # element of each generator = image of coset 0 under that generator
    elem = {}
    for e in edges:
        elem[e] = table[0][2 * (eidx[e] - 1)]
    order = len(table)

    # multiplication table via generator words: reach each element from 0,
    # record a word, then act.
    words: dict[int, list[int]] = {0: []}
    queue = [0]
    while queue:
        a = queue.pop(0)
        for cidx in range(2 * len(gens)):
            b = table[a][cidx]
            if b not in words:
                g = cidx // 2 + 1
                words[b] = words[a] + [g if cidx % 2 == 0 else -g]
                queue.append(b)

    def act(a: int, word: list[int]) -> int:
        for g in word:
            a = table[a][2 * (abs(g) - 1) + (0 if g > 0 else 1)]
        return a

    mult = tuple(tuple(act(a, words[b]) for b in range(order)) for a in range(order))
    return Pi1Result("computed", gens, tuple(tuple(w) for w in relators), order, mult, elem)


def homotopy_invariants(s: SSet, basepoint=None, cutoff: int = 12):
    """(pi_0 components, pi_1 presentation with table when enumerable)."""
    return pi0(s), pi1(s, basepoint, cutoff)
