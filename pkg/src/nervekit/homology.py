"""Integral simplicial homology via Smith normal form.

Chains are the normalized complex on nondegenerate simplices, over
arbitrary-precision integers (no modular shortcuts), so torsion coefficients
are exact.  Bisimplicial input is handled through the total complex of the
binormalized double complex, which computes the homology of the diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .report import InsufficientTruncation
from .simplicial import BisimplicialSet, SSet


def _row_sub(rows, cols, r, r2, q):
    # row_r -= q * row_r2
    for c, v in list(rows[r2].items()):
        new = rows.get(r, {}).get(c, 0) - q * v
        if new:
            rows.setdefault(r, {})[c] = new
            cols.setdefault(c, set()).add(r)
        else:
            if c in rows.get(r, {}):
                del rows[r][c]
                cols[c].discard(r)
    if r in rows and not rows[r]:
        del rows[r]


def _col_sub(rows, cols, c, c2, q):
    # col_c -= q * col_c2
    for r in list(cols[c2]):
        v = rows[r][c2]
        new = rows[r].get(c, 0) - q * v
        if new:
            rows[r][c] = new
            cols.setdefault(c, set()).add(r)
        else:
            if c in rows[r]:
                del rows[r][c]
                cols[c].discard(r)


def smith_normal_form(entries: dict) -> list[int]:
    """Invariant factors of an integer matrix given as {(row, col): value}.

    Returns the positive invariant factors in divisibility order; the rank
    is their count.
    """
    rows: dict = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
    cols: dict = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    diag: list[int] = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1))
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, pr, pc = best
        while True:
            p = rows[pr][pc]
            for r in [r for r in cols[pc] if r != pr]:
                q = rows[r][pc] // p
                if q:
                    _row_sub(rows, cols, r, pr, q)
            live = cols[pc]
            if len(live) > 1:
                pr = min(live, key=lambda r: (abs(rows[r][pc]), r))
                continue
            p = rows[pr][pc]
            for c in [c for c in rows[pr] if c != pc]:
                q = rows[pr][c] // p
                if q:
                    _col_sub(rows, cols, c, pc, q)
            if len(rows[pr]) > 1:
                pc = min(rows[pr], key=lambda c: (abs(rows[pr][c]), c))
                continue
            break
        diag.append(abs(rows[pr][pc]))
        del rows[pr]
        cols[pc].discard(pr)
        if not cols[pc]:
            del cols[pc]

    # normalize the diagonal into a divisibility chain
    d = diag[:]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
    return sorted(d)


@dataclass(frozen=True)
class HomologyResult:
    """Betti number and torsion coefficients per degree 0..k_max."""

    degrees: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def k_max(self) -> int:
        return len(self.degrees) - 1

    def betti(self, k: int) -> int:
        return self.degrees[k][0]

    def torsion(self, k: int) -> tuple[int, ...]:
        return self.degrees[k][1]

    def to_json(self) -> dict:
        return {
            str(k): {"betti": b, "torsion": list(t)}
            for k, (b, t) in enumerate(self.degrees)
        }

    def __str__(self) -> str:
        def one(b, t):
            parts = ["Z"] * b + [f"Z/{m}" for m in t]
            return " + ".join(parts) if parts else "0"

        return ", ".join(f"H_{k} = {one(b, t)}" for k, (b, t) in enumerate(self.degrees))


def _homology_from_boundaries(sizes: list[int], boundaries: list[dict], k_max: int) -> HomologyResult:
    # boundaries[p] is the matrix of d: C_p -> C_{p-1} for 1 <= p <= k_max+1
    ranks = [0] * (k_max + 2)
    factors: list[list[int]] = [[] for _ in range(k_max + 2)]
    for p in range(1, k_max + 2):
        inv = smith_normal_form(boundaries[p])
        ranks[p] = len(inv)
        factors[p] = [m for m in inv if m > 1]
    degrees = []
    for k in range(k_max + 1):
        betti = sizes[k] - ranks[k] - ranks[k + 1]
        degrees.append((betti, tuple(factors[k + 1])))
    return HomologyResult(tuple(degrees))


def homology(s: SSet, k_max: int) -> HomologyResult:
    """Integral homology of the normalized chain complex, degrees 0..k_max."""
    if s.bound < k_max + 1:
        raise InsufficientTruncation(
            f"homology up to degree {k_max} needs truncation >= {k_max + 1}, have {s.bound}")
    nondeg = [s.nondegenerate(p) for p in range(k_max + 2)]
    index = [{x: i for i, x in enumerate(level)} for level in nondeg]
    boundaries: list[dict] = [dict() for _ in range(k_max + 2)]
    for p in range(1, k_max + 2):
        mat: dict = {}
        for col, x in enumerate(nondeg[p]):
            for i in range(p + 1):
                y = s.d(p, i, x)
                row = index[p - 1].get(y)
                if row is None:
                    continue  # degenerate face vanishes in the normalized complex
                key = (row, col)
                mat[key] = mat.get(key, 0) + (-1) ** i
        boundaries[p] = {k: v for k, v in mat.items() if v}
    return _homology_from_boundaries([len(l) for l in nondeg], boundaries, k_max)


def homology_total(s: BisimplicialSet, k_max: int) -> HomologyResult:
    """Homology of the diagonal of a bisimplicial set, via the total complex.

    Works on the binormalized double complex (generalized Eilenberg-Zilber),
    so only bidegrees with p + q <= k_max + 1 need to be materialized.
    """
    for n in range(k_max + 2):
        for p in range(n + 1):
            if not s.has(p, n - p):
                raise InsufficientTruncation(f"bidegree ({p},{n - p}) not materialized")

    basis: list[list[tuple]] = []
    index: list[dict] = []
    for n in range(k_max + 2):
        cells = []
        for p in range(n + 1):
            q = n - p
            hdeg = s.h_degenerate(p, q)
            vdeg = s.v_degenerate(p, q)
            for x in s.level(p, q):
                if x not in hdeg and x not in vdeg:
                    cells.append((p, q, x))
        basis.append(cells)
        index.append({cell: i for i, cell in enumerate(cells)})

    boundaries: list[dict] = [dict() for _ in range(k_max + 2)]
    for n in range(1, k_max + 2):
        mat: dict = {}
        for col, (p, q, x) in enumerate(basis[n]):
            if p >= 1:
                for i in range(p + 1):
                    y = s.face_h(p, q, i, x)
                    row = index[n - 1].get((p - 1, q, y))
                    if row is not None:
                        key = (row, col)
                        mat[key] = mat.get(key, 0) + (-1) ** i
            if q >= 1:
                sign = (-1) ** p
                for j in range(q + 1):
                    y = s.face_v(p, q, j, x)
                    row = index[n - 1].get((p, q - 1, y))
                    if row is not None:
                        key = (row, col)
                        mat[key] = mat.get(key, 0) + sign * (-1) ** j
        boundaries[n] = {k: v for k, v in mat.items() if v}

    # d . d = 0 sanity check on the assembled total complex
    for n in range(2, k_max + 2):
        by_col: dict = {}
        for (r2, c2), w in boundaries[n - 1].items():
            by_col.setdefault(c2, []).append((r2, w))
        prod: dict = {}
        for (r, c), v in boundaries[n].items():
            for r2, w in by_col.get(r, ()):
                key = (r2, c)
                prod[key] = prod.get(key, 0) + w * v
        assert all(v == 0 for v in prod.values()), f"total differential fails d.d=0 at n={n}"

    return _homology_from_boundaries([len(b) for b in basis], boundaries, k_max)


def same_homology(a: HomologyResult, b: HomologyResult, k_max: int | None = None) -> bool:
    k = min(a.k_max, b.k_max) if k_max is None else k_max
    return all(a.degrees[i] == b.degrees[i] for i in range(k + 1))
