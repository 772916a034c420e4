"""Canonical encoding and ordering of cell/simplex identifiers.

Identifiers are strings, ints, or arbitrarily nested tuples of those.  The
encoding is injective, so sorting by it gives a deterministic total order,
which every construction uses to emit byte-stable output.
"""

from __future__ import annotations

from typing import Hashable


def enc(x: Hashable) -> str:
    if isinstance(x, str):
        return "s" + repr(x)
    if isinstance(x, bool):
        return "b1" if x else "b0"
    if isinstance(x, int):
        return f"i{x}"
    if isinstance(x, tuple):
        return "t(" + ",".join(enc(e) for e in x) + ")"
    if isinstance(x, frozenset):
        return "f{" + ",".join(sorted(enc(e) for e in x)) + "}"
    raise TypeError(f"unsupported identifier type: {type(x)!r}")


def canon_sorted(ids) -> tuple:
    return tuple(sorted(ids, key=enc))
