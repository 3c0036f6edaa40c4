"""Exact self-intersection numbers for conjugacy classes in free groups.

On a surface with boundary the fundamental group is free, and a one-vertex
fat graph (spine with its induced rotation) determines a circular order on
the ends of the universal cover, a 2r-regular tree.  The minimal
self-intersection number of a primitive cyclically reduced class equals
the number of linked pairs of its cyclic permutations: two bi-infinite
periodic lines cross exactly when their endpoint pairs separate each other
on the boundary circle.

A proper power u^k of a primitive u traversing a geodesic k times is
assigned the standard perturbed count k^2 * si(u) + (k - 1).
"""

from __future__ import annotations

from .spine import SpineGroup, cyclic_reduce, invert, primitive_root


class _End:
    """Infinite reduced word with eventually periodic letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: tuple[int, ...]):
        self.letters = letters  # expanded prefix, long enough for comparisons


def _expand(period: tuple[int, ...], start: int, length: int) -> tuple[int, ...]:
    p = len(period)
    return tuple(period[(start + t) % p] for t in range(length))


def _key_tables(rotation: tuple[int, ...]):
    n = len(rotation)
    pos = {a: k for k, a in enumerate(rotation)}
    first = dict(pos)
    after: dict[tuple[int, int], int] = {}
    for prev in rotation:
        # order of next letters after cutting the rotation at -prev... the
        # incoming direction at a vertex entered by `prev` is the dart -prev
        cut = pos[-prev]
        order = [rotation[(cut + 1 + t) % n] for t in range(n - 1)]
        for k, b in enumerate(order):
            after[(prev, b)] = k
    return first, after


def _end_key(letters: tuple[int, ...], first, after) -> tuple[int, ...]:
    out = [first[letters[0]]]
    for k in range(1, len(letters)):
        out.append(after[(letters[k - 1], letters[k])])
    return tuple(out)


def self_intersection(word: tuple[int, ...], group: SpineGroup) -> int:
    """Geometric self-intersection number of a free conjugacy class."""
    w = cyclic_reduce(tuple(word))
    if not w:
        raise ValueError("empty word has no geodesic representative")
    u, k = primitive_root(w)
    s = _primitive_self_intersection(u, group)
    if k == 1:
        return s
    return k * k * s + (k - 1)


def is_proper_power(word: tuple[int, ...]) -> bool:
    w = cyclic_reduce(tuple(word))
    if not w:
        return False
    return primitive_root(w)[1] > 1


def _primitive_self_intersection(u: tuple[int, ...], group: SpineGroup) -> int:
    n = len(u)
    if n == 1:
        return 0
    first, after = _key_tables(group.rotation)
    depth = 2 * n + 4
    v = invert(u)
    ends = []
    for i in range(n):
        plus = _expand(u, i, depth)
        minus = _expand(v, (n - i) % n, depth)
        ends.append((plus, minus))
    keys = {}
    for i in range(n):
        keys[("+", i)] = _end_key(ends[i][0], first, after)
        keys[("-", i)] = _end_key(ends[i][1], first, after)
    ranked = sorted(keys, key=lambda t: keys[t])
    for a, b in zip(ranked, ranked[1:]):
        if keys[a] == keys[b]:
            raise AssertionError(f"coincident axis endpoints for {u}: {a} vs {b}")
    position = {t: k for k, t in enumerate(ranked)}

    count = 0
    for i in range(n):
        ai, bi = position[("+", i)], position[("-", i)]
        lo, hi = min(ai, bi), max(ai, bi)
        for j in range(i + 1, n):
            cj, dj = position[("+", j)], position[("-", j)]
            inside = (lo < cj < hi) + (lo < dj < hi)
            if inside == 1:
                count += 1
    return count
