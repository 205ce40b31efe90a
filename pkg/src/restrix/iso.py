"""Brute-force isomorphism testing for biunary algebras, with pruning.

The search fixes 1 -> 1, partitions elements by an iterated invariant
refinement, and propagates forced assignments (images of products and of
unary values) so the branching factor stays close to the number of
generators.
"""

from __future__ import annotations

import os

from .errors import SizeLimitError

DEFAULT_MAX_SIZE = 512


def max_search_size():
    env = os.environ.get("RESTRIX_MAX_SIZE")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_SIZE


def _refine_colors(S):
    n = S.size
    use_inv = S.inv is not None
    colors = [
        (
            x == S.one,
            S.star[x] == x,
            S.plus[x] == x,
            S.mul[x][x] == x,
        )
        for x in range(n)
    ]
    colors = _canon(colors)
    while True:
        nxt = []
        for x in range(n):
            local = sorted(
                (colors[y], colors[S.mul[x][y]], colors[S.mul[y][x]])
                for y in range(n)
            )
            key = (
                colors[x],
                colors[S.star[x]],
                colors[S.plus[x]],
                colors[S.inv[x]] if use_inv else -1,
                tuple(local),
            )
            nxt.append(key)
        nxt = _canon(nxt)
        if nxt == colors:
            return colors
        colors = nxt


def _canon(keys):
    order = {}
    for k in sorted(set(keys), key=repr):
        order[k] = len(order)
    return [order[k] for k in keys]


def _color_histogram(colors):
    hist = {}
    for c in colors:
        hist[c] = hist.get(c, 0) + 1
    return sorted(hist.items())


def find_isomorphism(S1, S2, max_size=None):
    """A (2,1,1,0)-isomorphism S1 -> S2 as an index tuple, or None.

    When both algebras carry inverse tables the map must respect them too.
    """
    limit = max_size if max_size is not None else max_search_size()
    if S1.size > limit or S2.size > limit:
        raise SizeLimitError(
            f"isomorphism search limited to size {limit}; got {S1.size}, {S2.size}"
        )
    if S1.size != S2.size:
        return None
    use_inv = S1.inv is not None and S2.inv is not None
    c1 = _refine_colors(S1)
    c2 = _refine_colors(S2)
    if _color_histogram(c1) != _color_histogram(c2):
        return None
    n = S1.size
    candidates = {c: [y for y in range(n) if c2[y] == c] for c in set(c1)}

    fwd = [-1] * n
    used = [False] * n

    def assign(x, y, trail):
        """Map x -> y and propagate every forced consequence."""
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            if fwd[a] != -1:
                if fwd[a] != b:
                    return False
                continue
            if used[b] or c1[a] != c2[b]:
                return False
            fwd[a] = b
            used[b] = True
            trail.append((a, b))
            stack.append((S1.star[a], S2.star[b]))
            stack.append((S1.plus[a], S2.plus[b]))
            if use_inv:
                stack.append((S1.inv[a], S2.inv[b]))
            for z in range(n):
                if fwd[z] != -1:
                    stack.append((S1.mul[a][z], S2.mul[b][fwd[z]]))
                    stack.append((S1.mul[z][a], S2.mul[fwd[z]][b]))
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            a, b = trail.pop()
            fwd[a] = -1
            used[b] = False

    order = sorted(range(n), key=lambda x: (len(candidates[c1[x]]), c1[x], x))

    def search(trail):
        x = next((z for z in order if fwd[z] == -1), None)
        if x is None:
            return True
        for y in candidates[c1[x]]:
            if used[y]:
                continue
            mark = len(trail)
            if assign(x, y, trail) and search(trail):
                return True
            undo(trail, mark)
        return False

    trail = []
    if not assign(S1.one, S2.one, trail):
        return None
    if search(trail):
        return tuple(fwd)
    return None


def is_isomorphism(S1, S2, fwd):
    if sorted(fwd) != list(range(S1.size)) or S1.size != S2.size:
        return False
    if fwd[S1.one] != S2.one:
        return False
    for x in range(S1.size):
        if fwd[S1.star[x]] != S2.star[fwd[x]]:
            return False
        if fwd[S1.plus[x]] != S2.plus[fwd[x]]:
            return False
        for y in range(S1.size):
            if fwd[S1.mul[x][y]] != S2.mul[fwd[x]][fwd[y]]:
                return False
    return True
