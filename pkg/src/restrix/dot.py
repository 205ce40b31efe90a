"""DOT renderings: the Hasse diagram of the natural order and right
Cayley graphs.  Output is sorted so re-runs are byte-identical."""

from __future__ import annotations

from .core import FiniteBiunary, natural_order
from .errors import InputError


def _quote(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def _node_lines(n, labels):
    lines = []
    for x in range(n):
        label = labels[x] if labels else str(x)
        lines.append(f"  n{x} [label={_quote(label)}];")
    return lines


def order_dot(S: FiniteBiunary, labels=None):
    """Hasse diagram of the natural order (covers only, drawn upward)."""
    order = natural_order(S)
    n = S.size
    strict = {(a, b) for (a, b) in order.pairs if a != b}
    covers = sorted(
        (a, b)
        for (a, b) in strict
        if not any((a, c) in strict and (c, b) in strict for c in range(n))
    )
    lines = ["digraph natural_order {", "  rankdir=BT;"]
    lines += _node_lines(n, labels)
    for a, b in covers:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cayley_dot(S: FiniteBiunary, generators=None, labels=None):
    """Right Cayley graph x -> x g for the chosen generators (all
    non-identity elements when unspecified)."""
    n = S.size
    if generators is None:
        generators = [g for g in range(n) if g != S.one]
    generators = sorted(set(generators))
    for g in generators:
        if not (0 <= g < n):
            raise InputError(f"generator index {g} out of range")
    lines = ["digraph cayley {"]
    lines += _node_lines(n, labels)
    for x in range(n):
        for g in generators:
            glabel = labels[g] if labels else str(g)
            lines.append(f"  n{x} -> n{S.mul[x][g]} [label={_quote(glabel)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
