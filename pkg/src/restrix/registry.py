"""Curated desk-scale instances used by the verification harnesses and
the tests: small groups, all monoids of order at most 3, two semilattices,
the symmetric inverse monoid on 2 points, and the 3-element model of the
free restriction monoid over the idempotent-generated 2-element monoid."""

from __future__ import annotations

from itertools import permutations, product

from .core import (
    FiniteBiunary,
    FiniteMonoid,
    FiniteSemilattice,
    associativity_defect,
)
from .partialbij import symmetric_inverse_monoid


def trivial_monoid():
    return FiniteMonoid(((0,),), 0)


def cyclic_group(n):
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteMonoid(mul, 0)


def direct_product(M1, M2):
    els = [(a, b) for a in range(M1.size) for b in range(M2.size)]
    ix = {e: i for i, e in enumerate(els)}
    mul = tuple(
        tuple(ix[(M1.mul[a1][a2], M2.mul[b1][b2])] for (a2, b2) in els)
        for (a1, b1) in els
    )
    return FiniteMonoid(mul, ix[(M1.one, M2.one)])


def klein_four_group():
    return direct_product(cyclic_group(2), cyclic_group(2))


def symmetric_group_3():
    perms = sorted(permutations(range(3)))
    ix = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(ix[tuple(p[q[i]] for i in range(3))] for q in perms) for p in perms
    )
    return FiniteMonoid(mul, ix[(0, 1, 2)])


def idempotent_pair_monoid():
    """{1, a} with a^2 = a."""
    return FiniteMonoid(((0, 1), (1, 1)), 0)


def monoids_up_to_order_3():
    """All monoids of order <= 3 up to isomorphism (1 + 2 + 7 of them)."""
    out = [trivial_monoid(), cyclic_group(2), idempotent_pair_monoid()]
    tables = []
    for cells in product(range(3), repeat=4):
        mul = (
            (0, 1, 2),
            (1, cells[0], cells[1]),
            (2, cells[2], cells[3]),
        )
        if associativity_defect(mul) is None:
            tables.append(mul)
    swap = {0: 0, 1: 2, 2: 1}
    seen = set()
    for mul in tables:
        if mul in seen:
            continue
        out.append(FiniteMonoid(mul, 0))
        mirrored = tuple(
            tuple(swap[mul[swap[i]][swap[j]]] for j in range(3)) for i in range(3)
        )
        seen.add(mul)
        seen.add(mirrored)
    return tuple(out)


def two_chain():
    """1 > e."""
    return FiniteSemilattice(((0, 1), (1, 1)), 0)


def diamond():
    """top > a, b > bottom with a, b incomparable."""
    #        top a  b  bot
    meet = (
        (0, 1, 2, 3),
        (1, 1, 3, 3),
        (2, 3, 2, 3),
        (3, 3, 3, 3),
    )
    return FiniteSemilattice(meet, 0)


def example_fr_model():
    """The 3-element restriction monoid {1, a, e} with a^2 = a and
    e = a* = a+, ea = ae = a; the free restriction monoid over {1, a}."""
    mul = (
        (0, 1, 2),
        (1, 1, 1),
        (2, 1, 2),
    )
    star = (0, 2, 2)
    plus = (0, 2, 2)
    return FiniteBiunary(mul, star, plus, 0)


def monoid_as_reduced(M: FiniteMonoid) -> FiniteBiunary:
    """Any monoid is a restriction monoid with x* = x+ = 1."""
    ones = (M.one,) * M.size
    return FiniteBiunary(M.mul, ones, ones, M.one)


def group_as_inverse(M: FiniteMonoid) -> FiniteBiunary:
    inv = M.inverse_table()
    if inv is None:
        raise ValueError("not a group")
    ones = (M.one,) * M.size
    return FiniteBiunary(M.mul, ones, ones, M.one, inv=inv)


GROUPS = {
    "Z2": cyclic_group(2),
    "Z3": cyclic_group(3),
    "Z2xZ2": klein_four_group(),
    "S3": symmetric_group_3(),
}

GROUP_NAMES = {
    "Z2": ("0", "1"),
    "Z3": ("0", "1", "2"),
    "Z2xZ2": ("00", "01", "10", "11"),
    "S3": ("e", "s12", "s13", "r231", "r312", "s23"),
}


def registry_monoids():
    """Named base monoids for the expansion harnesses."""
    named = {f"M{M.size}_{i}": M for i, M in enumerate(monoids_up_to_order_3())}
    named.update(GROUPS)
    return named


def registry_restriction_instances():
    """Named restriction monoids for the structural harnesses.

    Prefix expansions are included separately by the harnesses that need
    them, to keep this list construction-free.
    """
    from .partialbij import munn_monoid  # local import to avoid a cycle

    out = {}
    for i, M in enumerate(monoids_up_to_order_3()):
        out[f"reduced M{M.size}_{i}"] = monoid_as_reduced(M)
    out["example model"] = example_fr_model()
    out["two-chain semilattice"] = two_chain().as_restriction()
    out["diamond semilattice"] = diamond().as_restriction()
    out["I(2)"] = symmetric_inverse_monoid(2)[0]
    out["Munn monoid of the diamond"] = munn_monoid(diamond())[0]
    return out
