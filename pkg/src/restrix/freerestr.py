"""The free restriction monoid on an alphabet, as pairs inside the free
inverse monoid.

An element is a pair (E, m): an idempotent Munn tree together with a
positive word, kept canonical so that E contains the path of m.  Equality
of elements is then plain pair equality.  The projection assigned to a
signed word u is computed by the suffix recursion ``compute_d``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .munn import (
    MunnTree,
    check_alphabet,
    fi_inv,
    fi_mul,
    fi_one,
    fi_plus,
    fi_star,
    idempotent_meet,
    tree_of_word,
)


def _positive(m, alphabet):
    if not isinstance(m, str):
        raise InputError("the word component must be a plain string of letters")
    for c in m:
        if c not in alphabet:
            raise InputError(f"letter {c!r} not in alphabet")
    return m


def _path(m, alphabet):
    return tree_of_word(tuple((c, 1) for c in m), alphabet)


@dataclass(frozen=True)
class FRPair:
    E: MunnTree
    m: str

    def __post_init__(self):
        if not self.E.is_idempotent():
            raise InputError("E component must be idempotent")
        _positive(self.m, self.E.alphabet)
        if not self.E.vertices >= _path(self.m, self.E.alphabet).vertices:
            raise InputError("pair not canonical: E misses the path of m")

    @property
    def alphabet(self):
        return self.E.alphabet

    def is_projection(self):
        return self.m == ""


def fr_canonicalize(E, m):
    """Meet E with the path of m; (E, m) and the result denote the same
    element."""
    if not E.is_idempotent():
        raise InputError("E component must be idempotent")
    m = _positive(m, E.alphabet)
    return FRPair(idempotent_meet(E, fi_plus(_path(m, E.alphabet))), m)


def fr_one(alphabet):
    return FRPair(fi_one(alphabet), "")


def fr_embed(m, alphabet):
    """The generator-word element with the smallest possible idempotent."""
    alphabet = check_alphabet(alphabet)
    return fr_canonicalize(fi_one(alphabet), m)


def fr_mul(x, y):
    E = idempotent_meet(x.E, fi_plus(fi_mul(_path(x.m, x.alphabet), y.E)))
    return fr_canonicalize(E, x.m + y.m)


def fr_star(x):
    return FRPair(fi_star(fi_mul(x.E, _path(x.m, x.alphabet))), "")


def fr_plus(x):
    return FRPair(x.E, "")


def fr_leq(x, y):
    return x.m == y.m and x.E.vertices >= y.E.vertices


def psi(x):
    """Project into the free inverse monoid: (E, m) -> E [m]."""
    return fi_mul(x.E, _path(x.m, x.alphabet))


def compute_d(word, alphabet=None, _swap_unary=False):
    """Projection assigned to a signed word by the suffix recursion.

    Empty word gives the identity; appending a positive letter a maps D to
    (D |a|)*, appending an inverse letter to (|a| D)+.  The ``_swap_unary``
    switch deliberately corrupts the recursion (star and plus exchanged)
    for sensitivity tests of the verification harness.
    """
    if alphabet is None:
        alphabet = tuple(sorted({c for c, _ in word})) or ("a",)
    alphabet = check_alphabet(alphabet)
    d = fr_one(alphabet)
    for c, s in word:
        if c not in alphabet:
            raise InputError(f"letter {c!r} not in alphabet")
        gen = fr_embed(c, alphabet)
        if s > 0:
            prod = fr_mul(d, gen)
            d = fr_plus(prod) if _swap_unary else fr_star(prod)
        else:
            prod = fr_mul(gen, d)
            d = fr_star(prod) if _swap_unary else fr_plus(prod)
    return d


def fr_psi_map(word, alphabet=None):
    """Image of D under psi, i.e. the tree of the idempotent part."""
    return compute_d(word, alphabet).E


def apply_pair(E, m, alphabet):
    """The element built from a partial-action pair: D_E |m| with D_E = (E, empty)."""
    return fr_mul(FRPair(E, ""), fr_embed(m, alphabet))
