"""Partial bijections of a finite set, and the Munn monoid of a semilattice.

The product alpha * beta applies beta first, so projections come out as
alpha* = identity on dom(alpha) and alpha+ = identity on ran(alpha).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteBiunary, FiniteSemilattice, inverse_as_restriction
from .errors import InputError, TheoremViolation


@dataclass(frozen=True)
class PartialBijection:
    size: int
    pairs: tuple  # sorted (x, f(x)) pairs, injective

    def __post_init__(self):
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        xs = [x for x, _ in pairs]
        ys = [y for _, y in pairs]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise InputError("partial map is not injective")
        for v in xs + ys:
            if not (0 <= v < self.size):
                raise InputError("partial map value out of range")

    @staticmethod
    def identity(size, subset=None):
        dom = range(size) if subset is None else subset
        return PartialBijection(size, tuple((x, x) for x in dom))

    @staticmethod
    def from_dict(size, mapping):
        return PartialBijection(size, tuple(mapping.items()))

    def dom(self):
        return frozenset(x for x, _ in self.pairs)

    def ran(self):
        return frozenset(y for _, y in self.pairs)

    def as_dict(self):
        return dict(self.pairs)

    def __call__(self, x):
        return self.as_dict()[x]

    def after(self, other):
        """self composed after other: x -> self(other(x))."""
        d = self.as_dict()
        return PartialBijection(
            self.size,
            tuple((x, d[y]) for x, y in other.pairs if y in d),
        )

    def inverse(self):
        return PartialBijection(self.size, tuple((y, x) for x, y in self.pairs))

    def restriction_of(self, other):
        """Natural order of partial maps: self is a restriction of other."""
        return set(self.pairs) <= set(other.pairs)

    # restriction-monoid operations of the symmetric inverse monoid
    def star_op(self):
        return PartialBijection.identity(self.size, sorted(self.dom()))

    def plus_op(self):
        return PartialBijection.identity(self.size, sorted(self.ran()))


def is_order_ideal(Y: FiniteSemilattice, subset) -> bool:
    sub = set(subset)
    return all(Y.meet[x][e] in sub for e in sub for x in range(Y.size))


def is_order_isomorphism(Y: FiniteSemilattice, f: PartialBijection) -> bool:
    """f preserves and reflects the order between its domain and range."""
    d = f.as_dict()
    for x in d:
        for y in d:
            if Y.leq(x, y) != Y.leq(d[x], d[y]):
                return False
    return True


def _ideal_isos(Y, src, dst):
    """All order-isomorphisms between two principal ideals (as dicts)."""
    if len(src) != len(dst):
        return []
    # match elements by the size of their ideal inside the sub-semilattice
    def profile(ideal, x):
        return sum(1 for y in ideal if Y.leq(y, x))

    src = sorted(src, key=lambda x: (profile(src, x), x))
    out = []

    def extend(i, mapping, used):
        if i == len(src):
            f = PartialBijection.from_dict(Y.size, mapping)
            if is_order_isomorphism(Y, f):
                out.append(f)
            return
        x = src[i]
        for y in dst:
            if y in used or profile(src, x) != profile(dst, y):
                continue
            ok = all(
                Y.leq(x, z) == Y.leq(y, mapping[z])
                and Y.leq(z, x) == Y.leq(mapping[z], y)
                for z in mapping
            )
            if ok:
                mapping[x] = y
                extend(i + 1, mapping, used | {y})
                del mapping[x]

    extend(0, {}, set())
    return out


def munn_monoid(Y: FiniteSemilattice):
    """The monoid of order-isomorphisms between principal ideals of Y.

    Returns (algebra, maps) where maps[i] is the partial bijection behind
    element i.  The algebra carries an inverse table and passes the
    restriction axioms.
    """
    elements = []
    for e in range(Y.size):
        for f in range(Y.size):
            elements.extend(_ideal_isos(Y, Y.ideal(e), Y.ideal(f)))
    elements = sorted(set(elements), key=lambda m: m.pairs)
    index = {m: i for i, m in enumerate(elements)}
    n = len(elements)
    mul = [[None] * n for _ in range(n)]
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            c = a.after(b)
            if c not in index:
                raise TheoremViolation("Munn monoid closed under composition", (i, j))
            mul[i][j] = index[c]
    inv = tuple(index[a.inverse()] for a in elements)
    one = index[PartialBijection.identity(Y.size)]
    return inverse_as_restriction(mul, one, inv), tuple(elements)


def symmetric_inverse_monoid(n):
    """All partial bijections on n points, with composition."""
    if n > 3:
        raise InputError("symmetric inverse monoid limited to 3 points here")
    from itertools import combinations, permutations

    elements = []
    pts = range(n)
    for k in range(n + 1):
        for dom in combinations(pts, k):
            for img in permutations(pts, k):
                elements.append(PartialBijection(n, tuple(zip(dom, img))))
    elements = sorted(set(elements), key=lambda m: (len(m.pairs), m.pairs))
    index = {m: i for i, m in enumerate(elements)}
    mul = [
        [index[a.after(b)] for b in elements]
        for a in elements
    ]
    inv = tuple(index[a.inverse()] for a in elements)
    one = index[PartialBijection.identity(n)]
    return inverse_as_restriction(mul, one, inv), tuple(elements)


def symmetric_inverse_restriction(Y: FiniteSemilattice):
    """I(Y) with its restriction-monoid operations on partial bijections.

    Helper for evaluating terms over partial maps; returns the operation
    bundle rather than tables (I(Y) can be large).
    """

    class _Ops:
        one = PartialBijection.identity(Y.size)

        @staticmethod
        def mul(a, b):
            return a.after(b)

        @staticmethod
        def star(a):
            return a.star_op()

        @staticmethod
        def plus(a):
            return a.plus_op()

    return _Ops
