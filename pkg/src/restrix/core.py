"""Finite (2,1,1,0)-algebras given by dense index tables.

A biunary algebra stores a multiplication table plus two unary tables
(written ``star`` and ``plus``); restriction monoids are the biunary
algebras passing :func:`check_restriction_axioms`.  All values are
immutable after construction and every operation is a pure function.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import InputError, TheoremViolation

Table = tuple  # tuple of tuples of int


def _as_table(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def _as_row(row):
    return tuple(int(x) for x in row)


def _check_shape(size, one, mul, unaries):
    if size < 1:
        raise InputError("algebras must be nonempty")
    if not (0 <= one < size):
        raise InputError(f"identity index {one} out of range")
    if len(mul) != size or any(len(row) != size for row in mul):
        raise InputError("multiplication table is not size x size")
    for row in mul:
        for v in row:
            if not (0 <= v < size):
                raise InputError(f"table entry {v} out of range")
    for name, tab in unaries:
        if tab is None:
            continue
        if len(tab) != size or any(not (0 <= v < size) for v in tab):
            raise InputError(f"{name} table malformed")


def associativity_defect(mul):
    """Return a witness triple (i, j, k) where (ij)k != i(jk), or None."""
    t = np.asarray(mul, dtype=np.intp)
    left = t[t, :]          # left[i,j,k] = (ij)k
    right = t[:, t]         # right[i,j,k] = i(jk)
    bad = np.argwhere(left != right)
    if len(bad):
        i, j, k = (int(v) for v in bad[0])
        return (i, j, k)
    return None


def identity_defect(mul, one):
    for x in range(len(mul)):
        if mul[one][x] != x or mul[x][one] != x:
            return x
    return None


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite monoid; the table is validated at construction."""

    mul: Table
    one: int

    def __post_init__(self):
        object.__setattr__(self, "mul", _as_table(self.mul))
        _check_shape(len(self.mul), self.one, self.mul, [])
        w = identity_defect(self.mul, self.one)
        if w is not None:
            raise InputError(f"identity law fails at element {w}")
        w = associativity_defect(self.mul)
        if w is not None:
            raise InputError(f"multiplication not associative at {w}")

    @property
    def size(self):
        return len(self.mul)

    def is_left_cancellative(self):
        n = self.size
        for p in range(n):
            row = self.mul[p]
            if len(set(row)) != n:
                return False
        return True

    def is_right_cancellative(self):
        n = self.size
        for p in range(n):
            col = [self.mul[x][p] for x in range(n)]
            if len(set(col)) != n:
                return False
        return True

    def is_cancellative(self):
        return self.is_left_cancellative() and self.is_right_cancellative()

    def inverse_table(self):
        """Two-sided inverses for every element, or None if not a group."""
        inv = []
        for g in range(self.size):
            h = next(
                (
                    x
                    for x in range(self.size)
                    if self.mul[g][x] == self.one and self.mul[x][g] == self.one
                ),
                None,
            )
            if h is None:
                return None
            inv.append(h)
        return tuple(inv)

    def is_group(self):
        return self.inverse_table() is not None


@dataclass(frozen=True)
class FiniteBiunary:
    """Candidate restriction monoid: mul plus star/plus tables.

    Only the table shapes are validated here; whether the algebra is an
    actual restriction monoid is the job of :func:`check_restriction_axioms`.
    An optional inverse table marks algebras carrying inverse-monoid
    structure.
    """

    mul: Table
    star: tuple
    plus: tuple
    one: int
    inv: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "mul", _as_table(self.mul))
        object.__setattr__(self, "star", _as_row(self.star))
        object.__setattr__(self, "plus", _as_row(self.plus))
        if self.inv is not None:
            object.__setattr__(self, "inv", _as_row(self.inv))
        _check_shape(
            len(self.mul),
            self.one,
            self.mul,
            [("star", self.star), ("plus", self.plus), ("inv", self.inv)],
        )

    @property
    def size(self):
        return len(self.mul)

    def as_monoid(self):
        return FiniteMonoid(self.mul, self.one)


@dataclass(frozen=True)
class FiniteSemilattice:
    """Finite meet-semilattice with a top element."""

    meet: Table
    top: int

    def __post_init__(self):
        object.__setattr__(self, "meet", _as_table(self.meet))
        _check_shape(len(self.meet), self.top, self.meet, [])
        n = len(self.meet)
        for x in range(n):
            if self.meet[x][x] != x:
                raise InputError(f"meet not idempotent at {x}")
            if self.meet[self.top][x] != x or self.meet[x][self.top] != x:
                raise InputError(f"top not neutral at {x}")
            for y in range(n):
                if self.meet[x][y] != self.meet[y][x]:
                    raise InputError(f"meet not commutative at ({x},{y})")
        w = associativity_defect(self.meet)
        if w is not None:
            raise InputError(f"meet not associative at {w}")

    @property
    def size(self):
        return len(self.meet)

    def leq(self, x, y):
        return self.meet[x][y] == x

    def ideal(self, e):
        """Principal ideal of e, sorted."""
        return tuple(x for x in range(self.size) if self.leq(x, e))

    def as_restriction(self):
        """The semilattice as a restriction monoid with x* = x+ = x."""
        idx = tuple(range(self.size))
        return FiniteBiunary(self.meet, idx, idx, self.top, inv=idx)


@dataclass(frozen=True)
class Congruence:
    """Partition of element indices, stored as a normalized class map.

    Class ids are consecutive from 0 in order of first occurrence, so two
    equal partitions always compare equal.
    """

    class_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "class_of", _as_row(self.class_of))
        seen = {}
        for c in self.class_of:
            if c not in seen:
                if c != len(seen):
                    raise InputError("congruence class ids not normalized")
                seen[c] = True

    @staticmethod
    def from_classes(n, classes):
        class_of = [None] * n
        for i, block in enumerate(classes):
            for x in block:
                class_of[x] = i
        if any(c is None for c in class_of):
            raise InputError("partition does not cover all elements")
        return Congruence(_normalize_class_map(class_of))

    @property
    def num_classes(self):
        return max(self.class_of) + 1 if self.class_of else 0

    def classes(self):
        blocks = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.class_of):
            blocks[c].append(x)
        return [tuple(b) for b in blocks]

    def same(self, a, b):
        return self.class_of[a] == self.class_of[b]


def _normalize_class_map(class_of):
    remap = {}
    out = []
    for c in class_of:
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return tuple(out)


@dataclass(frozen=True)
class PartialOrderRel:
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", frozenset((int(a), int(b)) for a, b in self.pairs)
        )
        elems = {a for a, _ in self.pairs} | {b for _, b in self.pairs}
        for x in elems:
            if (x, x) not in self.pairs:
                raise InputError(f"order not reflexive at {x}")
        for a, b in self.pairs:
            if a != b and (b, a) in self.pairs:
                raise InputError(f"order not antisymmetric at ({a},{b})")
            for c in elems:
                if (b, c) in self.pairs and (a, c) not in self.pairs:
                    raise InputError(f"order not transitive at ({a},{b},{c})")

    def leq(self, a, b):
        return (a, b) in self.pairs


# ---------------------------------------------------------------------------
# restriction axioms


def _np_tables(S):
    mul = np.asarray(S.mul, dtype=np.intp)
    star = np.asarray(S.star, dtype=np.intp)
    plus = np.asarray(S.plus, dtype=np.intp)
    return mul, star, plus


# Each identity is evaluated on the full (x, y) grid; names match how the
# violation is reported.
_IDENTITIES = (
    ("x x* = x", lambda m, s, p, X, Y: (m[X, s[X]], X)),
    ("x* y* = y* x*", lambda m, s, p, X, Y: (m[s[X], s[Y]], m[s[Y], s[X]])),
    ("(x y*)* = x* y*", lambda m, s, p, X, Y: (s[m[X, s[Y]]], m[s[X], s[Y]])),
    ("x* y = y (x y)*", lambda m, s, p, X, Y: (m[s[X], Y], m[Y, s[m[X, Y]]])),
    ("x+ x = x", lambda m, s, p, X, Y: (m[p[X], X], X)),
    ("x+ y+ = y+ x+", lambda m, s, p, X, Y: (m[p[X], p[Y]], m[p[Y], p[X]])),
    ("(x+ y)+ = x+ y+", lambda m, s, p, X, Y: (p[m[p[X], Y]], m[p[X], p[Y]])),
    ("x y+ = (x y)+ x", lambda m, s, p, X, Y: (m[X, p[Y]], m[p[m[X, Y]], X])),
    ("(x+)* = x+", lambda m, s, p, X, Y: (s[p[X]], p[X])),
    ("(x*)+ = x*", lambda m, s, p, X, Y: (p[s[X]], s[X])),
)


def check_restriction_axioms(S):
    """Evaluate every instance of the defining identities on S.

    Returns a list of violation strings, empty iff S is a restriction
    monoid.  Malformed tables (bad identity element, non-associative
    multiplication) raise InputError before any identity is evaluated.
    """
    w = identity_defect(S.mul, S.one)
    if w is not None:
        raise InputError(f"identity law fails at element {w}")
    w = associativity_defect(S.mul)
    if w is not None:
        raise InputError(f"multiplication not associative at {w}")

    mul, star, plus = _np_tables(S)
    n = S.size
    X, Y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    report = []
    for name, eval_sides in _IDENTITIES:
        lhs, rhs = eval_sides(mul, star, plus, X, Y)
        lhs, rhs = np.broadcast_arrays(lhs, rhs)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j = (int(v) for v in bad[0])
            report.append(f"{name} fails at x={i}, y={j}")
    if S.star[S.one] != S.one or S.plus[S.one] != S.one:
        report.append("1* = 1+ = 1 fails")

    if not report:
        # Consequence identities must now hold; a failure here is a bug in
        # this module, not a property of the input.
        c1 = star[mul[X, Y]] == star[mul[star[X], Y]]
        c2 = plus[mul[X, Y]] == plus[mul[X, plus[Y]]]
        if not (bool(c1.all()) and bool(c2.all())):
            raise TheoremViolation("(xy)* = (x*y)* / (xy)+ = (xy+)+", "axiom checker")
    return report


def is_restriction_monoid(S):
    try:
        return not check_restriction_axioms(S)
    except InputError:
        return False


def _require_restriction(S):
    report = check_restriction_axioms(S)
    if report:
        raise InputError(f"not a restriction monoid: {report[0]}")


def projection_set(S):
    """Sorted projection indices; asserts the star and plus images agree."""
    stars = sorted(set(S.star))
    pluses = sorted(set(S.plus))
    if stars != pluses:
        raise InputError("star image differs from plus image")
    return tuple(stars)


def projections(S):
    """The semilattice of projections plus its embedding into S.

    Returns (Y, emb) where emb[i] is the S-index of the i-th element of Y.
    """
    _require_restriction(S)
    emb = projection_set(S)
    pos = {e: i for i, e in enumerate(emb)}
    meet = tuple(tuple(pos[S.mul[a][b]] for b in emb) for a in emb)
    return FiniteSemilattice(meet, pos[S.one]), emb


def natural_order(S):
    """a <= b iff a = e b for some projection e.

    Cross-checks the equivalent forms a = b a* and a = a+ b.
    """
    _require_restriction(S)
    P = projection_set(S)
    n = S.size
    pairs = set()
    for b in range(n):
        for e in P:
            pairs.add((S.mul[e][b], b))
    for a, b in product(range(n), repeat=2):
        by_def = (a, b) in pairs
        by_star = S.mul[b][S.star[a]] == a
        by_plus = S.mul[S.plus[a]][b] == a
        if not (by_def == by_star == by_plus):
            raise TheoremViolation(
                "a<=b iff a=b a* iff a=a+ b", witness=(a, b)
            )
    return PartialOrderRel(frozenset(pairs))


def leq(S, a, b):
    return S.mul[b][S.star[a]] == a


def congruence_closure(S, seed_pairs):
    """Least congruence of the biunary algebra containing the seed pairs."""
    n = S.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = deque()

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra
        queue.append((ra, rb))

    for a, b in seed_pairs:
        union(a, b)
    while queue:
        a, b = queue.popleft()
        union(S.star[a], S.star[b])
        union(S.plus[a], S.plus[b])
        if S.inv is not None:
            union(S.inv[a], S.inv[b])
        for c in range(n):
            union(S.mul[c][a], S.mul[c][b])
            union(S.mul[a][c], S.mul[b][c])
    return Congruence(_normalize_class_map([find(x) for x in range(n)]))


def sigma(S):
    """Least congruence identifying all projections.

    The closure result is cross-checked against both one-multiplier
    characterizations (ea = eb and ae = be for some projection e).
    """
    _require_restriction(S)
    P = projection_set(S)
    cong = congruence_closure(S, [(P[0], e) for e in P[1:]])
    for a, b in product(range(S.size), repeat=2):
        by_closure = cong.same(a, b)
        by_left = any(S.mul[e][a] == S.mul[e][b] for e in P)
        by_right = any(S.mul[a][e] == S.mul[b][e] for e in P)
        if not (by_closure == by_left == by_right):
            raise TheoremViolation("sigma characterizations", witness=(a, b))
    return cong


def is_reduced(S):
    return len(projection_set(S)) == 1


def is_proper(S):
    """sigma-related elements with equal star (or equal plus) coincide."""
    _require_restriction(S)
    cong = sigma(S)
    for a, b in product(range(S.size), repeat=2):
        if a != b and cong.same(a, b):
            if S.star[a] == S.star[b] or S.plus[a] == S.plus[b]:
                return False
    return True


def sigma_class_maxima(S):
    """Per sigma-class order maximum, or None if some class has none.

    A class with several maximal but incomparable elements has no maximum.
    """
    _require_restriction(S)
    cong = sigma(S)
    order = natural_order(S)
    maxima = []
    for block in cong.classes():
        best = [m for m in block if all(order.leq(x, m) for x in block)]
        if not best:
            return None
        maxima.append(best[0])  # an order maximum is unique
    return tuple(maxima)


def is_F_restriction(S):
    return sigma_class_maxima(S) is not None


def is_ample(S, side="both"):
    """Cancellation-transfer checks.

    left:  ca = cb  =>  c* a = c* b
    right: ac = bc  =>  a c+ = b c+
    """
    if side not in ("left", "right", "both"):
        raise InputError(f"unknown side {side!r}")
    _require_restriction(S)
    mul = np.asarray(S.mul, dtype=np.intp)
    star = np.asarray(S.star, dtype=np.intp)
    plus = np.asarray(S.plus, dtype=np.intp)
    ok = True
    if side in ("left", "both"):
        # ca = cb while c*a != c*b for some a,b,c
        for c in range(S.size):
            prem = mul[c, :]
            conc = mul[star[c], :]
            eq_p = prem[:, None] == prem[None, :]
            eq_c = conc[:, None] == conc[None, :]
            if bool((eq_p & ~eq_c).any()):
                ok = False
                break
    if ok and side in ("right", "both"):
        for c in range(S.size):
            prem = mul[:, c]
            conc = mul[:, plus[c]]
            eq_p = prem[:, None] == prem[None, :]
            eq_c = conc[:, None] == conc[None, :]
            if bool((eq_p & ~eq_c).any()):
                ok = False
                break
    return ok


def is_congruence(S, cong):
    n = S.size
    for a in range(n):
        for b in range(n):
            if not cong.same(a, b):
                continue
            if not cong.same(S.star[a], S.star[b]):
                return False
            if not cong.same(S.plus[a], S.plus[b]):
                return False
            if S.inv is not None and not cong.same(S.inv[a], S.inv[b]):
                return False
            for c in range(n):
                if not cong.same(S.mul[a][c], S.mul[b][c]):
                    return False
                if not cong.same(S.mul[c][a], S.mul[c][b]):
                    return False
    return True


def quotient(S, cong):
    """Quotient biunary algebra by a congruence."""
    if len(cong.class_of) != S.size:
        raise InputError("congruence size mismatch")
    if not is_congruence(S, cong):
        raise InputError("partition is not compatible with the operations")
    k = cong.num_classes
    rep = [None] * k
    for x in range(S.size - 1, -1, -1):
        rep[cong.class_of[x]] = x
    cmap = cong.class_of
    mul = tuple(tuple(cmap[S.mul[rep[i]][rep[j]]] for j in range(k)) for i in range(k))
    star = tuple(cmap[S.star[rep[i]]] for i in range(k))
    plus = tuple(cmap[S.plus[rep[i]]] for i in range(k))
    inv = tuple(cmap[S.inv[rep[i]]] for i in range(k)) if S.inv is not None else None
    return FiniteBiunary(mul, star, plus, cmap[S.one], inv=inv)


def quotient_monoid(S, cong):
    q = quotient(S, cong)
    return FiniteMonoid(q.mul, q.one)


# ---------------------------------------------------------------------------
# inverse monoids


def inverse_axiom_errors(mul, one, inv):
    """Violations of the inverse-monoid laws for the given tables."""
    errors = []
    w = identity_defect(mul, one)
    if w is not None:
        errors.append(f"identity law fails at {w}")
    w = associativity_defect(mul)
    if w is not None:
        errors.append(f"associativity fails at {w}")
    if errors:
        return errors
    n = len(mul)
    for x in range(n):
        if mul[mul[x][inv[x]]][x] != x:
            errors.append(f"x x' x = x fails at {x}")
            break
    for x in range(n):
        if inv[inv[x]] != x:
            errors.append(f"(x')' = x fails at {x}")
            break
    idem = [x for x in range(n) if mul[x][x] == x]
    for e in idem:
        for f in idem:
            if mul[e][f] != mul[f][e]:
                errors.append(f"idempotents do not commute at ({e},{f})")
                return errors
    return errors


def inverse_as_restriction(mul, one, inv):
    """Inverse monoid tables made into a restriction monoid via a* = a'a."""
    mul = _as_table(mul)
    inv = _as_row(inv)
    errors = inverse_axiom_errors(mul, one, inv)
    if errors:
        raise InputError(f"not an inverse monoid: {errors[0]}")
    n = len(mul)
    star = tuple(mul[inv[x]][x] for x in range(n))
    plus = tuple(mul[x][inv[x]] for x in range(n))
    S = FiniteBiunary(mul, star, plus, one, inv=inv)
    report = check_restriction_axioms(S)
    if report:
        raise TheoremViolation("inverse monoid as restriction monoid", report[0])
    return S


def idempotent_semilattice(S):
    """Idempotents of an inverse monoid as a semilattice, with embedding."""
    if S.inv is None:
        raise InputError("algebra carries no inverse table")
    emb = tuple(x for x in range(S.size) if S.mul[x][x] == x)
    pos = {e: i for i, e in enumerate(emb)}
    meet = tuple(tuple(pos[S.mul[a][b]] for b in emb) for a in emb)
    return FiniteSemilattice(meet, pos[S.one]), emb
