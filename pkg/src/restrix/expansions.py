"""Expansion constructors: prefix expansions of groups, partial-action
products, reconstruction of proper monoids, homomorphism lifting, and the
product-side model of a presented expansion."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import (
    FiniteBiunary,
    FiniteMonoid,
    FiniteSemilattice,
    check_restriction_axioms,
    idempotent_semilattice,
    inverse_as_restriction,
    is_proper,
    projections,
    sigma,
)
from .errors import InputError, PreconditionError, TheoremViolation, UnsupportedInstance
from .iso import find_isomorphism
from .partialbij import PartialBijection
from .premorph import FinitePremorphism, abc_defect, premorphism_defects, underlying_premorphism
from .presentations import EnumerationResult


@dataclass(frozen=True)
class PrefixPair:
    """A finite subset of a group paired with a member; 1 must belong."""

    subset: frozenset
    g: int


@dataclass(frozen=True)
class PrefixExpansion:
    algebra: FiniteBiunary
    pairs: tuple
    group: FiniteMonoid
    names: tuple | None = None

    def label(self, i):
        pair = self.pairs[i]
        name = (lambda x: self.names[x]) if self.names else str
        inner = ",".join(name(x) for x in sorted(pair.subset))
        return "{%s}|%s" % (inner, name(pair.g))

    def labels(self):
        return tuple(self.label(i) for i in range(len(self.pairs)))

    @property
    def generator_map(self):
        """m -> index of ({1,m}, m), the canonical generating pair."""
        index = {p: i for i, p in enumerate(self.pairs)}
        return tuple(
            index[PrefixPair(frozenset({self.group.one, g}), g)]
            for g in range(self.group.size)
        )


def prefix_expansion_size(G: FiniteMonoid):
    """Count of pairs (A, g) with 1, g in A, by the subset formula."""
    if not G.is_group():
        raise InputError("prefix expansion requires a group")
    return sum(2 ** (G.size - len({G.one, g})) for g in range(G.size))


def prefix_expand_group(G: FiniteMonoid, names=None) -> PrefixExpansion:
    """All pairs (A, g) with 1, g in A <= G, multiplied by (A,g)(B,h) =
    (A u gB, gh); unary operations (A,g)* = (g'A, 1) and (A,g)+ = (A, 1)."""
    inv = G.inverse_table()
    if inv is None:
        raise InputError("prefix expansion requires a group")
    n = G.size
    pairs = []
    for g in range(n):
        base = {G.one, g}
        rest = sorted(set(range(n)) - base)
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                pairs.append(PrefixPair(frozenset(base | set(extra)), g))
    pairs.sort(key=lambda p: (p.g, len(p.subset), tuple(sorted(p.subset))))
    index = {p: i for i, p in enumerate(pairs)}

    def translate(g, A):
        return frozenset(G.mul[g][x] for x in A)

    mul = [
        [
            index[PrefixPair(p.subset | translate(p.g, q.subset), G.mul[p.g][q.g])]
            for q in pairs
        ]
        for p in pairs
    ]
    star = tuple(index[PrefixPair(translate(inv[p.g], p.subset), G.one)] for p in pairs)
    plus = tuple(index[PrefixPair(p.subset, G.one)] for p in pairs)
    inv_tab = tuple(
        index[PrefixPair(translate(inv[p.g], p.subset), inv[p.g])] for p in pairs
    )
    one = index[PrefixPair(frozenset({G.one}), G.one)]
    algebra = FiniteBiunary(mul, star, plus, one, inv=inv_tab)
    return PrefixExpansion(algebra, tuple(pairs), G, tuple(names) if names else None)


# ---------------------------------------------------------------------------
# partial-action product


@dataclass(frozen=True)
class PartialProduct:
    algebra: FiniteBiunary
    elements: tuple  # (y, t) index pairs
    phi: FinitePremorphism


def build_partial_product(phi: FinitePremorphism, check=True) -> PartialProduct:
    """The proper restriction monoid on pairs (y, t) with y in ran(phi(t)).

    Preconditions (PM1), (PM2), (A), (B), (C) are rejected with the
    violated axiom named; the construction is then verified to be a proper
    restriction monoid with projections the semilattice and quotient the
    source monoid.
    """
    defects = premorphism_defects(phi)
    if defects:
        raise PreconditionError(defects[0].split(":")[0].strip(), defects[0])
    bad = abc_defect(phi)
    if bad is not None:
        raise PreconditionError(bad[0], f"map of element {bad[1]}")

    T, Y = phi.source, phi.lattice
    elements = []
    for t in range(T.size):
        for y in sorted(phi.maps[t].ran()):
            elements.append((y, t))
    index = {e: i for i, e in enumerate(elements)}

    def mul_elt(a, b):
        (x, s), (y, t) = a, b
        f = phi.maps[s]
        z = f(Y.meet[f.inverse()(x)][y])
        return (z, T.mul[s][t])

    mul = [[index[mul_elt(a, b)] for b in elements] for a in elements]
    star = tuple(index[(phi.maps[s].inverse()(x), T.one)] for (x, s) in elements)
    plus = tuple(index[(x, T.one)] for (x, s) in elements)
    one = index[(Y.top, T.one)]
    algebra = FiniteBiunary(mul, star, plus, one)
    prod = PartialProduct(algebra, tuple(elements), phi)
    if check:
        _check_product(prod)
    return prod


def _check_product(prod: PartialProduct):
    algebra, elements, phi = prod.algebra, prod.elements, prod.phi
    T, Y = phi.source, phi.lattice
    report = check_restriction_axioms(algebra)
    if report:
        raise TheoremViolation("partial-action product is a restriction monoid", report[0])
    if not is_proper(algebra):
        raise TheoremViolation("partial-action product is proper")
    # projections are exactly the pairs (y, 1), with meet matching Y
    _, emb = projections(algebra)
    expected = [i for i, (y, t) in enumerate(elements) if t == T.one]
    if list(emb) != sorted(expected):
        raise TheoremViolation("projections of the product are the pairs (y, 1)")
    for i in expected:
        for j in expected:
            y1, y2 = elements[i][0], elements[j][0]
            if elements[algebra.mul[i][j]][0] != Y.meet[y1][y2]:
                raise TheoremViolation("projection meet matches the semilattice", (i, j))
    # sigma classes are indexed by the second component
    cong = sigma(algebra)
    for i, (y, t) in enumerate(elements):
        for j, (z, u) in enumerate(elements):
            if cong.same(i, j) != (t == u):
                raise TheoremViolation("sigma on the product compares components", (i, j))


def cg_reconstruct(S: FiniteBiunary, max_size=None):
    """Rebuild a proper restriction monoid from its quotient, projections
    and underlying premorphism; returns the product and an isomorphism."""
    phi = underlying_premorphism(S)  # raises unless proper
    prod = build_partial_product(phi)
    witness = find_isomorphism(S, prod.algebra, max_size=max_size)
    if witness is None:
        raise TheoremViolation("proper monoid reconstructs from its partial action")
    return prod, witness


# ---------------------------------------------------------------------------
# generator-driven homomorphism extension


def extend_on_generators(src: FiniteBiunary, dst: FiniteBiunary, images: dict):
    """The unique (2,1,1,0)-homomorphism extending the generator images.

    Returns (map, None) or (None, witness) when the extension conflicts;
    raises UnsupportedInstance if the images do not generate src.
    """
    n = src.size
    fwd = [-1] * n
    conflict = [None]

    def put(x, y):
        if fwd[x] == -1:
            fwd[x] = y
            return True
        if fwd[x] != y:
            conflict[0] = (x, fwd[x], y)
        return False

    put(src.one, dst.one)
    for x, y in images.items():
        put(x, y)
        if conflict[0]:
            return None, conflict[0]
    changed = True
    while changed and not conflict[0]:
        changed = False
        known = [x for x in range(n) if fwd[x] != -1]
        for x in known:
            changed |= put(src.star[x], dst.star[fwd[x]])
            changed |= put(src.plus[x], dst.plus[fwd[x]])
            if conflict[0]:
                return None, conflict[0]
        for x in known:
            for y in known:
                changed |= put(src.mul[x][y], dst.mul[fwd[x]][fwd[y]])
                if conflict[0]:
                    return None, conflict[0]
    if any(v == -1 for v in fwd):
        raise UnsupportedInstance("images do not generate the source algebra")
    return tuple(fwd), None


def _as_model(model):
    """Accept an EnumerationResult, PrefixExpansion or (algebra, genmap)."""
    if isinstance(model, EnumerationResult):
        if not model.closed:
            raise UnsupportedInstance("model enumeration did not close")
        return model.algebra, model.generator_map
    if isinstance(model, PrefixExpansion):
        return model.algebra, model.generator_map
    algebra, gmap = model
    return algebra, tuple(gmap)


def lift_homomorphism(alpha, src_model, dst_model):
    """Lift a monoid homomorphism to the expansions, so the projection
    square commutes; for prefix expansions the lift acts by
    (A, g) -> (alpha(A), alpha(g)), which is cross-checked."""
    src, src_gen = _as_model(src_model)
    dst, dst_gen = _as_model(dst_model)
    alpha = tuple(alpha)
    if len(alpha) != len(src_gen):
        raise InputError("homomorphism has the wrong shape")
    images = {src_gen[m]: dst_gen[alpha[m]] for m in range(len(alpha))}
    fwd, witness = extend_on_generators(src, dst, images)
    if fwd is None:
        raise TheoremViolation("expansion functor lifts homomorphisms", witness)
    # the square: projecting to the base commutes with the lift
    src_classes = sigma(src)
    dst_classes = sigma(dst)
    src_of_class = _class_to_generator(src_classes, src_gen)
    dst_of_class = _class_to_generator(dst_classes, dst_gen)
    for x in range(src.size):
        m = src_of_class[src_classes.class_of[x]]
        if dst_of_class[dst_classes.class_of[fwd[x]]] != alpha[m]:
            raise TheoremViolation("projection square commutes", x)
    if isinstance(src_model, PrefixExpansion) and isinstance(dst_model, PrefixExpansion):
        G2 = dst_model.group
        index2 = {p: i for i, p in enumerate(dst_model.pairs)}
        for i, p in enumerate(src_model.pairs):
            img = PrefixPair(frozenset(alpha[x] for x in p.subset), alpha[p.g])
            if fwd[i] != index2[img]:
                raise TheoremViolation("prefix lift formula (A,g) -> (aA, ag)", i)
    return fwd


def _class_to_generator(cong, gen_map):
    """Invert class_of on generator classes; every class holds a generator
    because the expansions are generated over the base monoid."""
    out = {}
    for m, g in enumerate(gen_map):
        out[cong.class_of[g]] = m
    if len(out) != cong.num_classes:
        raise TheoremViolation("sigma classes are indexed by the base monoid")
    return out


# ---------------------------------------------------------------------------
# the product-side model of a presented expansion


def expansion_premorphism(M: FiniteMonoid, fi_model) -> FinitePremorphism:
    """Premorphism m -> (e -> [m] e [m]') on the idempotents of the
    inverse-signature model."""
    fi, gmap = _as_model(fi_model)
    if fi.inv is None:
        raise InputError("the inverse-signature model must carry inverses")
    Y, emb = idempotent_semilattice(fi)
    pos = {e: i for i, e in enumerate(emb)}
    maps = []
    for m in range(M.size):
        g = gmap[m]
        pairs = []
        for i, e in enumerate(emb):
            if fi.mul[e][fi.star[g]] == e:  # e <= [m]* in the semilattice
                value = fi.mul[fi.mul[g][e]][fi.inv[g]]  # [m] e [m]'
                pairs.append((i, pos[value]))
        maps.append(PartialBijection(Y.size, tuple(pairs)))
    return FinitePremorphism(M, Y, tuple(maps))


def eta_tilde(M: FiniteMonoid, fi_model, fr_model):
    """Build the partial-action product over the idempotents of the
    inverse model and verify it is isomorphic to the restriction model via
    the canonical generator assignment; also verifies that the canonical
    map restricted to projections is an isomorphism onto the idempotents.

    Returns (product, eta map, psi map); failures raise TheoremViolation.
    """
    fi, fi_gen = _as_model(fi_model)
    fr, fr_gen = _as_model(fr_model)
    phi = expansion_premorphism(M, (fi, fi_gen))
    prod = build_partial_product(phi)
    index = {e: i for i, e in enumerate(prod.elements)}
    Y, emb = idempotent_semilattice(fi)
    pos = {e: i for i, e in enumerate(emb)}
    images = {}
    for m in range(M.size):
        g = fi_gen[m]
        images[fr_gen[m]] = index[(pos[fi.plus[g]], m)]
    eta, witness = extend_on_generators(fr, prod.algebra, images)
    if eta is None:
        raise TheoremViolation("eta extends to a homomorphism", witness)
    if sorted(eta) != list(range(prod.algebra.size)):
        raise TheoremViolation(
            "eta is a bijection", f"sizes {fr.size} vs {prod.algebra.size}"
        )
    # canonical map into the inverse model, restricted to projections
    psi, witness = extend_on_generators(
        fr, FiniteBiunary(fi.mul, fi.star, fi.plus, fi.one), dict(zip(fr_gen, fi_gen))
    )
    if psi is None:
        raise TheoremViolation("psi extends to a homomorphism", witness)
    fr_projections = [x for x in range(fr.size) if fr.star[x] == x]
    image = sorted(psi[x] for x in fr_projections)
    idempotents = sorted(emb)
    if image != idempotents or len(set(image)) != len(fr_projections):
        raise TheoremViolation(
            "psi restricts to an isomorphism of projections onto idempotents"
        )
    return prod, tuple(eta), tuple(psi)
