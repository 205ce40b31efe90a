"""Premorphisms from a finite monoid into partial bijections of a finite
semilattice: validation, classification, and the maps attached to an
F-restriction monoid (the max-element section tau and the underlying
premorphism phi)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (
    FiniteBiunary,
    FiniteMonoid,
    FiniteSemilattice,
    projections,
    quotient_monoid,
    sigma,
    sigma_class_maxima,
)
from .errors import InputError, TheoremViolation
from .partialbij import (
    PartialBijection,
    is_order_ideal,
    is_order_isomorphism,
    symmetric_inverse_restriction,
)


@dataclass(frozen=True)
class FinitePremorphism:
    """One partial bijection of the semilattice per source element."""

    source: FiniteMonoid
    lattice: FiniteSemilattice
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != self.source.size:
            raise InputError("premorphism needs one partial map per element")
        for f in self.maps:
            if not isinstance(f, PartialBijection) or f.size != self.lattice.size:
                raise InputError("partial maps must live on the semilattice")


@dataclass(frozen=True)
class PremorphismClass:
    is_premorphism: bool
    is_left_strong: bool
    is_right_strong: bool
    is_strong: bool
    is_homomorphism: bool
    satisfies_abc: bool


def _pm2_forms_agree(a, b, ab):
    """(PM2) and its two equational forms, which must never disagree."""
    comp = a.after(b)
    pm2 = comp.restriction_of(ab)
    pm2p = comp == ab.after(comp.star_op())
    pm2pp = comp == comp.plus_op().after(ab)
    if not (pm2 == pm2p == pm2pp):
        raise TheoremViolation("(PM2) equivalent forms", (a, b, ab))
    return pm2


def premorphism_defects(phi: FinitePremorphism):
    """Violated premorphism conditions, as strings; empty iff (PM1)+(PM2)."""
    M, Y = phi.source, phi.lattice
    defects = []
    if phi.maps[M.one] != PartialBijection.identity(Y.size):
        defects.append("(PM1): the identity must map to the identity of I(Y)")
    for m, n in product(range(M.size), repeat=2):
        if not _pm2_forms_agree(phi.maps[m], phi.maps[n], phi.maps[M.mul[m][n]]):
            defects.append(f"(PM2) fails at ({m},{n})")
            break
    return defects


def abc_defect(phi: FinitePremorphism):
    """First violated structure condition (A), (B) or (C), with witness."""
    Y = phi.lattice
    for t, f in enumerate(phi.maps):
        if not f.pairs:
            return ("(C)", t)
        if not is_order_ideal(Y, f.dom()) or not is_order_ideal(Y, f.ran()):
            return ("(A)", t)
        if not is_order_isomorphism(Y, f):
            return ("(B)", t)
    return None


def classify(phi: FinitePremorphism) -> PremorphismClass:
    """Exhaustively decided flags; broken maps are reported, not rejected.

    The strongness and homomorphism flags assert membership in the named
    premorphism class, so they are false whenever (PM1)/(PM2) fail; this
    keeps the implication chain homomorphism => strong => premorphism.
    """
    M = phi.source
    is_pm = not premorphism_defects(phi)
    ls = rs = hom = True
    for m, n in product(range(M.size), repeat=2):
        a, b, ab = phi.maps[m], phi.maps[n], phi.maps[M.mul[m][n]]
        comp = a.after(b)
        if comp != a.plus_op().after(ab):
            ls = False
        if comp != ab.after(b.star_op()):
            rs = False
        if comp != ab:
            hom = False
    return PremorphismClass(
        is_premorphism=is_pm,
        is_left_strong=is_pm and ls,
        is_right_strong=is_pm and rs,
        is_strong=is_pm and ls and rs,
        is_homomorphism=is_pm and hom,
        satisfies_abc=abc_defect(phi) is None,
    )


# ---------------------------------------------------------------------------
# the two maps attached to an F-restriction monoid


def tau_of(S: FiniteBiunary):
    """Max-element section of the sigma-classes of an F-restriction monoid.

    Returns (T, tau) with T the quotient monoid and tau[t] the S-index of
    the maximum of class t; checks tau is a premorphism.
    """
    maxima = sigma_class_maxima(S)
    if maxima is None:
        raise InputError("monoid is not F-restriction: some class has no maximum")
    cong = sigma(S)
    T = quotient_monoid(S, cong)
    tau = maxima
    for t1, t2 in product(range(T.size), repeat=2):
        prod = S.mul[tau[t1]][tau[t2]]
        top = tau[T.mul[t1][t2]]
        if S.mul[top][S.star[prod]] != prod:  # prod <= top
            raise TheoremViolation("tau is a premorphism", (t1, t2))
    return T, tau


def munn_representation(S: FiniteBiunary):
    """Per element of S, the partial bijection e -> (s e)+ on P(S)."""
    Y, emb = projections(S)
    pos = {e: i for i, e in enumerate(emb)}
    maps = []
    for s in range(S.size):
        pairs = []
        for i, e in enumerate(emb):
            if S.mul[S.star[s]][e] == e:  # e <= s*
                pairs.append((i, pos[S.plus[S.mul[s][e]]]))
        maps.append(PartialBijection(Y.size, tuple(pairs)))
    return Y, emb, tuple(maps)


def underlying_premorphism(S: FiniteBiunary) -> FinitePremorphism:
    """The premorphism S/sigma -> I(P(S)) of a proper restriction monoid.

    dom(phi(t)) collects the projections under some a* with a in t, and
    phi(t)(e) = (a e)+; the value is checked to be independent of the
    choice of a.
    """
    from .core import is_proper

    if not is_proper(S):
        raise InputError("underlying premorphism requires a proper monoid")
    cong = sigma(S)
    T = quotient_monoid(S, cong)
    Y, emb = projections(S)
    pos = {e: i for i, e in enumerate(emb)}
    maps = []
    for block in cong.classes():
        values = {}
        for a in block:
            for i, e in enumerate(emb):
                if S.mul[e][S.star[a]] == e:  # e <= a*
                    v = pos[S.plus[S.mul[a][e]]]
                    if values.setdefault(i, v) != v:
                        raise TheoremViolation(
                            "phi(t)(e) independent of the representative", (a, e)
                        )
        maps.append(PartialBijection(Y.size, tuple(sorted(values.items()))))
    phi = FinitePremorphism(T, Y, tuple(maps))
    defects = premorphism_defects(phi) or abc_defect(phi)
    if defects:
        raise TheoremViolation("underlying premorphism well formed", defects)
    return phi


# ---------------------------------------------------------------------------
# ground relation evaluation: phi obeys vs tau obeys


def _eval_term(term, gens, ops):
    op = term[0]
    if op == "one":
        return ops.one
    if op == "gen":
        return gens[term[1]]
    if op == "mul":
        return ops.mul(_eval_term(term[1], gens, ops), _eval_term(term[2], gens, ops))
    if op == "star":
        return ops.star(_eval_term(term[1], gens, ops))
    if op == "plus":
        return ops.plus(_eval_term(term[1], gens, ops))
    raise InputError(f"unknown operation {op!r} in relation term")


def _table_ops(S: FiniteBiunary):
    class _Ops:
        one = S.one

        @staticmethod
        def mul(a, b):
            return S.mul[a][b]

        @staticmethod
        def star(a):
            return S.star[a]

        @staticmethod
        def plus(a):
            return S.plus[a]

    return _Ops


def check_agreement(S: FiniteBiunary, relation):
    """Evaluate a ground relation |t| e = |t| f under phi and under tau.

    Returns (phi_obeys, tau_obeys); the two must agree for F-restriction
    monoids, which the verification harness asserts across the registry.
    """
    from .presentations import is_projection_term

    t, e_term, f_term = relation
    for term in (e_term, f_term):
        if not is_projection_term(term):
            raise InputError(
                f"term {term!r} is not a projection term; rewrite the relation "
                "in the normal form |m| e = |m| f"
            )
    T, tau = tau_of(S)
    if not (isinstance(t, int) and 0 <= t < T.size):
        raise InputError(f"relation names unknown class {t!r}")
    phi = underlying_premorphism(S)

    s_ops = _table_ops(S)
    tau_lhs = s_ops.mul(tau[t], _eval_term(e_term, tau, s_ops))
    tau_rhs = s_ops.mul(tau[t], _eval_term(f_term, tau, s_ops))

    i_ops = symmetric_inverse_restriction(phi.lattice)
    phi_lhs = i_ops.mul(phi.maps[t], _eval_term(e_term, phi.maps, i_ops))
    phi_rhs = i_ops.mul(phi.maps[t], _eval_term(f_term, phi.maps, i_ops))
    return phi_lhs == phi_rhs, tau_lhs == tau_rhs


# ---------------------------------------------------------------------------
# strongness characterization for maps between inverse monoids


@dataclass(frozen=True)
class StrongnessReport:
    agree: bool
    is_strong: bool
    conditions_hold: bool
    witness: tuple | None


def _inv_leq(T: FiniteBiunary, a, b):
    return T.mul[T.plus[a]][b] == a


def prop_strongness_check(S: FiniteBiunary, T: FiniteBiunary, phi):
    """Strong iff (inverses preserved) and (order preserved), evaluated
    independently; disagreement is returned with a witness.

    phi is an element map between inverse monoids that must satisfy
    (PM1) and (PM2); anything else is rejected.
    """
    if S.inv is None or T.inv is None:
        raise InputError("both algebras must carry inverse tables")
    phi = tuple(phi)
    if len(phi) != S.size or any(not (0 <= v < T.size) for v in phi):
        raise InputError("map has the wrong shape")
    if phi[S.one] != T.one:
        raise InputError("(PM1) fails: identity not preserved")
    for m, n in product(range(S.size), repeat=2):
        if not _inv_leq(T, T.mul[phi[m]][phi[n]], phi[S.mul[m][n]]):
            raise InputError(f"(PM2) fails at ({m},{n})")

    strong = True
    witness_strong = None
    for m, n in product(range(S.size), repeat=2):
        comp = T.mul[phi[m]][phi[n]]
        left = T.mul[T.plus[phi[m]]][phi[S.mul[m][n]]]
        right = T.mul[phi[S.mul[m][n]]][T.star[phi[n]]]
        if comp != left or comp != right:
            strong = False
            witness_strong = (m, n)
            break

    conds = True
    witness_conds = None
    for s in range(S.size):
        if phi[S.inv[s]] != T.inv[phi[s]]:
            conds = False
            witness_conds = (s,)
            break
    if conds:
        for s, t in product(range(S.size), repeat=2):
            if _inv_leq(S, s, t) and not _inv_leq(T, phi[s], phi[t]):
                conds = False
                witness_conds = (s, t)
                break

    agree = strong == conds
    witness = witness_strong if witness_strong is not None else witness_conds
    return StrongnessReport(agree, strong, conds, witness)
