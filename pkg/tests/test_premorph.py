import random
from itertools import product

import pytest

from restrix.core import FiniteMonoid, is_F_restriction, projections, sigma
from restrix.errors import InputError, TheoremViolation
from restrix.expansions import prefix_expand_group
from restrix.partialbij import (
    PartialBijection,
    is_order_ideal,
    is_order_isomorphism,
    symmetric_inverse_monoid,
)
from restrix.premorph import (
    FinitePremorphism,
    check_agreement,
    classify,
    munn_representation,
    premorphism_defects,
    prop_strongness_check,
    tau_of,
    underlying_premorphism,
)
from restrix.registry import (
    cyclic_group,
    diamond,
    example_fr_model,
    group_as_inverse,
    monoid_as_reduced,
    monoids_up_to_order_3,
    two_chain,
)


def f_restriction_instances():
    out = {"example model": example_fr_model()}
    for i, M in enumerate(monoids_up_to_order_3()):
        out[f"reduced {i}"] = monoid_as_reduced(M)
    out["two-chain"] = two_chain().as_restriction()
    out["diamond"] = diamond().as_restriction()
    for n in (2, 3):
        out[f"prefix Z{n}"] = prefix_expand_group(cyclic_group(n)).algebra
    return out


# ---------------------------------------------------------------------------
# classification


def test_identity_premorphism_all_flags():
    M = FiniteMonoid(((0,),), 0)
    Y = two_chain()
    phi = FinitePremorphism(M, Y, (PartialBijection.identity(2),))
    flags = classify(phi)
    assert flags.is_premorphism and flags.is_strong and flags.is_homomorphism
    assert flags.satisfies_abc


def test_underlying_premorphism_of_prefix_expansion_is_strong():
    pe = prefix_expand_group(cyclic_group(2))
    phi = underlying_premorphism(pe.algebra)
    flags = classify(phi)
    assert flags.is_premorphism and flags.is_strong and flags.satisfies_abc


def test_underlying_premorphism_of_example_model():
    S = example_fr_model()
    phi = underlying_premorphism(S)
    flags = classify(phi)
    assert flags.is_premorphism and flags.satisfies_abc
    # the class of |a| acts on the projections {1, e} with domain {e} only
    cong = sigma(S)
    _, emb = projections(S)
    a_class = cong.class_of[1]
    f = phi.maps[a_class]
    e_index = emb.index(2)
    assert f.dom() == frozenset({e_index})
    assert f(e_index) == e_index


def test_classify_reports_broken_maps_without_raising():
    M = cyclic_group(2)
    Y = two_chain()
    # phi(g) the empty map: violates nothing except (C); composition is
    # below phi(1) = id, so still a premorphism
    phi = FinitePremorphism(
        M, Y, (PartialBijection.identity(2), PartialBijection(2, ()))
    )
    flags = classify(phi)
    assert flags.is_premorphism
    assert not flags.satisfies_abc
    # phi(g) partial identity on the top only: dom is not an order ideal
    phi2 = FinitePremorphism(
        M, Y, (PartialBijection.identity(2), PartialBijection(2, ((0, 0),)))
    )
    assert not classify(phi2).satisfies_abc


# ---------------------------------------------------------------------------
# the max-element section


def test_tau_reduced_is_identity():
    for M in monoids_up_to_order_3():
        T, tau = tau_of(monoid_as_reduced(M))
        assert T.size == M.size
        assert sorted(tau) == list(range(M.size))


def test_tau_example_model():
    S = example_fr_model()
    T, tau = tau_of(S)
    assert T.size == 2
    cong = sigma(S)
    assert tau[cong.class_of[0]] == 0
    assert tau[cong.class_of[1]] == 1


def test_tau_prefix_expansion_picks_minimal_subsets():
    pe = prefix_expand_group(cyclic_group(2))
    T, tau = tau_of(pe.algebra)
    cong = sigma(pe.algebra)
    for i, p in enumerate(pe.pairs):
        top = pe.pairs[tau[cong.class_of[i]]]
        assert top.subset == frozenset({0, p.g})
        assert top.g == p.g


def test_tau_rejects_non_f_restriction():
    i2, _ = symmetric_inverse_monoid(2)
    assert not is_F_restriction(i2)
    with pytest.raises(InputError):
        tau_of(i2)


# ---------------------------------------------------------------------------
# structural invariants of the attached maps


def test_phi_factors_through_tau_and_munn_representation():
    for name, S in f_restriction_instances().items():
        phi = underlying_premorphism(S)
        Y, emb, alpha = munn_representation(S)
        T, tau = tau_of(S)
        for t in range(T.size):
            assert phi.maps[t] == alpha[tau[t]], name


def test_phi_domain_is_ideal_of_tau_star():
    for name, S in f_restriction_instances().items():
        phi = underlying_premorphism(S)
        T, tau = tau_of(S)
        _, emb = projections(S)
        pos = {e: i for i, e in enumerate(emb)}
        for t in range(T.size):
            top = tau[t]
            expected_dom = {
                pos[e] for e in emb if S.mul[e][S.star[top]] == e
            }
            assert phi.maps[t].dom() == frozenset(expected_dom), name
            for e in emb:
                if S.mul[e][S.star[top]] == e:
                    value = S.plus[S.mul[top][e]]
                    assert phi.maps[t](pos[e]) == pos[value], name


def test_phi_image_inside_munn_monoid():
    for name, S in f_restriction_instances().items():
        phi = underlying_premorphism(S)
        Y = phi.lattice
        ideals = {frozenset(Y.ideal(e)) for e in range(Y.size)}
        for f in phi.maps:
            assert f.dom() in ideals and f.ran() in ideals, name
            assert is_order_isomorphism(Y, f), name


# ---------------------------------------------------------------------------
# agreement of phi and tau on ground relations


def test_agreement_trivial_relation():
    S = example_fr_model()
    rel = (0, ("one",), ("one",))
    assert check_agreement(S, rel) == (True, True)


def test_agreement_example_model_star_relation():
    S = example_fr_model()
    T, tau = tau_of(S)
    a_class = sigma(S).class_of[1]
    # |a| a* = |a| 1 holds for tau (a e = a) and must match under phi
    rel = (a_class, ("star", ("gen", a_class)), ("one",))
    phi_obeys, tau_obeys = check_agreement(S, rel)
    assert phi_obeys == tau_obeys == True


def test_agreement_exhaustive_small_instances():
    for name, S in f_restriction_instances().items():
        if S.size > 8:
            continue
        T, tau = tau_of(S)
        terms = [("one",)]
        for t in range(T.size):
            terms.append(("star", ("gen", t)))
            terms.append(("plus", ("gen", t)))
        for t in range(T.size):
            for e_term, f_term in product(terms, repeat=2):
                phi_obeys, tau_obeys = check_agreement(S, (t, e_term, f_term))
                assert phi_obeys == tau_obeys, (name, t, e_term, f_term)


def test_agreement_rejects_non_projection_terms():
    with pytest.raises(InputError):
        check_agreement(example_fr_model(), (0, ("gen", 0), ("one",)))


# ---------------------------------------------------------------------------
# strongness characterization


def test_identity_map_on_group_is_strong():
    S = group_as_inverse(cyclic_group(3))
    rep = prop_strongness_check(S, S, (0, 1, 2))
    assert rep.agree and rep.is_strong and rep.conditions_hold


def test_inclusion_into_prefix_expansion_is_strong():
    for n in (2, 3):
        G = cyclic_group(n)
        S = group_as_inverse(G)
        pe = prefix_expand_group(G)
        rep = prop_strongness_check(S, pe.algebra, pe.generator_map)
        assert rep.agree and rep.is_strong and rep.conditions_hold


def test_nilpotent_valued_premorphism_not_strong_but_agrees():
    # two-chain {1, e} into I(2): e maps to the nilpotent 0 -> 1
    S = two_chain().as_restriction()
    i2, maps = symmetric_inverse_monoid(2)
    nil = maps.index(PartialBijection(2, ((0, 1),)))
    rep = prop_strongness_check(S, i2, (i2.one, nil))
    assert rep.agree
    assert not rep.is_strong and not rep.conditions_hold


def test_corrupted_map_gets_witness_or_rejection():
    # corrupting the strong map e -> partial identity into the nilpotent
    # keeps (PM2) but kills strongness, with a concrete witness pair
    S = two_chain().as_restriction()
    i2, maps = symmetric_inverse_monoid(2)
    good = maps.index(PartialBijection(2, ((0, 0),)))
    rep = prop_strongness_check(S, i2, (i2.one, good))
    assert rep.is_strong and rep.witness is None
    nil = maps.index(PartialBijection(2, ((0, 1),)))
    rep = prop_strongness_check(S, i2, (i2.one, nil))
    assert rep.agree and not rep.is_strong
    assert rep.witness is not None

    # a swap that breaks (PM2) outright is rejected before evaluation
    Z2 = group_as_inverse(cyclic_group(2))
    Z3 = group_as_inverse(cyclic_group(3))
    with pytest.raises(InputError):
        prop_strongness_check(Z2, Z3, (0, 1))


def test_fuzzed_premorphisms_always_agree():
    rng = random.Random(0)
    S = two_chain().as_restriction()
    i2, _ = symmetric_inverse_monoid(2)
    agreeing = 0
    for _ in range(300):
        phi = (i2.one, rng.randrange(i2.size))
        try:
            rep = prop_strongness_check(S, i2, phi)
        except InputError:
            continue
        assert rep.agree, phi
        agreeing += 1
    assert agreeing >= 5


def test_classification_implication_chain():
    # homomorphism => strong => premorphism, even for broken maps
    rng = random.Random(9)
    M = cyclic_group(2)
    Y = diamond()
    i2_like = [
        PartialBijection.identity(Y.size),
        PartialBijection(Y.size, ()),
        PartialBijection(Y.size, ((3, 3),)),
        PartialBijection(Y.size, ((1, 2), (3, 3))),
    ]
    for _ in range(100):
        maps = (rng.choice(i2_like), rng.choice(i2_like))
        flags = classify(FinitePremorphism(M, Y, maps))
        assert flags.is_strong == (flags.is_left_strong and flags.is_right_strong)
        if flags.is_homomorphism:
            assert flags.is_strong
        if flags.is_strong:
            assert flags.is_premorphism
