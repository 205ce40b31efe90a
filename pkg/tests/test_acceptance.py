"""Acceptance criteria, one test per criterion.

Each test prints a single PASS line when its criterion holds (visible
with ``pytest -s`` or in the -v test listing); stated time budgets are
asserted alongside the mathematical content.
"""

import time

from fastapi.testclient import TestClient

from restrix.core import is_ample
from restrix.expansions import (
    build_partial_product,
    eta_tilde,
    expansion_premorphism,
    prefix_expand_group,
    prefix_expansion_size,
)
from restrix.iso import find_isomorphism
from restrix.jsonio import algebra_to_json
from restrix.partialbij import symmetric_inverse_monoid
from restrix.presentations import PresentedExpansion, bounded_enumerate
from restrix.registry import (
    GROUP_NAMES,
    GROUPS,
    idempotent_pair_monoid,
    monoids_up_to_order_3,
    registry_monoids,
    registry_restriction_instances,
)
from restrix.service import app
from restrix.verify import (
    STATUS_FAIL,
    STATUS_PASS,
    d_lemma_counterexamples,
    strongness_samples,
    verify_agreement,
    verify_cg,
    verify_main,
)

client = TestClient(app, raise_server_exceptions=False)


def _announce(number, text):
    print(f"\nACCEPTANCE {number}: PASS - {text}", flush=True)


def test_criterion_1_example_reproduction():
    t0 = time.perf_counter()
    M = idempotent_pair_monoid()
    fr = client.post(
        "/enumerate",
        json={"monoid": algebra_to_json(M), "relations": "hom", "bound": 6},
    ).json()
    assert fr["status"] == "closed" and fr["count"] == 3
    a = fr["generator_map"][1]
    assert fr["algebra"]["star"][a] == fr["algebra"]["plus"][a]

    fi = client.post(
        "/enumerate",
        json={
            "monoid": algebra_to_json(M),
            "relations": "hom",
            "signature": "inverse",
            "bound": 6,
        },
    ).json()
    assert fi["status"] == "closed" and fi["count"] == 2

    fr_model = bounded_enumerate(PresentedExpansion(M, "hom", "restriction", (), 6))
    fi_model = bounded_enumerate(PresentedExpansion(M, "hom", "inverse", (), 6))
    _, _, psi = eta_tilde(M, fi_model, fr_model)
    a = fr_model.generator_map[1]
    a_star = fr_model.algebra.star[a]
    assert a != a_star and psi[a] == psi[a_star]  # the embedding fails here

    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"took {elapsed:.2f}s"
    _announce(1, f"3-element model with |a|+ = |a|*, 2-element inverse side, psi collapses ({elapsed:.2f}s)")


def test_criterion_2_main_theorem_registry():
    t0 = time.perf_counter()
    reports = []
    for name, M in sorted(registry_monoids().items()):
        for tag in ("s", "hom"):
            reports.append(verify_main(M, tag, bound=8, instance=f"{name}/{tag}"))
    failures = [r for r in reports if r.status == STATUS_FAIL]
    closed = [r for r in reports if r.status == STATUS_PASS]
    assert not failures, failures
    assert len(closed) >= 20  # everything closes on this registry
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"took {elapsed:.2f}s"
    _announce(2, f"{len(closed)} closed instances, zero failures ({elapsed:.2f}s)")


def test_criterion_3_prefix_expansion_sizes():
    expected = {"Z2": 3, "Z3": 8, "S3": 112}
    for name, want in expected.items():
        G = GROUPS[name]
        assert prefix_expansion_size(G) == want  # subset-count formula
        pe = prefix_expand_group(G, names=GROUP_NAMES[name])
        assert pe.algebra.size == want  # pair enumeration
    for name in ("Z2", "Z3"):
        G = GROUPS[name]
        fi = bounded_enumerate(PresentedExpansion(G, "s", "inverse", (), 8))
        assert fi.closed and fi.count == expected[name]  # presentation route
        pe = prefix_expand_group(G)
        assert find_isomorphism(fi.algebra, pe.algebra) is not None
    _announce(3, "sizes 3, 8, 112 via pairs, presentations and the formula")


def test_criterion_4_reconstruction_registry():
    reports = []
    for name, S in sorted(registry_restriction_instances().items()):
        reports.append(verify_cg(S, instance=name))
    for gname in ("Z2", "Z3", "Z2xZ2", "S3"):
        pe = prefix_expand_group(GROUPS[gname])
        reports.append(verify_cg(pe.algebra, instance=f"prefix {gname}"))
    i2, _ = symmetric_inverse_monoid(2)
    prod = build_partial_product(
        expansion_premorphism(i2.as_monoid(), (i2, tuple(range(i2.size))))
    )
    reports.append(verify_cg(prod.algebra, instance="M(I(2), E(I(2)))"))
    failures = [r for r in reports if r.status == STATUS_FAIL]
    passes = [r for r in reports if r.status == STATUS_PASS]
    assert not failures, failures
    assert len(passes) >= 18
    _announce(4, f"{len(passes)} proper instances reconstructed, zero failures")


def test_criterion_5_d_lemma_suite():
    t0 = time.perf_counter()
    clean = d_lemma_counterexamples(("a", "b"), max_len=8, samples=500, seed=0)
    assert set(clean) == {
        "rho-invariance",
        "idempotent-part",
        "restriction-of-self",
        "meet-of-projections",
        "suffix-stability",
    }
    assert not any(clean.values()), clean
    mutated = d_lemma_counterexamples(
        ("a", "b"), max_len=8, samples=500, seed=0, mutate=True
    )
    assert sum(mutated.values()) >= 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"took {elapsed:.2f}s"
    _announce(5, f"5 laws x 500 samples clean, mutation caught ({elapsed:.2f}s)")


def test_criterion_6_cancellative_iff_ample():
    checked = 0
    for M in monoids_up_to_order_3():
        fi = bounded_enumerate(PresentedExpansion(M, "hom", "inverse", (), 8))
        if not fi.closed:
            continue
        prod = build_partial_product(expansion_premorphism(M, fi)).algebra
        assert M.is_left_cancellative() == is_ample(prod, "left"), M.mul
        assert M.is_right_cancellative() == is_ample(prod, "right"), M.mul
        assert M.is_cancellative() == is_ample(prod, "both"), M.mul
        checked += 1
    assert checked == len(monoids_up_to_order_3())  # everything closed
    _announce(6, f"three biconditionals exact on {checked} monoids")


def test_criterion_7_strongness_characterization():
    reports, constructed, fuzzed = strongness_samples(
        min_constructed=20, min_fuzzed=100, seed=0
    )
    assert constructed >= 20 and fuzzed >= 100
    disagreements = [r for r in reports if not r.agree]
    assert not disagreements
    _announce(7, f"{constructed} constructed + {fuzzed} fuzzed premorphisms, all agree")


def test_criterion_8_phi_tau_agreement():
    instances = dict(sorted(registry_restriction_instances().items()))
    for gname in ("Z2", "Z3"):
        instances[f"prefix {gname}"] = prefix_expand_group(GROUPS[gname]).algebra
    checked = 0
    for name, S in instances.items():
        rep = verify_agreement(S, instance=name)
        assert rep.status != STATUS_FAIL, (name, rep.witness)
        if rep.status == STATUS_PASS:
            checked += 1
    assert checked >= 15
    _announce(8, f"exhaustive agreement on {checked} F-restriction instances")
