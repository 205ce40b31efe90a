import json

import pytest

from restrix.registry import (
    cyclic_group,
    example_fr_model,
    idempotent_pair_monoid,
    monoid_as_reduced,
)
from restrix.verify import (
    STATUS_INCONCLUSIVE,
    STATUS_PASS,
    STATUS_SKIP,
    VerificationReport,
    d_lemma_counterexamples,
    strongness_samples,
    suite_passed,
    verify_agreement,
    verify_ample,
    verify_cg,
    verify_d_lemmas,
    verify_embedding,
    verify_main,
    verify_prefix_presentation,
    verify_strongness,
)
from restrix.partialbij import symmetric_inverse_monoid


def test_report_json_round_trip():
    rep = VerificationReport("some-theorem", "some instance", "fail", "x=1", 0.25)
    again = VerificationReport.from_json(rep.to_json())
    assert again == rep
    data = json.loads(rep.to_json(timings=False))
    assert "seconds" not in data


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        VerificationReport("t", "i", "fail", None, 0.0)


def test_verify_cg_passes_on_example_model():
    rep = verify_cg(example_fr_model(), instance="example")
    assert rep.status == STATUS_PASS


def test_verify_cg_skips_improper():
    i2, _ = symmetric_inverse_monoid(2)
    rep = verify_cg(i2, instance="I(2)")
    assert rep.status == STATUS_SKIP


def test_verify_main_idempotent_pair():
    rep = verify_main(idempotent_pair_monoid(), "hom")
    assert rep.status == STATUS_PASS


def test_verify_main_inconclusive_on_runaway_instance():
    rep = verify_main(cyclic_group(3), "pm", bound=6)
    assert rep.status == STATUS_INCONCLUSIVE


def test_verify_ample_group_and_idempotent_pair():
    assert verify_ample(cyclic_group(2), "hom").status == STATUS_PASS
    assert verify_ample(idempotent_pair_monoid(), "hom").status == STATUS_PASS


def test_verify_embedding():
    assert verify_embedding(samples=500, seed=0).status == STATUS_PASS


def test_verify_prefix_presentation():
    assert verify_prefix_presentation(cyclic_group(2), "Z2").status == STATUS_PASS


def test_verify_d_lemmas_pass_and_mutation_detected():
    rep = verify_d_lemmas(samples=100, seed=0)
    assert rep.status == STATUS_PASS
    mutated = d_lemma_counterexamples(samples=100, seed=0, mutate=True)
    assert sum(mutated.values()) >= 1


def test_d_lemmas_deterministic():
    a = d_lemma_counterexamples(samples=120, seed=7)
    b = d_lemma_counterexamples(samples=120, seed=7)
    assert a == b


def test_verify_agreement_on_example_model():
    assert verify_agreement(example_fr_model(), "example").status == STATUS_PASS


def test_verify_agreement_skips_non_f_restriction():
    i2, _ = symmetric_inverse_monoid(2)
    assert verify_agreement(i2, "I(2)").status == STATUS_SKIP


def test_strongness_sample_counts_and_agreement():
    reports, constructed, fuzzed = strongness_samples(20, 100, seed=0)
    assert constructed >= 20 and fuzzed >= 100
    assert all(r.agree for r in reports)
    rep = verify_strongness(seed=0)
    assert rep.status == STATUS_PASS


def test_strongness_deterministic():
    a = strongness_samples(20, 40, seed=3)
    b = strongness_samples(20, 40, seed=3)
    assert a == b


def test_suite_passed_logic():
    good = VerificationReport("t", "i", STATUS_PASS, None, 0.0)
    skip = VerificationReport("t", "i", STATUS_SKIP, "why", 0.0)
    bad = VerificationReport("t", "i", "fail", "w", 0.0)
    assert suite_passed([good, skip])
    assert not suite_passed([good, bad])
