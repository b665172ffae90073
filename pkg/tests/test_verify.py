import json

import pytest

from cohom32.verify import (
    CHECK_IDS, MUTATIONS, VERDICT_CONFIRMED, Inputs, mutate, report_digest, run_all,
)

EXPECTED_FAIL = {"C6", "C16"}


@pytest.fixture(scope="module")
def full_report():
    return run_all(8)


def test_report_schema(full_report):
    assert set(full_report) >= {"artifact_version", "group_data_hashes", "checks", "verdict"}
    assert [c["id"] for c in full_report["checks"]] == list(CHECK_IDS)
    for c in full_report["checks"]:
        assert set(c) >= {"id", "description", "paper_location", "status", "witness"}
    json.dumps(full_report)


def test_statuses_and_verdict(full_report):
    status = {c["id"]: c["status"] for c in full_report["checks"]}
    assert {k for k, v in status.items() if v != "pass"} == EXPECTED_FAIL
    assert full_report["verdict"] == VERDICT_CONFIRMED
    basis = full_report["verdict_basis"]
    assert basis["dim_H3"] == basis["hilbert_3"] == 2
    assert basis["H3_classes_with_nonzero_square"]


def test_low_degree_run_skips_only_C13(full_report):
    low = run_all(2)
    by_id = {c["id"]: c for c in low["checks"]}
    assert by_id["C13"]["status"] == "skipped"
    assert "degree 6" in by_id["C13"]["witness"]["reason"]
    full = {c["id"]: c["status"] for c in full_report["checks"]}
    for cid, c in by_id.items():
        if cid != "C13":
            assert c["status"] == full[cid], cid


def test_report_is_deterministic(full_report, tmp_path):
    from cohom32.config import get_config, set_config

    prev = set_config(get_config().replace(cache_dir=tmp_path, threads=2))
    try:
        cold = run_all(8)
        warm = run_all(8)
    finally:
        set_config(prev)
    assert report_digest(cold) == report_digest(warm) == report_digest(full_report)


def test_every_check_has_a_mutation():
    assert set(MUTATIONS) == set(CHECK_IDS)


@pytest.mark.parametrize("cid", ["C1", "C4", "C12", "C13"])
def test_mutation_is_reported_with_witness(cid):
    rep = run_all(8, inputs=mutate(Inputs(), cid), only=[cid])
    (c,) = rep["checks"]
    assert c["status"] == "fail"
    assert c["witness"]


def test_mutated_group_law_names_pair():
    rep = run_all(8, inputs=mutate(Inputs(), "C1"), only=["C1"])
    assert len(rep["checks"][0]["witness"]["pair"]) == 2
