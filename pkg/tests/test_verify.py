import json

from qskew.verify import CHECKS, SuiteConfig, run_suite, selected_checks


def test_check_ids_unique_and_tagged():
    ids = [c.id for c in CHECKS]
    assert len(ids) == len(set(ids))
    assert all(c.id.startswith(c.tag + ".") for c in CHECKS)
    assert all(c.anchor for c in CHECKS)


def test_filtering_by_tag_and_id():
    assert {c.id for c in selected_checks(["serre"])} == {"serre.commute", "serre.cubic"}
    assert [c.id for c in selected_checks(["torus.center_basis"])] == ["torus.center_basis"]
    assert len(selected_checks()) == len(CHECKS)
    assert selected_checks(["missing"]) == []


def test_report_is_sorted_and_deterministic():
    cfg = SuiteConfig(only=("center", "localization", "presentation.associativity"))
    a, b = run_suite(cfg), run_suite(cfg)
    ids = [c.id for c in a.checks]
    assert ids == sorted(ids)
    assert a.passed and a.to_json() == b.to_json()
    assert "elapsed" not in a.to_json()


def test_timings_only_on_request():
    rep = run_suite(SuiteConfig(only=("serre",), timings=True))
    doc = json.loads(rep.to_json())
    assert all("elapsed" in c for c in doc["checks"])
    assert "s)" in rep.to_text()


def test_seed_changes_samples_not_outcome():
    for seed in (0, 1):
        rep = run_suite(SuiteConfig(seed=seed, only=("embed.homomorphism",), embed_pairs=5))
        assert rep.passed and rep.seed == seed


def test_exceptions_become_failures():
    class Broken:
        n = 6
        lambdas = {}
    rep = run_suite(SuiteConfig(only=("presentation.confluence",), presentation=Broken()))
    (c,) = rep.checks
    assert not c.passed and c.witness
    assert not rep.passed and json.loads(rep.to_json())["status"] == "fail"
    assert "FAIL" in rep.to_text()
