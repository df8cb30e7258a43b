import json

import pytest

from kmvir.checks import CheckResult
from kmvir.errors import CacheInvalidError, ConfigError
from kmvir.fock import J, enumerate_basis, module_spec, vacuum
from kmvir.harness import (
    SCHEMA_VERSION,
    OperatorMatrixCache,
    SuiteConfig,
    VerificationReport,
    build_tasks,
    cache_load,
    cache_store,
    emit_report,
    parse_report,
    run_suite,
)
from kmvir.harness.oracles import graded_dimensions
from kmvir.harness.suites import bracket_oracle, sugawara_matrix
from kmvir.sugawara import SugawaraConfig

SMALL = dict(truncation_degree=3, mode_range=2)


def _checks(report):
    return [c.to_dict() for c in report.checks]


def test_graded_dimensions():
    assert graded_dimensions(3, False, 6) == [1, 3, 9, 22, 51, 108, 221]
    assert graded_dimensions(0, True, 6) == [1, 0, 1, 1, 2, 2, 4]
    assert graded_dimensions(3, True, 6) == [1, 3, 10, 26, 65, 147, 322]
    assert graded_dimensions(8, False, 4) == [1, 8, 44, 192, 726]


def test_config_validation():
    assert SuiteConfig(suite="sugawara").validate()
    bad = [
        SuiteConfig(suite="nope"),
        SuiteConfig(algebra="so5"),
        SuiteConfig(algebra="sl1"),
        SuiteConfig(suite="sugawara", params={"k": "-2"}),
        SuiteConfig(suite="rees", params={"k": "0"}),
        SuiteConfig(suite="rees", params={"c": "0"}),
        SuiteConfig(suite="classical", params={"lambda": "0"}),
        SuiteConfig(suite="critical", params={"k": "1"}),
        SuiteConfig(params={"x": "1"}),
        SuiteConfig(workers=0),
        SuiteConfig(params={"k": "1/"}),
    ]
    for cfg in bad:
        with pytest.raises(ConfigError):
            cfg.validate()


def test_echo_excludes_run_options():
    a = SuiteConfig(suite="lie", workers=1, cache="/tmp/x").echo()
    b = SuiteConfig(suite="lie", workers=3).echo()
    assert a == b
    assert "workers" not in a and "cache" not in a


def test_report_roundtrip():
    report = run_suite(SuiteConfig(suite="lie").validate())
    assert report.aggregate
    data = emit_report(report)
    back = parse_report(data)
    assert _checks(back) == _checks(report)
    assert json.loads(data)["schema_version"] == SCHEMA_VERSION
    assert emit_report(back) == data


def test_report_rejects_inconsistent_aggregate():
    report = VerificationReport("lie", {}, [CheckResult("x", "a", "b", False)])
    d = report.to_dict()
    d["aggregate"]["pass"] = True
    with pytest.raises(ValueError):
        VerificationReport.from_dict(d)


def test_text_report():
    report = run_suite(SuiteConfig(suite="lie").validate())
    text = emit_report(report, "text").decode()
    assert text.splitlines()[-1].startswith("PASS")


@pytest.mark.parametrize("suite", ["kac-moody", "sugawara"])
def test_determinism_across_workers(suite):
    one = run_suite(SuiteConfig(suite=suite, workers=1, **SMALL).validate())
    two = run_suite(SuiteConfig(suite=suite, workers=2, **SMALL).validate())
    assert _checks(one) == _checks(two)
    assert one.config == two.config
    assert one.aggregate


def test_tasks_are_ordered_and_stable():
    cfg = SuiteConfig(suite="all", **SMALL).validate()
    assert build_tasks(cfg) == build_tasks(cfg)


def test_cache_roundtrip(tmp_path):
    spec = module_spec("KacMoody", 2, 0, 4)
    cfg = SugawaraConfig(spec)
    cache = OperatorMatrixCache(tmp_path)
    for m, d in ((-2, 2), (0, 3), (1, 2)):
        matrix = sugawara_matrix(cfg, m, d)
        cache_store(cache, (f"sugawara/L^S_{m}", d), spec, matrix)
        back = cache_load(cache, (f"sugawara/L^S_{m}", d), spec)
        assert back == matrix
        assert list(back) == enumerate_basis(spec, d)
    assert cache.load("missing", 0, spec) is None
    with pytest.raises(CacheInvalidError):
        cache.load("sugawara/L^S_-2", 2, spec.replace(truncation_degree=5))


def test_cache_is_used_by_the_suite(tmp_path):
    cfg = SuiteConfig(suite="sugawara", cache=str(tmp_path), **SMALL).validate()
    first = run_suite(cfg)
    assert any(tmp_path.iterdir())
    second = run_suite(cfg)
    assert _checks(first) == _checks(second)
    assert first.aggregate


@pytest.mark.parametrize("suite", ["lie", "kac-moody", "sugawara"])
def test_negative_control_fails_with_witness(suite):
    report = run_suite(SuiteConfig(suite=suite, negative_control=True, **SMALL).validate())
    assert not report.aggregate
    witness = report.failures[0].witness
    assert witness and {"source", "monomial", "lhs", "rhs"} <= set(witness)


def test_oracle_includes_mode_factor():
    spec = module_spec("KacMoody", 2, 0, 2)
    v = vacuum(spec)
    H = spec.lie.basis_labels.index("H")
    assert bracket_oracle(J(H, 2), J(H, -2), v) == v * (4 * spec.k)
    assert bracket_oracle(J(H, -2), J(H, 2), v) == v * (-4 * spec.k)


@pytest.mark.parametrize("suite", ["lie", "dimensions", "virasoro", "singular", "poisson"])
def test_quick_suites_pass(suite):
    report = run_suite(SuiteConfig(suite=suite).validate())
    assert report.aggregate, report.failures[:1]


def test_task_errors_become_failures():
    report = run_suite(SuiteConfig(suite="sugawara", level_structure=0, truncation_degree=1, mode_range=1).validate())
    assert all(isinstance(c, CheckResult) for c in report.checks)
