import pytest

from orbcheck.catalog import catalog_scenario
from orbcheck.errors import MissingSection
from orbcheck.pipeline import Report, build_quotient, run_pipeline
from orbcheck.scenario import parse_scenario


def test_report_formats():
    r = Report("demo")
    r.check("alpha", True, "fine")
    r.info("beta", "42")
    r.check("gamma", False)
    machine = r.to_machine()
    assert machine.splitlines() == [
        "[report demo]",
        "alpha = PASS fine",
        "beta = 42",
        "gamma = FAIL",
        "overall = FAIL",
    ]
    human = r.to_human()
    assert "[ok] alpha" in human and "[!!] gamma" in human
    assert not r.overall


def test_overall_ignores_informational_lines():
    r = Report("demo")
    r.info("only", "info")
    assert r.overall  # vacuous pass


def test_sample_override_threads_into_geometry():
    scenario = catalog_scenario("weighted-hopf:1:2")
    scenario.geometry.samples = 10
    scenario.geometry.orbits = 3
    report = run_pipeline(scenario)
    assert report.overall


def test_taut_rejects_torus_type():
    text = """
[scenario]
name = torus-metric
pipelines = taut

[action]
type = torus
weights = 1, 1

[metric]
kind = round
"""
    with pytest.raises(MissingSection):
        run_pipeline(parse_scenario(text))


def test_rp2_skips_hlt_after_orientation_failure():
    report = run_pipeline(catalog_scenario("rp2-antipodal"))
    keys = [e.key for e in report.entries]
    assert "pd.fundamental_cycle" in keys
    assert not any(k.startswith("hlt.") for k in keys)
    assert not any(k.startswith("pd.p") for k in keys)


def test_build_quotient_validates_product_factors():
    text = """
[scenario]
name = broken-product
pipelines = quotient

[complex P]
product = A * B

[action I]
group = trivial

[quotient]
complex = P
action = I
complex_dim_n = 1
"""
    with pytest.raises(MissingSection):
        build_quotient(parse_scenario(text))
