"""Quality model: statuses, criteria, maintainability ranking, Kiviat rows,
recommendations, and config loading."""

import json

import pytest

from helpers import lexical_analyzer_model, neural_network_model
from oometrics.ck import KIVIAT_ORDER, ClassMetricsRecord
from oometrics.errors import ConfigError, UnknownMnemonic
from oometrics.quality import (
    CRITERIA,
    RangeTable,
    ToolConfig,
    all_criteria,
    criterion,
    kiviat_rows,
    maintainability,
    metric_status,
    recommendations,
)
from oometrics.report import compute_class_record


def _record(**overrides) -> ClassMetricsRecord:
    rec = ClassMetricsRecord(name="T", cl_comf=0.5, cl_line=100, cl_comm=50)
    for k, v in overrides.items():
        setattr(rec, k, v)
    return rec


# ---------------------------------------------------------------------------
# metric_status
# ---------------------------------------------------------------------------


def test_status_low_comment_rate():
    st = metric_status(RangeTable(), "cl_comf", 0.19)
    assert (st.status, st.side) == (-1, "LOW")


def test_status_boundary_inclusive():
    ranges = RangeTable()
    assert metric_status(ranges, "cl_wmc", 60).status == 0
    assert metric_status(ranges, "cl_wmc", 61).status == -1


def test_status_high_used_classes():
    st = metric_status(RangeTable(), "cu_cdused", 33)
    assert (st.status, st.side) == (-1, "HIGH")


def test_status_unknown_mnemonic():
    with pytest.raises(UnknownMnemonic):
        metric_status(RangeTable(), "nope", 1)


def test_status_undefined_value_flags_low():
    st = metric_status(RangeTable(), "cl_comf", None)
    assert (st.status, st.side) == (-1, "LOW")


# ---------------------------------------------------------------------------
# criteria and maintainability
# ---------------------------------------------------------------------------


def test_reference_class_criteria_categories():
    model, name = lexical_analyzer_model()
    rec = compute_class_record(model, name)
    crits = all_criteria(RangeTable(), rec)
    assert crits["Analyzability"].category == "POOR"
    assert crits["Testability"].category == "FAIR"
    assert crits["Changeability"].category == "GOOD"
    assert crits["Stability"].category == "EXCELLENT"
    assert maintainability(crits) == "FAIR"

    model2, name2 = neural_network_model()
    rec2 = compute_class_record(model2, name2)
    crits2 = all_criteria(RangeTable(), rec2)
    assert crits2["Changeability"].category == "POOR"
    assert crits2["Analyzability"].category == "POOR"
    assert crits2["Stability"].category == "FAIR"
    assert crits2["Testability"].category == "POOR"
    assert maintainability(crits2) == "POOR"


def test_all_in_range_record_excellent():
    rec = _record()
    crits = all_criteria(RangeTable(), rec)
    assert all(c.category == "EXCELLENT" for c in crits.values())
    assert maintainability(crits) == "EXCELLENT"


def test_criterion_counts_constituents():
    rec = _record(cl_wmc=100, cu_cdused=99)  # two of four out
    res = criterion(RangeTable(), rec, "Analyzability")
    assert res.category == "FAIR"
    assert res.in_range_count == 2


def test_maintainability_bands():
    def fake(cats):
        return [criterion(RangeTable(), _record(), "Analyzability").__class__(
            criterion="X", statuses={}, in_range_count=0, category=c) for c in cats]

    assert maintainability(fake(["EXCELLENT"] * 4)) == "EXCELLENT"
    assert maintainability(fake(["POOR"] * 4)) == "POOR"
    assert maintainability(fake(["GOOD", "GOOD", "FAIR", "GOOD"])) == "FAIR"  # 7 points
    assert maintainability(fake(["GOOD", "GOOD", "GOOD", "GOOD"])) == "GOOD"  # 8 points
    assert maintainability(fake(["EXCELLENT", "EXCELLENT", "EXCELLENT", "GOOD"])) == "EXCELLENT"


def test_maintainability_order_invariant():
    def fake(cats):
        from oometrics.quality import CriterionResult

        return [CriterionResult(criterion="X", statuses={}, in_range_count=0, category=c)
                for c in cats]

    import itertools

    cats = ["GOOD", "POOR", "EXCELLENT", "FAIR"]
    results = {maintainability(fake(list(p))) for p in itertools.permutations(cats)}
    assert len(results) == 1


def test_category_monotone_when_fixing_constituent():
    order = {"POOR": 0, "FAIR": 1, "GOOD": 2, "EXCELLENT": 3}
    base = _record(cl_wmc=100, cu_cdused=99, cl_comf=0.01)
    before = criterion(RangeTable(), base, "Analyzability").category
    fixed = _record(cl_wmc=100, cu_cdused=99, cl_comf=0.5)
    after = criterion(RangeTable(), fixed, "Analyzability").category
    assert order[after] >= order[before]


# ---------------------------------------------------------------------------
# kiviat rows
# ---------------------------------------------------------------------------


def test_kiviat_rows_canonical_order_and_flags():
    model, name = lexical_analyzer_model()
    rec = compute_class_record(model, name)
    rows = kiviat_rows(RangeTable(), rec)
    assert [r.mnemonic for r in rows] == list(KIVIAT_ORDER)
    flagged = [r.mnemonic for r in rows if r.status == -1]
    assert flagged == ["cl_comf", "cl_stat", "cl_wmc", "cu_cdused"]

    model2, name2 = neural_network_model()
    rows2 = kiviat_rows(RangeTable(), compute_class_record(model2, name2))
    assert sum(1 for r in rows2 if r.status == -1) == 8


def test_kiviat_statuses_consistent_with_metric_status():
    model, name = neural_network_model()
    rec = compute_class_record(model, name)
    ranges = RangeTable()
    for row in kiviat_rows(ranges, rec):
        assert row.status == metric_status(ranges, row.mnemonic, row.value).status


def test_all_zero_record_flags_only_comment_rate():
    rec = ClassMetricsRecord(name="Z", cl_comf=0.0)
    rows = kiviat_rows(RangeTable(), rec)
    flagged = [r.mnemonic for r in rows if r.status == -1]
    assert flagged == ["cl_comf"]
    # undefined comf (zero-line class) flags the same way
    rec2 = ClassMetricsRecord(name="Z2", cl_comf=None)
    flagged2 = [r.mnemonic for r in kiviat_rows(RangeTable(), rec2) if r.status == -1]
    assert flagged2 == ["cl_comf"]


# ---------------------------------------------------------------------------
# recommendations
# ---------------------------------------------------------------------------


def test_low_comment_rate_advice_mentions_comments():
    rec = _record(cl_comf=0.01)
    rows = kiviat_rows(RangeTable(), rec)
    advice = recommendations(rec, rows)
    assert len(advice) == 1
    assert "Comment" in advice[0]


def test_no_violations_no_advice():
    rec = _record()
    assert recommendations(rec, kiviat_rows(RangeTable(), rec)) == []


def test_reference_class_advice_per_violation():
    model, name = neural_network_model()
    rec = compute_class_record(model, name)
    rows = kiviat_rows(RangeTable(), rec)
    advice = recommendations(rec, rows)
    assert len(advice) == 8
    assert any("Directly Used Classes" in a for a in advice)


# ---------------------------------------------------------------------------
# config
# ---------------------------------------------------------------------------


def test_range_table_from_config_literal_infinities():
    table = RangeTable.from_config({
        "cl_wmc": {"min": 0, "max": 50},
        "cl_comf": {"min": 0.1, "max": "inf"},
        "custom": {"min": "-inf", "max": 3},
    })
    assert table.bounds("cl_wmc") == (0, 50)
    assert table.bounds("cl_comf")[1] == float("inf")
    assert table.bounds("custom")[0] == float("-inf")
    # untouched defaults survive
    assert table.bounds("cl_stat") == (0, 100)


def test_bad_config_rejected():
    with pytest.raises(ConfigError):
        RangeTable.from_config({"cl_wmc": {"min": 10, "max": 1}})
    with pytest.raises(ConfigError):
        RangeTable.from_config({"cl_wmc": {"min": "huge", "max": 1}})
    with pytest.raises(ConfigError):
        RangeTable.from_config({"cl_wmc": [0, 1]})


def test_tool_config_load(tmp_path):
    p = tmp_path / "config.json"
    p.write_text(json.dumps({
        "ranges": {"cl_wmc": {"min": 0, "max": 99}},
        "churnMetrics": ["cl_stat", "cl_wmc"],
    }))
    cfg = ToolConfig.load(p)
    assert cfg.ranges.bounds("cl_wmc") == (0, 99)
    assert cfg.churn_metrics == ("cl_stat", "cl_wmc")


def test_tool_config_bad_json_reports_line(tmp_path):
    p = tmp_path / "config.json"
    p.write_text("{\n  broken\n}")
    with pytest.raises(ConfigError) as exc:
        ToolConfig.load(p)
    assert exc.value.line is not None


def test_missing_metric_raises():
    rec = _record()
    rec.cl_wmc = None  # present but undefined is fine; delete attribute is not possible
    res = criterion(RangeTable(), rec, "Testability")
    assert res.category != "EXCELLENT"
    with pytest.raises(KeyError):
        CRITERIA["Nope"]
