"""Evaluation report documents: JSON assembly and Table-style text rendering."""
from __future__ import annotations

import json

from .stats import DescriptiveStats, EvaluationReport, TTestResult

REPORT_FORMAT = "fuzzyqoe-report"
REPORT_VERSION = 1


def _stats_to_dict(stats: DescriptiveStats | None) -> dict | None:
    if stats is None:
        return None
    return {
        "n": stats.n,
        "mean": stats.mean,
        "se_mean": stats.se_mean,
        "median": stats.median,
        "sd": stats.sd,
        "ci_lo": stats.ci_lo,
        "ci_hi": stats.ci_hi,
        "confidence": stats.confidence,
    }


def _ttest_to_dict(ttest: TTestResult | None) -> dict | None:
    if ttest is None:
        return None
    return {
        "t": ttest.t,
        "df": ttest.df,
        "p": ttest.p,
        "alpha": ttest.alpha,
        "reject_null": ttest.reject_null,
        "note": ttest.note,
    }


def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "n": report.n,
        "uncovered": report.uncovered,
        "qoe_user": _stats_to_dict(report.qoe_user),
        "qoe_fis": _stats_to_dict(report.qoe_fis),
        "rmse": report.rmse,
        "ttest": _ttest_to_dict(report.ttest),
    }


def report_document(blocks: dict[str, dict], alpha: float) -> dict:
    """Wrap per-application report dicts into a versioned document."""
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "alpha": alpha,
        "applications": {app: blocks[app] for app in sorted(blocks)},
    }


def document_to_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _fmt(value, width: int = 9) -> str:
    if value is None:
        return "-".rjust(width)
    if isinstance(value, float) and value != value:  # NaN guard for rendering only
        return "nan".rjust(width)
    return f"{value:.3f}".rjust(width)


def render_report_text(document: dict) -> str:
    """Human-readable table, a pure function of the JSON document."""
    if document.get("format") != REPORT_FORMAT:
        raise ValueError(f"not a {REPORT_FORMAT} document")
    lines = []
    header = (f"{'application':<16} {'series':<7} {'n':>4} {'mean':>9} {'ci_lo':>9} "
              f"{'ci_hi':>9} {'se':>9} {'median':>9} {'sd':>9} {'rmse':>9} {'p':>9}")
    lines.append(header)
    lines.append("-" * len(header))
    for app, block in document["applications"].items():
        for series, key in (("QoE_u", "qoe_user"), ("QoE_f", "qoe_fis")):
            stats = block.get(key)
            rmse_cell = _fmt(block.get("rmse")) if series == "QoE_u" else "-".rjust(9)
            ttest = block.get("ttest")
            p_cell = _fmt(ttest["p"]) if (series == "QoE_u" and ttest) else "-".rjust(9)
            name_cell = app if series == "QoE_u" else ""
            if stats is None:
                lines.append(
                    f"{name_cell:<16} {series:<7} {block.get('n', 0):>4} "
                    + " ".join(["-".rjust(9)] * 6) + f" {rmse_cell} {p_cell}"
                )
            else:
                lines.append(
                    f"{name_cell:<16} {series:<7} {stats['n']:>4} {_fmt(stats['mean'])} "
                    f"{_fmt(stats['ci_lo'])} {_fmt(stats['ci_hi'])} {_fmt(stats['se_mean'])} "
                    f"{_fmt(stats['median'])} {_fmt(stats['sd'])} {rmse_cell} {p_cell}"
                )
        if block.get("uncovered"):
            lines.append(f"{'':<16} (uncovered records excluded: {block['uncovered']})")
    lines.append("")
    lines.append(f"alpha = {document['alpha']}; p > alpha means no statistically "
                 "significant difference between the paired series")
    return "\n".join(lines) + "\n"
