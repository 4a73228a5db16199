"""JSON rendering of reports: sorted keys, two-space indent, byte-stable."""

import json
from typing import Any, Dict

from pydantic import BaseModel

from src.models.reports import FrolicherReport
from src.storage.interface import ReportFormatterInterface


def _to_dict(model: BaseModel) -> Dict[str, Any]:
    return model.model_dump(exclude_none=True)


def emit_json(model: BaseModel) -> str:
    text = json.dumps(_to_dict(model), sort_keys=True, indent=2, ensure_ascii=False)
    return text + "\n"


def emit_report_json(report: FrolicherReport) -> str:
    """The report as JSON with the fields m, pages, betti, hodge,
    degeneration_page, euler and (when present) witness."""
    return emit_json(report)


class JsonReportFormatter(ReportFormatterInterface):
    """Machine-readable output."""

    def format_pages(self, report: FrolicherReport) -> str:
        return emit_report_json(report)

    def format_hodge(self, report: FrolicherReport) -> str:
        data = {
            "m": report.m,
            "betti": report.betti,
            "hodge": report.hodge,
            "frolicher_inequality": report.frolicher_inequality(),
            "conjugation_symmetric": report.conjugation_symmetric(),
        }
        return json.dumps(data, sort_keys=True, indent=2) + "\n"

