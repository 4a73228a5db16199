"""Storage module for the Frölicher toolkit.

This module reads and writes the ``.lie`` structure-equation format and
renders reports as text tables or JSON.
"""

import logging

from src.storage.factory import ReportFormatterFactory
from src.storage.interface import ReportFormatterInterface
from src.storage.json_report import JsonReportFormatter, emit_report_json
from src.storage.lie_file import (
    ParseError,
    SourceSpan,
    parse_form_expr,
    parse_structure_file,
    read_structure_file,
    serialize_structure_file,
)
from src.storage.table_report import TableReportFormatter

logger = logging.getLogger(__name__)

ReportFormatterFactory.register("table", TableReportFormatter)
ReportFormatterFactory.register("json", JsonReportFormatter)

__all__ = [
    "ReportFormatterInterface",
    "ReportFormatterFactory",
    "JsonReportFormatter",
    "TableReportFormatter",
    "ParseError",
    "SourceSpan",
    "emit_report_json",
    "parse_form_expr",
    "parse_structure_file",
    "read_structure_file",
    "serialize_structure_file",
]
