"""Fixed-width text tables: one (p,q) grid per page, rows p, columns q."""

from typing import Dict, List, Tuple

from src.models.reports import FrolicherReport
from src.storage.interface import ReportFormatterInterface

CELL = 6


def format_grid(
    m: int, dims: Dict[Tuple[int, int], int], corner: str = "p\\q"
) -> List[str]:
    lines = [corner.rjust(CELL) + "".join(str(q).rjust(CELL) for q in range(m + 1))]
    for p in range(m + 1):
        cells = "".join(str(dims.get((p, q), 0)).rjust(CELL) for q in range(m + 1))
        lines.append(str(p).rjust(CELL) + cells)
    return lines


def _numbers(values: List[int]) -> str:
    return " ".join(str(v) for v in values)


class TableReportFormatter(ReportFormatterInterface):
    """Human-readable output."""

    def format_pages(self, report: FrolicherReport) -> str:
        lines: List[str] = []
        for table in report.pages:
            lines.append(f"E_{table.r}")
            lines.extend(format_grid(report.m, {(p, q): d for p, q, d in table.dims}))
            lines.append("")
        lines.append(f"betti: {_numbers(report.betti)}")
        lines.append("hodge:")
        lines.extend(format_grid(report.m, {(p, q): h for p, q, h in report.hodge}))
        lines.append(f"euler: {report.euler}")
        if report.degeneration_page is None:
            lines.append("degeneration page: not reached (raise --max-page)")
        else:
            lines.append(f"degeneration page: {report.degeneration_page}")
        if report.witness is not None:
            witness = report.witness
            p, q = witness.start
            lines.append(f"witness from A^{{{p},{q}}}, length {witness.length}")
            for i, terms in enumerate(witness.chain):
                lines.append(f"  beta_{i} = {_join(terms)}")
            lines.append(f"  terminal = {_join(witness.terminal)}")
        return "\n".join(lines) + "\n"

    def format_hodge(self, report: FrolicherReport) -> str:
        lines = ["h^{p,q}:"]
        lines.extend(format_grid(report.m, {(p, q): h for p, q, h in report.hodge}))
        lines.append(f"betti: {_numbers(report.betti)}")
        sums = [0] * len(report.betti)
        for p, q, h in report.hodge:
            sums[p + q] += h
        checks = zip(report.betti, sums, report.frolicher_inequality())
        for k, (b, s, ok) in enumerate(checks):
            lines.append(f"k={k}: b_k={b} <= sum h={s} {'ok' if ok else 'VIOLATED'}")
        symmetric = report.conjugation_symmetric()
        lines.append(f"conjugation symmetry: {'ok' if symmetric else 'VIOLATED'}")
        return "\n".join(lines) + "\n"


def _join(terms: List[str]) -> str:
    text = ""
    for term in terms:
        if not text:
            text = term
        elif term.startswith("-"):
            text += f" - {term[1:]}"
        else:
            text += f" + {term}"
    return text or "0"
