"""Interface for report output formats."""

import abc

from src.models.reports import FrolicherReport


class ReportFormatterInterface(abc.ABC):
    """Abstract base class for report formatters."""

    @abc.abstractmethod
    def format_pages(self, report: FrolicherReport) -> str:
        """Render page tables, Betti and Hodge numbers and the degeneration page.

        Args:
            report: The report produced by the spectral sequence computation

        Returns:
            str: Deterministic text, newline terminated
        """
        pass

    @abc.abstractmethod
    def format_hodge(self, report: FrolicherReport) -> str:
        """Render Hodge numbers, Betti numbers and the Frölicher inequality.

        Args:
            report: The report produced by the spectral sequence computation

        Returns:
            str: Deterministic text, newline terminated
        """
        pass
