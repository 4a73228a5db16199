"""Factory for creating report formatters."""

from typing import Any, Dict, List, Type

from src.storage.interface import ReportFormatterInterface


class ReportFormatterFactory:
    """Factory class to create report formatters."""

    _implementations: Dict[str, Type[ReportFormatterInterface]] = {}

    @classmethod
    def register(
        cls, output_format: str, implementation: Type[ReportFormatterInterface]
    ) -> None:
        """Register a formatter implementation.

        Args:
            output_format: The identifier for this format
            implementation: The implementation class
        """
        cls._implementations[output_format.lower()] = implementation

    @classmethod
    def formats(cls) -> List[str]:
        return sorted(cls._implementations)

    @classmethod
    def create_formatter(
        cls, output_format: str, **kwargs: Any
    ) -> ReportFormatterInterface:
        """Create and return a formatter for the requested output format.

        Raises:
            ValueError: If the format is not supported
        """
        output_format = output_format.lower()

        if output_format not in cls._implementations:
            raise ValueError(f"Unsupported output format: {output_format}")

        return cls._implementations[output_format](**kwargs)
