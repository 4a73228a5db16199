# CLI package initialization
from src.cli.main import run

__all__ = ["run"]
