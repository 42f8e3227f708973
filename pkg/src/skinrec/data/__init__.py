"""Bundled datasets and synthetic catalog generation."""

from importlib import resources
from pathlib import Path


def sample_catalog_path() -> Path:
    """Path of the bundled 50-product sample catalog."""
    return Path(resources.files(__package__) / "sample50.csv")
