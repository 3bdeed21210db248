"""Test utility functions."""

import io
import logging
from pathlib import Path

from rrdist.utils import configure_logging, resolve_file_path


def test_resolve_file_path_absolute():
    """Test resolving absolute paths."""
    abs_path = Path("/absolute/path/file.toml")
    resolved = resolve_file_path(abs_path)
    assert resolved == abs_path


def test_resolve_file_path_relative():
    """Test resolving relative paths."""
    resolved = resolve_file_path("files/reference_buckets.toml", relative_to_package=True)
    assert resolved.is_absolute()
    assert "rrdist" in str(resolved)
    assert resolved.exists()


def test_resolve_file_path_no_package():
    """Test resolving without package reference."""
    resolved = resolve_file_path("test.txt", relative_to_package=False)
    assert resolved.is_absolute()


def test_configure_logging_levels():
    stream = io.StringIO()
    configure_logging(0, stream)
    assert logging.getLogger().level == logging.WARNING
    configure_logging(1, stream)
    assert logging.getLogger().level == logging.INFO
    configure_logging(2, stream)
    logging.getLogger("rrdist.test").debug("visible")
    assert "visible" in stream.getvalue()
