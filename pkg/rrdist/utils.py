"""
Utility functions for rrdist.
"""

import logging
import sys
from pathlib import Path


def resolve_file_path(filepath, relative_to_package=True):
    """
    Resolve a file path relative to the package or as absolute path.

    Args:
        filepath: str or Path, file path to resolve
        relative_to_package: bool, if True resolves relative to the rrdist package

    Returns:
        Path: Resolved absolute path

    Example:
        >>> path = resolve_file_path("files/reference_buckets.toml")
        >>> print(path)
    """
    path = Path(filepath)

    if path.is_absolute():
        return path

    if relative_to_package:
        package_dir = Path(__file__).parent
        return (package_dir / path).resolve()

    return path.resolve()


def configure_logging(verbosity=0, stream=None):
    """
    Send log records to stderr.

    Args:
        verbosity: 0 for warnings only, 1 for progress (INFO), 2+ for DEBUG
        stream: Output stream, defaults to sys.stderr
    """
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        stream=stream or sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
