"""
Register all default rrdist presets.

This module registers experiment configurations matching the reference
tables and histograms shipped in ``files/``.
"""

from pathlib import Path

from .config import BatchConfig, HistogramConfig, reference_buckets, reference_histograms
from .registry import register

# Get the package directory for resolving file paths
PACKAGE_DIR = Path(__file__).parent
FILES_DIR = PACKAGE_DIR / "files"

REFERENCE_RANGES = tuple(
    (b.lo, b.hi) for b in reference_buckets(FILES_DIR / "reference_buckets.toml")
)

register(
    id="table2-paper",
    entry_point=BatchConfig,
    kwargs={"buckets": REFERENCE_RANGES, "count_per_size": 20000},
    mode="raw",
    description="Averages bucketed by generated size",
)

register(
    id="table3-paper",
    entry_point=BatchConfig,
    kwargs={"buckets": REFERENCE_RANGES, "count_per_size": 20000},
    mode="reduced",
    description="Averages bucketed by reduced size",
)

for _h in reference_histograms(FILES_DIR / "reference_histograms.toml"):
    register(
        id=f"hist-{_h.size}",
        entry_point=HistogramConfig,
        kwargs={"target": _h.size, "min_count": _h.count},
        kind="histogram",
        description=f"Distances of reduced pairs of size {_h.size}",
    )

register(
    id="fit-paper",
    entry_point=BatchConfig,
    kwargs={"sizes": tuple(range(10, 1501, 10)), "count_per_size": 20},
    kind="fit",
    mode="reduced",
    description="Linear fit of distance against reduced size",
)

register(
    id="reduction-1000",
    entry_point=BatchConfig,
    kwargs={"sizes": (1000,), "count_per_size": 1400},
    kind="reduction",
    description="Spread of reduced sizes for pairs of size 1000",
)
