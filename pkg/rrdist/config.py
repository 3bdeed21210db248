"""
Experiment configuration and packaged reference data.

Reference values live in TOML files under ``rrdist/files``; experiment
parameters are frozen dataclasses that validate themselves.
"""

import tomllib
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import OverlappingBucketsError
from .utils import resolve_file_path

Bucket = Tuple[int, int]

REFERENCE_BUCKETS_FILE = "files/reference_buckets.toml"
REFERENCE_HISTOGRAMS_FILE = "files/reference_histograms.toml"

# reduced size / generated size for large random pairs
REDUCTION_FRACTION = 0.928


def load_toml(filepath) -> dict:
    """Read a TOML file, resolving relative paths against the package."""
    with open(resolve_file_path(filepath), "rb") as f:
        return tomllib.load(f)


def validate_buckets(buckets: Sequence[Bucket]) -> Tuple[Bucket, ...]:
    """
    Check that buckets are well formed, sorted and disjoint.

    Raises:
        OverlappingBucketsError: If two ranges overlap or are out of order
        ValueError: If a range is empty
    """
    result = []
    prev_hi = None
    for lo, hi in buckets:
        lo, hi = int(lo), int(hi)
        if lo > hi:
            raise ValueError(f"Empty bucket {lo}:{hi}")
        if prev_hi is not None and lo <= prev_hi:
            raise OverlappingBucketsError(
                f"Bucket {lo}:{hi} overlaps or precedes the previous bucket ending at {prev_hi}"
            )
        prev_hi = hi
        result.append((lo, hi))
    return tuple(result)


def parse_buckets(text: str) -> Tuple[Bucket, ...]:
    """
    Parse ``lo:hi,lo:hi`` or the literal ``paper`` (reference ranges).

    Raises:
        ValueError: For malformed ranges
        OverlappingBucketsError: For overlapping ranges
    """
    text = text.strip()
    if text == "paper":
        return tuple((b.lo, b.hi) for b in reference_buckets())
    buckets = []
    for part in text.split(","):
        lo, sep, hi = part.strip().partition(":")
        if not sep:
            raise ValueError(f"Bucket {part!r} must look like lo:hi")
        try:
            buckets.append((int(lo), int(hi)))
        except ValueError:
            raise ValueError(f"Bucket {part!r} must contain integers") from None
    return validate_buckets(buckets)


@dataclass(frozen=True)
class BatchConfig:
    """
    Which tree pairs a batch run generates.

    Args:
        sizes: Explicit raw sizes; each gets ``count_per_size`` pairs
        buckets: Inclusive ranges; each gets ``count_per_size`` pairs whose
            raw size is uniform in the range. Used when ``sizes`` is empty.
        count_per_size: Pairs per size or per bucket
        seed: Master seed
        threads: Worker processes; never changes the output
    """

    sizes: Tuple[int, ...] = ()
    buckets: Tuple[Bucket, ...] = ()
    count_per_size: int = 1
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "buckets", validate_buckets(self.buckets))
        if bool(self.sizes) == bool(self.buckets):
            raise ValueError("Give either sizes or buckets")
        if any(s < 1 for s in self.sizes):
            raise ValueError(f"Sizes must be >= 1, got {self.sizes}")
        if any(lo < 1 for lo, _ in self.buckets):
            raise ValueError("Bucket sizes must be >= 1")
        if self.count_per_size < 1:
            raise ValueError(f"count_per_size must be >= 1, got {self.count_per_size}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")

    @property
    def ranges(self) -> Tuple[Bucket, ...]:
        """Size ranges in run order; an explicit size is a one-point range."""
        return tuple((s, s) for s in self.sizes) or self.buckets

    @property
    def total(self) -> int:
        return len(self.ranges) * self.count_per_size

    def tasks(self) -> Iterator[Tuple[int, int, int]]:
        """(stream index, lo, hi) for every pair, in stream order."""
        index = 0
        for lo, hi in self.ranges:
            for _ in range(self.count_per_size):
                yield index, lo, hi
                index += 1


@dataclass(frozen=True)
class HistogramConfig:
    """
    Sampling pairs until enough reduce to one exact size.

    Raw sizes are drawn uniformly from a window of relative half-width
    ``window`` around ``target / reduction_fraction``.

    Args:
        target: Reduced size to keep
        min_count: Number of kept pairs
        seed: Master seed
        budget: Maximum pairs generated (default 400 * min_count)
        bin_width: Histogram bin width in distance units
        batch: Pairs generated per round
        threads: Worker processes
    """

    target: int
    min_count: int = 1000
    seed: int = 0
    budget: Optional[int] = None
    bin_width: int = 1
    batch: int = 2000
    threads: int = 1
    reduction_fraction: float = REDUCTION_FRACTION
    window: float = 0.02

    def __post_init__(self):
        if self.target < 1:
            raise ValueError(f"Target reduced size must be >= 1, got {self.target}")
        if self.min_count < 1:
            raise ValueError(f"min_count must be >= 1, got {self.min_count}")
        if self.bin_width < 1:
            raise ValueError(f"bin_width must be >= 1, got {self.bin_width}")
        if self.batch < 1 or self.threads < 1:
            raise ValueError("batch and threads must be >= 1")

    @property
    def max_pairs(self) -> int:
        return self.budget if self.budget is not None else 400 * self.min_count

    @property
    def raw_range(self) -> Bucket:
        center = round(self.target / self.reduction_fraction)
        half = max(1, round(self.window * center))
        return max(self.target, center - half), center + half


@dataclass(frozen=True)
class ReferenceBucket:
    lo: int
    hi: int
    raw_count: int
    raw_reduced_fraction: float
    raw_ratio: float
    reduced_count: int
    reduced_ratio: float


@dataclass(frozen=True)
class ReferenceHistogram:
    size: int
    count: int
    mean: float
    sd: float


@dataclass(frozen=True)
class ReferenceFit:
    slope: float
    intercept: float


def reference_buckets(filepath=REFERENCE_BUCKETS_FILE) -> List[ReferenceBucket]:
    """Reference size ranges with their per-range averages."""
    data = load_toml(filepath)
    return [
        ReferenceBucket(
            lo=b["range"][0],
            hi=b["range"][1],
            raw_count=b["raw"]["count"],
            raw_reduced_fraction=b["raw"]["reduced_fraction"],
            raw_ratio=b["raw"]["ratio"],
            reduced_count=b["reduced"]["count"],
            reduced_ratio=b["reduced"]["ratio"],
        )
        for b in data["bucket"]
    ]


def reference_fits(filepath=REFERENCE_BUCKETS_FILE) -> Dict[str, ReferenceFit]:
    """Reference lines keyed by ``raw`` and ``reduced``."""
    data = load_toml(filepath)
    return {mode: ReferenceFit(**values) for mode, values in data["fit"].items()}


def reference_histograms(filepath=REFERENCE_HISTOGRAMS_FILE) -> List[ReferenceHistogram]:
    data = load_toml(filepath)
    return [ReferenceHistogram(**h) for h in data["histogram"]]


def reference_reduction(size: int = 1000, filepath=REFERENCE_HISTOGRAMS_FILE) -> dict:
    """Reference reduced-size spread for pairs generated at ``size``."""
    data = load_toml(filepath)
    return dict(data["reduction"][str(size)])
