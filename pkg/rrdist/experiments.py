"""
Monte Carlo study of restricted rotation distance between random trees.

Pairs are generated per stream index from a master seed, reduced and
measured. Records can then be bucketed by generated (raw) or reduced size,
fitted with a line, turned into histograms of one reduced size, and written
as CSV. Output never depends on the number of worker processes.
"""

import bisect
import csv
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Callable,
    Dict,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    TextIO,
    Tuple,
    Union,
)

import numpy as np
from scipy import stats

from .config import (
    BatchConfig,
    Bucket,
    HistogramConfig,
    reference_buckets,
    validate_buckets,
)
from .errors import DegenerateFitError, SamplingBudgetError
from .metric import FordhamType, WEIGHTS, rrd, type_pair_counts
from .sampling import Seed, draw_size, sample_pair

logger = logging.getLogger(__name__)

RECORD_HEADER = [
    "stream_index",
    "raw_size",
    "reduced_size",
    "distance",
    "ratio_raw",
    "ratio_reduced",
]
BUCKET_HEADER = [
    "range_lo",
    "range_hi",
    "count",
    "avg_reduced_fraction",
    "avg_ratio",
    "sd_ratio",
]

DEFAULT_THRESHOLDS = (0.01, 0.03, 0.05)


class Mode(Enum):
    """Which size a record is bucketed and normalised by."""

    RAW = "raw"
    REDUCED = "reduced"

    @classmethod
    def parse(cls, value: Union["Mode", str]) -> "Mode":
        aliases = {"table2": cls.RAW, "table3": cls.REDUCED}
        if isinstance(value, str) and value in aliases:
            return aliases[value]
        return cls(value)


@dataclass(frozen=True)
class PairRecord:
    """
    One measured tree pair.

    Args:
        stream_index: Stream the pair was drawn from
        raw_size: Generated size
        reduced_size: Size after reduction
        distance: Restricted rotation distance
    """

    stream_index: int
    raw_size: int
    reduced_size: int
    distance: int

    @property
    def ratio_raw(self) -> float:
        return self.distance / self.raw_size

    @property
    def ratio_reduced(self) -> Optional[float]:
        return self.distance / self.reduced_size if self.reduced_size else None

    @property
    def reduced_fraction(self) -> float:
        return self.reduced_size / self.raw_size

    def size(self, mode: Mode) -> int:
        return self.raw_size if mode is Mode.RAW else self.reduced_size

    def ratio(self, mode: Mode) -> Optional[float]:
        return self.ratio_raw if mode is Mode.RAW else self.ratio_reduced


def pair_record(task: Tuple[int, int, int, int]) -> PairRecord:
    """Measure the pair of stream ``index`` with raw size drawn in [lo, hi]."""
    index, lo, hi, master = task
    seed = Seed(master, index)
    n = draw_size(lo, hi, seed)
    result = rrd(sample_pair(n, seed))
    return PairRecord(index, n, result.reduced_size, result.distance)


def _ordered_map(func: Callable, tasks: Iterable, threads: int) -> Iterator:
    """Map in task order, in worker processes when threads > 1."""
    if threads <= 1:
        yield from map(func, tasks)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(func, tasks, chunksize=64)


def iter_batch(config: BatchConfig) -> Iterator[PairRecord]:
    """Stream records of a batch run in stream-index order."""
    total = config.total
    step = max(1, total // 10)
    tasks = ((i, lo, hi, config.seed) for i, lo, hi in config.tasks())
    for done, record in enumerate(_ordered_map(pair_record, tasks, config.threads), 1):
        if done % step == 0:
            logger.info("Measured %d/%d pairs", done, total)
        yield record


def run_batch(config: BatchConfig) -> List[PairRecord]:
    """
    Generate, reduce and measure every pair of a batch configuration.

    Example:
        >>> records = run_batch(BatchConfig(sizes=(10,), count_per_size=5))
        >>> len(records)
        5
    """
    return list(iter_batch(config))


@dataclass(frozen=True)
class BucketRow:
    """
    Averages over the records falling into one size range.

    The averages are None for an empty bucket, the sd also for a bucket
    with a single record.
    """

    range_lo: int
    range_hi: int
    count: int
    avg_reduced_fraction: Optional[float]
    avg_ratio: Optional[float]
    sd_ratio: Optional[float]


def aggregate(
    records: Iterable[PairRecord],
    buckets: Sequence[Bucket],
    mode: Union[Mode, str] = Mode.RAW,
) -> List[BucketRow]:
    """
    Bucket records by raw or reduced size.

    In raw mode the ratio is distance / raw size. In reduced mode records
    are placed by reduced size, the ratio is distance / reduced size and
    fully reduced pairs are left out.

    Raises:
        OverlappingBucketsError: If buckets overlap or are not sorted
    """
    mode = Mode.parse(mode)
    buckets = validate_buckets(buckets)
    los = [lo for lo, _ in buckets]
    fractions: List[List[float]] = [[] for _ in buckets]
    ratios: List[List[float]] = [[] for _ in buckets]
    for record in records:
        size = record.size(mode)
        if size == 0:
            continue
        k = bisect.bisect_right(los, size) - 1
        if k < 0 or size > buckets[k][1]:
            continue
        fractions[k].append(record.reduced_fraction)
        ratios[k].append(record.ratio(mode))

    rows = []
    for (lo, hi), fr, ra in zip(buckets, fractions, ratios):
        if not ra:
            rows.append(BucketRow(lo, hi, 0, None, None, None))
            continue
        values = np.asarray(ra)
        rows.append(
            BucketRow(
                lo,
                hi,
                len(ra),
                float(np.mean(fr)),
                float(values.mean()),
                float(values.std(ddof=1)) if len(ra) > 1 else None,
            )
        )
    return rows


def ratio_sd_trend(rows: Iterable[BucketRow]) -> List[Tuple[int, int, float]]:
    """(lo, hi, sd of ratio) for every bucket that has an sd."""
    return [(r.range_lo, r.range_hi, r.sd_ratio) for r in rows if r.sd_ratio is not None]


def compare_with_reference(rows: Iterable[BucketRow], mode: Union[Mode, str]) -> List[dict]:
    """Pair bucket rows with the reference averages of the same range."""
    mode = Mode.parse(mode)
    reference = {(b.lo, b.hi): b for b in reference_buckets()}
    out = []
    for row in rows:
        ref = reference.get((row.range_lo, row.range_hi))
        if ref is None:
            continue
        out.append(
            {
                "range": (row.range_lo, row.range_hi),
                "avg_ratio": row.avg_ratio,
                "reference_ratio": ref.raw_ratio if mode is Mode.RAW else ref.reduced_ratio,
                "avg_reduced_fraction": row.avg_reduced_fraction,
                "reference_reduced_fraction": ref.raw_reduced_fraction,
            }
        )
    return out


@dataclass(frozen=True)
class FitResult:
    """
    Least-squares line distance ~ slope * size + intercept.

    Args:
        max_relative_residual: Largest |distance - prediction| / distance
    """

    slope: float
    intercept: float
    max_relative_residual: float
    count: int

    def predict(self, size):
        return self.slope * np.asarray(size, dtype=float) + self.intercept


def fit_points(records: Iterable[PairRecord], mode: Union[Mode, str]) -> List[Tuple[int, int]]:
    """(size, distance) points of records; fully reduced pairs skipped in reduced mode."""
    mode = Mode.parse(mode)
    return [
        (r.size(mode), r.distance) for r in records if r.size(mode) > 0
    ]


def linear_fit(points: Iterable[Tuple[float, float]]) -> FitResult:
    """
    Ordinary least squares over (size, distance) points.

    Raises:
        DegenerateFitError: If fewer than two distinct sizes are given
    """
    pts = np.asarray(list(points), dtype=float).reshape(-1, 2)
    xs, ys = pts[:, 0], pts[:, 1]
    if np.unique(xs).size < 2:
        raise DegenerateFitError("Linear fit needs at least two distinct sizes")
    design = np.column_stack([xs, np.ones_like(xs)])
    (slope, intercept), *_ = np.linalg.lstsq(design, ys, rcond=None)
    residuals = np.abs(ys - (slope * xs + intercept))
    positive = ys > 0
    max_rel = float((residuals[positive] / ys[positive]).max()) if positive.any() else 0.0
    return FitResult(float(slope), float(intercept), max_rel, len(xs))


@dataclass(frozen=True)
class DeviationReport:
    """Share of records farther than each threshold from a fitted line."""

    fraction_beyond: Dict[float, float]
    max_rel_deviation: float
    count: int


def deviation_report(
    records: Iterable[PairRecord],
    fit: FitResult,
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
    mode: Union[Mode, str] = Mode.REDUCED,
) -> DeviationReport:
    """
    Relative deviation |distance - predicted| / predicted per record.

    Records whose predicted distance is not positive are skipped.
    """
    mode = Mode.parse(mode)
    pts = np.asarray(fit_points(records, mode), dtype=float).reshape(-1, 2)
    predicted = fit.predict(pts[:, 0])
    keep = predicted > 0
    deviation = np.abs(pts[keep, 1] - predicted[keep]) / predicted[keep]
    if deviation.size == 0:
        return DeviationReport({t: 0.0 for t in thresholds}, 0.0, 0)
    return DeviationReport(
        {t: float((deviation > t).mean()) for t in thresholds},
        float(deviation.max()),
        int(deviation.size),
    )


@dataclass(frozen=True)
class Histogram:
    """
    Distances of reduced pairs of one size, with summary statistics.

    Mean, sd (sample) and skewness come from the raw distances, not the bins.
    """

    target_reduced_size: int
    bin_width: int
    bins: Dict[int, int]
    sample_mean: float
    sample_sd: float
    sample_count: int
    skewness: float

    @classmethod
    def from_distances(
        cls, target: int, distances: Sequence[int], bin_width: int = 1
    ) -> "Histogram":
        values = np.asarray(distances, dtype=float)
        counts = Counter((int(d) // bin_width) * bin_width for d in distances)
        n = values.size
        return cls(
            target_reduced_size=target,
            bin_width=bin_width,
            bins=dict(sorted(counts.items())),
            sample_mean=float(values.mean()) if n else 0.0,
            sample_sd=float(values.std(ddof=1)) if n > 1 else 0.0,
            sample_count=n,
            skewness=float(stats.skew(values, bias=False)) if n > 2 and values.std() > 0 else 0.0,
        )


def sample_histogram(config: HistogramConfig) -> Histogram:
    """
    Generate pairs near ``target / reduction_fraction`` until ``min_count``
    of them reduce to exactly ``target``.

    The first ``min_count`` matches in stream order are kept, so the result
    depends neither on ``threads`` nor on ``batch``.

    Raises:
        SamplingBudgetError: If the budget runs out first
    """
    lo, hi = config.raw_range
    kept: List[int] = []
    generated = 0
    while len(kept) < config.min_count:
        if generated >= config.max_pairs:
            raise SamplingBudgetError(
                config.target,
                len(kept),
                config.min_count,
                generated,
                hint="Raise the budget or lower min_count",
            )
        n_round = min(config.batch, config.max_pairs - generated)
        tasks = [(generated + i, lo, hi, config.seed) for i in range(n_round)]
        for record in _ordered_map(pair_record, tasks, config.threads):
            if record.reduced_size == config.target:
                kept.append(record.distance)
        generated += n_round
        logger.info(
            "Reduced size %d: kept %d of %d pairs (raw %d..%d)",
            config.target,
            len(kept),
            generated,
            lo,
            hi,
        )
    return Histogram.from_distances(
        config.target, kept[: config.min_count], config.bin_width
    )


def histogram_for_reduced_size(
    source: Union[HistogramConfig, Iterable[PairRecord]],
    target: Optional[int] = None,
    min_count: int = 1,
    bin_width: int = 1,
) -> Histogram:
    """
    Histogram of distances for reduced pairs of size ``target``.

    Args:
        source: A HistogramConfig to sample on the fly, or existing records
        target: Reduced size to keep (taken from the config when sampling)
        min_count: Fewest matching records accepted
        bin_width: Bin width for records

    Raises:
        SamplingBudgetError: If not enough pairs of that size are available
    """
    if isinstance(source, HistogramConfig):
        return sample_histogram(source)
    if target is None or target < 1:
        raise ValueError(f"Target reduced size must be >= 1, got {target}")
    records = list(source)
    distances = [r.distance for r in records if r.reduced_size == target]
    if len(distances) < min_count:
        raise SamplingBudgetError(target, len(distances), min_count, len(records))
    return Histogram.from_distances(target, distances, bin_width)


@dataclass(frozen=True)
class ReductionProfile:
    """Spread of reduced sizes for pairs generated at one size."""

    raw_size: int
    count: int
    min: int
    max: int
    mean: float
    median: float
    mode: int
    mode_count: int
    fraction_already_reduced: float
    fraction_fully_reduced: float


def reduction_profile(size: int, count: int, seed: int = 0, threads: int = 1) -> ReductionProfile:
    """Reduce ``count`` random pairs of ``size`` and summarise the reduced sizes."""
    records = run_batch(
        BatchConfig(sizes=(size,), count_per_size=count, seed=seed, threads=threads)
    )
    sizes = [r.reduced_size for r in records]
    counts = Counter(sizes)
    top = max(counts.values())
    return ReductionProfile(
        raw_size=size,
        count=count,
        min=min(sizes),
        max=max(sizes),
        mean=float(np.mean(sizes)),
        median=float(np.median(sizes)),
        mode=min(s for s, c in counts.items() if c == top),
        mode_count=top,
        fraction_already_reduced=sum(s == size for s in sizes) / count,
        fraction_fully_reduced=sum(s == 0 for s in sizes) / count,
    )


HEAVY_PAIRS = frozenset(
    {(FordhamType.I0, FordhamType.IR), (FordhamType.IR, FordhamType.IR)}
)


@dataclass
class TypePairCensus:
    """
    How often each unordered type pair occurs in measured pairs.

    ``heavy_share`` is the part of the total distance contributed by the
    weight-4 pairs (I0, IR) and (IR, IR).
    """

    counts: Counter = field(default_factory=Counter)
    pairs: int = 0
    total_distance: int = 0

    @property
    def heavy_share(self) -> float:
        if not self.total_distance:
            return 0.0
        heavy = sum(4 * self.counts[p] for p in HEAVY_PAIRS)
        return heavy / self.total_distance

    def weight_of(self, pair: Tuple[FordhamType, FordhamType]) -> int:
        a, b = pair
        return int(WEIGHTS[a.code, b.code])


def _census_for(task: Tuple[int, int, int, int]) -> Tuple[Counter, int]:
    index, lo, hi, master = task
    seed = Seed(master, index)
    result = rrd(sample_pair(draw_size(lo, hi, seed), seed))
    return type_pair_counts(result), result.distance


def type_pair_census(config: BatchConfig) -> TypePairCensus:
    """Count type pairs over every pair of a batch configuration."""
    census = TypePairCensus()
    tasks = ((i, lo, hi, config.seed) for i, lo, hi in config.tasks())
    for counts, dist in _ordered_map(_census_for, tasks, config.threads):
        census.counts.update(counts)
        census.pairs += 1
        census.total_distance += dist
    return census


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.6f}"


def write_records_csv(records: Iterable[PairRecord], f: TextIO) -> int:
    """Write per-pair rows; returns the number written."""
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(RECORD_HEADER)
    n = 0
    for r in records:
        writer.writerow(
            [
                r.stream_index,
                r.raw_size,
                r.reduced_size,
                r.distance,
                _fmt(r.ratio_raw),
                _fmt(r.ratio_reduced),
            ]
        )
        n += 1
    return n


def read_records_csv(f: TextIO) -> List[PairRecord]:
    """
    Read per-pair rows written by write_records_csv.

    Raises:
        ValueError: If the header does not match
    """
    reader = csv.reader(f)
    header = next(reader, None)
    if header != RECORD_HEADER:
        raise ValueError(f"Unexpected record header {header}, expected {RECORD_HEADER}")
    return [
        PairRecord(int(row[0]), int(row[1]), int(row[2]), int(row[3]))
        for row in reader
        if row
    ]


def write_buckets_csv(rows: Iterable[BucketRow], f: TextIO) -> None:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(BUCKET_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.range_lo,
                r.range_hi,
                r.count,
                _fmt(r.avg_reduced_fraction),
                _fmt(r.avg_ratio),
                _fmt(r.sd_ratio),
            ]
        )


def write_histogram_csv(h: Histogram, f: TextIO) -> None:
    writer = csv.writer(f, lineterminator="\n")
    writer.writerow(["bin_lo", "count"])
    for lo, count in h.bins.items():
        writer.writerow([lo, count])
    f.write(
        f"# n={h.target_reduced_size} mean={h.sample_mean:.4f} "
        f"sd={h.sample_sd:.4f} count={h.sample_count}\n"
    )
