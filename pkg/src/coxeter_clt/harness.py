"""Experiment runner: group sequences in, moment and distance reports out.

For every group of a sequence the runner builds the law of the two-sided
descent statistic (exactly by convolution when every factor fits the
enumeration cap, otherwise by Monte Carlo), standardizes it, and records its
Wasserstein-2 and Kolmogorov-Smirnov distances to the standard normal.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from scipy.special import ndtr

from .coxeter import CoxeterGroup, parse_group
from .distributions import DiscreteDistribution, moments, product_t_distribution, standardize
from .enumeration import DEFAULT_CAP, factor_table
from .errors import OrderExceedsCap, ParameterOutOfRange, ParseError, TableMissing, ZeroVariance
from .sampling import SeededRng, sample_batch
from .wasserstein import d2_to_normal, law_arrays

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = 1
MODES = ("exact", "montecarlo", "auto")
CSV_COLUMNS = (
    "n",
    "group",
    "rank",
    "log10_order",
    "method",
    "samples",
    "mean",
    "variance",
    "variance_exact",
    "d2_normal",
    "ks_normal",
    "diagnostic",
    "wall_time",
)
BOUNDED_VARIANCE_WARNING = "bounded-variance"


@dataclass
class SequenceSpec:
    name: str
    groups: list[str]
    mode: str = "auto"
    samples: int = 100_000
    seed: int = 0
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not self.groups:
            raise ParseError("spec needs at least one group")
        if self.mode not in MODES:
            raise ParseError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode != "exact" and self.samples <= 0:
            raise ParseError("samples must be positive when Monte Carlo is allowed")
        if not 0 <= self.seed < 2**64:
            raise ParseError("seed must be an unsigned 64-bit integer")
        if self.cap <= 0:
            raise ParseError("cap must be positive")


def parse_spec(text: str) -> SequenceSpec:
    """Parse and validate a JSON experiment spec, reporting every bad group."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("spec must be a JSON object")
    unknown = set(obj) - {"name", "groups", "mode", "samples", "seed", "cap"}
    if unknown:
        raise ParseError(f"unknown spec fields: {sorted(unknown)}")
    groups = obj.get("groups")
    if not isinstance(groups, list) or not all(isinstance(g, str) for g in groups):
        raise ParseError("'groups' must be a list of group strings")
    problems, range_only = [], True
    for pos, text_g in enumerate(groups):
        try:
            parse_group(text_g)
        except (ParseError, ParameterOutOfRange) as exc:
            range_only &= isinstance(exc, ParameterOutOfRange)
            problems.append(f"groups[{pos}] {text_g!r}: {exc}")
    if problems:
        cls = ParameterOutOfRange if range_only else ParseError
        raise cls("invalid group strings:\n  " + "\n  ".join(problems))
    for key in ("samples", "seed", "cap"):
        if key in obj and (not isinstance(obj[key], int) or isinstance(obj[key], bool)):
            raise ParseError(f"{key!r} must be an integer")
    return SequenceSpec(
        name=str(obj.get("name", "unnamed")),
        groups=list(groups),
        mode=obj.get("mode", "auto"),
        samples=obj.get("samples", 100_000),
        seed=obj.get("seed", 0),
        cap=obj.get("cap", DEFAULT_CAP),
    )


def load_spec(path) -> SequenceSpec:
    return parse_spec(Path(path).read_text())


@dataclass
class ReportRow:
    n: int
    group: str
    rank: int
    log10_order: float
    method: str
    samples: int | None
    mean: float
    variance: float
    variance_exact: str | None
    d2_normal: float | None
    ks_normal: float | None
    diagnostic: str | None = None
    wall_time: float | None = None


@dataclass
class ExperimentReport:
    name: str
    rows: list[ReportRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    schema_version: int = REPORT_SCHEMA_VERSION

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]


def ks_to_normal(d: DiscreteDistribution) -> float:
    """Exact sup-distance between a step CDF and the standard normal CDF."""
    values, weights = law_arrays(d)
    after = np.cumsum(weights)
    after[-1] = 1.0
    before = np.concatenate([[0.0], after[:-1]])
    cdf = ndtr(values)
    return float(max(np.max(np.abs(after - cdf)), np.max(np.abs(before - cdf))))


def exact_feasible(g: CoxeterGroup, cap: int) -> bool:
    return all(f.family == "I2" or f.order <= cap for f in g.factors)


def _distances(law: DiscreteDistribution):
    try:
        std = standardize(law)
    except ZeroVariance:
        return None, None, "zero variance: the standardized law is undefined"
    return d2_to_normal(std), ks_to_normal(std), None


def _exact_row(n, text, g, cap):
    law = product_t_distribution(g, cap)
    m = moments(law)
    d2, ks, diag = _distances(law)
    return ReportRow(
        n, text, g.rank, g.log10_order, "exact", None,
        float(m.mean), float(m.variance), str(m.variance), d2, ks, diag,
    )


def _montecarlo_row(n, text, g, spec, threads, cache_dir):
    tables = {}
    for f in g.factors:
        if f.is_exceptional:
            try:
                tables[f] = factor_table(f, spec.cap, cache_dir)
            except OrderExceedsCap as exc:
                raise TableMissing(f"cannot build a table for {f} within cap {spec.cap}") from exc
    values = sample_batch(g, spec.samples, SeededRng(spec.seed, stream=n), threads=threads, tables=tables)
    law = DiscreteDistribution.from_samples(values)
    m = moments(law)
    d2, ks, diag = _distances(law)
    return ReportRow(
        n, text, g.rank, g.log10_order, "montecarlo", spec.samples,
        float(m.mean), float(m.variance), None, d2, ks, diag,
    )


def _bounded_variance(variances: list[float]) -> bool:
    if len(variances) < 2:
        return False
    head = max(variances[: max(1, len(variances) // 2)])
    return variances[-1] <= head * (1 + 1e-9)


def run_experiment(spec: SequenceSpec, threads: int = 1, cache_dir=None) -> ExperimentReport:
    """Evaluate every group of ``spec`` in order; deterministic given the seed."""
    report = ExperimentReport(spec.name)
    for n, text in enumerate(spec.groups, start=1):
        g = parse_group(text)
        start = time.perf_counter()
        feasible = exact_feasible(g, spec.cap)
        if spec.mode == "exact" and not feasible:
            big = next(f for f in g.factors if f.family != "I2" and f.order > spec.cap)
            raise OrderExceedsCap(
                f"row {n} ({text}): factor {big} has order {big.order} > cap {spec.cap}",
                big.order, spec.cap, big,
            )
        if spec.mode == "exact" or (spec.mode == "auto" and feasible):
            row = _exact_row(n, text, g, spec.cap)
        else:
            row = _montecarlo_row(n, text, g, spec, threads, cache_dir)
        row.wall_time = time.perf_counter() - start
        log.info("row %d %s: method=%s var=%.6g d2=%s", n, text, row.method, row.variance, row.d2_normal)
        report.rows.append(row)
    if _bounded_variance(report.column("variance")):
        report.warnings.append(BOUNDED_VARIANCE_WARNING)
    return report


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def report_to_csv(r: ExperimentReport, include_timing: bool = False) -> str:
    cols = CSV_COLUMNS if include_timing else CSV_COLUMNS[:-1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in r.rows:
        writer.writerow([_fmt(getattr(row, c)) for c in cols])
    return buf.getvalue()


def report_to_json(r: ExperimentReport, include_timing: bool = False) -> str:
    obj = asdict(r)
    if not include_timing:
        for row in obj["rows"]:
            row["wall_time"] = None
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> ExperimentReport:
    obj = json.loads(text)
    if obj.get("schema_version") != REPORT_SCHEMA_VERSION:
        raise ParseError(f"unsupported report schema {obj.get('schema_version')!r}")
    rows = [ReportRow(**row) for row in obj["rows"]]
    return ExperimentReport(obj["name"], rows, list(obj["warnings"]), obj["schema_version"])


def emit_report(r: ExperimentReport, format: str, path=None, include_timing: bool = False) -> str:
    """Serialize ``r`` as CSV or JSON; writes to ``path`` when given, returns the text."""
    if format == "csv":
        text = report_to_csv(r, include_timing)
    elif format == "json":
        text = report_to_json(r, include_timing)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if path is not None:
        Path(path).write_text(text)
    return text
