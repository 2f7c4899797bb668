"""Seeded Monte Carlo sweeps over random diamond-channel instances.

Record i of a sweep is a pure function of (seed, i): the generator for each
record is a Philox counter stream opened 2^192 steps apart, so substreams
never overlap and records may be evaluated in any order, in parallel, or one
at a time, always with identical results. Gain draws go through explicit
inverse-CDF transforms of the substream's uniforms, which keeps the mapping
from bits to gains frozen no matter what numpy does to its distribution
methods.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence

import numpy as np

from .channel_model import (
    ChannelSpec,
    LinkCapacities,
    derive_capacities,
    gain_for_capacity,
    link_capacity,
)
from .errors import DomainError, NegativeGapError
from .optimality import LemmaCase, certify_capacities

__all__ = [
    "RNG_ALGORITHM",
    "CSV_HEADER",
    "ExponentialUnitMean",
    "LogUniform",
    "Conditioning",
    "SweepConfig",
    "SweepRecord",
    "sample_instance",
    "iter_records",
    "run_sweep",
    "summarize",
    "write_records_csv",
    "write_summary_json",
]

RNG_ALGORITHM = "philox4x64-10(key=seed, counter=index*2^192), inverse-CDF transforms"

GAP_FLOOR = -1e-9

CSV_HEADER = (
    "seed",
    "index",
    "g01",
    "g02",
    "g13",
    "g23",
    "c01",
    "c02",
    "c13",
    "c23",
    "c012",
    "c123",
    "r_sr",
    "bound",
    "gap",
    "lemma_case",
    "certified",
)

# Forced product-equal draws are rejected while the implied fourth capacity
# exceeds this, so the inverted gain stays far inside double range.
_MAX_FORCED_CAPACITY = 50.0
_MAX_REJECTIONS = 100_000

_MIN_UNIFORM = 2.0**-53  # keeps gains strictly positive


@dataclass(frozen=True)
class ExponentialUnitMean:
    """Unit-mean exponential gains: the squared magnitude of a Rayleigh fade."""

    def sample(self, u: float) -> float:
        return -math.log1p(-u)

    def describe(self) -> dict[str, object]:
        return {"name": "exponential_unit_mean"}


@dataclass(frozen=True)
class LogUniform:
    """Gains whose logarithm is uniform on [log(lo), log(hi)]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        for name in ("lo", "hi"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DomainError(f"{name} must be a real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError(f"lo and hi must be finite, got {self.lo}, {self.hi}")
        if not 0.0 < self.lo < self.hi:
            raise DomainError(f"need 0 < lo < hi, got lo = {self.lo}, hi = {self.hi}")

    def sample(self, u: float) -> float:
        return math.exp((1.0 - u) * math.log(self.lo) + u * math.log(self.hi))

    def describe(self) -> dict[str, object]:
        return {"name": "log_uniform", "lo": self.lo, "hi": self.hi}


class Conditioning(enum.Enum):
    """How sampled instances are constrained."""

    UNCONDITIONED = "unconditioned"
    FORCE_PRODUCT_EQUAL = "force_product_equal"
    FORCE_MIRRORED = "force_mirrored"


def _checked_triple(name: str, values: object) -> tuple[float, float, float]:
    try:
        a, b, c = (float(v) for v in values)  # type: ignore[union-attr]
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} must be 3 real numbers, got {values!r}") from exc
    if not all(math.isfinite(v) for v in (a, b, c)):
        raise DomainError(f"{name} must be finite, got {values!r}")
    return a, b, c


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep depends on; records are a pure function of this."""

    n_samples: int
    seed: int
    gain_distribution: ExponentialUnitMean | LogUniform = ExponentialUnitMean()
    power_budget: tuple[float, float, float] = (1.0, 1.0, 1.0)
    noise: tuple[float, float, float] = (1.0, 1.0, 1.0)
    conditioning: Conditioning = Conditioning.UNCONDITIONED

    def __post_init__(self) -> None:
        if isinstance(self.n_samples, bool) or not isinstance(self.n_samples, int):
            raise DomainError(f"n_samples must be an integer, got {self.n_samples!r}")
        if self.n_samples < 1:
            raise DomainError(f"n_samples must be >= 1, got {self.n_samples}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise DomainError(f"seed must be an integer, got {self.seed!r}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be in [0, 2^64), got {self.seed}")
        if not isinstance(self.gain_distribution, (ExponentialUnitMean, LogUniform)):
            raise DomainError(
                f"gain_distribution must be ExponentialUnitMean or LogUniform, "
                f"got {self.gain_distribution!r}"
            )
        if not isinstance(self.conditioning, Conditioning):
            raise DomainError(f"conditioning must be a Conditioning, got {self.conditioning!r}")
        powers = _checked_triple("power_budget", self.power_budget)
        noises = _checked_triple("noise", self.noise)
        object.__setattr__(self, "power_budget", powers)
        object.__setattr__(self, "noise", noises)
        if min(powers) < 0.0:
            raise DomainError(f"powers must be >= 0, got {powers}")
        if min(noises) <= 0.0:
            raise DomainError(f"noise variances must be > 0, got {noises}")
        if self.conditioning is Conditioning.FORCE_PRODUCT_EQUAL and min(powers) <= 0.0:
            raise DomainError(
                "force_product_equal needs strictly positive powers to realize "
                "the implied fourth link"
            )
        if self.conditioning is Conditioning.FORCE_MIRRORED:
            if not powers[0] == powers[1] == powers[2]:
                raise DomainError(
                    f"force_mirrored needs equal power budgets, got {powers}"
                )
            if not noises[0] == noises[1] == noises[2]:
                raise DomainError(
                    f"force_mirrored needs equal noise variances, got {noises}"
                )
            if powers[0] <= 0.0:
                raise DomainError("force_mirrored needs strictly positive powers")


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated instance of a sweep."""

    index: int
    spec: ChannelSpec
    caps: LinkCapacities
    r_sr: float
    bound: float
    gap: float
    lemma_case: LemmaCase
    certified: bool


def _substream(seed: int, index: int) -> np.random.Generator:
    # a counter jump of 2^192 per index leaves each substream 2^192 draws of
    # headroom; substreams can never collide
    return np.random.Generator(np.random.Philox(key=seed, counter=index << 192))


def _draw_gain(gen: np.random.Generator, dist: ExponentialUnitMean | LogUniform) -> float:
    u = gen.random()
    if u < _MIN_UNIFORM:
        u = _MIN_UNIFORM
    return dist.sample(u)


def sample_instance(config: SweepConfig, index: int) -> ChannelSpec:
    """The instance at one sweep slot; depends only on (config.seed, index)."""
    if isinstance(index, bool) or not isinstance(index, int):
        raise DomainError(f"index must be an integer, got {index!r}")
    if not 0 <= index < config.n_samples:
        raise DomainError(
            f"index must be in [0, {config.n_samples}), got {index}"
        )
    gen = _substream(config.seed, index)
    dist = config.gain_distribution
    p_s, p_r1, p_r2 = config.power_budget
    s1, s2, s3 = config.noise

    if config.conditioning is Conditioning.UNCONDITIONED:
        g01 = _draw_gain(gen, dist)
        g02 = _draw_gain(gen, dist)
        g13 = _draw_gain(gen, dist)
        g23 = _draw_gain(gen, dist)
    elif config.conditioning is Conditioning.FORCE_PRODUCT_EQUAL:
        # draw three links, solve the product condition for the fourth, and
        # invert it back to a gain; redraw when the implied capacity is too
        # large to realize comfortably
        for _ in range(_MAX_REJECTIONS):
            g01 = _draw_gain(gen, dist)
            g02 = _draw_gain(gen, dist)
            g13 = _draw_gain(gen, dist)
            c01 = link_capacity(g01, p_s, s1)
            c02 = link_capacity(g02, p_s, s2)
            c13 = link_capacity(g13, p_r1, s3)
            c23 = c01 * c02 / c13
            if c23 <= _MAX_FORCED_CAPACITY:
                break
        else:
            raise DomainError(
                "force_product_equal rejected every draw; the gain distribution "
                "makes the implied fourth capacity too large"
            )
        g23 = gain_for_capacity(c23, p_r2, s3)
    else:  # FORCE_MIRRORED
        # equal powers and noises make copying gains copy capacities exactly:
        # c02 = c13 and c01 = c23
        g_outer = _draw_gain(gen, dist)
        g_inner = _draw_gain(gen, dist)
        g01, g23 = g_outer, g_outer
        g02, g13 = g_inner, g_inner

    return ChannelSpec(
        g01=g01,
        g02=g02,
        g13=g13,
        g23=g23,
        sigma1_sq=s1,
        sigma2_sq=s2,
        sigma3_sq=s3,
        p_s=p_s,
        p_r1=p_r1,
        p_r2=p_r2,
    )


def _evaluate(config: SweepConfig, index: int) -> SweepRecord:
    spec = sample_instance(config, index)
    caps = derive_capacities(spec)
    report = certify_capacities(caps)
    if report.gap < GAP_FLOOR:
        raise NegativeGapError(
            f"record {index}: bound {report.bound} is below r_sr {report.r_sr}"
        )
    return SweepRecord(
        index=index,
        spec=spec,
        caps=caps,
        r_sr=report.r_sr,
        bound=report.bound,
        gap=report.gap,
        lemma_case=report.lemma_case,
        certified=report.capacity_certified,
    )


def iter_records(config: SweepConfig) -> Iterator[SweepRecord]:
    """Records 0..n_samples-1 in order, evaluated lazily."""
    for index in range(config.n_samples):
        yield _evaluate(config, index)


def summarize(config: SweepConfig, records: Sequence[SweepRecord]) -> dict[str, object]:
    """Aggregate statistics over a sweep's records.

    Uses exact summation (math.fsum) so the reduction is independent of
    evaluation order; relative gaps are only aggregated where the bound is
    meaningfully away from zero.
    """
    if not records:
        raise DomainError("cannot summarize an empty record list")
    n = len(records)
    gaps = [r.gap for r in records]
    certified = sum(1 for r in records if r.certified)
    case_counts = {case.value: 0 for case in LemmaCase}
    for record in records:
        case_counts[record.lemma_case.value] += 1
    relative = [r.gap / r.bound for r in records if r.bound > 1e-6]
    relative_gap: dict[str, object] | None = None
    if relative:
        relative_gap = {
            "n": len(relative),
            "min": min(relative),
            "max": max(relative),
            "mean": math.fsum(relative) / len(relative),
        }
    return {
        "n_samples": n,
        "seed": config.seed,
        "conditioning": config.conditioning.value,
        "gain_distribution": config.gain_distribution.describe(),
        "power_budget": list(config.power_budget),
        "noise": list(config.noise),
        "rng": RNG_ALGORITHM,
        "certified_count": certified,
        "certification_rate": certified / n,
        "gap_min": min(gaps),
        "gap_max": max(gaps),
        "gap_mean": math.fsum(gaps) / n,
        "lemma_case_counts": case_counts,
        "relative_gap": relative_gap,
    }


def run_sweep(config: SweepConfig) -> tuple[list[SweepRecord], dict[str, object]]:
    """Evaluate the whole sweep and summarize it."""
    records = list(iter_records(config))
    return records, summarize(config, records)


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_records_csv(
    config: SweepConfig, records: Iterable[SweepRecord], stream: IO[str]
) -> None:
    """One CSV row per record, numbers with 17 significant digits.

    The writer pins the line terminator so output is byte-identical across
    platforms and runs.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in records:
        spec = record.spec
        caps = record.caps
        writer.writerow(
            [
                str(config.seed),
                str(record.index),
                _fmt(spec.g01),
                _fmt(spec.g02),
                _fmt(spec.g13),
                _fmt(spec.g23),
                _fmt(caps.c01),
                _fmt(caps.c02),
                _fmt(caps.c13),
                _fmt(caps.c23),
                _fmt(caps.c012),
                _fmt(caps.c123),
                _fmt(record.r_sr),
                _fmt(record.bound),
                _fmt(record.gap),
                record.lemma_case.value,
                "true" if record.certified else "false",
            ]
        )


def write_summary_json(summary: dict[str, object], stream: IO[str]) -> None:
    json.dump(summary, stream, indent=2, sort_keys=True)
    stream.write("\n")
