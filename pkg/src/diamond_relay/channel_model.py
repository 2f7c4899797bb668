"""Channel instances for the diamond relay network and their capacities.

The network has a source (node 0), two half-duplex relays (nodes 1 and 2) and
a destination (node 3). There is no direct source-destination link and no
link between the relays. Each point-to-point link is a complex Gaussian
channel described by a power gain, the receiver noise variance and the
transmitter power budget; its capacity is log2(1 + SNR) bits per channel use.

Besides the four link capacities the bound computations need two cut
capacities: the source-side cut where both relays listen jointly (per-relay
SNRs add) and the destination-side cut where both relays transmit coherently
(received amplitudes add).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Mapping

from .errors import DomainError

__all__ = [
    "ChannelSpec",
    "LinkCapacities",
    "link_capacity",
    "derive_capacities",
    "induced_capacities",
    "gain_for_capacity",
]

_LN2 = math.log(2.0)

# Cut capacities must dominate their strongest link; allow a hair of slack so
# values computed through different floating-point routes still validate.
_CUT_CAP_SLACK = 1e-9


def _checked_value(name: str, value: object) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def _log2_1p(x: float) -> float:
    # log2(1 + x) without the precision loss of forming 1 + x first; small
    # SNRs survive a capacity -> gain -> capacity round trip this way
    return math.log1p(x) / _LN2


def _snr_for_capacity(name: str, capacity: float) -> float:
    # 2^capacity - 1, full relative precision even for tiny capacities
    try:
        return math.expm1(capacity * _LN2)
    except OverflowError:
        raise DomainError(
            f"{name} = {capacity} is too large to realize in double precision"
        ) from None


@dataclass(frozen=True)
class ChannelSpec:
    """One static realization of the diamond channel.

    Attributes:
        g01, g02: power gains from the source to relay 1 / relay 2
            (dimensionless, >= 0).
        g13, g23: power gains from relay 1 / relay 2 to the destination (>= 0).
        sigma1_sq, sigma2_sq, sigma3_sq: noise variances at relay 1, relay 2
            and the destination (linear power units, > 0).
        p_s, p_r1, p_r2: transmit power budgets of the source and the two
            relays (linear power units, >= 0).
    """

    g01: float
    g02: float
    g13: float
    g23: float
    sigma1_sq: float
    sigma2_sq: float
    sigma3_sq: float
    p_s: float
    p_r1: float
    p_r2: float

    def __post_init__(self) -> None:
        for field in fields(self):
            object.__setattr__(
                self, field.name, _checked_value(field.name, getattr(self, field.name))
            )
        for name in ("g01", "g02", "g13", "g23", "p_s", "p_r1", "p_r2"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be >= 0, got {getattr(self, name)}")
        for name in ("sigma1_sq", "sigma2_sq", "sigma3_sq"):
            if getattr(self, name) <= 0.0:
                raise DomainError(f"{name} must be > 0, got {getattr(self, name)}")

    def to_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "ChannelSpec":
        """Build from a flat mapping; unknown and missing keys are rejected."""
        names = [field.name for field in fields(cls)]
        unknown = sorted(set(data) - set(names))
        if unknown:
            raise DomainError(f"unknown channel spec field(s): {', '.join(unknown)}")
        missing = sorted(set(names) - set(data))
        if missing:
            raise DomainError(f"missing channel spec field(s): {', '.join(missing)}")
        return cls(**{name: data[name] for name in names})  # type: ignore[arg-type]


@dataclass(frozen=True)
class LinkCapacities:
    """The six capacities of one instance, in bits per channel use.

    c01, c02, c13, c23 are the four point-to-point link capacities. c012 is
    the source-side cut capacity (source against both relays) and c123 the
    destination-side cut capacity (both relays against the destination).
    """

    c01: float
    c02: float
    c13: float
    c23: float
    c012: float
    c123: float

    def __post_init__(self) -> None:
        for field in fields(self):
            value = _checked_value(field.name, getattr(self, field.name))
            object.__setattr__(self, field.name, value)
            if value < 0.0:
                raise DomainError(f"{field.name} must be >= 0, got {value}")
        strongest_source = max(self.c01, self.c02)
        if self.c012 < strongest_source - _CUT_CAP_SLACK * max(1.0, strongest_source):
            raise DomainError(
                f"c012 = {self.c012} is below max(c01, c02) = {strongest_source}; "
                "the joint source cut cannot be weaker than its strongest link"
            )
        strongest_relay = max(self.c13, self.c23)
        if self.c123 < strongest_relay - _CUT_CAP_SLACK * max(1.0, strongest_relay):
            raise DomainError(
                f"c123 = {self.c123} is below max(c13, c23) = {strongest_relay}; "
                "the joint relay cut cannot be weaker than its strongest link"
            )

    def to_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


def link_capacity(gain: float, power: float, noise_var: float) -> float:
    """Capacity of one Gaussian link: log2(1 + gain * power / noise_var).

    Returns exactly 0.0 when gain * power = 0.

    Raises:
        DomainError: if gain or power is negative, noise_var is not strictly
            positive, or any argument is non-finite.
    """
    gain = _checked_value("gain", gain)
    power = _checked_value("power", power)
    noise_var = _checked_value("noise_var", noise_var)
    if gain < 0.0:
        raise DomainError(f"gain must be >= 0, got {gain}")
    if power < 0.0:
        raise DomainError(f"power must be >= 0, got {power}")
    if noise_var <= 0.0:
        raise DomainError(f"noise_var must be > 0, got {noise_var}")
    snr = gain * power / noise_var
    if snr == 0.0:
        return 0.0
    return _log2_1p(snr)


def derive_capacities(spec: ChannelSpec) -> LinkCapacities:
    """All six capacities of an instance.

    The source transmits at p_s on both of its links; each relay transmits at
    its own budget. The source-side cut sees the sum of the two relay SNRs,
    the destination-side cut the coherent sum of the two relay amplitudes.
    """
    c01 = link_capacity(spec.g01, spec.p_s, spec.sigma1_sq)
    c02 = link_capacity(spec.g02, spec.p_s, spec.sigma2_sq)
    c13 = link_capacity(spec.g13, spec.p_r1, spec.sigma3_sq)
    c23 = link_capacity(spec.g23, spec.p_r2, spec.sigma3_sq)
    snr_source_cut = (spec.g01 / spec.sigma1_sq + spec.g02 / spec.sigma2_sq) * spec.p_s
    amplitude = math.sqrt(spec.g13 * spec.p_r1) + math.sqrt(spec.g23 * spec.p_r2)
    snr_relay_cut = amplitude * amplitude / spec.sigma3_sq
    return LinkCapacities(
        c01=c01,
        c02=c02,
        c13=c13,
        c23=c23,
        c012=_log2_1p(snr_source_cut),
        c123=_log2_1p(snr_relay_cut),
    )


def induced_capacities(
    c01: float,
    c02: float,
    c13: float,
    c23: float,
    c012: float | None = None,
    c123: float | None = None,
) -> LinkCapacities:
    """LinkCapacities built directly in capacity space.

    When the cut capacities are omitted they default to the values induced by
    realizing every link with unit power and unit noise: the source cut has
    SNR (2^c01 - 1) + (2^c02 - 1) and the relay cut has received amplitude
    sqrt(2^c13 - 1) + sqrt(2^c23 - 1). Those defaults are the unique cut
    capacities consistent with the four link capacities, so instances
    fabricated here are always physically realizable.
    """
    values = {"c01": c01, "c02": c02, "c13": c13, "c23": c23}
    for name, value in values.items():
        value = _checked_value(name, value)
        if value < 0.0:
            raise DomainError(f"{name} must be >= 0, got {value}")
        values[name] = value
    if c012 is None:
        snr_sum = _snr_for_capacity("c01", values["c01"]) + _snr_for_capacity(
            "c02", values["c02"]
        )
        c012 = _log2_1p(snr_sum)
        if not math.isfinite(c012):
            raise DomainError("c01 and c02 are too large to combine in double precision")
    if c123 is None:
        amplitude = math.sqrt(_snr_for_capacity("c13", values["c13"])) + math.sqrt(
            _snr_for_capacity("c23", values["c23"])
        )
        c123 = _log2_1p(amplitude * amplitude)
        if not math.isfinite(c123):
            raise DomainError("c13 and c23 are too large to combine in double precision")
    return LinkCapacities(c012=c012, c123=c123, **values)


def gain_for_capacity(capacity: float, power: float = 1.0, noise_var: float = 1.0) -> float:
    """Invert link_capacity: the gain realizing a capacity at given power and noise.

    gain = (2^capacity - 1) * noise_var / power.
    """
    capacity = _checked_value("capacity", capacity)
    power = _checked_value("power", power)
    noise_var = _checked_value("noise_var", noise_var)
    if capacity < 0.0:
        raise DomainError(f"capacity must be >= 0, got {capacity}")
    if power <= 0.0:
        raise DomainError(f"power must be > 0 to realize a gain, got {power}")
    if noise_var <= 0.0:
        raise DomainError(f"noise_var must be > 0, got {noise_var}")
    return _snr_for_capacity("capacity", capacity) * noise_var / power
