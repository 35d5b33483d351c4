"""Scenario configuration: sampling, array geometry, dictionary and search grids.

A scenario pins down everything the estimator is allowed to know: the sample
clock, the sensor array, the waveform dictionary (windowed sinusoids indexed
by kind, frequency, length and starting point) and the delay/angle grids that
discretize the propagation parameters.  Together these define a virtual
design matrix with ``J * P * Q`` columns that is never materialized.

Delay and start grids are restricted to integer multiples of the sample
period, so shifting an atom is array indexing rather than interpolation, and
every atom placed at any admissible (start, delay) must fit inside the
observation window.  The second condition makes predictor norms independent
of start and delay, which the norm cache relies on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

ATOM_KINDS = ("sine", "cosine")

# Tolerance (in sample units) for "is an integer multiple of the sample
# period" checks; guards against decimal-to-binary rounding in configs.
_GRID_TOL = 1e-6


@dataclass(frozen=True)
class SamplingSpec:
    """Sample clock: rate in Hz and number of observed samples."""

    sample_rate_hz: float
    num_samples: int

    @property
    def sample_period_s(self) -> float:
        return 1.0 / self.sample_rate_hz

    @property
    def window_s(self) -> float:
        return self.num_samples / self.sample_rate_hz


@dataclass(frozen=True)
class ArraySpec:
    """Uniform linear array: sensor count and spacing in wavelengths."""

    num_sensors: int
    element_spacing_wavelengths: float = 0.5


@dataclass(frozen=True)
class DictionarySpec:
    """Windowed-sinusoid dictionary axes.

    The dictionary holds one atom per (kind, frequency, length, start)
    combination, so its size is the product of the axis cardinalities.
    """

    kinds: tuple[str, ...]
    frequencies_hz: tuple[float, ...]
    lengths_s: tuple[float, ...]
    starts_s: tuple[float, ...]

    @property
    def num_atoms(self) -> int:
        return (
            len(self.kinds)
            * len(self.frequencies_hz)
            * len(self.lengths_s)
            * len(self.starts_s)
        )


@dataclass(frozen=True)
class GridSpec:
    """Search grids for path delay (seconds) and arrival angle (degrees)."""

    delays_s: tuple[float, ...]
    angles_deg: tuple[float, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    sampling: SamplingSpec
    array: ArraySpec
    dictionary: DictionarySpec
    grids: GridSpec


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`; carries all violations, never raises."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def _check_sequence(report, values, path, *, minimum=None, strict_min=False):
    if len(values) == 0:
        report.add(f"{path}: sequence is empty")
        return
    for a, b in zip(values, values[1:]):
        if not b > a:
            report.add(f"{path}: values must be strictly increasing")
            break
    if minimum is not None:
        low = min(values)
        if strict_min and not low > minimum:
            report.add(f"{path}: values must be > {minimum}")
        elif not strict_min and not low >= minimum:
            report.add(f"{path}: values must be >= {minimum}")


def _check_sample_multiples(report, values, fs_hz, path):
    for v in values:
        units = v * fs_hz
        if abs(units - round(units)) > _GRID_TOL:
            report.add(f"{path}: {v!r} is not an integer multiple of the sample period")


def validate(config: ScenarioConfig) -> ValidationReport:
    """Check every scenario invariant; returns a report instead of raising."""
    report = ValidationReport()
    s, arr, d, g = config.sampling, config.array, config.dictionary, config.grids

    if not s.sample_rate_hz > 0:
        report.add("sampling.sample_rate_hz: must be > 0")
    if s.num_samples < 1:
        report.add("sampling.num_samples: must be >= 1")
    if arr.num_sensors < 1:
        report.add("array.num_sensors: must be >= 1")
    if not arr.element_spacing_wavelengths > 0:
        report.add("array.element_spacing_wavelengths: must be > 0")

    if len(d.kinds) == 0:
        report.add("dictionary.kinds: sequence is empty")
    for kind in d.kinds:
        if kind not in ATOM_KINDS:
            report.add(f"dictionary.kinds: unknown kind {kind!r}")
    if len(set(d.kinds)) != len(d.kinds):
        report.add("dictionary.kinds: duplicate kinds")
    _check_sequence(report, d.frequencies_hz, "dictionary.frequencies_hz", minimum=0.0, strict_min=True)
    _check_sequence(report, d.lengths_s, "dictionary.lengths_s", minimum=0.0, strict_min=True)
    _check_sequence(report, d.starts_s, "dictionary.starts_s", minimum=0.0)
    _check_sequence(report, g.delays_s, "grids.delays_s", minimum=0.0)
    _check_sequence(report, g.angles_deg, "grids.angles_deg")

    if report.violations:
        return report

    for theta in g.angles_deg:
        if not (-90.0 < theta <= 90.0):
            report.add(f"grids.angles_deg: {theta!r} outside (-90, 90]")
            break

    fs = s.sample_rate_hz
    _check_sample_multiples(report, g.delays_s, fs, "grids.delays_s")
    _check_sample_multiples(report, d.starts_s, fs, "dictionary.starts_s")

    # Full-support condition: the latest admissible atom placement must end
    # inside the window (boundary admitted), otherwise predictor norms would
    # depend on start and delay and the norm cache would be wrong.
    span = max(d.starts_s) + max(g.delays_s) + max(d.lengths_s)
    budget = s.num_samples * s.sample_period_s
    if span > budget * (1.0 + 1e-12):
        report.add(
            "scenario: max(start) + max(delay) + max(length) "
            f"= {span:.6g} s exceeds the observation window {budget:.6g} s"
        )
    return report


def dimensions(config: ScenarioConfig) -> dict:
    """Exact problem sizes as plain (arbitrary precision) integers."""
    j = config.dictionary.num_atoms
    p = len(config.grids.delays_s)
    q = len(config.grids.angles_deg)
    return {
        "J": j,
        "P": p,
        "Q": q,
        "C": config.array.num_sensors,
        "M": config.sampling.num_samples,
        "total": j * p * q,
    }


# ---------------------------------------------------------------------------
# JSON interface
#
# Schema:
#   {"sampling": {"fs_hz": .., "m": ..},
#    "array": {"c": .., "spacing_wl": ..},
#    "dictionary": {"kinds": [..], "freqs_hz": [..], "lengths_s": [..],
#                   "starts_s": [..]},
#    "grids": {"delays_s": [..], "angles_deg": [..]}}
#
# Any numeric sequence may instead be the range shorthand
# {"from": a, "to": b, "step": h}, expanded inclusively.
# ---------------------------------------------------------------------------

def expand_sequence(value) -> tuple:
    """Expand the {"from", "to", "step"} shorthand; lists pass through."""
    if isinstance(value, dict):
        lo, hi, step = value["from"], value["to"], value["step"]
        if step <= 0:
            raise ValueError("range shorthand requires step > 0")
        n = int(round((hi - lo) / step))
        out = [lo + i * step for i in range(n + 1)]
        # Guard against an off-by-one from float division.
        while out and out[-1] > hi + step * 1e-9:
            out.pop()
        return tuple(out)
    return tuple(value)


def config_from_dict(doc: dict) -> ScenarioConfig:
    return ScenarioConfig(
        sampling=SamplingSpec(
            sample_rate_hz=float(doc["sampling"]["fs_hz"]),
            num_samples=int(doc["sampling"]["m"]),
        ),
        array=ArraySpec(
            num_sensors=int(doc["array"]["c"]),
            element_spacing_wavelengths=float(doc["array"].get("spacing_wl", 0.5)),
        ),
        dictionary=DictionarySpec(
            kinds=tuple(doc["dictionary"]["kinds"]),
            frequencies_hz=expand_sequence(doc["dictionary"]["freqs_hz"]),
            lengths_s=expand_sequence(doc["dictionary"]["lengths_s"]),
            starts_s=expand_sequence(doc["dictionary"]["starts_s"]),
        ),
        grids=GridSpec(
            delays_s=expand_sequence(doc["grids"]["delays_s"]),
            angles_deg=expand_sequence(doc["grids"]["angles_deg"]),
        ),
    )


def config_to_dict(config: ScenarioConfig) -> dict:
    return {
        "sampling": {
            "fs_hz": config.sampling.sample_rate_hz,
            "m": config.sampling.num_samples,
        },
        "array": {
            "c": config.array.num_sensors,
            "spacing_wl": config.array.element_spacing_wavelengths,
        },
        "dictionary": {
            "kinds": list(config.dictionary.kinds),
            "freqs_hz": list(config.dictionary.frequencies_hz),
            "lengths_s": list(config.dictionary.lengths_s),
            "starts_s": list(config.dictionary.starts_s),
        },
        "grids": {
            "delays_s": list(config.grids.delays_s),
            "angles_deg": list(config.grids.angles_deg),
        },
    }


def load_config(path) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def save_config(config: ScenarioConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(config_to_dict(config), fh, indent=2)
