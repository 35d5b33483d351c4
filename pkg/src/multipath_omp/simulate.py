"""Multipath observation synthesis and calibrated complex noise.

The noiseless array signal superposes delayed, attenuated replicas of the
waveform, one per propagation path, each multiplied by the steering vector of
its arrival angle.  True path delays may be arbitrary real numbers; the
waveform is evaluated in continuous time, so any grid-quantization bias seen
downstream belongs to the estimator, not the data.

SNR convention: ratio of the mean per-entry power of the direct-path
component to the per-entry noise variance sigma^2, in dB.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .physics import Waveform, eval_waveform, steer
from .scenario import ScenarioConfig


@dataclass(frozen=True)
class Path:
    amplitude: complex
    delay_s: float
    angle_deg: float


@dataclass
class PathSet:
    """Propagation paths; the first entry is the direct path."""

    paths: list[Path]

    def __post_init__(self):
        if not self.paths:
            raise ValueError("PathSet requires at least one path")

    @property
    def num_paths(self) -> int:
        return len(self.paths)


@dataclass
class NoiseSpec:
    snr_db: float
    seed: int


@dataclass
class Observation:
    """Sensor-stacked measurement vector of length C * M.

    Entry (m * C + c) is the sample m on sensor c: per-sample blocks of C
    sensor values.  ``sigma2`` records the noise variance actually used.
    """

    y: np.ndarray
    sigma2: float = 0.0

    def as_matrix(self, num_sensors: int) -> np.ndarray:
        """View as an M x C matrix (rows are time samples)."""
        return self.y.reshape(-1, num_sensors)


def stack(matrix: np.ndarray) -> np.ndarray:
    """Stack an M x C sample-by-sensor matrix into the C*M vector."""
    return np.ascontiguousarray(matrix).reshape(-1)


def unstack(y: np.ndarray, num_sensors: int) -> np.ndarray:
    return y.reshape(-1, num_sensors)


def _path_samples(w: Waveform, path: Path, config: ScenarioConfig) -> np.ndarray:
    t = np.arange(config.sampling.num_samples) * config.sampling.sample_period_s
    return eval_waveform(w, t - path.delay_s)


def clean_signal(w: Waveform, paths: PathSet, config: ScenarioConfig) -> Observation:
    """Noiseless observation of the waveform through all paths."""
    c = config.array.num_sensors
    m = config.sampling.num_samples
    mat = np.zeros((m, c), dtype=complex)
    for path in paths.paths:
        z = _path_samples(w, path, config)
        mat += path.amplitude * np.outer(z, steer(path.angle_deg, config.array))
    return Observation(y=stack(mat), sigma2=0.0)


def first_path_power(w: Waveform, paths: PathSet, config: ScenarioConfig) -> float:
    """Mean per-entry power of the direct-path component.

    Steering entries are unit modulus, so averaging over sensors leaves the
    per-sample average of |A_1 s0(t - T_1)|^2.
    """
    direct = paths.paths[0]
    z = _path_samples(w, direct, config)
    return float(abs(direct.amplitude) ** 2 * np.mean(np.abs(z) ** 2))


def sigma2_for_snr(snr_db: float, first_path_power: float) -> float:
    """Noise variance giving the requested direct-path SNR."""
    if not first_path_power > 0:
        raise ValueError("first-path power must be positive")
    return first_path_power / 10.0 ** (snr_db / 10.0)


def add_noise(obs: Observation, sigma2: float, seed: int) -> Observation:
    """Add circular complex Gaussian noise, E|entry|^2 = sigma2.

    Deterministic for a given seed; real and imaginary parts are each
    N(0, sigma2 / 2).
    """
    if sigma2 < 0:
        raise ValueError("sigma2 must be nonnegative")
    if sigma2 == 0.0:
        return Observation(y=obs.y.copy(), sigma2=0.0)
    rng = np.random.default_rng(seed)
    n = obs.y.size
    noise = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    noise *= np.sqrt(sigma2 / 2.0)
    return Observation(y=obs.y + noise, sigma2=float(sigma2))


# ---------------------------------------------------------------------------
# Observation CSV interface: columns m, c, re, im with a header row.
# ---------------------------------------------------------------------------

def write_observation_csv(obs: Observation, num_sensors: int, path) -> None:
    mat = obs.as_matrix(num_sensors)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["m", "c", "re", "im"])
        for m in range(mat.shape[0]):
            for c in range(num_sensors):
                v = mat[m, c]
                writer.writerow([m, c, repr(float(v.real)), repr(float(v.imag))])


def read_observation_csv(path, sigma2: float = 0.0) -> tuple[Observation, int]:
    """Read an observation dump; returns (observation, num_sensors)."""
    rows = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:4] != ["m", "c", "re", "im"]:
            raise ValueError(f"unexpected observation header: {header}")
        for m, c, re, im in reader:
            rows.append((int(m), int(c), float(re), float(im)))
    num_sensors = max(r[1] for r in rows) + 1
    num_samples = max(r[0] for r in rows) + 1
    mat = np.zeros((num_samples, num_sensors), dtype=complex)
    for m, c, re, im in rows:
        mat[m, c] = re + 1j * im
    return Observation(y=stack(mat), sigma2=sigma2), num_sensors
