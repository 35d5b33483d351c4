"""Atoms, steering vectors and waveform synthesis.

An atom is a windowed sinusoid, zero outside the half-open interval
``[start, start + length)``.  Its phase is referenced to its own start
(argument ``t - start``), so time-shifting an atom is exactly a shift of its
sampled values; the predictor engine's norm cache depends on this.

Steering follows the uniform-linear-array model with phase convention
``exp(-i * 2 pi * spacing * (c - 1) * sin(theta))``.  The convention is used
consistently by the simulator and the predictor engine, so it cancels in
estimation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scenario import ArraySpec, SamplingSpec


@dataclass(frozen=True)
class AtomSpec:
    """Parametric identity of a dictionary element."""

    kind: str  # "sine" or "cosine"
    freq_hz: float
    length_s: float
    start_s: float = 0.0


@dataclass
class Waveform:
    """Sparse linear combination of atoms with complex coefficients."""

    coeffs: dict[AtomSpec, complex] = field(default_factory=dict)

    def add(self, atom: AtomSpec, coeff: complex = 1.0) -> "Waveform":
        self.coeffs[atom] = self.coeffs.get(atom, 0.0) + coeff
        return self


def atom_value(spec: AtomSpec, t) -> np.ndarray | float:
    """Evaluate the atom at time ``t`` (scalar or array, seconds).

    Returns cos/sin(2 pi f (t - s)) inside [s, s + l), exactly 0 outside.
    """
    t = np.asarray(t, dtype=float)
    u = t - spec.start_s
    inside = (u >= 0.0) & (u < spec.length_s)
    phase = 2.0 * np.pi * spec.freq_hz * u
    vals = np.cos(phase) if spec.kind == "cosine" else np.sin(phase)
    out = np.where(inside, vals, 0.0)
    return out if out.ndim else float(out)


def support_sample_count(length_s: float, sample_rate_hz: float) -> int:
    """Number of on-grid samples inside [0, length).

    Equals ceil(length / sample_period), with products within 1e-9 samples of
    an integer snapped to it so that support counting never depends on the
    last bit of a decimal-to-binary conversion.
    """
    x = length_s * sample_rate_hz
    if abs(x - round(x)) < 1e-9:
        return int(round(x))
    return int(np.ceil(x))


def atom_template(kind: str, freq_hz: float, length_s: float,
                  sampling: SamplingSpec) -> np.ndarray:
    """Sampled atom values on its own support, phase referenced to sample 0."""
    n = support_sample_count(length_s, sampling.sample_rate_hz)
    i = np.arange(n)
    phase = 2.0 * np.pi * freq_hz * sampling.sample_period_s * i
    return np.cos(phase) if kind == "cosine" else np.sin(phase)


def sample_atom(spec: AtomSpec, sampling: SamplingSpec,
                extra_delay_s: float = 0.0) -> np.ndarray:
    """Sample a shifted atom on the observation grid t = m / fs, m = 0..M-1.

    ``start + extra_delay`` must be an integer number of samples (grid atoms
    are placed by indexing, never interpolation); the sampled support length
    is fixed by :func:`support_sample_count`.
    """
    fs = sampling.sample_rate_hz
    offset = (spec.start_s + extra_delay_s) * fs
    k = int(round(offset))
    if abs(offset - k) > 1e-6:
        raise ValueError(
            f"atom offset {spec.start_s + extra_delay_s!r} s is not an "
            "integer number of samples"
        )
    out = np.zeros(sampling.num_samples, dtype=float)
    if k >= sampling.num_samples:
        return out
    tpl = atom_template(spec.kind, spec.freq_hz, spec.length_s, sampling)
    stop = min(k + tpl.size, sampling.num_samples)
    if k < 0:
        head = min(-k, tpl.size)
        if stop > 0:
            out[: stop] = tpl[head : head + stop]
        return out
    out[k:stop] = tpl[: stop - k]
    return out


def steer(theta_deg: float, array: ArraySpec) -> np.ndarray:
    """Steering vector of the ULA for a planar wavefront from ``theta_deg``."""
    c = np.arange(array.num_sensors)
    phase = (
        -2.0j * np.pi * array.element_spacing_wavelengths
        * c * np.sin(np.deg2rad(theta_deg))
    )
    return np.exp(phase)


def steering_matrix(angles_deg, array: ArraySpec) -> np.ndarray:
    """C x Q matrix whose q-th column is steer(angles[q])."""
    c = np.arange(array.num_sensors)[:, None]
    s = np.sin(np.deg2rad(np.asarray(angles_deg, dtype=float)))[None, :]
    return np.exp(-2.0j * np.pi * array.element_spacing_wavelengths * c * s)


def synth_waveform(w: Waveform, sampling: SamplingSpec) -> np.ndarray:
    """Complex M-vector of the waveform on the sample grid."""
    t = np.arange(sampling.num_samples) * sampling.sample_period_s
    out = np.zeros(sampling.num_samples, dtype=complex)
    for atom, beta in w.coeffs.items():
        out += beta * atom_value(atom, t)
    return out


def eval_waveform(w: Waveform, t: np.ndarray) -> np.ndarray:
    """Continuous-time evaluation at arbitrary times (off-grid capable)."""
    out = np.zeros(np.shape(t), dtype=complex)
    for atom, beta in w.coeffs.items():
        out += beta * atom_value(atom, t)
    return out
