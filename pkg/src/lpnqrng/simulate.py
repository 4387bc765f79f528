"""Generative model of the entropy source.

The laser phase executes Brownian motion: successive phase increments
over one sample period are independent N(0, 2*pi*linewidth*tau_s)
draws, and the discrete phase path is their cumulative sum. Delayed
self-interference converts the phase increment over the interferometer
delay into a voltage A*sin(dtheta), electronic noise adds on top, and
an idealized ADC maps voltages to signed integer codes.

All operations are pure: outputs depend only on explicit arguments and
seeds, and returned traces are immutable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DelayTooSmallError,
    InvalidParameterError,
    PathTooShortError,
)
from .params import AdcSpec
from .rng import gaussian_stream

TWO_PI = 2.0 * math.pi

LABEL_QUANTUM = "quantum"
LABEL_MEASURED = "measured"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhasePath:
    """Discrete Wiener phase samples theta(m * tau_s), theta(0) = 0."""

    samples: np.ndarray
    sample_period_s: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples",
                           _freeze(np.asarray(self.samples, dtype=np.float64)))

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class AnalogTrace:
    """Real-valued voltage samples with sampling metadata."""

    samples: np.ndarray
    sample_period_s: float
    label: str

    def __post_init__(self) -> None:
        if self.label not in (LABEL_QUANTUM, LABEL_MEASURED):
            raise InvalidParameterError(
                f"trace label must be 'quantum' or 'measured', got {self.label!r}")
        object.__setattr__(self, "samples",
                           _freeze(np.asarray(self.samples, dtype=np.float64)))

    def __len__(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class QuantizedTrace:
    """Signed integer ADC codes with the converter that produced them."""

    codes: np.ndarray
    adc: AdcSpec
    sample_period_s: float

    def __post_init__(self) -> None:
        codes = np.asarray(self.codes, dtype=np.int16)
        if codes.size and (codes.min() < self.adc.code_min
                           or codes.max() > self.adc.code_max):
            raise InvalidParameterError("codes outside the ADC code range")
        object.__setattr__(self, "codes", _freeze(codes))

    def __len__(self) -> int:
        return len(self.codes)


def sample_phase_path(linewidth_hz: float, sample_period_s: float,
                      n_samples: int, seed: int) -> PhasePath:
    """Draw one discrete Wiener phase path.

    Parameters
    ----------
    linewidth_hz : float
        Lorentzian linewidth; sets the increment variance
        2*pi*linewidth*tau_s.
    sample_period_s : float
        tau_s.
    n_samples : int
        Path length including the theta(0) = 0 origin; must be >= 2.
    seed : int
        64-bit stream seed; same seed and parameters reproduce the
        path bit for bit.
    """
    if not (linewidth_hz >= 0 and math.isfinite(linewidth_hz)):
        raise InvalidParameterError(f"linewidth_hz must be >= 0, got {linewidth_hz!r}")
    if not (sample_period_s > 0 and math.isfinite(sample_period_s)):
        raise InvalidParameterError(
            f"sample_period_s must be > 0, got {sample_period_s!r}")
    if n_samples < 2:
        raise InvalidParameterError(f"n_samples must be >= 2, got {n_samples}")
    std = math.sqrt(TWO_PI * linewidth_hz * sample_period_s)
    out = np.empty(n_samples)
    out[0] = 0.0
    if std == 0.0:
        out[1:] = 0.0
    else:
        np.cumsum(gaussian_stream(seed, n_samples - 1) * std, out=out[1:])
    return PhasePath(out, sample_period_s)


def delay_index(delay_s: float, sample_period_s: float) -> int:
    """Delay expressed in samples: round(delay / tau_s), ties away from zero.

    Raises DelayTooSmallError when the delay rounds below one sample.
    """
    if not (delay_s > 0 and math.isfinite(delay_s)):
        raise InvalidParameterError(f"delay_s must be > 0, got {delay_s!r}")
    if not (sample_period_s > 0 and math.isfinite(sample_period_s)):
        raise InvalidParameterError(
            f"sample_period_s must be > 0, got {sample_period_s!r}")
    k = int(math.floor(delay_s / sample_period_s + 0.5))
    if k < 1:
        raise DelayTooSmallError(
            f"delay {delay_s} s rounds to {k} samples at tau_s={sample_period_s} s")
    return k


def quantum_noise(path: PhasePath, k: int, amplitude: float) -> AnalogTrace:
    """Delayed self-interference output A*sin(theta[m+k] - theta[m]).

    The result has len(path) - k samples and every sample lies in
    [-amplitude, amplitude].
    """
    if k < 1:
        raise InvalidParameterError(f"delay index must be >= 1, got {k}")
    if not (amplitude > 0 and math.isfinite(amplitude)):
        raise InvalidParameterError(f"amplitude must be > 0, got {amplitude!r}")
    theta = path.samples
    if len(theta) <= k:
        raise PathTooShortError(
            f"path of {len(theta)} samples cannot support delay index {k}")
    q = amplitude * np.sin(theta[k:] - theta[:-k])
    return AnalogTrace(q, path.sample_period_s, LABEL_QUANTUM)


def add_electronic_noise(trace: AnalogTrace, sigma_ele: float,
                         seed: int) -> AnalogTrace:
    """Measured signal M = Q + C with i.i.d. zero-mean Gaussian C."""
    if not (sigma_ele >= 0 and math.isfinite(sigma_ele)):
        raise InvalidParameterError(f"sigma_ele must be >= 0, got {sigma_ele!r}")
    if sigma_ele == 0.0:
        m = trace.samples.copy()
    else:
        m = trace.samples + sigma_ele * gaussian_stream(seed, len(trace))
    return AnalogTrace(m, trace.sample_period_s, LABEL_MEASURED)


def quantize(trace: AnalogTrace, adc: AdcSpec) -> QuantizedTrace:
    """Map voltages to ADC codes.

    code(x) = ceil(x / delta - 1/2) clamped to the code range, which
    realizes half-open bins (i*delta - delta/2, i*delta + delta/2] with
    out-of-range inputs saturating to the end codes.
    """
    x = trace.samples
    codes = np.ceil(x / adc.delta - 0.5)
    np.clip(codes, adc.code_min, adc.code_max, out=codes)
    return QuantizedTrace(codes.astype(np.int16), adc, trace.sample_period_s)


def quantize_value(x: float, adc: AdcSpec) -> int:
    """Scalar form of :func:`quantize`, mainly for tests and tooling."""
    code = math.ceil(x / adc.delta - 0.5)
    return int(min(max(code, adc.code_min), adc.code_max))
