"""Truncated Fock-space states of one and two bosonic modes.

A single mode is kept as the amplitudes ``c_0 .. c_{D-1}`` over number
states ``|0>, ..., |D-1>``; two modes as a ``D_A x D_B`` amplitude matrix.
Everything here is an immutable value: operations return new states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .exceptions import CutoffError, DimensionError

NORM_TOL = 1e-9


def _frozen(arr, ndim):
    arr = np.array(arr, dtype=np.complex128)
    if arr.ndim != ndim:
        raise DimensionError(f"expected a {ndim}-d amplitude array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("amplitudes must be finite")
    arr.setflags(write=False)
    return arr


def as_amplitude(alpha) -> complex:
    """Coerce ``alpha`` to a finite Python complex."""
    z = complex(alpha)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"coherent amplitude must be finite, got {alpha!r}")
    return z


@dataclass(frozen=True, eq=False)
class FockVector:
    """Single-mode state truncated to ``cutoff`` number states."""

    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = _frozen(self.amps, 1)
        if amps.size == 0:
            raise DimensionError("cutoff must be positive")
        object.__setattr__(self, "amps", amps)
        if self.normalized and abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise ValueError(f"state flagged normalized has norm^2 {self.norm_squared()!r}")

    @property
    def cutoff(self) -> int:
        return self.amps.shape[0]

    def norm_squared(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amps, dtype=dtype)


@dataclass(frozen=True, eq=False)
class TwoModeFock:
    """Two-mode state with amplitude matrix ``amps[n, m]`` for ``|n>_A |m>_B``."""

    amps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = _frozen(self.amps, 2)
        if 0 in amps.shape:
            raise DimensionError("cutoffs must be positive")
        object.__setattr__(self, "amps", amps)
        if self.normalized and abs(self.norm_squared() - 1.0) > NORM_TOL:
            raise ValueError(f"state flagged normalized has norm^2 {self.norm_squared()!r}")

    @property
    def cutoffs(self) -> tuple[int, int]:
        return self.amps.shape

    def norm_squared(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amps, dtype=dtype)


def default_cutoff(mean_photons: float) -> int:
    """Cutoff keeping the Poisson tail of a coherent state well below 1e-12.

    ``mean_photons`` is ``|alpha|^2``.
    """
    if mean_photons < 0:
        raise ValueError("mean photon number must be non-negative")
    return math.ceil(mean_photons + 10.0 * math.sqrt(mean_photons + 1.0)) + 10


def make_number_state(n: int, cutoff: int) -> FockVector:
    if cutoff < 1:
        raise DimensionError("cutoff must be positive")
    if not 0 <= n < cutoff:
        raise CutoffError(f"number state |{n}> does not fit below cutoff {cutoff}")
    amps = np.zeros(cutoff, dtype=np.complex128)
    amps[n] = 1.0
    return FockVector(amps, normalized=True)


def coherent_amplitudes(alpha, cutoff: int) -> np.ndarray:
    """Raw truncated coherent-state amplitudes as a writable array."""
    alpha = as_amplitude(alpha)
    if cutoff < 1:
        raise DimensionError("cutoff must be positive")
    # c_{n+1} = c_n * alpha / sqrt(n+1); no factorials, so no overflow past n=170
    steps = np.empty(cutoff, dtype=np.complex128)
    steps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    steps[1:] = alpha / np.sqrt(np.arange(1, cutoff))
    return np.cumprod(steps)


def make_coherent_state(alpha, cutoff: int) -> FockVector:
    """Truncated coherent state ``|alpha>``.

    The amplitudes are *not* renormalized after truncation; the missing
    probability is :func:`truncation_tail`.
    """
    return FockVector(coherent_amplitudes(alpha, cutoff))


def truncation_tail(alpha, cutoff: int) -> float:
    """Probability mass of ``|alpha>`` on number states ``n >= cutoff``."""
    x = abs(as_amplitude(alpha)) ** 2
    if cutoff <= 0:
        return 1.0
    if x == 0.0:
        return 0.0
    # P(Poisson(x) >= D) is the regularized lower incomplete gamma P(D, x)
    return float(gammainc(cutoff, x))


def apply_annihilation(s: FockVector) -> FockVector:
    out = np.zeros_like(s.amps)
    out[:-1] = np.sqrt(np.arange(1, s.cutoff)) * s.amps[1:]
    return FockVector(out)


def apply_creation(s: FockVector, return_dropped: bool = False):
    """Apply ``a^dagger``; the ``|D-1>`` component is pushed past the cutoff.

    With ``return_dropped=True`` returns ``(state, dropped_mass)`` where
    ``dropped_mass = D * |c_{D-1}|^2`` is the norm lost at the edge.
    """
    d = s.cutoff
    out = np.zeros_like(s.amps)
    out[1:] = np.sqrt(np.arange(1, d)) * s.amps[:-1]
    result = FockVector(out)
    if return_dropped:
        return result, float(d * abs(s.amps[-1]) ** 2)
    return result


def apply_number(s: FockVector) -> FockVector:
    return FockVector(np.arange(s.cutoff) * s.amps)


def inner_product(u: FockVector, v: FockVector) -> complex:
    """``<u|v>``, conjugate-linear in ``u``."""
    if u.cutoff != v.cutoff:
        raise DimensionError(f"cutoff mismatch: {u.cutoff} vs {v.cutoff}")
    return complex(np.vdot(u.amps, v.amps))


def tensor(u: FockVector, v: FockVector) -> TwoModeFock:
    return TwoModeFock(np.outer(u.amps, v.amps))


def fidelity(u, v) -> float:
    """``|<u|v>|^2 / (<u|u><v|v>)`` for one- or two-mode Fock states of equal shape."""
    a, b = np.asarray(u), np.asarray(v)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    a, b = a.ravel(), b.ravel()
    num = abs(np.vdot(a, b)) ** 2
    den = np.vdot(a, a).real * np.vdot(b, b).real
    return float(num / den)
