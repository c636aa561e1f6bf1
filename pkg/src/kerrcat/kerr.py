"""Kerr evolution ``U(tau) = exp(-i tau N(N-1))`` and the cat states it makes.

At ``tau = pi/M`` the Kerr phase is periodic in ``N`` with period ``M``, so
it can be written as a finite Fourier series in ``exp(-2 pi i q N / M)``.
Since ``exp(i phi N)|alpha> = |alpha e^{i phi}>``, the evolved coherent state
is then an exact ``M``-term superposition of rotated coherent states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherent import CoherentSuperposition
from .fock import FockVector, as_amplitude


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    M: int
    parity: str
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (self.M,):
            raise ValueError(f"expected {self.M} coefficients, got shape {values.shape}")
        if self.parity not in ("odd", "even"):
            raise ValueError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __getitem__(self, q):
        return self.values[q]

    def __len__(self):
        return self.M


def _check_m(M):
    if int(M) != M or M < 1:
        raise ValueError(f"M must be a positive integer, got {M!r}")
    return int(M)


def parity_of(M: int) -> str:
    return "odd" if M % 2 else "even"


def kerr_phase(n: int, tau: float) -> complex:
    """Eigenvalue ``exp(-i tau n(n-1))`` of the Kerr propagator on ``|n>``."""
    return complex(np.exp(-1j * tau * n * (n - 1)))


def kerr_phases(cutoff: int, tau: float) -> np.ndarray:
    n = np.arange(cutoff, dtype=np.float64)
    return np.exp(-1j * tau * n * (n - 1))


def evolve_fock(s: FockVector, tau: float) -> FockVector:
    """Exact Kerr evolution; diagonal in the number basis so the norm is untouched."""
    return FockVector(kerr_phases(s.cutoff, float(tau)) * s.amps)


def periodic_kerr_phase(n, M: int) -> np.ndarray:
    """The period-``M`` function expanded in the Fourier series.

    ``exp(-i pi n(n-1)/M)`` for odd ``M``; ``exp(-i pi n^2/M)`` for even ``M``
    (for even ``M`` the Kerr phase itself is this times ``exp(i pi n/M)``).
    """
    n = np.asarray(n, dtype=np.float64)
    if M % 2:
        return np.exp(-1j * np.pi * n * (n - 1) / M)
    return np.exp(-1j * np.pi * n**2 / M)


def _jacobi_two(M):
    # Jacobi symbol (2 | M) for odd M
    return 1 if M % 8 in (1, 7) else -1


def gauss_phase(M: int) -> complex:
    """Global phase missing from the bare odd-``M`` closed form.

    Completing the square turns the odd-``M`` coefficient sum into a
    quadratic Gauss sum, whose value carries the factor
    ``(2|M) * conj(eps_M)`` with ``eps_M = 1`` for ``M = 1 mod 4`` and ``i``
    for ``M = 3 mod 4``. It is 1 whenever ``M = 1 mod 8``.
    """
    M = _check_m(M)
    if M % 2 == 0:
        return 1.0 + 0j
    eps = 1.0 if M % 4 == 1 else 1j
    return complex(_jacobi_two(M) * np.conj(eps))


def fourier_coefficients(M: int, include_gauss_phase: bool = True) -> FourierCoefficients:
    """Closed-form Fourier coefficients of the Kerr phase at ``tau = pi/M``.

    Odd ``M = 2K+1``::

        f_q = exp(i pi q(q+1)/M) exp(-i pi K(K+1)/M) / sqrt(M)

    Even ``M``::

        f_q = exp(i pi q^2/M) exp(-i pi/4) / sqrt(M)

    For odd ``M`` the first line is only right up to a global fourth root of
    unity (see :func:`gauss_phase`), which is applied unless
    ``include_gauss_phase`` is false. Entanglement and fidelities do not
    depend on it.
    """
    M = _check_m(M)
    q = np.arange(M, dtype=np.float64)
    if M % 2:
        K = (M - 1) // 2
        values = np.exp(1j * np.pi * q * (q + 1) / M) * np.exp(-1j * np.pi * K * (K + 1) / M)
        if include_gauss_phase:
            values = values * gauss_phase(M)
    else:
        values = np.exp(1j * np.pi * q**2 / M) * np.exp(-1j * np.pi / 4)
    return FourierCoefficients(M, parity_of(M), values / math.sqrt(M))


def fourier_coefficients_dft(M: int) -> FourierCoefficients:
    """Fourier coefficients by inverting the expansion over one period.

    ``f_q = (1/M) sum_n g(n) exp(2 pi i q n / M)`` with ``g`` from
    :func:`periodic_kerr_phase`. Shares no algebra with the closed form.
    """
    M = _check_m(M)
    n = np.arange(M)
    g = periodic_kerr_phase(n, M)
    # np.fft.ifft uses exp(+2 pi i q n / M) / M
    return FourierCoefficients(M, parity_of(M), np.fft.ifft(g))


def resubstitution_residual(coeffs: FourierCoefficients, periods: int = 1) -> float:
    """``max_n |sum_q f_q exp(-2 pi i q n/M) - g(n)|`` over ``n < periods*M``."""
    M = coeffs.M
    n = np.arange(periods * M)
    q = np.arange(M)
    series = np.exp(-2j * np.pi * np.outer(n, q) / M) @ coeffs.values
    return float(np.max(np.abs(series - periodic_kerr_phase(n, M))))


def cat_phases(M: int) -> np.ndarray:
    """Rotation ``e^{i theta_q}`` applied to ``alpha`` in term ``q`` of the cat."""
    M = _check_m(M)
    q = np.arange(M, dtype=np.float64)
    if M % 2:
        return np.exp(-2j * np.pi * q / M)
    return np.exp(1j * np.pi * (1 - 2 * q) / M)


def kerr_cat(alpha, M: int) -> CoherentSuperposition:
    """``U(pi/M)|alpha>`` as an exact ``M``-term one-mode superposition."""
    alpha = as_amplitude(alpha)
    M = _check_m(M)
    f = fourier_coefficients(M)
    return CoherentSuperposition(f.values, (alpha * cat_phases(M)).reshape(M, 1))
