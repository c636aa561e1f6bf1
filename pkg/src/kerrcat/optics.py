"""Passive two-mode linear optics.

A 2x2 unitary ``u`` mixes mode operators as ``a'_j = sum_i u[j, i] a_i``.
On coherent states this is exact and trivial: the amplitude vector is
multiplied by ``u``. On truncated Fock states the induced transformation is
built block by block on fixed total photon number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .coherent import CoherentSuperposition, append_vacuum
from .exceptions import DimensionError
from .fock import TwoModeFock
from .kerr import kerr_cat

UNITARY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ModeUnitary:
    u: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=np.complex128)
        if u.shape != (2, 2):
            raise DimensionError(f"mode unitary must be 2x2, got {u.shape}")
        err = np.max(np.abs(u.conj().T @ u - np.eye(2)))
        if err > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (max |u^H u - I| = {err:.2e})")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @property
    def H(self) -> ModeUnitary:
        return ModeUnitary(self.u.conj().T)

    def __matmul__(self, other):
        if not isinstance(other, ModeUnitary):
            return NotImplemented
        return ModeUnitary(self.u @ other.u)


def balanced_splitter() -> ModeUnitary:
    """50/50 splitter ``a'_(+/-) = (a_A +/- a_B)/sqrt(2)``; real, symmetric, self-inverse."""
    h = 1.0 / math.sqrt(2.0)
    return ModeUnitary([[h, h], [h, -h]])


def phase_shifts(phi_a: float, phi_b: float) -> ModeUnitary:
    """Independent phase rotations of the two modes."""
    return ModeUnitary(np.diag([np.exp(1j * phi_a), np.exp(1j * phi_b)]))


def transform_coherent(s: CoherentSuperposition, u: ModeUnitary) -> CoherentSuperposition:
    """Map each term ``|a>|b>`` to ``|u (a, b)>``; coefficients untouched."""
    if s.mode_count != 2:
        raise DimensionError(f"transform_coherent needs a two-mode state, got {s.mode_count}")
    return CoherentSuperposition(s.coeffs, s.amps @ u.u.T)


def mode_generator(u: ModeUnitary) -> np.ndarray:
    """Hermitian ``h`` with ``u = exp(i h)``, from the complex Schur form of ``u``."""
    t, q = schur(u.u, output="complex")
    # u is normal, so its Schur form is diagonal up to rounding
    theta = np.angle(np.diag(t))
    h = (q * theta) @ q.conj().T
    return 0.5 * (h + h.conj().T)


def block_matrices(u: ModeUnitary, max_total: int) -> list[np.ndarray]:
    """Induced unitaries on the fixed-photon-number blocks ``N = 0..max_total``.

    Block ``N`` acts on ``|k, N-k>`` ordered by ``k`` (photons in mode A).
    With ``u = exp(i h)`` the Fock-space operator is ``exp(i H)`` where
    ``H = sum_jk h[j, k] a_j^dag a_k``; restricted to block ``N`` it is a
    Hermitian tridiagonal matrix, exponentiated exactly by eigendecomposition.
    """
    h = mode_generator(u)
    blocks = []
    for N in range(max_total + 1):
        k = np.arange(N + 1, dtype=np.float64)
        gen = np.diag(k * h[0, 0].real + (N - k) * h[1, 1].real).astype(np.complex128)
        hop = np.sqrt((k[:-1] + 1.0) * (N - k[:-1]))
        # a^dag b: |k, N-k> -> sqrt((k+1)(N-k)) |k+1, N-k-1>
        gen[np.arange(1, N + 1), np.arange(N)] = h[0, 1] * hop
        gen[np.arange(N), np.arange(1, N + 1)] = h[1, 0] * hop
        w, v = np.linalg.eigh(gen)
        blocks.append((v * np.exp(1j * w)) @ v.conj().T)
    return blocks


def transform_fock(s: TwoModeFock, u: ModeUnitary, return_dropped: bool = False):
    """Apply the number-conserving unitary induced by ``u`` to a truncated state.

    Output keeps the input cutoffs. Amplitude that lands on ``|n, m>`` with
    ``n`` or ``m`` beyond its cutoff is discarded; with
    ``return_dropped=True`` the discarded probability is returned too.
    """
    da, db = s.cutoffs
    amps = s.amps
    out = np.zeros_like(amps)
    dropped = 0.0
    for N, block in enumerate(block_matrices(u, da + db - 2)):
        k = np.arange(N + 1)
        valid = (k < da) & (N - k < db)
        v = np.zeros(N + 1, dtype=np.complex128)
        v[valid] = amps[k[valid], N - k[valid]]
        if not np.any(v):
            continue
        w = block @ v
        out[k[valid], N - k[valid]] = w[valid]
        dropped += float(np.sum(np.abs(w[~valid]) ** 2))
    result = TwoModeFock(out)
    if return_dropped:
        return result, dropped
    return result


def make_entangled_cat(alpha, M: int) -> CoherentSuperposition:
    """Kerr cat ``U(pi/M)|alpha>`` split with the vacuum on a balanced splitter.

    For odd ``M`` the result is ``sum_q f_q |b_q>|b_q>`` with
    ``b_q = alpha e^{-2 pi i q/M} / sqrt(2)``; even ``M`` uses the even-cat
    phases ``e^{i pi (1-2q)/M}``.
    """
    return transform_coherent(append_vacuum(kerr_cat(alpha, M)), balanced_splitter())
