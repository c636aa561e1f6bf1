"""Schmidt spectra and entanglement entropy of two-mode pure states.

Two engines that share nothing beyond the state they start from:

``gram``
    Works on the exact coherent superposition. The reduced state of mode A
    in the (non-orthogonal) span of ``{|a_q>}`` is ``W G_A`` with
    ``W[q, r] = c_q conj(c_r) <b_r|b_q>``; its nonzero eigenvalues are those
    of the Hermitian ``G_A^{1/2} W G_A^{1/2}``.
``fock``
    Expands the state in truncated number bases and takes the squared
    singular values of the amplitude matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherent import (
    CoherentSuperposition,
    certified_cutoffs,
    gram_matrix,
    merge_terms,
    norm_squared,
    tail_bound,
    to_fock,
)
from .exceptions import ConditioningError, ConsistencyError, DimensionError, ZeroNormError
from .fock import TwoModeFock, as_amplitude, default_cutoff, make_coherent_state, truncation_tail
from .kerr import evolve_fock
from .optics import balanced_splitter, make_entangled_cat, transform_fock

SUM_TOL = 1e-9
CLIP_TOL = 1e-12
ZERO_PROB = 1e-14
GRAM_RCOND = 1e-12
FOCK_NORM_TOL = 1e-6
GRAM_NORM_TOL = 1e-9
METHODS = ("gram", "fock")


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Schmidt probabilities in descending order.

    ``renormalization`` is the norm the input state was divided by;
    ``dropped_dims`` counts Gram directions discarded as numerically null
    and ``certified_error`` bounds the probability they could have carried.
    """

    probs: np.ndarray
    renormalization: float = 1.0
    certified_error: float = 0.0
    dropped_dims: int = 0

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64).reshape(-1)
        if p.size == 0:
            raise ValueError("empty Schmidt spectrum")
        if np.any(p < 0):
            raise ValueError("Schmidt probabilities must be non-negative")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise ValueError(f"Schmidt probabilities sum to {p.sum()!r}")
        if np.any(np.diff(p) > 0):
            raise ValueError("Schmidt probabilities must be sorted descending")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def rank(self) -> int:
        return self.probs.size

    def __len__(self):
        return self.probs.size


@dataclass(frozen=True)
class EntanglementResult:
    entropy_bits: float
    spectrum: SchmidtSpectrum
    method: str
    certified_error: float
    cutoff: int = 0


def _clip_and_sort(raw):
    raw = np.asarray(raw, dtype=np.float64)
    if np.any(raw < -CLIP_TOL):
        raise ConsistencyError(f"negative Schmidt weight {raw.min():.3e}")
    raw = np.where(raw < 0, 0.0, raw)
    # descending; ties keep their original order
    order = np.argsort(-raw, kind="stable")
    return raw[order]


def _finish(raw, **meta):
    p = _clip_and_sort(raw)
    p = p[p >= ZERO_PROB]
    if p.size == 0:
        raise ZeroNormError("no Schmidt weight above 1e-14")
    return SchmidtSpectrum(p / p.sum(), **meta)


def schmidt_decomposition(s: TwoModeFock):
    """Return ``(spectrum, left, right)`` with ``s ~ sum_q sqrt(p_q) left[:, q] (x) right[:, q]``.

    ``left`` and ``right`` have orthonormal columns in the truncated number
    bases of modes A and B.
    """
    nrm2 = s.norm_squared()
    if nrm2 == 0.0:
        raise ZeroNormError("cannot decompose the zero state")
    if abs(nrm2 - 1.0) > FOCK_NORM_TOL:
        raise ValueError(f"state norm^2 {nrm2!r} is not within 1e-6 of 1")
    nrm = math.sqrt(nrm2)
    u, sv, vh = np.linalg.svd(s.amps / nrm, full_matrices=False)
    keep = sv**2 >= ZERO_PROB
    spectrum = _finish(sv[keep] ** 2, renormalization=nrm)
    # svd already returns descending singular values
    return spectrum, u[:, keep], vh[keep].T


def schmidt_fock(s: TwoModeFock) -> SchmidtSpectrum:
    return schmidt_decomposition(s)[0]


def _psd_sqrt(g):
    """Square root of a PSD Hermitian matrix with the numerical null space removed."""
    w, v = np.linalg.eigh(g)
    top = w[-1]
    if not np.isfinite(top) or top <= 0:
        raise ConditioningError("Gram matrix has no positive spectrum", float("inf"))
    keep = w > GRAM_RCOND * top
    root = (v[:, keep] * np.sqrt(w[keep])) @ v[:, keep].conj().T
    dropped = w[~keep]
    smallest_kept = w[keep][0]
    return root, int((~keep).sum()), float(max(dropped.max(initial=0.0), 0.0)), top / smallest_kept


def gram_spectrum(s: CoherentSuperposition) -> SchmidtSpectrum:
    """Schmidt probabilities of a two-mode coherent superposition, without truncation."""
    if s.mode_count != 2:
        raise DimensionError(f"gram_spectrum needs a two-mode state, got {s.mode_count}")
    if len(s) == 0:
        raise ZeroNormError("empty superposition")
    nrm2 = norm_squared(s)
    if abs(nrm2 - 1.0) > GRAM_NORM_TOL:
        raise ValueError(f"state norm^2 {nrm2!r} is not within 1e-9 of 1")

    c = s.coeffs
    g_a = gram_matrix(s, 0)
    g_b = gram_matrix(s, 1)
    w = np.outer(c, c.conj()) * g_b.T
    root, n_dropped, worst_dropped, cond = _psd_sqrt(g_a)
    rho = root @ w @ root
    rho = 0.5 * (rho + rho.conj().T)
    raw = np.linalg.eigvalsh(rho)

    trace = raw.sum()
    if abs(trace - 1.0) > SUM_TOL:
        raise ConditioningError(
            f"null-space removal lost {abs(trace - 1.0):.2e} of the norm", cond
        )
    # probability that could sit in the discarded directions of mode A
    bound = worst_dropped * float(np.sum(np.abs(c) ** 2)) * float(np.linalg.eigvalsh(g_b)[-1])
    return _finish(raw, certified_error=bound, dropped_dims=n_dropped)


def entropy(spectrum) -> float:
    """Shannon entropy in bits of Schmidt probabilities, with ``0 log 0 = 0``."""
    p = spectrum.probs if isinstance(spectrum, SchmidtSpectrum) else np.asarray(spectrum, dtype=np.float64)
    p = p[p > 0]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def entanglement_of_cat(alpha, M: int, method: str = "gram", cutoff: int | None = None) -> EntanglementResult:
    """Entanglement of the split Kerr cat ``make_entangled_cat(alpha, M)``.

    ``method="gram"`` is exact up to conditioning; ``method="fock"``
    truncates each mode at ``cutoff`` (default: the certified cutoff for
    ``|alpha|^2/2``) and reports the truncation bound as the error.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    state = merge_terms(make_entangled_cat(alpha, M))
    if method == "gram":
        spec = gram_spectrum(state)
        return EntanglementResult(entropy(spec), spec, "gram", spec.certified_error, 0)

    d = cutoff if cutoff is not None else max(certified_cutoffs(state))
    fock_state = to_fock(state, (d, d))
    spec = schmidt_fock(fock_state)
    return EntanglementResult(entropy(spec), spec, "fock", tail_bound(state, (d, d)), d)


def entanglement_after_kerr(alpha, tau: float, cutoff: int | None = None) -> EntanglementResult:
    """Entanglement after Kerr evolution for an arbitrary ``tau``, then a balanced split.

    Pure Fock-space route: evolve ``|alpha>`` with the diagonal Kerr
    phases, pair it with the vacuum and apply the splitter block-wise.
    Agrees with :func:`entanglement_of_cat` at ``tau = pi/M``.
    """
    alpha = as_amplitude(alpha)
    d = cutoff if cutoff is not None else default_cutoff(abs(alpha) ** 2)
    evolved = evolve_fock(make_coherent_state(alpha, d), float(tau))
    pair = np.zeros((d, d), dtype=np.complex128)
    pair[:, 0] = evolved.amps
    split, dropped = transform_fock(TwoModeFock(pair), balanced_splitter(), return_dropped=True)
    spec = schmidt_fock(split)
    return EntanglementResult(entropy(spec), spec, "fock", truncation_tail(alpha, d) + dropped, d)
