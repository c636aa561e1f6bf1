"""Finite superpositions of one- and two-mode coherent states.

A superposition ``sum_q c_q |a_q>|b_q>`` is stored exactly as a coefficient
vector plus an ``(n_terms, n_modes)`` array of coherent amplitudes. Inner
products use the closed-form coherent overlap, so no Fock truncation enters
until :func:`to_fock` is called.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import ConsistencyError, DimensionError, TruncationWarning
from .fock import (
    FockVector,
    TwoModeFock,
    as_amplitude,
    coherent_amplitudes,
    default_cutoff,
    truncation_tail,
)

MERGE_TOL = 1e-12
DROP_COEFF = 1e-14
TAIL_WARN = 1e-10
IMAG_RESIDUE_TOL = 1e-12


class CoherentTerm(NamedTuple):
    coeff: complex
    amps: tuple[complex, ...]


@dataclass(frozen=True, eq=False)
class CoherentSuperposition:
    """``sum_q coeffs[q] * |amps[q, 0]> (x) |amps[q, 1]> ...``"""

    coeffs: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128).reshape(-1)
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim == 1:
            amps = amps.reshape(-1, 1) if coeffs.size else amps.reshape(0, 1)
        if amps.ndim != 2 or amps.shape[0] != coeffs.size:
            raise DimensionError(
                f"{coeffs.size} coefficients but amplitude array of shape {amps.shape}"
            )
        if amps.shape[1] not in (1, 2):
            raise DimensionError(f"mode count must be 1 or 2, got {amps.shape[1]}")
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(amps))):
            raise ValueError("coefficients and amplitudes must be finite")
        coeffs.setflags(write=False)
        amps.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_terms(cls, terms, mode_count=None):
        terms = [CoherentTerm(complex(c), tuple(complex(a) for a in amps)) for c, amps in terms]
        if mode_count is None:
            if not terms:
                raise DimensionError("mode_count is required for an empty superposition")
            mode_count = len(terms[0].amps)
        if any(len(t.amps) != mode_count for t in terms):
            raise DimensionError("every term needs one amplitude per mode")
        amps = np.array([t.amps for t in terms], dtype=np.complex128).reshape(len(terms), mode_count)
        return cls([t.coeff for t in terms], amps)

    @property
    def mode_count(self) -> int:
        return self.amps.shape[1]

    @property
    def terms(self) -> list[CoherentTerm]:
        return [CoherentTerm(complex(c), tuple(complex(a) for a in row))
                for c, row in zip(self.coeffs, self.amps)]

    def __len__(self):
        return self.coeffs.size

    def __add__(self, other):
        """Disjoint union of the term lists (a vector sum of the states)."""
        if not isinstance(other, CoherentSuperposition):
            return NotImplemented
        if other.mode_count != self.mode_count:
            raise DimensionError("cannot add superpositions with different mode counts")
        return CoherentSuperposition(
            np.concatenate([self.coeffs, other.coeffs]),
            np.concatenate([self.amps, other.amps]),
        )

    def scaled(self, factor) -> CoherentSuperposition:
        return CoherentSuperposition(self.coeffs * complex(factor), self.amps)

    def to_dict(self) -> dict:
        return {
            "modeCount": self.mode_count,
            "terms": [
                {
                    "coeff": [c.real, c.imag],
                    "amps": [[a.real, a.imag] for a in amps],
                }
                for c, amps in self.terms
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> CoherentSuperposition:
        terms = [
            (complex(*t["coeff"]), [complex(*a) for a in t["amps"]])
            for t in data["terms"]
        ]
        return cls.from_terms(terms, mode_count=int(data["modeCount"]))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> CoherentSuperposition:
        return cls.from_dict(json.loads(text))


def overlap(alpha, beta) -> complex:
    """``<alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta)``.

    Evaluated as ``exp(-|alpha - beta|^2/2 + i Im(conj(alpha) beta))``, which
    is the same number without the cancellation between large terms, so the
    modulus never exceeds one.
    """
    a, b = as_amplitude(alpha), as_amplitude(beta)
    return complex(np.exp(-0.5 * abs(a - b) ** 2 + 1j * (a.conjugate() * b).imag))


def overlap_matrix(bra_amps, ket_amps) -> np.ndarray:
    """``G[r, q] = <bra_r|ket_q>`` for two lists of single-mode amplitudes."""
    a = np.asarray(bra_amps, dtype=np.complex128)[:, None]
    b = np.asarray(ket_amps, dtype=np.complex128)[None, :]
    return np.exp(-0.5 * np.abs(a - b) ** 2 + 1j * (np.conj(a) * b).imag)


def gram_matrix(s: CoherentSuperposition, mode: int) -> np.ndarray:
    """Gram matrix ``G[r, q] = <amp_r|amp_q>`` of the coherent states in ``mode``."""
    col = s.amps[:, mode]
    return overlap_matrix(col, col)


def inner(s: CoherentSuperposition, t: CoherentSuperposition) -> complex:
    """``<s|t>`` via closed-form overlaps."""
    if s.mode_count != t.mode_count:
        raise DimensionError("mode counts differ")
    g = np.ones((len(s), len(t)), dtype=np.complex128)
    for k in range(s.mode_count):
        g *= overlap_matrix(s.amps[:, k], t.amps[:, k])
    return complex(np.conj(s.coeffs) @ g @ t.coeffs)


def norm_squared(s: CoherentSuperposition) -> float:
    """Exact squared norm from the double sum over Gram overlaps."""
    if len(s) == 0:
        raise ValueError("norm of an empty superposition is undefined")
    value = inner(s, s)
    scale = max(1.0, float(np.sum(np.abs(s.coeffs) ** 2)))
    if abs(value.imag) >= IMAG_RESIDUE_TOL * scale:
        raise ConsistencyError(f"norm has imaginary residue {value.imag:.3e}")
    return value.real


def certified_cutoffs(s: CoherentSuperposition) -> tuple[int, ...]:
    """Per-mode cutoffs from :func:`~kerrcat.fock.default_cutoff` at the largest amplitude."""
    if len(s) == 0:
        return (1,) * s.mode_count
    peak = np.max(np.abs(s.amps) ** 2, axis=0)
    return tuple(default_cutoff(float(x)) for x in peak)


def tail_bound(s: CoherentSuperposition, cutoffs) -> float:
    """Upper bound on the norm lost by truncating ``s`` to ``cutoffs``.

    Each term loses at most ``|c_q| * sqrt(1 - prod_k (1 - tail_k))`` in
    norm; the bound is the square of the summed losses.
    """
    lost = 0.0
    for c, row in zip(s.coeffs, s.amps):
        log_kept = sum(np.log1p(-truncation_tail(a, d)) for a, d in zip(row, cutoffs))
        lost += abs(c) * np.sqrt(-np.expm1(log_kept))
    return float(lost**2)


def to_fock(s: CoherentSuperposition, cutoffs=None):
    """Expand into a truncated Fock state.

    ``cutoffs`` is an int or one int per mode; by default the certified
    cutoffs are used. A :class:`TruncationWarning` is issued if any term
    loses more than 1e-10 of its probability to the cutoff.
    """
    if cutoffs is None:
        cutoffs = certified_cutoffs(s)
    elif np.isscalar(cutoffs):
        cutoffs = (int(cutoffs),) * s.mode_count
    cutoffs = tuple(int(d) for d in cutoffs)
    if len(cutoffs) != s.mode_count:
        raise DimensionError(f"need {s.mode_count} cutoffs, got {len(cutoffs)}")

    worst = max(
        (truncation_tail(a, d) for row in s.amps for a, d in zip(row, cutoffs)),
        default=0.0,
    )
    if worst > TAIL_WARN:
        warnings.warn(
            f"cutoffs {cutoffs} leave a coherent-state tail of {worst:.2e}",
            TruncationWarning,
            stacklevel=2,
        )

    per_mode = [
        np.array([coherent_amplitudes(a, d) for a in s.amps[:, k]]).reshape(len(s), d)
        for k, d in enumerate(cutoffs)
    ]
    if s.mode_count == 1:
        return FockVector(s.coeffs @ per_mode[0])
    return TwoModeFock((s.coeffs[:, None] * per_mode[0]).T @ per_mode[1])


def merge_terms(s: CoherentSuperposition, tol: float = MERGE_TOL) -> CoherentSuperposition:
    """Combine terms whose amplitudes agree componentwise within ``tol``.

    Merged terms keep the amplitudes of their first occurrence; terms whose
    summed coefficient falls below 1e-14 in modulus are dropped.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    keys: list[np.ndarray] = []
    sums: list[complex] = []
    for c, row in zip(s.coeffs, s.amps):
        for i, key in enumerate(keys):
            if np.all(np.abs(key.real - row.real) <= tol) and np.all(np.abs(key.imag - row.imag) <= tol):
                sums[i] += c
                break
        else:
            keys.append(row)
            sums.append(complex(c))
    kept = [i for i, c in enumerate(sums) if abs(c) >= DROP_COEFF]
    return CoherentSuperposition(
        np.array([sums[i] for i in kept], dtype=np.complex128),
        np.array([keys[i] for i in kept], dtype=np.complex128).reshape(len(kept), s.mode_count),
    )


def append_vacuum(s: CoherentSuperposition) -> CoherentSuperposition:
    """``s (x) |0>``: add a second mode in the vacuum to a one-mode state."""
    if s.mode_count != 1:
        raise DimensionError("append_vacuum expects a one-mode superposition")
    amps = np.column_stack([s.amps[:, 0], np.zeros(len(s), dtype=np.complex128)])
    return CoherentSuperposition(s.coeffs, amps)
