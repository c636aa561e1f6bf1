"""Parameter sweeps, Fourier verification and energy-scaling searches.

These produce plain rows and dicts; :mod:`kerrcat.cli` handles argument
parsing and file output.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .coherent import norm_squared
from .entanglement import METHODS, entanglement_after_kerr, entanglement_of_cat, gram_spectrum, entropy
from .exceptions import BracketError
from .kerr import fourier_coefficients, fourier_coefficients_dft, parity_of, resubstitution_residual
from .optics import make_entangled_cat

FOURIER_TOL = 1e-10
RESIDUAL_TOL = 1e-12
BISECT_RTOL = 1e-3
BRACKET_LIMIT = 1e7

SWEEP_HEADER = [
    "alpha_squared", "m", "tau", "entropy_bits", "entropy_limit_bits",
    "method", "certified_error", "cutoff",
]
TAU_HEADER = ["alpha_squared", "tau", "entropy_bits", "method", "certified_error", "cutoff"]
SCALING_HEADER = ["m", "alpha_squared_min", "entropy_bits"]


class ConfigError(ValueError):
    """Invalid sweep parameters or configuration file."""


def fmt(x) -> str:
    """Locale-independent 12-significant-digit formatting used in every CSV."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0.0:
        x = 0.0  # no "-0"
    return format(x, ".12g")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


@dataclass
class SweepConfig:
    alpha_squared: list[float]
    m: list[int] = field(default_factory=list)
    method: str = "gram"
    cutoff: int | None = None
    out: str | None = None
    tau_grid: list[float] | None = None

    def validate(self):
        if not self.alpha_squared:
            raise ConfigError("alpha-squared list is empty")
        if any(not math.isfinite(a) or a < 0 for a in self.alpha_squared):
            raise ConfigError("alpha-squared values must be finite and >= 0")
        if self.method not in (*METHODS, "both"):
            raise ConfigError(f"method must be gram, fock or both, got {self.method!r}")
        if self.cutoff is not None and self.cutoff < 1:
            raise ConfigError("cutoff must be a positive integer")
        if self.tau_grid is not None:
            if not self.tau_grid:
                raise ConfigError("tau grid is empty")
            if self.method == "gram":
                raise ConfigError("a tau grid is only available with method=fock")
            if any(not math.isfinite(t) for t in self.tau_grid):
                raise ConfigError("tau values must be finite")
            return self
        if not self.m:
            raise ConfigError("m list is empty")
        if any(int(m) != m or m < 1 for m in self.m):
            raise ConfigError("m values must be positive integers")
        return self


@dataclass(frozen=True)
class SweepRow:
    alpha_squared: float
    m: int
    tau: float
    entropy_bits: float
    entropy_limit_bits: float
    method: str
    certified_error: float
    cutoff: int

    def check(self):
        if abs(self.tau - math.pi / self.m) > 1e-12:
            raise AssertionError(f"row tau {self.tau} is not pi/{self.m}")
        if self.entropy_bits > self.entropy_limit_bits + 1e-9:
            raise AssertionError(
                f"entropy {self.entropy_bits} exceeds log2({self.m}) at alpha^2={self.alpha_squared}"
            )
        return self

    def as_tuple(self):
        return (self.alpha_squared, self.m, self.tau, self.entropy_bits,
                self.entropy_limit_bits, self.method, self.certified_error, self.cutoff)


def sweep_rows(config: SweepConfig) -> list[SweepRow]:
    config.validate()
    methods = METHODS if config.method == "both" else (config.method,)
    rows = []
    for a2 in sorted(set(float(a) for a in config.alpha_squared)):
        for m in sorted(set(int(m) for m in config.m)):
            for method in methods:
                res = entanglement_of_cat(math.sqrt(a2), m, method, config.cutoff)
                rows.append(SweepRow(
                    a2, m, math.pi / m, res.entropy_bits, math.log2(m),
                    method, res.certified_error, res.cutoff,
                ).check())
    return rows


def tau_rows(config: SweepConfig) -> list[tuple]:
    """Rows for an arbitrary tau grid (Fock route only)."""
    config.validate()
    rows = []
    for a2 in sorted(set(float(a) for a in config.alpha_squared)):
        for tau in sorted(set(float(t) for t in config.tau_grid)):
            res = entanglement_after_kerr(math.sqrt(a2), tau, config.cutoff)
            rows.append((a2, tau, res.entropy_bits, "fock", res.certified_error, res.cutoff))
    return rows


def verify_fourier(max_m: int) -> dict:
    """Compare closed-form and DFT Fourier coefficients for every ``M <= max_m``.

    The report has one entry per ``M``; ``passed`` is false if any
    coefficient deviation exceeds 1e-10 or any resubstitution residual
    exceeds 1e-12.
    """
    if max_m < 1:
        raise ConfigError("max-m must be >= 1")
    entries = []
    for M in range(1, max_m + 1):
        closed = fourier_coefficients(M)
        oracle = fourier_coefficients_dft(M)
        entries.append({
            "m": M,
            "parity": parity_of(M),
            "max_deviation": float(np.max(np.abs(closed.values - oracle.values))),
            "residual_closed": resubstitution_residual(closed),
            "residual_dft": resubstitution_residual(oracle),
        })
    passed = all(
        e["max_deviation"] <= FOURIER_TOL
        and e["residual_closed"] <= RESIDUAL_TOL
        and e["residual_dft"] <= RESIDUAL_TOL
        for e in entries
    )
    parities = sorted({e["parity"] for e in entries})
    return {
        "max_m": max_m,
        "tolerance": FOURIER_TOL,
        "residual_tolerance": RESIDUAL_TOL,
        "parities": parities,
        "entries": entries,
        "passed": passed,
    }


def cat_report(alpha, M: int) -> dict:
    state = make_entangled_cat(alpha, M)
    spec = gram_spectrum(state)
    alpha = complex(alpha)
    n2 = norm_squared(state)
    return {
        "alpha": [alpha.real, alpha.imag],
        "m": M,
        "tau": math.pi / M,
        "state": state.to_dict(),
        "norm": math.sqrt(n2),
        "normSquared": n2,
        "entropyBits": entropy(spec),
        "schmidtSpectrum": spec.probs.tolist(),
    }


def _gram_entropy(alpha_squared, M):
    return entanglement_of_cat(math.sqrt(alpha_squared), M, "gram").entropy_bits


def min_alpha_squared(M: int, fraction: float, rtol: float = BISECT_RTOL):
    """Smallest ``|alpha|^2`` whose split cat carries ``fraction * log2(M)`` bits.

    Returns ``(alpha_squared, entropy_bits)`` at the upper end of the final
    bisection bracket, whose relative width is below ``rtol``.
    """
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"fraction must lie in (0, 1), got {fraction!r}")
    target = fraction * math.log2(M)
    if _gram_entropy(0.0, M) >= target:
        return 0.0, _gram_entropy(0.0, M)
    lo, hi = 0.0, 1.0
    e_hi = _gram_entropy(hi, M)
    while e_hi < target:
        lo, hi = hi, 2.0 * hi
        if hi > BRACKET_LIMIT:
            raise BracketError(f"entropy never reached {target:.6g} bits for M={M}", lo, hi)
        e_hi = _gram_entropy(hi, M)
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        e_mid = _gram_entropy(mid, M)
        if e_mid >= target:
            hi, e_hi = mid, e_mid
        else:
            lo = mid
    return hi, e_hi


def energy_scaling_rows(ms, fraction: float) -> list[tuple]:
    if not ms:
        raise ConfigError("m list is empty")
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"fraction must lie in (0, 1), got {fraction!r}")
    rows = []
    for M in sorted(set(int(m) for m in ms)):
        if M < 1:
            raise ConfigError("m values must be positive integers")
        a2, e = min_alpha_squared(M, fraction)
        rows.append((M, a2, e))
    return rows


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    return float(np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)[0])
