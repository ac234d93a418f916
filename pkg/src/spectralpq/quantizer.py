"""Scalar quantization: uniform-reconstruction (URQ) and rate-distortion
optimized (RDOQ) level selection.

Step sizes follow the 6-periodic schedule qstep(qp) = 2^((qp-4)/6): one QP
step is a ~12% increase, six steps double the step size.  The integer
multiplication factor m and scaling factor s are taken from the base period
(s = round(64 * qstep), m = round(2^20 / s)) so that m * s stays within a few
parts in 10^5 of 2^20 at every QP; the 2^(qp//6) doubling lives in the shift
exponents instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entropy import level_bits
from .errors import ConfigurationError

QP_MIN = 0
QP_MAX = 51
LEVEL_LIMIT = 1 << 15

# Base period, qp 0..5.  s = round(2^6 * qstep), m = round(2^20 / s).
QSTEP_TABLE = (0.6300, 0.7071, 0.7937, 0.8909, 1.0000, 1.1225)
M_TABLE = (26214, 23302, 20560, 18396, 16384, 14564)
S_TABLE = (40, 45, 51, 57, 64, 72)

BLOCK_SIZES = (4, 8, 16, 32)


@dataclass(frozen=True)
class QuantParams:
    """Everything urq_quantize / urq_dequantize need for one (qp, N) pair."""

    qp: int
    qstep: float
    m: int
    s: int
    f: int
    qbits: int

    @property
    def period(self) -> int:
        return self.qp // 6


def qstep(qp: int) -> float:
    return 2.0 ** ((qp - 4) / 6.0)


def quant_params(qp: int, n: int) -> QuantParams:
    if not QP_MIN <= qp <= QP_MAX:
        raise ConfigurationError(f"qp must be in [{QP_MIN}, {QP_MAX}], got {qp}")
    if n not in BLOCK_SIZES:
        raise ConfigurationError(f"block size must be one of {BLOCK_SIZES}, got {n}")
    r = qp % 6
    qbits = 21 + qp // 6 - int(np.log2(n))
    # Rounding offset of half a step; equals the canonical 2^18 at N=4, qp < 6.
    return QuantParams(qp, qstep(qp), M_TABLE[r], S_TABLE[r], 1 << (qbits - 1), qbits)


def urq_quantize(x, qp: int, n: int):
    """Uniform quantization of a coefficient (or array) to a level."""
    p = quant_params(qp, n)
    v = np.asarray(x, dtype=np.int64)
    t = np.sign(v) * ((np.abs(v) * p.m + p.f) >> p.qbits)
    t = np.clip(t, -LEVEL_LIMIT, LEVEL_LIMIT)
    return t if t.ndim else int(t)


def urq_dequantize(t, qp: int, n: int):
    """Reconstructed coefficient for a level, rounded toward zero."""
    p = quant_params(qp, n)
    v = np.asarray(t, dtype=np.int64)
    shift = int(np.log2(n)) - 1
    x = np.sign(v) * ((np.abs(v) * p.s << p.period) >> shift)
    return x if x.ndim else int(x)


def inverse_step(qp: int, n: int) -> float:
    """Spacing between adjacent reconstruction points, in coefficient units."""
    p = quant_params(qp, n)
    return p.s * 2.0**p.period / 2.0 ** (int(np.log2(n)) - 1)


def default_lambda(qp: int) -> float:
    return 0.57 * 2.0 ** ((qp - 12) / 3.0)


@dataclass(frozen=True)
class RdoqConfig:
    """Lagrange multiplier and rate model for RDOQ level decisions."""

    lam: float
    bit_estimator: Callable[[int], int] = level_bits

    def __post_init__(self):
        if self.lam <= 0:
            raise ConfigurationError(f"lambda must be > 0, got {self.lam}")


def rdoq_config(qp: int, n: int = 4, bit_depth: int = 8) -> RdoqConfig:
    """Default config with the multiplier expressed in coefficient units.

    The distortion term is measured on transform coefficients, which carry a
    gain of 2^(16 - bit_depth - log2 n) over sample amplitudes, so the
    sample-domain schedule is scaled by that gain squared.
    """
    scale = 1 << (16 - bit_depth - int(np.log2(n)))
    return RdoqConfig(default_lambda(qp) * scale * scale)


def rdoq_candidates(x: int, qp: int, n: int) -> tuple[int, int, int]:
    """Candidate magnitudes {0, l1, l1+1} bracketing |x| / step."""
    p = quant_params(qp, n)
    l1 = (abs(int(x)) * p.m) >> p.qbits
    l1 = min(l1, LEVEL_LIMIT - 1)
    return 0, l1, l1 + 1


def rdoq_cost(x: int, level: int, qp: int, n: int, cfg: RdoqConfig) -> float:
    """Lagrangian cost of quantizing coefficient x to the given magnitude."""
    recon = urq_dequantize(level, qp, n)
    err = abs(int(x)) - recon
    return err * err + cfg.lam * cfg.bit_estimator(level)


def _level_bits_array(levels: np.ndarray) -> np.ndarray:
    """Vectorized signed exp-Golomb lengths for nonnegative level magnitudes."""
    mapped = np.where(levels > 0, 2 * levels - 1, 0)
    width = np.floor(np.log2(mapped + 1)).astype(np.int64) + 1
    return 2 * width - 1


def rdoq_quantize(coeffs: np.ndarray, qp: int, n: int, cfg: RdoqConfig | None = None) -> np.ndarray:
    """Per-coefficient level choice minimizing distortion + lambda * bits.

    Candidates are evaluated in ascending order with strict improvement, so
    ties break toward the smaller level; relative to plain URQ rounding the
    rate term only ever pulls levels down.
    """
    if cfg is None:
        cfg = rdoq_config(qp, n)
    p = quant_params(qp, n)
    shift = int(np.log2(n)) - 1
    x = np.asarray(coeffs, dtype=np.int64)
    ax = np.abs(x)

    l1 = np.minimum((ax * p.m) >> p.qbits, LEVEL_LIMIT - 1)
    l2 = l1 + 1

    def cost(levels: np.ndarray) -> np.ndarray:
        recon = (levels * p.s << p.period) >> shift
        err = (ax - recon).astype(np.float64)
        if cfg.bit_estimator is level_bits:
            bits = _level_bits_array(levels)
        else:
            bits = np.vectorize(cfg.bit_estimator, otypes=[np.int64])(levels)
        return err * err + cfg.lam * bits

    best = np.zeros_like(l1)
    best_cost = cost(best)
    for cand in (l1, l2):
        c = cost(cand)
        take = c < best_cost
        best = np.where(take, cand, best)
        best_cost = np.where(take, c, best_cost)
    return np.sign(x) * best
