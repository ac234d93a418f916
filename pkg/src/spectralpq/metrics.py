"""Per-channel PSNR and SSIM quality metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import StructuralError
from .frames import PLANE_ORDER, Frame

SSIM_WINDOW = 8
VISUALLY_LOSSLESS_SSIM = 0.95


@dataclass(frozen=True)
class QualityReport:
    """Per-channel PSNR/SSIM plus the mean SSIM over G, B, R.

    A mean SSIM above 0.95 is annotated as the visually-lossless correlate;
    it is informational, never a gate.
    """

    psnr: dict
    ssim: dict
    ssim_mean: float
    visually_lossless: bool


def psnr(ref: np.ndarray, rec: np.ndarray, bit_depth: int) -> float:
    """10*log10(MAX^2 / MSE); identical planes return math.inf."""
    if ref.shape != rec.shape:
        raise StructuralError(f"plane shapes differ: {ref.shape} vs {rec.shape}")
    mse = float(np.mean((ref.astype(np.float64) - rec.astype(np.float64)) ** 2))
    if mse == 0.0:
        return math.inf
    peak = (1 << bit_depth) - 1
    return 10.0 * math.log10(peak * peak / mse)


def _gaussian_window(size: int, sigma: float = 1.5) -> np.ndarray:
    ax = np.arange(size) - (size - 1) / 2.0
    g = np.exp(-0.5 * (ax / sigma) ** 2)
    w = np.outer(g, g)
    return w / w.sum()


def ssim(
    ref: np.ndarray,
    rec: np.ndarray,
    bit_depth: int,
    window: int = SSIM_WINDOW,
    gaussian: bool = False,
) -> float:
    """Mean local SSIM over sliding windows (uniform weights by default)."""
    if ref.shape != rec.shape:
        raise StructuralError(f"plane shapes differ: {ref.shape} vs {rec.shape}")
    if min(ref.shape) < window:
        raise StructuralError(f"plane {ref.shape} smaller than {window}x{window} window")

    peak = (1 << bit_depth) - 1
    c1 = (0.01 * peak) ** 2
    c2 = (0.03 * peak) ** 2

    x = sliding_window_view(ref.astype(np.float64), (window, window))
    y = sliding_window_view(rec.astype(np.float64), (window, window))
    if gaussian:
        w = _gaussian_window(window)
        mu_x = (x * w).sum(axis=(2, 3))
        mu_y = (y * w).sum(axis=(2, 3))
        var_x = (x * x * w).sum(axis=(2, 3)) - mu_x * mu_x
        var_y = (y * y * w).sum(axis=(2, 3)) - mu_y * mu_y
        cov = (x * y * w).sum(axis=(2, 3)) - mu_x * mu_y
    else:
        mu_x = x.mean(axis=(2, 3))
        mu_y = y.mean(axis=(2, 3))
        var_x = (x * x).mean(axis=(2, 3)) - mu_x * mu_x
        var_y = (y * y).mean(axis=(2, 3)) - mu_y * mu_y
        cov = (x * y).mean(axis=(2, 3)) - mu_x * mu_y

    score = ((2 * mu_x * mu_y + c1) * (2 * cov + c2)) / (
        (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    )
    return float(score.mean())


def quality_report(ref: Frame, rec: Frame) -> QualityReport:
    """Per-channel metrics between a source frame and its reconstruction."""
    psnrs = {}
    ssims = {}
    for ch in PLANE_ORDER:
        psnrs[ch] = psnr(ref.plane(ch), rec.plane(ch), ref.bit_depth)
        ssims[ch] = ssim(ref.plane(ch), rec.plane(ch), ref.bit_depth)
    mean = sum(ssims.values()) / len(ssims)
    return QualityReport(psnrs, ssims, mean, mean > VISUALLY_LOSSLESS_SSIM)


def sequence_psnr(refs: list[Frame], recs: list[Frame], channel: str) -> float:
    """PSNR of one channel pooled over all frames of a sequence."""
    if len(refs) != len(recs):
        raise StructuralError("sequence lengths differ")
    total = 0.0
    count = 0
    for ref, rec in zip(refs, recs):
        diff = ref.plane(channel).astype(np.float64) - rec.plane(channel).astype(np.float64)
        total += float(np.sum(diff * diff))
        count += diff.size
    if total == 0.0:
        return math.inf
    peak = (1 << refs[0].bit_depth) - 1
    return 10.0 * math.log10(peak * peak / (total / count))
