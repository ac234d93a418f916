"""Per-channel perceptual QP derivation.

Three masking signals set a channel block's QP offset above the frame QP:

* color masking: the G channel gets offsets in [3, 6], B and R in [6, 12],
  because quantization artifacts are hardest to see in green;
* spatial masking: the offset grows with normalized block activity
  a = (B*g + H) / (g + B*H), where g is 1 + the minimum quadrant variance of
  the block and H is the frame mean of g for that channel;
* temporal masking: blocks whose motion magnitude exceeds the frame mean
  get a fixed extra offset (half for G).

Offsets never go below their channel floor, so this mode never spends bits
refining smooth regions; the anchor adaptive-QP mode (G-driven, symmetric
range) is included for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frames import subblocks
from .quantizer import QP_MAX, QP_MIN

CHANNELS = ("G", "B", "R")


@dataclass(frozen=True)
class PerceptualConstants:
    qp_offset_mean: int = 6      # o: mean block-level offset; G uses o/2 floors
    qp_offset_max: int = 12      # upper clamp for B and R offsets
    qp_offset_count: int = 12    # w: size of the offset pool o averages over
    activity_scale: int = 2      # B: bounds normalized activity in (1/B, B)


DEFAULT_CONSTANTS = PerceptualConstants()


@dataclass(frozen=True)
class ChannelActivity:
    channel: str
    g: float
    frame_mean: float
    a: float


@dataclass(frozen=True)
class PerceptualQp:
    channel: str
    frame_qp: int
    temporal_offset: int
    spatial_term: int
    total_offset: int
    qp: int


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def cb_activity(cb: np.ndarray) -> float:
    """1 + the minimum population variance over the four quadrants."""
    return 1.0 + min(float(np.var(q)) for q in subblocks(cb))


def frame_mean_activity(activities) -> float:
    acts = list(activities)
    if not acts:
        raise ValueError("no channel blocks in picture")
    return float(sum(acts)) / len(acts)


def normalized_activity(g: float, frame_mean: float, scale: int = 2) -> float:
    return (scale * g + frame_mean) / (g + scale * frame_mean)


def frame_activity(plane: np.ndarray, cus, channel: str,
                   constants: PerceptualConstants = DEFAULT_CONSTANTS) -> list[ChannelActivity]:
    """Activity statistics for every CU of one channel plane (what the
    encoder's first pass computes)."""
    gs = [cb_activity(plane[cu.y : cu.y + cu.size, cu.x : cu.x + cu.size]) for cu in cus]
    mean = frame_mean_activity(gs)
    return [
        ChannelActivity(channel, g, mean, normalized_activity(g, mean, constants.activity_scale))
        for g in gs
    ]


def offset_range(channel: str, constants: PerceptualConstants = DEFAULT_CONSTANTS) -> tuple[int, int]:
    o = constants.qp_offset_mean
    if channel == "G":
        return o // 2, o
    return o, constants.qp_offset_max


def temporal_offset(
    magnitude: float,
    frame_mean: float,
    channel: str,
    constants: PerceptualConstants = DEFAULT_CONSTANTS,
) -> int:
    """Extra offset when a block's motion strictly exceeds the frame mean."""
    if magnitude <= frame_mean:
        return 0
    o = constants.qp_offset_mean
    return o // 2 if channel == "G" else o


def spatial_term(a: float) -> int:
    return round_half_away(6.0 * math.log2(a))


def perceptual_qp(
    frame_qp: int,
    a: float,
    z: int,
    channel: str,
    constants: PerceptualConstants = DEFAULT_CONSTANTS,
) -> PerceptualQp:
    """Channel-block QP: frame QP plus the clamped masking offset."""
    lo, hi = offset_range(channel, constants)
    term = spatial_term(a)
    total = min(max(z + term, lo), hi)
    assert lo <= total <= hi
    qp = min(max(frame_qp + total, QP_MIN), QP_MAX)
    return PerceptualQp(channel, frame_qp, z, term, total, qp)


def adaptiveqp_offset(a_g: float, strength: int = 6, bounds: tuple[int, int] = (-6, 6)) -> int:
    """Anchor mode: symmetric G-driven delta applied to the whole CU."""
    lo, hi = bounds
    return min(max(round_half_away(strength * math.log2(a_g)), lo), hi)
