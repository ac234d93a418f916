"""Photometry and color-space utilities.

Covers photon energetics, luminous quantities, visible-light band
classification, and the R'G'B' <-> Y'CbCr conversion used for HLG-weighted
RGB data.  Everything here is a pure function over plain values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

PLANCK_J_S = 6.626e-34
LIGHT_SPEED_M_S = 3.0e8
EV_PER_JOULE = 6.242e18
LUMENS_PER_WATT = 683.0

# HLG luma weights and the derived chroma divisors (divisor = 2*(1 - weight)).
KR = 0.2627
KG = 0.6780
KB = 0.0593
CB_DIVISOR = 1.8814
CR_DIVISOR = 1.4746

# Visible-light bands: (name, wavelength_nm low/high, THz low/high, eV low/high).
# Intervals are half-open [low, high) so shared endpoints map to one band.
VISIBLE_BANDS = (
    ("violet", 380.0, 450.0, 668.0, 789.0, 2.75, 3.26),
    ("blue", 450.0, 495.0, 606.0, 668.0, 2.50, 2.75),
    ("green", 495.0, 570.0, 526.0, 606.0, 2.17, 2.50),
    ("yellow", 570.0, 590.0, 508.0, 526.0, 2.10, 2.17),
    ("orange", 590.0, 620.0, 484.0, 508.0, 2.00, 2.10),
    ("red", 620.0, 750.0, 400.0, 484.0, 1.65, 2.00),
)

VISIBLE_LOW_NM = 380.0
VISIBLE_HIGH_NM = 750.0


@dataclass(frozen=True)
class PhotonSpec:
    """A photon's wavelength and its energy in both J and eV."""

    wavelength_nm: float
    energy_j: float
    energy_ev: float


@dataclass(frozen=True)
class LightSource:
    """Physical description of a visible light source.

    source_energy_j is the emitted energy L, area_m2 the emission area U,
    radiant_intensity_w_sr the radiant intensity, strength_w the source
    strength used for pointance, and distance_m the observation distance.
    """

    source_energy_j: float = 1.0
    area_m2: float = 1.0
    radiant_intensity_w_sr: float = 1.0
    refraction_index: float = 1.0
    etendue: float = 1.0
    strength_w: float = 1.0
    distance_m: float = 1.0

    def __post_init__(self):
        for name in ("area_m2", "etendue", "distance_m"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class ColorTriplet:
    """Normalized gamma-corrected R', G', B' with an integer bit depth."""

    r: float
    g: float
    b: float
    bit_depth: int = 8

    def __post_init__(self):
        if self.bit_depth < 1:
            raise ValueError(f"bit_depth must be >= 1, got {self.bit_depth}")

    def to_integers(self) -> tuple[int, int, int]:
        """Map each channel onto the integer grid [0, 2^bit_depth - 1]."""
        top = (1 << self.bit_depth) - 1
        return tuple(
            int(min(max(round(c * top), 0), top)) for c in (self.r, self.g, self.b)
        )

    @classmethod
    def from_integers(cls, r: int, g: int, b: int, bit_depth: int = 8) -> "ColorTriplet":
        top = (1 << bit_depth) - 1
        return cls(r / top, g / top, b / top, bit_depth)


def photon_energy(wavelength_nm: float) -> PhotonSpec:
    """Energy of a photon of the given wavelength, in J and eV."""
    if wavelength_nm <= 0:
        raise ValueError(f"wavelength must be > 0 nm, got {wavelength_nm}")
    energy_j = PLANCK_J_S * LIGHT_SPEED_M_S / (wavelength_nm * 1e-9)
    return PhotonSpec(wavelength_nm, energy_j, energy_j * EV_PER_JOULE)


def photon_rate_and_flux(source: LightSource, photon: PhotonSpec) -> tuple[float, float]:
    """Photons emitted per second and the flux per unit area per second."""
    if photon.energy_j <= 0:
        raise ValueError("photon energy must be > 0")
    rate = source.source_energy_j / photon.energy_j
    return rate, rate / source.area_m2


def photopic_efficiency(wavelength_nm: float) -> float:
    """Default luminous efficiency: a Gaussian peaking at 555 nm (sigma 45 nm)."""
    return math.exp(-0.5 * ((wavelength_nm - 555.0) / 45.0) ** 2)


def luminous_quantities(
    source: LightSource,
    spectral_flux: Callable[[float], float],
    wavelengths_nm: Sequence[float],
    efficiency: Callable[[float], float] = photopic_efficiency,
) -> tuple[float, float]:
    """Luminous intensity (cd) and luminous flux (lm) over a wavelength grid.

    The flux integral is trapezoidal over the caller's grid; the intensity is
    evaluated at the grid sample where the efficiency function peaks.
    """
    grid = np.asarray(wavelengths_nm, dtype=np.float64)
    if grid.size == 0:
        raise ValueError("wavelength grid is empty")
    if np.any(np.diff(grid) < 0):
        raise ValueError("wavelength grid must be sorted ascending")
    if grid[0] < VISIBLE_LOW_NM or grid[-1] > VISIBLE_HIGH_NM:
        raise ValueError("wavelength grid must lie within [380, 750] nm")

    eff = np.array([efficiency(w) for w in grid])
    flux = np.array([spectral_flux(w) for w in grid])
    intensity = LUMENS_PER_WATT * eff[int(np.argmax(eff))] * source.radiant_intensity_w_sr
    if grid.size == 1:
        luminous_flux = 0.0
    else:
        luminous_flux = LUMENS_PER_WATT * float(np.trapezoid(eff * flux, grid))
    return float(intensity), luminous_flux


def luminance_and_illuminance(source: LightSource, luminous_flux_lm: float) -> tuple[float, float, float]:
    """Beam luminance, inverse-square illuminance, and pointance of a source.

    Implements the sphere-area form literally: A = 4*pi*r^2, T = S/A,
    M = T/r^2.  Combined, M falls off as 1/r^4; kept as written.
    """
    luminance = (
        source.refraction_index**2 * luminous_flux_lm / source.etendue
    )
    sphere_area = 4.0 * math.pi * source.distance_m**2
    pointance = source.strength_w / sphere_area
    illuminance = pointance / source.distance_m**2
    return luminance, illuminance, pointance


def classify_wavelength(wavelength_nm: float) -> str:
    """Name of the visible band containing the wavelength, or "non-visible"."""
    for name, low, high, *_ in VISIBLE_BANDS:
        if low <= wavelength_nm < high:
            return name
    return "non-visible"


def ycbcr_from_rgb(c: ColorTriplet) -> tuple[float, float, float]:
    """HLG-weighted (Y', Cb', Cr') from normalized R'G'B'."""
    y = KR * c.r + KG * c.g + KB * c.b
    cb = (c.b - y) / CB_DIVISOR
    cr = (c.r - y) / CR_DIVISOR
    return y, cb, cr


def rgb_from_ycbcr(y: float, cb: float, cr: float, bit_depth: int = 8) -> ColorTriplet:
    """Inverse of ycbcr_from_rgb.  Out-of-gamut inputs are not clamped."""
    r = y + CR_DIVISOR * cr
    b = y + CB_DIVISOR * cb
    g = (y - KR * r - KB * b) / KG
    return ColorTriplet(r, g, b, bit_depth)
