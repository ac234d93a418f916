"""Photon energetics, visible-light bands, and the Y'CbCr conversion.

Run:  python demos/01_light_and_color.py
"""

import numpy as np

from spectralpq.colorimetry import (
    ColorTriplet,
    LightSource,
    VISIBLE_BANDS,
    classify_wavelength,
    luminance_and_illuminance,
    luminous_quantities,
    photon_energy,
    photon_rate_and_flux,
    rgb_from_ycbcr,
    ycbcr_from_rgb,
)

print("== photon energy across the visible range ==")
for nm in (380, 450, 495, 555, 590, 620, 700):
    spec = photon_energy(float(nm))
    print(f"  {nm:4d} nm -> {spec.energy_j:.3e} J = {spec.energy_ev:.3f} eV   band: {classify_wavelength(nm)}")

print("\n== band table ==")
for name, lo, hi, *_ in VISIBLE_BANDS:
    print(f"  {name:7s} [{lo:.0f}, {hi:.0f}) nm")

print("\n== a 60 W-equivalent source at 2 m ==")
source = LightSource(source_energy_j=60.0, area_m2=0.01, radiant_intensity_w_sr=5.0,
                     strength_w=60.0, distance_m=2.0)
red = photon_energy(700.0)
rate, flux = photon_rate_and_flux(source, red)
print(f"  photon rate {rate:.3e} /s, flux {flux:.3e} /(m^2 s)")

grid = np.linspace(400.0, 700.0, 61)
intensity, lum_flux = luminous_quantities(source, lambda w: 0.2, grid)
print(f"  luminous intensity {intensity:.1f} cd, luminous flux {lum_flux:.1f} lm")
luminance, illuminance, pointance = luminance_and_illuminance(source, lum_flux)
print(f"  luminance {luminance:.1f} cd/m^2, pointance {pointance:.3f}, illuminance {illuminance:.3f}")

print("\n== Y'CbCr round trip for the additive primaries ==")
for name, (r, g, b) in (("red", (1, 0, 0)), ("green", (0, 1, 0)), ("blue", (0, 0, 1)), ("white", (1, 1, 1))):
    y, cb, cr = ycbcr_from_rgb(ColorTriplet(float(r), float(g), float(b)))
    back = rgb_from_ycbcr(y, cb, cr)
    print(f"  {name:5s}: Y'={y:.4f} Cb'={cb:+.4f} Cr'={cr:+.4f}  "
          f"back=({back.r:.3f}, {back.g:.3f}, {back.b:.3f})")
print("\nnote how green alone carries 68% of luma: that asymmetry is what the")
print("codec's per-channel quantization exploits.")
