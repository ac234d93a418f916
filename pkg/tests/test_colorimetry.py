import math

import numpy as np
import pytest

from spectralpq.colorimetry import (
    VISIBLE_BANDS,
    ColorTriplet,
    LightSource,
    classify_wavelength,
    luminance_and_illuminance,
    luminous_quantities,
    photon_energy,
    photon_rate_and_flux,
    rgb_from_ycbcr,
    ycbcr_from_rgb,
)


def test_photon_energy_red_example():
    spec = photon_energy(700.0)
    assert spec.energy_j == pytest.approx(2.8e-19, rel=0.02)
    assert spec.energy_ev == pytest.approx(1.8, rel=0.02)


def test_photon_energy_555nm():
    # direct evaluation: 6.626e-34 * 3e8 / 555e-9
    spec = photon_energy(555.0)
    assert spec.energy_j == pytest.approx(3.5816e-19, rel=1e-4)
    assert spec.energy_ev == pytest.approx(2.2356, rel=1e-4)


def test_photon_energy_inverse_proportionality():
    spec = photon_energy(400.0)
    double = photon_energy(800.0)
    assert spec.energy_j == pytest.approx(2.0 * double.energy_j, rel=1e-12)

    rng = np.random.default_rng(11)
    for _ in range(1000):
        w1, w2 = sorted(rng.uniform(100.0, 2000.0, 2))
        if w1 == w2:
            continue
        assert photon_energy(w1).energy_j > photon_energy(w2).energy_j


@pytest.mark.parametrize("bad", [0.0, -5.0])
def test_photon_energy_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        photon_energy(bad)


def test_photon_rate_identity():
    spec = photon_energy(700.0)
    src = LightSource(source_energy_j=spec.energy_j, area_m2=1.0)
    rate, flux = photon_rate_and_flux(src, spec)
    assert rate == pytest.approx(1.0)
    assert flux == pytest.approx(1.0)


def test_photon_rate_division():
    spec = photon_energy(700.0)
    fake = type(spec)(700.0, 2.8e-19, 2.8e-19 * 6.242e18)
    src = LightSource(source_energy_j=1.0, area_m2=1.0)
    rate, flux = photon_rate_and_flux(src, fake)
    assert rate == pytest.approx(3.5714285e18, rel=1e-6)
    assert flux == pytest.approx(rate)

    wide = LightSource(source_energy_j=1.0, area_m2=2.0)
    rate2, flux2 = photon_rate_and_flux(wide, fake)
    assert rate2 == pytest.approx(rate)
    assert flux2 == pytest.approx(flux / 2.0)


def test_photon_rate_zero_energy_rejected():
    bad = type(photon_energy(700.0))(700.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        photon_rate_and_flux(LightSource(), bad)


def test_luminous_zero_efficiency():
    src = LightSource(radiant_intensity_w_sr=1.0)
    _, flux = luminous_quantities(src, lambda w: 1.0, [400.0, 500.0, 600.0], efficiency=lambda w: 0.0)
    assert flux == 0.0


def test_luminous_monochromatic_peak():
    src = LightSource(radiant_intensity_w_sr=1.0)
    intensity, _ = luminous_quantities(src, lambda w: 1.0, [555.0])
    assert intensity == pytest.approx(683.0)


def test_luminous_flux_linearity():
    src = LightSource(radiant_intensity_w_sr=1.0)
    grid = list(np.linspace(450.0, 650.0, 41))
    _, f1 = luminous_quantities(src, lambda w: 1.0, grid)
    _, f3 = luminous_quantities(src, lambda w: 3.0, grid)
    assert f3 == pytest.approx(3.0 * f1, rel=1e-12)
    assert f1 > 0


def test_luminous_empty_and_unsorted_grids():
    src = LightSource()
    with pytest.raises(ValueError):
        luminous_quantities(src, lambda w: 1.0, [])
    with pytest.raises(ValueError):
        luminous_quantities(src, lambda w: 1.0, [600.0, 500.0])
    with pytest.raises(ValueError):
        luminous_quantities(src, lambda w: 1.0, [100.0, 500.0])


def test_luminance_identity():
    src = LightSource(refraction_index=1.0, etendue=2.5)
    luminance, _, _ = luminance_and_illuminance(src, 2.5)
    assert luminance == pytest.approx(1.0)


def test_luminance_sphere_example():
    # S=100, r=2: A = 16*pi, T = 100/A, M = T/4
    src = LightSource(strength_w=100.0, distance_m=2.0)
    _, illuminance, pointance = luminance_and_illuminance(src, 1.0)
    assert pointance == pytest.approx(100.0 / (16.0 * math.pi), rel=1e-9)
    assert pointance == pytest.approx(1.98944, rel=1e-5)
    assert illuminance == pytest.approx(0.49736, rel=1e-5)


def test_luminance_refraction_squared():
    one = luminance_and_illuminance(LightSource(refraction_index=1.0, etendue=1.0), 1.0)[0]
    two = luminance_and_illuminance(LightSource(refraction_index=2.0, etendue=1.0), 1.0)[0]
    assert two == pytest.approx(4.0 * one)


def test_light_source_validation():
    with pytest.raises(ValueError):
        LightSource(area_m2=0.0)
    with pytest.raises(ValueError):
        LightSource(etendue=-1.0)
    with pytest.raises(ValueError):
        LightSource(distance_m=0.0)


@pytest.mark.parametrize(
    "wavelength,band",
    [
        (380.0, "violet"),
        (449.9, "violet"),
        (450.0, "blue"),
        (495.0, "green"),
        (500.0, "green"),
        (570.0, "yellow"),
        (590.0, "orange"),
        (620.0, "red"),
        (749.9, "red"),
        (750.0, "non-visible"),
        (379.9, "non-visible"),
        (1200.0, "non-visible"),
    ],
)
def test_classify_wavelength(wavelength, band):
    assert classify_wavelength(wavelength) == band


def test_band_table_energy_consistency():
    # each band's printed eV range matches the energies of its wavelength
    # endpoints within 2% (energy decreases with wavelength, so endpoints swap)
    for name, low_nm, high_nm, low_thz, high_thz, low_ev, high_ev in VISIBLE_BANDS:
        assert photon_energy(low_nm).energy_ev == pytest.approx(high_ev, rel=0.02)
        assert photon_energy(high_nm).energy_ev == pytest.approx(low_ev, rel=0.02)
        assert 3.0e8 / (low_nm * 1e-9) / 1e12 == pytest.approx(high_thz, rel=0.02)
        assert 3.0e8 / (high_nm * 1e-9) / 1e12 == pytest.approx(low_thz, rel=0.02)


def test_ycbcr_white():
    y, cb, cr = ycbcr_from_rgb(ColorTriplet(1.0, 1.0, 1.0))
    assert y == pytest.approx(1.0, abs=1e-12)
    assert cb == pytest.approx(0.0, abs=1e-12)
    assert cr == pytest.approx(0.0, abs=1e-12)


def test_ycbcr_primaries():
    y, cb, cr = ycbcr_from_rgb(ColorTriplet(1.0, 0.0, 0.0))
    assert y == pytest.approx(0.2627, abs=1e-12)
    assert cr == pytest.approx(0.5, abs=1e-9)

    y, cb, cr = ycbcr_from_rgb(ColorTriplet(0.0, 0.0, 1.0))
    assert cb == pytest.approx(0.5, abs=1e-9)


def test_ycbcr_round_trip_and_chroma_range():
    rng = np.random.default_rng(5)
    for _ in range(500):
        r, g, b = rng.uniform(0.0, 1.0, 3)
        y, cb, cr = ycbcr_from_rgb(ColorTriplet(r, g, b))
        assert -0.5 <= cb <= 0.5
        assert -0.5 <= cr <= 0.5
        back = rgb_from_ycbcr(y, cb, cr)
        assert abs(back.r - r) < 1e-12
        assert abs(back.g - g) < 1e-12
        assert abs(back.b - b) < 1e-12


def test_color_triplet_integer_grid():
    # integer mapping is monotone and hits every grid point
    for depth in (1, 2, 8):
        top = (1 << depth) - 1
        ints = [ColorTriplet(v / top, 0.0, 0.0, depth).to_integers()[0] for v in range(top + 1)]
        assert ints == list(range(top + 1))
        for v in range(top + 1):
            trip = ColorTriplet.from_integers(v, v, v, depth)
            assert trip.to_integers() == (v, v, v)
    with pytest.raises(ValueError):
        ColorTriplet(0.0, 0.0, 0.0, bit_depth=0)
