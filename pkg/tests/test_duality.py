import pytest
from hypothesis import given, strategies as st

from aclandau.analysis.duality import (DipoleLandauParams, StandardLandauParams, charge_to_dipole,
                                       dipole_to_charge, duality_map, level_separation)
from aclandau.errors import DegenerateArea


def test_unit_example():
    p = StandardLandauParams(q=1.0, m=1.0, hbar=1.0, flux=2.0, area=1.0)
    d = duality_map(p, mu=1.0, eps0=1.0, c=1.0)
    assert d.line_density == 2.0
    assert d.rho0 == 2.0
    assert level_separation("charge", p) == 2.0
    assert level_separation("dipole", d) == 2.0


def test_second_example():
    p = StandardLandauParams(q=2.0, m=1.0, hbar=1.0, flux=3.0, area=0.5)
    d = charge_to_dipole(p, 1.0, 1.0, 1.0)
    assert d.line_density == 6.0
    assert d.rho0 == 12.0


def test_zero_area():
    with pytest.raises(DegenerateArea):
        StandardLandauParams(q=1.0, m=1.0, hbar=1.0, flux=1.0, area=0.0)
    with pytest.raises(DegenerateArea):
        DipoleLandauParams(mu=1.0, line_density=1.0, area=0.0, m=1.0, hbar=1.0, eps0=1.0, c=1.0)


def test_B_consistency():
    p = StandardLandauParams(q=1.0, m=2.0, hbar=1.0, flux=3.0, area=1.5)
    assert p.B == 2.0
    assert p.omega == 1.0
    assert p.length == pytest.approx(1 / 2**0.5)
    with pytest.raises(ValueError):
        StandardLandauParams(q=1.0, m=1.0, hbar=1.0, flux=3.0, area=1.5, field_B=1.0)


mag = st.floats(min_value=1e-3, max_value=1e3)
signed = st.one_of(mag, mag.map(lambda v: -v))


@given(q=signed, phi=signed, S=mag, mu=signed, eps0=mag, c=mag, m=mag, hbar=mag)
def test_round_trip_and_equal_separation(q, phi, S, mu, eps0, c, m, hbar):
    p = StandardLandauParams(q=q, m=m, hbar=hbar, flux=phi, area=S)
    d = duality_map(p, mu=mu, eps0=eps0, c=c)
    assert d.mu * d.line_density / (d.c**2 * d.eps0) == pytest.approx(q * phi, rel=1e-13)
    back = dipole_to_charge(d, q)
    assert back.q * back.flux == pytest.approx(q * phi, rel=1e-13)
    a, b = level_separation("charge", p), level_separation("dipole", d)
    assert abs(a - b) <= 1e-14 * max(abs(a), 1e-300) * 10


def test_bad_side():
    with pytest.raises(ValueError):
        level_separation("neutral", None)
