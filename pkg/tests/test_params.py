import math

import pytest
from hypothesis import given, strategies as st

from aclandau.errors import DegenerateCoupling
from aclandau.params import PhysicalParams, derive_units, nondimensionalize


def unit_params(**kw):
    base = dict(m=1.0, mu=1.0, rho0=2.0, eps0=1.0, c=1.0, hbar=1.0)
    base.update(kw)
    return PhysicalParams(**base)


def test_positive_coupling():
    u = derive_units(unit_params())
    assert u.omega == 2.0
    assert u.sigma == 1
    assert u.length == pytest.approx(1 / math.sqrt(2), rel=1e-15)


def test_flipped_moment():
    u = derive_units(unit_params(mu=-1.0))
    assert u.omega == -2.0
    assert u.sigma == -1
    assert u.length == pytest.approx(1 / math.sqrt(2), rel=1e-15)


def test_zero_density_is_degenerate():
    p = unit_params(rho0=0.0)
    assert p.is_free
    with pytest.raises(DegenerateCoupling):
        derive_units(p)


@pytest.mark.parametrize("name", ["m", "eps0", "c", "hbar"])
def test_rejects_nonpositive(name):
    with pytest.raises(ValueError):
        unit_params(**{name: 0.0})


def test_scales_and_scalar_term():
    s = nondimensionalize(unit_params(mu=-1.0))
    assert s.sigma == -1
    assert s.scalar_term == -0.5
    assert s.commutator == -1j
    assert s.level(0) == 0.0
    assert nondimensionalize(unit_params()).level(0) == 1.0
    assert s.from_joules(s.to_joules(3.25)) == pytest.approx(3.25)
    assert s.to_metres(1.0) == pytest.approx(s.length)


positive = st.floats(min_value=1e-3, max_value=1e3)


@given(m=positive, mu=positive, rho=positive, eps0=positive, c=positive, hbar=positive,
       t=st.floats(min_value=1e-2, max_value=1e2), flip=st.booleans())
def test_units_invariant_under_compensating_rescale(m, mu, rho, eps0, c, hbar, t, flip):
    mu = -mu if flip else mu
    a = derive_units(PhysicalParams(m, mu, rho, eps0, c, hbar))
    b = derive_units(PhysicalParams(m, t * mu, rho / t, eps0, c, hbar))
    assert a.sigma == b.sigma
    assert b.omega == pytest.approx(a.omega, rel=1e-12)
    assert b.length == pytest.approx(a.length, rel=1e-12)


@given(m=positive, mu=positive, rho=positive, eps0=positive, c=positive, hbar=positive)
def test_magnetic_length_consistent_with_frequency(m, mu, rho, eps0, c, hbar):
    u = derive_units(PhysicalParams(m, mu, rho, eps0, c, hbar))
    # hbar / (m |omega| l^2) = 1 fixes the unit system
    assert hbar / (m * abs(u.omega) * u.length**2) == pytest.approx(1.0, rel=1e-12)
    assert u.energy == pytest.approx(hbar * abs(u.omega), rel=1e-15)
