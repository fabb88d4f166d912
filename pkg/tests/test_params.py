import math

import pytest
from hypothesis import given, strategies as st

from saft.errors import (ComplexParameterUnsupported, DeterminantViolation,
                         NonFiniteParameter, UnknownPreset, ValidationError, ZeroB)
from saft.params import (EXPERIMENT_TOL, SaftParams, parse_preset, parse_saft,
                         preset, preset_names, preset_vector, validate)

angles = st.floats(min_value=0.05, max_value=math.pi - 0.05)
offsets = st.floats(min_value=-5, max_value=5)


def test_fourier_preset_vector():
    P = preset("ft")
    assert P.as_tuple() == (0.0, 1.0, -1.0, 0.0, 0.0, 0.0)
    assert P.omega_cap == 0.0
    assert P.delta == pytest.approx(2 * math.pi)


def test_derived_constants_experiment():
    P = preset("experiment")
    # Omega = 2(bq - dp) = 2(2*1 - 0.3143*2.5)
    assert P.omega_cap == pytest.approx(2 * (2 * 1 - 0.3143 * 2.5))
    assert P.delta == pytest.approx(4 * math.pi)
    assert P.chirp_rate == pytest.approx(7 / 4)


def test_experiment_needs_loose_tolerance():
    assert abs(preset("experiment").det - 1.0) == pytest.approx(1e-4, rel=1e-6)
    assert preset("experiment").tol == EXPERIMENT_TOL
    with pytest.raises(DeterminantViolation) as err:
        SaftParams(7, 2, 0.6, 0.3143, 2.5, 1)
    assert err.value.residual == pytest.approx(1e-4, rel=1e-6)


@pytest.mark.parametrize("name", ["time-shift", "frequency-shift", "time-scale"])
def test_b_zero_presets(name):
    vec = preset_vector(name, (0.5,))
    assert vec[1] == 0.0
    with pytest.raises(ZeroB):
        preset(name, (0.5,))


@pytest.mark.parametrize("name", ["laplace", "bargmann", "gauss-weierstrass"])
def test_complex_presets_rejected(name):
    with pytest.raises(ComplexParameterUnsupported):
        preset(name)


def test_complex_entry_rejected():
    with pytest.raises(ComplexParameterUnsupported):
        SaftParams(1j, 1, 0, 1)


def test_unknown_preset_and_arity():
    with pytest.raises(UnknownPreset):
        preset("hartley")
    with pytest.raises(ValidationError):
        preset("frft", ())


def test_non_finite():
    with pytest.raises(NonFiniteParameter):
        SaftParams(math.nan, 1, 0, 1)


def test_validate_with_explicit_tolerance():
    P = SaftParams(2, 1, 3, 2.0000000002)
    validate(P)
    with pytest.raises(DeterminantViolation):
        validate(P, tol=1e-12)


def test_every_nonzero_b_preset_validates():
    for name in preset_names():
        if name in ("time-shift", "frequency-shift", "time-scale"):
            continue
        args = {"offset-ft": (1, 2), "frft": (0.3,), "offset-frft": (0.3, 1, 2),
                "lct": (2, 1, 3, 2), "fresnel": (0.7,)}.get(name, ())
        validate(preset(name, args))


def test_parsers():
    assert parse_saft("2,1,3,2").as_tuple() == (2, 1, 3, 2, 0, 0)
    assert parse_saft("0,1,-1,0,1.5,2").q == 2
    assert parse_preset("frft:0.5").b == pytest.approx(math.sin(0.5))
    with pytest.raises(ValidationError):
        parse_saft("1,2,3")
    with pytest.raises(ValidationError):
        parse_saft("a,b,c,d")


def test_params_are_frozen():
    P = preset("ft")
    with pytest.raises(AttributeError):
        P.a = 2.0


@given(angles, offsets, offsets)
def test_inverse_is_involution(theta, p, q):
    P = preset("offset-frft", (theta, p, q))
    back = P.inverse().inverse()
    for x, y in zip(back.as_tuple(), P.as_tuple()):
        assert x == pytest.approx(y, abs=1e-12)


@given(angles, offsets, offsets)
def test_inverse_matrix_is_matrix_inverse(theta, p, q):
    P = preset("offset-frft", (theta, p, q))
    a, b, c, d, _, _ = P.as_tuple()
    ai, bi, ci, di, _, _ = P.inverse().as_tuple()
    assert a * ai + b * ci == pytest.approx(1.0)
    assert a * bi + b * di == pytest.approx(0.0, abs=1e-12)
    assert c * ai + d * ci == pytest.approx(0.0, abs=1e-12)


@given(st.floats(min_value=-3, max_value=3).filter(lambda x: abs(x) > 1e-3),
       st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
def test_lct_built_from_b_a_d_is_valid(b, a, d):
    c = (a * d - 1.0) / b
    validate(SaftParams(a, b, c, d, tol=1e-8))
