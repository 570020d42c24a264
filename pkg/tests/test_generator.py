import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mannheim4.curves import arc_length, reparam_unit_speed, speed
from mannheim4.errors import InvalidDomain, NonPositiveF
from mannheim4.frenet import frenet_samples
from mannheim4.generator import (Abbreviations, GeneratedCurve, GeneratorSpec, abbreviation_jets,
                                 abbreviations, f_of_s, f_statement_form, generated_curvatures,
                                 intermediates, verify_generator_relation)
from mannheim4.jets import Jet
from mannheim4.lorentz import CausalClass, causal_character
from mannheim4.mannheim import estimate_beta

from conftest import rel

CONST = GeneratorSpec("0.3", "0.2", 2.0, (0.0, 1.0))
WAVY = GeneratorSpec("0.4*sin(s)", "0.3*cos(s)", 1.5, (0.0, 1.0))
A_CONST = 1 - 0.09 - 0.04

coeffs = st.floats(-0.45, 0.45)
jet_pairs = st.tuples(st.lists(coeffs, min_size=5, max_size=5),
                      st.lists(coeffs, min_size=5, max_size=5))


def _jets(pair):
    return Jet.from_derivatives(pair[0]), Jet.from_derivatives(pair[1])


def _values(ab):
    return Abbreviations(**{k: float(getattr(ab, k).value) for k in "ABCDEF"})


@pytest.fixture(scope="module")
def wavy_unit():
    return reparam_unit_speed(GeneratedCurve(WAVY))


@pytest.fixture(scope="module")
def const_unit():
    return reparam_unit_speed(GeneratedCurve(CONST))


# -- abbreviations and intermediates ----------------------------------------

def test_abbreviation_examples():
    ab = abbreviations(*CONST.jets(0.4, 2))
    assert ab.A == pytest.approx(0.87, abs=1e-15)
    assert (ab.B, ab.C, ab.D, ab.E, ab.F) == (0, 0, 0, 0, 0)
    ab = abbreviations(*GeneratorSpec("s", "0", 1.0, (0, 0.9)).jets(0.5, 2))
    assert (ab.A, ab.B, ab.C, ab.D, ab.E, ab.F) == (0.75, -0.5, -1.0, 0.0, 0.0, 0.0)


def test_abbreviation_derivative_identities_wavy():
    s = np.random.default_rng(7).uniform(0, 1, 20)
    ab = abbreviation_jets(*WAVY.jets(s, 3))
    assert np.allclose(ab.A.d(1), 2 * ab.B.value, rtol=1e-12, atol=1e-15)
    assert np.allclose(ab.B.d(1), ab.C.value + ab.D.value, rtol=1e-12, atol=1e-15)
    assert np.allclose(ab.C.d(1), 2 * ab.E.value, rtol=1e-12, atol=1e-15)


@settings(max_examples=100)
@given(jet_pairs)
def test_abbreviation_derivative_identities(pair):
    ab = abbreviation_jets(*_jets(pair))
    for lhs, rhs in ((ab.A.d(1), 2 * ab.B.value), (ab.B.d(1), ab.C.value + ab.D.value),
                     (ab.C.d(1), 2 * ab.E.value)):
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


@settings(max_examples=100)
@given(jet_pairs)
def test_p_simplification(pair):
    it = intermediates(_values(abbreviation_jets(*_jets(pair))))
    A = 1 - pair[0][0] ** 2 - pair[1][0] ** 2
    reduced = A * A * it.P_tilde
    assert abs(it.P - reduced) <= 1e-10 * max(1.0, abs(reduced))
    assert it.Q == pytest.approx(A * A * it.Q_tilde, rel=1e-12)
    assert it.R == pytest.approx(A * A * it.R_tilde, rel=1e-12, abs=1e-15)


# -- f ----------------------------------------------------------------------

@pytest.mark.parametrize("g,h", [(0.3, 0.2), (0.0, 0.0), (0.6, -0.7), (0.1, 0.9)])
def test_f_is_one_for_constants(g, h):
    spec = GeneratorSpec(repr(g), repr(h), 1.0, (0, 1))
    assert f_of_s(*spec.jets(0.5, 2)) == pytest.approx(1.0, abs=1e-12)


def test_statement_form_probe():
    g, h = WAVY.jets(0.0, 2)
    proof = f_of_s(g, h)
    probe = f_statement_form(g, h)
    assert proof > 0 and np.isfinite(probe)
    # the two printings are recorded side by side, they are not expected to agree
    print(f"f(0): implemented {proof!r}, alternative printing {probe!r}")


def test_invalid_domain():
    with pytest.raises(InvalidDomain):
        f_of_s(*GeneratorSpec("1.0", "0", 1.0, (0, 1)).jets(0.0, 2))
    with pytest.raises(InvalidDomain) as err:
        GeneratedCurve(GeneratorSpec("s", "0", 1.0, (0, 1.5)))
    assert err.value.s == pytest.approx(1.0, abs=5e-3)
    with pytest.raises(InvalidDomain) as err:
        verify_generator_relation(GeneratorSpec("s", "0", 1.0, (0, 1.5)), 31)
    assert err.value.s == pytest.approx(1.0, abs=0.06)


def test_non_positive_f():
    with pytest.raises(NonPositiveF):
        GeneratedCurve(GeneratorSpec("0.1*sin(5*s)", "0", 1.0, (0, 1)))


def test_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec("0", "0", 0.0, (0, 1))
    with pytest.raises(ValueError):
        GeneratorSpec("0", "0", 1.0, (1, 0))


# -- the constructed curve --------------------------------------------------

def test_constant_curve_closed_form():
    c = GeneratedCurve(CONST)
    expect = 2 * np.array([np.sinh(1), np.cosh(1) - 1, 0.3, 0.2])
    assert np.allclose(c.point(1.0), expect, rtol=1e-10, atol=1e-12)
    s = np.linspace(0, 1, 7)
    assert np.allclose(c.velocity(s), 2 * np.stack([np.cosh(s), np.sinh(s), 0.3 + 0 * s, 0.2 + 0 * s], -1),
                       rtol=1e-14)
    assert arc_length(c, 0, 1) == pytest.approx(2 * np.sqrt(A_CONST), rel=1e-10)


def test_wavy_speed_and_causality():
    c = GeneratedCurve(WAVY)
    s = c.nodes
    g, h = WAVY.jets(s, 2)
    A = 1 - g.value ** 2 - h.value ** 2
    f = np.array([f_of_s(*WAVY.jets(x, 2)) for x in s])
    assert np.allclose(speed(c, s), abs(WAVY.beta) * f * np.sqrt(A), rtol=1e-10)
    assert all(causal_character(v) is CausalClass.TIMELIKE for v in c.velocity(s))


def test_wavy_position_consistent_with_velocity():
    c = GeneratedCurve(WAVY)
    s, h = 0.537, 1e-4
    fd = (c.point(s + h) - c.point(s - h)) / (2 * h)
    assert np.allclose(fd, c.velocity(s), atol=1e-8)
    j = c.jet(s, 4)
    fd4 = (c.jet(s + h, 3).d(3) - c.jet(s - h, 3).d(3)) / (2 * h)
    assert np.allclose(j.d(4), fd4, atol=1e-6)


# -- closed-form curvatures -------------------------------------------------

def test_constant_closed_forms():
    k1, diff, _ = generated_curvatures(CONST, 0.5)
    assert k1 == pytest.approx(1 / (2 * A_CONST), rel=1e-14)
    assert k1 == pytest.approx(0.574713, abs=1e-6)
    assert verify_generator_relation(CONST, 16) < 1e-10


def test_wavy_relation_residual():
    assert verify_generator_relation(WAVY, 32) < 1e-7


def test_k1_matches_frame(const_unit, wavy_unit):
    for spec, u in ((CONST, const_unit), (WAVY, wavy_unit)):
        s = np.linspace(*spec.s_range, 16)
        fs = frenet_samples(u, u.arclength_at(s))
        k1, _, _ = generated_curvatures(spec, s)
        assert rel(fs.k1, k1) < 1e-6


def test_k2_matches_frame(wavy_unit):
    # uncorrected k2 closed form; the frame has the opposite sign of k2^2 - k1^2, so this fails
    s = np.linspace(0, 1, 16)
    fs = frenet_samples(wavy_unit, wavy_unit.arclength_at(s))
    _, _, k2 = generated_curvatures(WAVY, s)
    assert rel(fs.k2, k2) < 1e-6


def test_sign_corrected_k2_matches_frame(const_unit, wavy_unit):
    for spec, u in ((CONST, const_unit), (WAVY, wavy_unit)):
        s = np.linspace(*spec.s_range, 16)
        fs = frenet_samples(u, u.arclength_at(s))
        _, diff, k2 = generated_curvatures(spec, s, corrected=True)
        assert rel(fs.k2, k2) < 1e-6
        assert rel(fs.k2 ** 2 - fs.k1 ** 2, diff) < 1e-6


def test_estimate_beta_recovers_spec_beta(wavy_unit):
    # fails: the constructed curve satisfies the relation with -|beta|
    chk = estimate_beta(wavy_unit, 32)
    assert chk.satisfied
    assert chk.beta == pytest.approx(WAVY.beta, rel=1e-6)


@pytest.mark.parametrize("beta", [1.5, -1.5])
def test_generated_curve_is_mannheim_with_negative_abs_beta(beta):
    spec = GeneratorSpec("0.4*sin(s)", "0.3*cos(s)", beta, (0.0, 1.0))
    chk = estimate_beta(reparam_unit_speed(GeneratedCurve(spec)), 16)
    assert chk.satisfied
    assert chk.beta == pytest.approx(-abs(beta), rel=1e-6)
