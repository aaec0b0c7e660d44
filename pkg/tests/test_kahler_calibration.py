import math
from fractions import Fraction

import numpy as np
import pytest

from crchern.kahler import (
    CalibrationError,
    KahlerProductPatch,
    calibrate_space_form,
    curvature_at,
    hsc_for_einstein_constant,
    metric_at,
)
from crchern.kahler.spaceform import CALIBRATION_ABORT, _hsc_at_origin_exact


@pytest.mark.parametrize("hsc", [1, -1, 2, Fraction(-3, 2), Fraction(1, 4)])
def test_calibration_residual_below_gate(hsc):
    for dim in (1, 2):
        factor = calibrate_space_form(dim, hsc)
        assert factor.calibration_residual <= float(CALIBRATION_ABORT)
        assert factor.hsc == Fraction(hsc)


def test_metric_is_identity_at_origin():
    factor = calibrate_space_form(2, -1)
    g = factor.metric(np.zeros(2, dtype=complex))
    assert np.allclose(g, np.eye(2))


def test_negative_curvature_patch_radius():
    factor = calibrate_space_form(1, -2)
    # ball of the model radius sqrt(b / |c|)
    assert factor.patch_radius == pytest.approx(
        math.sqrt(float(factor.potential_b) / 2)
    )
    assert calibrate_space_form(1, 1).patch_radius == math.inf


def test_opposite_curvatures_negate_at_origin():
    plus = calibrate_space_form(1, 2)
    minus = calibrate_space_form(1, -2)
    z = np.zeros(1, dtype=complex)
    r_plus = curvature_at(KahlerProductPatch((plus,)), z)[0]
    r_minus = curvature_at(KahlerProductPatch((minus,)), z)[0]
    assert np.max(np.abs(r_plus + r_minus)) < 1e-7


def test_flat_limit():
    # R(0) -> 0 as the curvature parameter shrinks
    previous = None
    for c in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10**4)):
        factor = calibrate_space_form(1, c)
        z = np.zeros(1, dtype=complex)
        r = curvature_at(KahlerProductPatch((factor,)), z)[0]
        size = float(np.max(np.abs(r)))
        if previous is not None:
            assert size < previous / 5
        previous = size
    assert previous < 1e-3


def test_exact_origin_oracle_matches_request():
    value = _hsc_at_origin_exact(Fraction(2), Fraction(1))
    assert abs(value - 1) < Fraction(1, 10**12)
    value = _hsc_at_origin_exact(Fraction(2), Fraction(-3, 2))
    assert abs(value - Fraction(-3, 2)) < Fraction(1, 10**12)


def test_gaussian_curvature_oracle_dimension_one():
    """FD Gaussian curvature of the conformal factor equals hsc at 0.

    For a one-dimensional factor the metric is conformal, g = lam |dz|^2
    (up to the real normalization), and K = -(1/lam) dd- log lam.  This
    recomputes the sectional curvature through logarithms, a path the
    pipeline never takes.
    """
    for hsc in (1, -1, Fraction(5, 2)):
        factor = calibrate_space_form(1, hsc)
        h = 1e-4

        def lam(x, y):
            return float(factor.metric(np.array([x + 1j * y]))[0, 0].real)

        dd_log = (
            math.log(lam(h, 0))
            + math.log(lam(-h, 0))
            + math.log(lam(0, h))
            + math.log(lam(0, -h))
            - 4 * math.log(lam(0, 0))
        ) / (4 * h * h)  # quarter of the real Laplacian = dd- at a point
        K = -dd_log / lam(0, 0)
        assert K == pytest.approx(float(hsc), abs=1e-5)


def test_einstein_constant_conversion():
    hsc = hsc_for_einstein_constant(1, -1)
    assert hsc == pytest.approx(-1.0, abs=1e-6)
    factor = calibrate_space_form(1, Fraction(hsc).limit_denominator(10**6))
    patch = KahlerProductPatch((factor,))
    z = np.zeros(1, dtype=complex)
    _, ric, _ = curvature_at(patch, z)
    g = metric_at(patch, z)
    assert np.max(np.abs(ric + g)) < 1e-6  # Ric = -g


def test_einstein_conversion_scales_with_dimension():
    # dim 2 space forms satisfy Ric = (3/2) hsc g
    hsc = hsc_for_einstein_constant(2, 3)
    assert hsc == pytest.approx(2.0, abs=1e-6)


def test_zero_curvature_rejected():
    with pytest.raises(CalibrationError):
        calibrate_space_form(1, 0)


def test_convention_mismatch_aborts(monkeypatch):
    # flip the sign of the curvature parameter inside the metric the
    # calibration oracle sees: no positive constant can then match, and
    # the abort path must fire rather than return a wrong factor
    from crchern.kahler import spaceform

    original = spaceform._g11_exact

    def flipped(a, b, c, x, y):
        return original(a, b, -c, x, y)

    monkeypatch.setattr(spaceform, "_g11_exact", flipped)
    with pytest.raises(CalibrationError):
        calibrate_space_form(1, 1)
