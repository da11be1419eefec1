import math
import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))
from rindler.config import R_MAX
from rindler.errors import ValidationError
from rindler.frames import (
    DiracFrame,
    FieldKind,
    ModeParameters,
    PhysicalParams,
    ScalarFrame,
    acceleration_from_dirac_frame,
    acceleration_from_scalar_frame,
    check_alpha,
    dirac_frame_from_acceleration,
    frame_from_acceleration,
    frame_from_parameter,
    scalar_frame_from_acceleration,
)


def test_check_alpha_bounds():
    assert check_alpha(0) == 0.0
    assert check_alpha(1) == 1.0
    for bad in (-1e-9, 1.0 + 1e-9, math.nan):
        with pytest.raises(ValidationError):
            check_alpha(bad)


def test_mode_parameters():
    mode = ModeParameters.from_probability(0.25)
    assert mode.alpha == pytest.approx(0.5)
    assert mode.vacuum_probability + mode.excited_probability == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        ModeParameters.from_probability(1.5)


def test_field_kind_parse():
    assert FieldKind.parse("SCALAR") is FieldKind.SCALAR
    assert FieldKind.parse(FieldKind.DIRAC) is FieldKind.DIRAC
    with pytest.raises(ValidationError):
        FieldKind.parse("photon")


# ═══════════════════════════════════════════════════════════════════════════════
# SCALAR FRAMES
# ═══════════════════════════════════════════════════════════════════════════════

def test_scalar_frame_at_rest():
    frame = ScalarFrame.from_r(0.0)
    assert (frame.t, frame.cosh2, frame.sech2) == (0.0, 1.0, 1.0)
    assert frame.log_t2 == -math.inf


def test_scalar_frame_values_at_one():
    frame = ScalarFrame.from_r(1.0)
    assert frame.t == pytest.approx(0.761594, abs=1e-6)
    assert frame.cosh2 == pytest.approx(2.381098, abs=1e-6)
    assert frame.sech2 == pytest.approx(1 - frame.t ** 2, abs=1e-15)
    assert frame.log_t2 == pytest.approx(2 * math.log(frame.t), abs=1e-14)


@pytest.mark.parametrize("r", [0.3, 1.0, 5.0, 20.0, 120.0, R_MAX])
def test_scalar_frame_stays_consistent_for_large_r(r):
    frame = ScalarFrame.from_r(r)
    assert frame.cosh2 * frame.sech2 == pytest.approx(1.0, abs=1e-10)
    assert frame.sech2 > 0
    assert frame.log_t2 < 0


def test_scalar_frame_from_t():
    frame = ScalarFrame.from_t(0.5)
    assert frame.r == pytest.approx(math.atanh(0.5))
    assert frame.sech2 == pytest.approx(0.75)
    with pytest.raises(ValidationError):
        ScalarFrame.from_t(1.0)


@pytest.mark.parametrize("r", [-0.1, R_MAX + 1, math.inf])
def test_scalar_frame_rejects_out_of_range(r):
    with pytest.raises(ValidationError):
        ScalarFrame.from_r(r)


# ═══════════════════════════════════════════════════════════════════════════════
# DIRAC FRAMES
# ═══════════════════════════════════════════════════════════════════════════════

def test_dirac_frame_values():
    frame = DiracFrame.from_theta(math.pi / 6)
    assert frame.cos2 == pytest.approx(0.75)
    assert frame.sin2 == pytest.approx(0.25)
    assert frame.cos == pytest.approx(math.sqrt(3) / 2)


@pytest.mark.parametrize("theta", [-0.1, math.pi / 4, 1.0])
def test_dirac_frame_rejects_out_of_range(theta):
    with pytest.raises(ValidationError):
        DiracFrame.from_theta(theta)


# ═══════════════════════════════════════════════════════════════════════════════
# ACCELERATION CONVERSIONS
# ═══════════════════════════════════════════════════════════════════════════════

def test_physical_params_validation():
    with pytest.raises(ValidationError):
        PhysicalParams(-1.0)
    with pytest.raises(ValidationError):
        PhysicalParams(1.0, k_abs=0.0)
    with pytest.raises(ValidationError):
        PhysicalParams(math.inf)


def test_zero_acceleration_is_inertial():
    params = PhysicalParams(0.0)
    assert scalar_frame_from_acceleration(params).r == 0.0
    assert dirac_frame_from_acceleration(params).theta == 0.0


def test_acceleration_pi_in_natural_units():
    params = PhysicalParams(math.pi)
    scalar = scalar_frame_from_acceleration(params)
    assert scalar.r == pytest.approx(math.atanh(math.exp(-1)), abs=1e-12)
    assert scalar.r == pytest.approx(0.38601, abs=1e-4)
    dirac = dirac_frame_from_acceleration(params)
    assert dirac.theta == pytest.approx(math.atan(math.exp(-1)), abs=1e-12)
    assert dirac.cos2 == pytest.approx(1 / (1 + math.exp(-2)), abs=1e-15)


def test_parameters_grow_with_acceleration():
    accelerations = [0.1, 1.0, 10.0, 100.0]
    rs = [scalar_frame_from_acceleration(PhysicalParams(a)).r for a in accelerations]
    thetas = [dirac_frame_from_acceleration(PhysicalParams(a)).theta for a in accelerations]
    assert rs == sorted(rs)
    assert thetas == sorted(thetas)
    assert thetas[-1] < math.pi / 4


@pytest.mark.parametrize("r", [0.05, 0.5, 1.0, 3.0, 6.0])
def test_scalar_acceleration_round_trip(r):
    params = PhysicalParams(1.0, k_abs=3.0, light_speed=0.5)
    frame = ScalarFrame.from_r(r)
    a = acceleration_from_scalar_frame(frame, params)
    back = scalar_frame_from_acceleration(PhysicalParams(a, k_abs=3.0, light_speed=0.5))
    assert back.r == pytest.approx(r, rel=1e-9)


@pytest.mark.parametrize("acceleration", [0.5, 2.0, 40.0])
def test_dirac_acceleration_round_trip(acceleration):
    params = PhysicalParams(acceleration, omega=2.0)
    frame = dirac_frame_from_acceleration(params)
    assert acceleration_from_dirac_frame(frame, params) == pytest.approx(acceleration, rel=1e-9)


def test_extreme_dirac_acceleration_needs_the_limit():
    with pytest.raises(ValidationError):
        dirac_frame_from_acceleration(PhysicalParams(1e20))


def test_frame_dispatch():
    assert isinstance(frame_from_parameter(1.0, "scalar"), ScalarFrame)
    assert isinstance(frame_from_parameter(0.5, FieldKind.DIRAC), DiracFrame)
    assert isinstance(frame_from_acceleration(PhysicalParams(1.0), "dirac"), DiracFrame)
    with pytest.raises(ValidationError):
        frame_from_parameter(math.nan, "scalar")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
