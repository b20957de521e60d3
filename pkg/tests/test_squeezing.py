import math

import numpy as np
import pytest

from biphoton.errors import InvalidArgumentError, TruncationError
from biphoton.squeezing import (
    SqueezingSpec,
    lossy_density_diagonal,
    mean_photon_number,
    trigger_probability,
)


def single_mode(xi, eta=1.0):
    return SqueezingSpec(
        global_xi=xi, schmidt_coefficients=np.array([1.0]), transmissions=np.array([eta])
    )


def test_single_mode_lossless_mean_photon_number():
    for xi in (0.05, 0.3, 1.2):
        assert mean_photon_number(single_mode(xi)) == pytest.approx(np.sinh(xi) ** 2, abs=1e-12)


def test_single_mode_lossless_trigger_probability():
    for xi in (0.05, 0.3, 1.2):
        expected = 1.0 - 1.0 / np.cosh(xi)
        assert trigger_probability(single_mode(xi)) == pytest.approx(expected, abs=1e-12)


def test_zero_transmission_detects_nothing():
    spec = single_mode(0.5, eta=0.0)
    assert mean_photon_number(spec) == 0.0
    assert trigger_probability(spec) == pytest.approx(0.0, abs=1e-15)


def test_mode_xi_scaling():
    r = np.array([0.5, 0.3, 0.2])
    spec = SqueezingSpec(global_xi=0.4, schmidt_coefficients=r)
    np.testing.assert_allclose(spec.mode_xi, 0.4 * np.sqrt(r), rtol=1e-15)


def test_multimode_energy_splits_across_modes():
    r = np.array([0.6, 0.4])
    spec = SqueezingSpec(global_xi=0.3, schmidt_coefficients=r)
    expected = sum(np.sinh(0.3 * np.sqrt(rk)) ** 2 for rk in r)
    assert mean_photon_number(spec) == pytest.approx(expected, abs=1e-12)


def test_trigger_probability_bounded_and_monotone():
    r = np.full(8, 1 / 8)
    last = 0.0
    for xi in (0.1, 0.4, 0.8, 1.5):
        p = trigger_probability(SqueezingSpec(global_xi=xi, schmidt_coefficients=r))
        assert 0.0 <= p <= 1.0
        assert p > last
        last = p


def test_lossy_diagonal_normalized():
    for xi, eta in ((0.3, 1.0), (0.5, 0.7), (1.0, 0.3)):
        p = lossy_density_diagonal(xi, eta)
        assert np.all(p >= -1e-15)
        assert np.sum(p) == pytest.approx(1.0, abs=1e-9)


def test_lossless_diagonal_matches_squeezed_vacuum():
    xi = 0.6
    p = lossy_density_diagonal(xi, 1.0)
    # odd photon numbers never occur without loss
    assert np.all(p[1::2] == 0.0)
    t = np.tanh(xi)
    for n in range(5):
        expected = (
            math.factorial(2 * n)
            / (2**n * math.factorial(n)) ** 2
            * t ** (2 * n)
            / np.cosh(xi)
        )
        assert p[2 * n] == pytest.approx(expected, rel=1e-10)


def test_lossy_diagonal_mean_photon_number():
    xi, eta = 0.8, 0.6
    p = lossy_density_diagonal(xi, eta)
    mean = np.sum(np.arange(p.size) * p)
    assert mean == pytest.approx(eta**2 * np.sinh(xi) ** 2, rel=1e-8)


def test_truncation_error_reports_suggestion():
    with pytest.raises(TruncationError):
        lossy_density_diagonal(2.5, 0.9, max_n=2, auto_extend=False)


def test_spec_validation():
    with pytest.raises(InvalidArgumentError):
        SqueezingSpec(global_xi=-0.1, schmidt_coefficients=np.array([1.0]))
    with pytest.raises(InvalidArgumentError):
        SqueezingSpec(global_xi=0.1, schmidt_coefficients=np.array([-0.5]))
    with pytest.raises(InvalidArgumentError):
        SqueezingSpec(
            global_xi=0.1,
            schmidt_coefficients=np.array([1.0]),
            transmissions=np.array([1.5]),
        )
