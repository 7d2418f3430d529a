"""高斯窗 STFT 与 Bargmann 桥接恒等式"""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.core.fock_space import bargmann_of_expansion, sample_expansion
from src.core.hermite_core import HermiteExpansion, random_expansion
from src.core.stft_bridge import (
    PhasePoint,
    bridge_residual,
    default_stft_order,
    dilate,
    gaussian_window,
    inverse_bridge_residual,
    phase_grid,
    stft_from_bargmann,
    stft_gaussian,
    undilate,
    uv_apply,
)
from src.exceptions import DimensionMismatchError, InvalidArgumentError


def _stft_h0_closed_form(x: np.ndarray, xi: np.ndarray) -> complex:
    # V_φ φ(x,ξ) = (2π)^{-d/2} e^{-(|x|²+|ξ|²)/4} e^{-i⟨x,ξ⟩/2}
    d = len(x)
    return (2 * math.pi) ** (-d / 2) * np.exp(-0.25 * (x @ x + xi @ xi) - 0.5j * (x @ xi))


def test_phase_point_validation():
    p = PhasePoint((1, 2), (3, 4))
    assert p.dim == 2
    assert p.as_complex() == (1 + 3j, 2 + 4j)
    with pytest.raises(DimensionMismatchError):
        PhasePoint((1.0,), (1.0, 2.0))


def test_gaussian_window_is_h0():
    assert gaussian_window(2) == HermiteExpansion(2, {(0, 0): 1.0})
    with pytest.raises(InvalidArgumentError):
        gaussian_window(0)


def test_default_stft_order():
    assert default_stft_order(3) == 32
    assert default_stft_order(20) == 48


def test_stft_at_origin_of_window():
    p = PhasePoint((0.0,), (0.0,))
    assert stft_gaussian(gaussian_window(1), p) == pytest.approx(1 / math.sqrt(2 * math.pi))


@pytest.mark.parametrize("x, xi", [((0.5,), (-1.0,)), ((1.2, -0.3), (0.4, 1.1)), ((-1.5,), (1.5,))])
def test_stft_of_window_closed_form(x, xi):
    d = len(x)
    value = stft_gaussian(gaussian_window(d), PhasePoint(x, xi))
    expected = _stft_h0_closed_form(np.asarray(x), np.asarray(xi))
    assert value == pytest.approx(expected, abs=1e-14)


def test_stft_sampled_matches_expansion(rng):
    f = random_expansion(1, 4, rng)
    samples = sample_expansion(f, 48)
    for x, xi in rng.uniform(-1.0, 1.0, (5, 2)):
        p = PhasePoint((x,), (xi,))
        assert stft_gaussian(samples, p) == pytest.approx(stft_gaussian(f, p), abs=1e-10)


def test_stft_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        stft_gaussian(gaussian_window(2), PhasePoint((0.0,), (0.0,)))


def test_dilation_inverse():
    def F(x, xi):
        return complex(np.sum(x) + 2j * np.sum(xi))

    x = np.array([0.3, -1.2])
    xi = np.array([1.0, 0.5])
    assert undilate(dilate(F))(x, xi) == pytest.approx(F(x, xi))
    assert undilate(F)(x, xi) == pytest.approx(F(math.sqrt(2) * x, -math.sqrt(2) * xi))


def test_uv_apply_of_window_stft_is_one():
    # 𝔙h_0 ≡ 1
    def stft(x, xi):
        return stft_gaussian(gaussian_window(1), PhasePoint(tuple(x), tuple(xi)))

    for p in phase_grid(1, -1.0, 1.0, 3):
        assert uv_apply(stft, p) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("dim, degree", [(1, 6), (2, 3), (2, 6)])
def test_bridge_residual_small(rng, dim, degree):
    f = random_expansion(dim, degree, rng)
    assert bridge_residual(f, phase_grid(dim, -1.5, 1.5, 5 if dim == 1 else 3)) <= 1e-8


@pytest.mark.parametrize("dim, degree", [(1, 6), (2, 4)])
def test_inverse_bridge_residual_small(rng, dim, degree):
    f = random_expansion(dim, degree, rng)
    assert inverse_bridge_residual(f, phase_grid(dim, -1.5, 1.5, 3)) <= 1e-8


def test_stft_from_bargmann_matches_direct(rng):
    f = random_expansion(1, 5, rng)
    F = bargmann_of_expansion(f)
    p = PhasePoint((0.8,), (-1.1,))
    assert stft_from_bargmann(F, p) == pytest.approx(stft_gaussian(f, p), abs=1e-12)


def test_bridge_residual_rejects_empty():
    with pytest.raises(InvalidArgumentError):
        bridge_residual(gaussian_window(1), [])


def test_phase_grid_size():
    grid = phase_grid(2, -1.0, 1.0, 3)
    assert len(grid) == 81
    assert_allclose(grid[0].x, [-1.0, -1.0])
