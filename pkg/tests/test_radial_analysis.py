"""径向判定、剖面提取、E₀ 路径与降维"""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from src.core.fock_space import (
    bargmann_of_expansion,
    default_projection_degree,
    eval_fock_series,
    evaluate_fock_points,
    project_samples,
    sample_callable,
    sample_expansion,
)
from src.core.hermite_core import HermiteExpansion, shell_indices
from src.core.radial_analysis import (
    OrthogonalMatrix,
    RadialProfile,
    default_e0_order,
    eval_F0,
    eval_via_E,
    eval_via_E0,
    extract_profile,
    gaussian_profile,
    givens_rotation,
    profile_growth_margin,
    radial_test,
    random_orthogonal,
    random_radial_profile,
    reduce_dimension,
    rotation_2d,
    synth_gaussian,
    synth_radial,
    unitary_pullback_residual,
)
from src.exceptions import DimensionMismatchError, InvalidArgumentError, NotRadialError

profiles = st.builds(
    lambda dim, K, seed: random_radial_profile(dim, K, np.random.default_rng(seed)),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=2 ** 32 - 1),
)


# ---------------------------------------------------------------- 判定

def test_h2_shell_is_radial(h2_shell):
    report = radial_test(h2_shell, 1e-10)
    assert report.is_radial
    assert report.odd_mass == 0
    assert_allclose(report.profile.c, [0.0, 1 / math.sqrt(2)], atol=1e-15)


def test_odd_index_rejected():
    report = radial_test(HermiteExpansion(2, {(1, 0): 1.0}))
    assert not report.is_radial
    assert report.odd_mass == 1.0
    assert report.profile is None


def test_antishell_rejected(h2_antishell):
    report = radial_test(h2_antishell)
    assert not report.is_radial
    assert report.shell_deviations[1] == pytest.approx(1.0)


def test_constant_is_radial_in_every_dimension():
    for d in (1, 2, 3):
        report = radial_test(HermiteExpansion(d, {(0,) * d: 1.0}))
        assert report.is_radial
        assert report.profile.c == (1 + 0j,)


def test_every_even_1d_function_is_radial():
    f = HermiteExpansion(1, {(0,): 0.3, (2,): -1.0, (4,): 2j})
    assert radial_test(f).is_radial


def test_zero_shell_passes():
    f = HermiteExpansion(2, {(0, 0): 1.0}, degree_bound=4)
    report = radial_test(f)
    assert report.is_radial
    assert report.profile.c == (1 + 0j, 0j, 0j)


def test_tolerance_must_be_positive(h2_shell):
    with pytest.raises(InvalidArgumentError):
        radial_test(h2_shell, 0.0)


def test_tolerance_controls_noise(h2_shell):
    noisy = h2_shell + HermiteExpansion(2, {(2, 0): 1e-6})
    assert not radial_test(noisy, 1e-9).is_radial
    assert radial_test(noisy, 1e-5).is_radial


def test_extract_profile_raises_with_report(h2_antishell):
    with pytest.raises(NotRadialError) as excinfo:
        extract_profile(h2_antishell)
    assert excinfo.value.report.shell_deviations[1] == pytest.approx(1.0)


@given(profiles)
def test_synth_extract_round_trip(profile):
    recovered = extract_profile(synth_radial(profile, profile.dim_of_origin))
    assert_allclose(recovered.c, profile.c, atol=1e-13 * (1 + max(abs(c) for c in profile.c)))


def test_synth_radial_shell_coefficients():
    f = synth_radial(RadialProfile(2, (0.0, 1 / math.sqrt(2))), 2)
    assert f.coefficient((2, 0)) == pytest.approx(1.0)
    assert f.coefficient((0, 2)) == pytest.approx(1.0)


def test_synth_radial_skips_zero_shells():
    f = synth_radial(RadialProfile(3, (1.0, 0.0, 2.0)), 3)
    assert all(sum(alpha) in (0, 4) for alpha in f.terms)
    assert len(f.terms) == 1 + len(shell_indices(3, 2))


# ---------------------------------------------------------------- F₀ 与正交不变性

def test_eval_F0_examples():
    p = RadialProfile(2, (0.0, 1 / math.sqrt(2)))
    assert eval_F0(p, 2.0) == pytest.approx(math.sqrt(2))
    assert eval_F0(RadialProfile(1, (3.0,)), 17.0) == pytest.approx(3.0)
    assert_allclose(eval_F0(p, np.array([0.0, 1.0])), [0.0, 1 / math.sqrt(2)])


@given(profiles, st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_bargmann_factors_through_profile(profile, seed):
    d = profile.dim_of_origin
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1.5, 1.5, (5, d)) + 1j * rng.uniform(-1.5, 1.5, (5, d))
    values = evaluate_fock_points(bargmann_of_expansion(synth_radial(profile, d)), z)
    expected = eval_F0(profile, np.sum(z * z, axis=1))
    assert_allclose(values, expected, rtol=1e-10, atol=1e-10)


def test_orthogonal_matrix_validation():
    with pytest.raises(InvalidArgumentError):
        OrthogonalMatrix(np.array([[1.0, 0.1], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatchError):
        OrthogonalMatrix(np.ones((2, 3)))


def test_random_orthogonal_orientation(rng):
    assert not random_orthogonal(3, rng, proper=True).is_reflection
    assert random_orthogonal(3, rng, proper=False).is_reflection


def test_givens_rotation():
    U = givens_rotation(3, 0, 2, math.pi / 2)
    assert_allclose(U.apply(np.array([[1.0, 0.0, 0.0]], dtype=complex)), [[0.0, 0.0, 1.0]], atol=1e-15)
    with pytest.raises(InvalidArgumentError):
        givens_rotation(3, 1, 1, 0.3)


def test_pullback_radial_is_invariant(h2_shell, rng):
    points = rng.standard_normal((10, 2)) + 1j * rng.standard_normal((10, 2))
    for proper in (True, False):
        U = random_orthogonal(2, rng, proper=proper)
        assert unitary_pullback_residual(h2_shell, U, points) <= 1e-12


def test_pullback_antishell_detected(h2_antishell):
    residual = unitary_pullback_residual(h2_antishell, rotation_2d(math.pi / 4), [(1.0, 0.0)])
    assert residual >= 0.1


def test_pullback_dimension_checks(h2_shell):
    with pytest.raises(DimensionMismatchError):
        unitary_pullback_residual(h2_shell, OrthogonalMatrix(np.eye(3)), [(0.0, 0.0)])
    with pytest.raises(InvalidArgumentError):
        unitary_pullback_residual(h2_shell, rotation_2d(0.1), [])


# ---------------------------------------------------------------- 核 E 与 E₀

def test_default_e0_order():
    assert default_e0_order(0.0, 5.0) == 1
    assert default_e0_order(1.0, 5.0) > default_e0_order(0.1, 5.0)


@pytest.mark.parametrize("r", [0.0, 0.7, 1.4, 2.0])
def test_e0_path_matches_profile(h2_shell, r):
    x = (r / math.sqrt(2), -r / math.sqrt(2))
    assert eval_via_E0(h2_shell, x) == pytest.approx(eval_F0(extract_profile(h2_shell), r * r), abs=1e-10)


def test_e0_path_gaussian_preset():
    f = synth_gaussian(1.0, 1, 20)
    profile = extract_profile(f)
    for r in (0.5, 1.0, 2.0):
        value = eval_via_E0(f, (r,))
        ref = eval_F0(profile, r * r)
        assert abs(value - ref) <= 1e-8 * (1 + abs(ref))


def test_e0_explicit_truncation_rejected(h2_shell):
    with pytest.raises(InvalidArgumentError):
        eval_via_E0(h2_shell, (0.0, 0.0), K=0)
    with pytest.raises(DimensionMismatchError):
        eval_via_E0(h2_shell, (0.0,))


@pytest.mark.parametrize("sign", [1, -1])
def test_e_kernel_matches_bargmann_for_radial(h2_shell, sign):
    x = (0.6, 1.1)
    expected = eval_fock_series(bargmann_of_expansion(h2_shell), x)
    assert eval_via_E(h2_shell, x, sign) == pytest.approx(expected, abs=1e-10)


def test_e_kernel_rejects_bad_sign(h2_shell):
    with pytest.raises(InvalidArgumentError):
        eval_via_E(h2_shell, (0.0, 0.0), sign=0)


# ---------------------------------------------------------------- 降维与合成

def test_reduce_h2_shell(h2_shell):
    reduced = reduce_dimension(h2_shell)
    assert reduced.dim == 1
    assert reduced.coefficient((2,)) == pytest.approx(1.0, abs=1e-12)
    assert reduced.coefficient((0,)) == 0


def test_reduce_constant():
    reduced = reduce_dimension(HermiteExpansion(3, {(0, 0, 0): 2.0}))
    assert reduced == HermiteExpansion(1, {(0,): 2.0})


def test_reduce_rejects_non_radial(h2_antishell):
    with pytest.raises(NotRadialError):
        reduce_dimension(h2_antishell)


@given(profiles, st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_reduction_identity(profile, seed):
    f0 = reduce_dimension(synth_radial(profile, profile.dim_of_origin))
    F0 = bargmann_of_expansion(f0)
    rng = np.random.default_rng(seed)
    for z in rng.uniform(-1.5, 1.5, 4) + 1j * rng.uniform(-1.5, 1.5, 4):
        ref = eval_F0(profile, z * z)
        assert abs(eval_fock_series(F0, (z,)) - ref) <= 1e-10 * (1 + abs(ref))


def test_gaussian_profile_at_half_is_pure_gaussian():
    p = gaussian_profile(0.5, 2, 4)
    assert p.c[0] == pytest.approx(math.pi ** 0.5)
    assert_allclose(p.c[1:], 0.0, atol=1e-15)


def test_gaussian_profile_constants():
    p = gaussian_profile(1.0, 1, 3)
    C = math.pi ** 0.25 * 1.5 ** -0.5
    assert_allclose(p.c, [C * (-1 / 6) ** k for k in range(4)], rtol=1e-14)


def test_gaussian_profile_rejects_bad_parameter():
    with pytest.raises(InvalidArgumentError):
        gaussian_profile(0.0, 1, 3)


def test_synth_gaussian_series_closed_form():
    f = synth_gaussian(1.0, 1, 20)
    F = bargmann_of_expansion(f)
    C = math.pi ** 0.25 * 1.5 ** -0.5
    for z in (0.0, 1.0, 1.5j, 1.2 + 1.2j):
        assert eval_fock_series(F, (z,)) == pytest.approx(C * np.exp(-z * z / 6), rel=1e-12)


def test_profile_growth_margin():
    p = gaussian_profile(1.0, 1, 20)
    w = [3.0, -8.0, 5j, 10 * np.exp(0.3j)]
    assert profile_growth_margin(p, 0.2, abs(p.c[0]) * (1 + 1e-9), w).passed
    assert not profile_growth_margin(p, 0.2, abs(p.c[0]) * 0.5, w).passed
    with pytest.raises(InvalidArgumentError):
        profile_growth_margin(p, 0.2, 1.0, [])


# ---------------------------------------------------------------- 采样输入

def _gaussian(points):
    return np.exp(-np.sum(points * points, axis=1))


@pytest.mark.parametrize("n", [8, 20, 40])
def test_sampled_shell_is_radial_at_full_degree(h2_shell, n):
    projected = project_samples(sample_expansion(h2_shell, n), n - 1)
    report = radial_test(projected, 1e-9)
    assert report.is_radial
    assert report.odd_mass == 0.0
    assert_allclose(report.profile.c[:2], [0.0, 1 / math.sqrt(2)], atol=1e-12)
    assert_allclose(report.profile.c[2:], 0.0, atol=1e-12)


def test_sampled_antishell_stays_non_radial(h2_antishell):
    report = radial_test(project_samples(sample_expansion(h2_antishell, 20), 19), 1e-3)
    assert not report.is_radial
    assert report.shell_deviations[1] == pytest.approx(1.0)


def test_sampled_gaussian_profile():
    samples = sample_callable(_gaussian, 2, 40)
    degree = default_projection_degree(samples.n)
    assert degree == 19
    profile = extract_profile(project_samples(samples, degree), 1e-9)
    assert_allclose(profile.c, gaussian_profile(1.0, 2, 9).c, rtol=1e-8, atol=1e-15)


def test_sampled_gaussian_reduces_to_one_dimensional_gaussian():
    samples = sample_callable(_gaussian, 2, 40)
    reduced = reduce_dimension(project_samples(samples, default_projection_degree(samples.n)), 1e-9)
    reference = synth_gaussian(1.0, 1, 9)
    ratio = math.pi ** 0.25 * 1.5 ** -0.5
    assert reduced.dim == 1
    for alpha, value in reference.terms.items():
        assert reduced.coefficient(alpha) == pytest.approx(ratio * value, rel=1e-8, abs=1e-15)
