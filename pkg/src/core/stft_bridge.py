# src/core/stft_bridge.py
"""高斯窗短时傅里叶变换及其与 Bargmann 变换的桥接恒等式

V_φf(x,ξ) = (2π)^{-d/2} ∫ f(y) φ(y−x) e^{-i⟨y,ξ⟩} dy，φ = π^{-d/4}e^{-|y|²/2} = h_0⊗…⊗h_0。
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray

from src.core.fock_space import (
    FockSeries,
    SampledFunction,
    bargmann_of_expansion,
    eval_fock_series,
)
from src.core.hermite_core import HermiteExpansion, gauss_hermite, hermite_table
from src.exceptions import DimensionMismatchError, InvalidArgumentError

SQRT2 = math.sqrt(2.0)

PhaseFunction = Callable[[NDArray[np.float64], NDArray[np.float64]], complex]


@dataclass(frozen=True)
class PhasePoint:
    """相空间点 (x, ξ) ∈ ℝᵈ×ℝᵈ"""
    x: tuple[float, ...]
    xi: tuple[float, ...]

    def __post_init__(self):
        x = tuple(float(v) for v in np.asarray(self.x, dtype=float).reshape(-1))
        xi = tuple(float(v) for v in np.asarray(self.xi, dtype=float).reshape(-1))
        if len(x) != len(xi) or not x:
            raise DimensionMismatchError(f"x 与 ξ 的长度不一致: {len(x)} 与 {len(xi)}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xi", xi)

    @property
    def dim(self) -> int:
        return len(self.x)

    def as_complex(self) -> tuple[complex, ...]:
        """z = x + iξ"""
        return tuple(complex(a, b) for a, b in zip(self.x, self.xi))


def gaussian_window(d: int) -> HermiteExpansion:
    """φ = h_0 的 d 次张量积"""
    if d < 1:
        raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {d}")
    return HermiteExpansion(d, {(0,) * d: 1.0})


def default_stft_order(degree: int) -> int:
    return max(32, 2 * degree + 8)


def _stft_expansion(f: HermiteExpansion, p: PhasePoint, n: int) -> complex:
    # 配方：−|y|²/2 − |y−x|²/2 = −|u|² − |x|²/4，y = u + x/2
    rule = gauss_hermite(n)
    x = np.asarray(p.x)
    xi = np.asarray(p.xi)
    if not f.terms:
        return 0j
    factors = np.ones(len(f.terms), dtype=complex)
    for j in range(f.dim):
        table = hermite_table(f.degree_bound, rule.nodes + 0.5 * x[j], gaussian=False)
        axis_values = table @ (rule.weights * np.exp(-1j * rule.nodes * xi[j]))
        factors *= axis_values[f.alpha_array[:, j]]
    total = np.sum(f.coefficient_array * factors)
    prefactor = (
        (2.0 * math.pi) ** (-f.dim / 2)
        * math.pi ** (-f.dim / 4)
        * np.exp(-0.25 * np.dot(x, x) - 0.5j * np.dot(x, xi))
    )
    return complex(prefactor * total)


def _stft_samples(f: SampledFunction, p: PhasePoint) -> complex:
    # f·φ(·−x)·e^{-i⟨y,ξ⟩} = π^{-d/4} g(y) e^{⟨x,y⟩ − |x|²/2 − i⟨y,ξ⟩} e^{-|y|²}
    rule = f.rule
    result = f.values
    for j in range(f.dim):
        exponent = p.x[j] * rule.nodes - 0.5 * p.x[j] ** 2 - 1j * p.xi[j] * rule.nodes
        result = np.tensordot(rule.weights * np.exp(exponent), result, axes=([0], [0]))
    return complex((2.0 * math.pi) ** (-f.dim / 2) * math.pi ** (-f.dim / 4) * result)


def stft_gaussian(f: Union[HermiteExpansion, SampledFunction], p: PhasePoint,
                  n: Optional[int] = None) -> complex:
    """高斯窗 STFT 的求积计算

    展开输入时把两个高斯配方后并入 Gauss–Hermite 权，节点平移到 x/2，
    多项式部分保持精确；采样输入只能用原网格。

    Args:
        f: Hermite 展开或采样函数
        p: 相空间点
        n: 展开输入的求积阶数，缺省 max(32, 2N+8)

    Returns:
        complex: V_φf(x, ξ)
    """
    if p.dim != f.dim:
        raise DimensionMismatchError(f"相空间点维度 {p.dim} 与函数维度 {f.dim} 不一致")
    if isinstance(f, SampledFunction):
        return _stft_samples(f, p)
    return _stft_expansion(f, p, n or default_stft_order(f.degree_bound))


def dilate(F: PhaseFunction) -> PhaseFunction:
    """S：(SF)(x,ξ) = F(2^{-1/2}x, −2^{-1/2}ξ)"""
    def dilated(x: NDArray[np.float64], xi: NDArray[np.float64]) -> complex:
        return F(np.asarray(x) / SQRT2, -np.asarray(xi) / SQRT2)
    return dilated


def undilate(F: PhaseFunction) -> PhaseFunction:
    """S^{-1}：(S^{-1}F)(x,ξ) = F(√2x, −√2ξ)"""
    def undilated(x: NDArray[np.float64], xi: NDArray[np.float64]) -> complex:
        return F(SQRT2 * np.asarray(x), -SQRT2 * np.asarray(xi))
    return undilated


def uv_apply(F: PhaseFunction, p: PhasePoint) -> complex:
    """(U_𝔙F)(x,ξ) = (2π)^{d/2} e^{(|x|²+|ξ|²)/2} e^{-i⟨x,ξ⟩} F(√2x, −√2ξ)"""
    x = np.asarray(p.x)
    xi = np.asarray(p.xi)
    weight = (2.0 * math.pi) ** (p.dim / 2) * np.exp(0.5 * (np.dot(x, x) + np.dot(xi, xi)) - 1j * np.dot(x, xi))
    return complex(weight * undilate(F)(x, xi))


def stft_from_bargmann(F: FockSeries, p: PhasePoint) -> complex:
    """逆向桥接：V_φf(x,ξ) = (2π)^{-d/2} e^{-(|x|²+|ξ|²)/4} e^{-i⟨x,ξ⟩/2} (𝔙f)(2^{-1/2}x − i2^{-1/2}ξ)"""
    if p.dim != F.dim:
        raise DimensionMismatchError(f"相空间点维度 {p.dim} 与级数维度 {F.dim} 不一致")
    x = np.asarray(p.x)
    xi = np.asarray(p.xi)
    z = (x - 1j * xi) / SQRT2
    weight = (2.0 * math.pi) ** (-p.dim / 2) * np.exp(-0.25 * (np.dot(x, x) + np.dot(xi, xi)) - 0.5j * np.dot(x, xi))
    return complex(weight * eval_fock_series(F, z))


def _require_points(points: Sequence[PhasePoint]):
    if len(points) == 0:
        raise InvalidArgumentError("相空间点集为空")


def bridge_residual(f: HermiteExpansion, points: Sequence[PhasePoint], n: Optional[int] = None) -> float:
    """max_p |(𝔙f)(x+iξ) − U_𝔙(V_φf)(x,ξ)| / (1 + |(𝔙f)(x+iξ)|)"""
    _require_points(points)
    F = bargmann_of_expansion(f)

    def stft_at(x: NDArray[np.float64], xi: NDArray[np.float64]) -> complex:
        return stft_gaussian(f, PhasePoint(tuple(x), tuple(xi)), n)

    worst = 0.0
    for p in points:
        lhs = eval_fock_series(F, p.as_complex())
        rhs = uv_apply(stft_at, p)
        worst = max(worst, abs(lhs - rhs) / (1.0 + abs(lhs)))
    return worst


def inverse_bridge_residual(f: HermiteExpansion, points: Sequence[PhasePoint], n: Optional[int] = None) -> float:
    """max_p |stft_from_bargmann(𝔙f, p) − V_φf(p)| / (1 + |V_φf(p)|)"""
    _require_points(points)
    F = bargmann_of_expansion(f)
    worst = 0.0
    for p in points:
        direct = stft_gaussian(f, p, n)
        bridged = stft_from_bargmann(F, p)
        worst = max(worst, abs(bridged - direct) / (1.0 + abs(direct)))
    return worst


def phase_grid(dim: int, lower: float, upper: float, count: int) -> list[PhasePoint]:
    """x 与 ξ 的每个分量都取 count 个等距点的全网格"""
    axis = np.linspace(lower, upper, count)
    points = []
    for combo in itertools.product(axis, repeat=2 * dim):
        points.append(PhasePoint(tuple(combo[:dim]), tuple(combo[dim:])))
    return points
