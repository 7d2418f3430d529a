# src/core/fock_space.py
"""Bargmann 变换与 Fock 空间 A²(Cᵈ)

两条求值路径：系数级 h_α ↦ H_α = z^α/√(α!)，以及核积分 ∫𝔄_d(z,y)f(y)dy
（张量 Gauss–Hermite 求积）。⟨z,w⟩ 全程为双线性形式 Σ z_j w_j，不取共轭。
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln, roots_laguerre

from src.core.hermite_core import (
    CoefficientSeries,
    HermiteExpansion,
    QuadratureRule,
    gauss_hermite,
    hermite_table,
    tensor_grid,
)
from src.exceptions import DimensionMismatchError, InvalidArgumentError

SQRT2 = math.sqrt(2.0)
QUADRATURE_CHUNK = 8192

ComplexPoint = tuple[complex, ...]


def as_complex_points(z: ArrayLike, dim: Optional[int] = None) -> NDArray[np.complex128]:
    """把单点或点集规整为 (m, d) 复数组并检查维度"""
    points = np.atleast_2d(np.asarray(z, dtype=complex))
    if dim is not None and points.shape[1] != dim:
        raise DimensionMismatchError(f"点的维度 {points.shape[1]} 与期望维度 {dim} 不一致")
    return points


def bilinear(z: ArrayLike, w: ArrayLike) -> complex:
    """⟨z,w⟩ = Σ z_j w_j（不共轭）"""
    a = np.asarray(z, dtype=complex).reshape(-1)
    b = np.asarray(w, dtype=complex).reshape(-1)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"维度不一致: {a.shape[0]} 与 {b.shape[0]}")
    return complex(np.sum(a * b))


class FockSeries(CoefficientSeries):
    """F(z) = Σ a_α z^α/√(α!)，∥F∥²_{A²} = Σ |a_α|²"""

    @cached_property
    def normalization(self) -> NDArray[np.float64]:
        """1/√(α!)，经 log-gamma 计算"""
        if not self.terms:
            return np.zeros(0)
        return np.exp(-0.5 * np.sum(gammaln(self.alpha_array + 1.0), axis=1))

    def __call__(self, z: ArrayLike) -> complex | NDArray[np.complex128]:
        points = as_complex_points(z, self.dim)
        values = evaluate_fock_points(self, points)
        if np.ndim(z) <= 1:
            return complex(values[0])
        return values


def power_table(points: NDArray[np.complex128], max_power: int) -> NDArray[np.complex128]:
    """z_j^k（k ≤ max_power），逐次连乘得到，形状 (m, d, max_power+1)"""
    table = np.empty(points.shape + (max_power + 1,), dtype=complex)
    table[..., 0] = 1.0
    for k in range(1, max_power + 1):
        table[..., k] = table[..., k - 1] * points
    return table


def evaluate_fock_points(F: FockSeries, points: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """在 (m, d) 点集上逐点求 F(z)，求和按分次字典序"""
    if not F.terms:
        return np.zeros(points.shape[0], dtype=complex)
    powers = power_table(points, F.degree_bound)
    monomials = np.ones((points.shape[0], len(F.terms)), dtype=complex)
    for j in range(F.dim):
        monomials *= powers[:, j, F.alpha_array[:, j]]
    return np.sum(monomials * (F.coefficient_array * F.normalization), axis=1)


def bargmann_of_expansion(f: HermiteExpansion) -> FockSeries:
    """𝔙f：系数原样搬到 Fock 一侧（h_α ↦ H_α）"""
    return FockSeries(f.dim, dict(f.terms), f.degree_bound)


def inverse_bargmann(F: FockSeries) -> HermiteExpansion:
    """系数级的逆变换，与 bargmann_of_expansion 互逆"""
    return HermiteExpansion(F.dim, dict(F.terms), F.degree_bound)


def eval_fock_series(F: FockSeries, z: ArrayLike) -> complex:
    """F(z) = Σ a_α z^α/√(α!)"""
    points = as_complex_points(z, F.dim)
    if points.shape[0] != 1:
        raise InvalidArgumentError("eval_fock_series 只接受单个点，批量请用 evaluate_fock_points")
    return complex(evaluate_fock_points(F, points)[0])


def bargmann_kernel(z: ArrayLike, y: ArrayLike) -> complex:
    """𝔄_d(z,y) = π^{-d/4} exp(−½(⟨z,z⟩+|y|²) + √2⟨z,y⟩)"""
    zz = np.asarray(z, dtype=complex).reshape(-1)
    yy = np.asarray(y, dtype=float).reshape(-1)
    if zz.shape != yy.shape:
        raise DimensionMismatchError(f"维度不一致: z 为 {zz.shape[0]}，y 为 {yy.shape[0]}")
    d = zz.shape[0]
    exponent = -0.5 * (np.sum(zz * zz) + np.sum(yy * yy)) + SQRT2 * np.sum(zz * yy)
    return complex(math.pi ** (-d / 4) * np.exp(exponent))


# ---------------------------------------------------------------- 采样函数

@dataclass(frozen=True, eq=False)
class SampledFunction:
    """张量 Gauss–Hermite 网格上的采样

    values 存的是 g(y) = f(y)·e^{|y|²/2}（高斯因子已提出），
    形状 (n,)*d，行主序，与求积权 e^{-|y|²} 相配。
    """
    dim: int
    rule: QuadratureRule
    values: NDArray[np.complex128]

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {self.dim}")
        values = np.array(self.values, dtype=complex)
        expected = (self.rule.n,) * self.dim
        if values.size != self.rule.n ** self.dim:
            raise DimensionMismatchError(f"采样数 {values.size} 与网格 {expected} 不一致")
        values = values.reshape(expected)
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("采样值中含有非有限数")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.rule.n

    def grid_points(self) -> NDArray[np.float64]:
        """(n^d, d) 网格点，行主序"""
        return tensor_grid(self.rule, self.dim)[0]

    def function_values(self) -> NDArray[np.complex128]:
        """还原 f(y) = g(y)·e^{-|y|²/2}，行主序展平"""
        points = self.grid_points()
        return self.values.reshape(-1) * np.exp(-0.5 * np.sum(points * points, axis=1))


def sample_expansion(f: HermiteExpansion, n: int) -> SampledFunction:
    """把 Hermite 展开采样到 n 点张量网格上（直接求多项式部分 p̃_α，不经过 e^{±|y|²/2}）"""
    rule = gauss_hermite(n)
    points, _ = tensor_grid(rule, f.dim)
    return SampledFunction(f.dim, rule, f.evaluate(points, gaussian=False))


def sample_callable(func: Callable[[NDArray[np.float64]], ArrayLike], dim: int, n: int) -> SampledFunction:
    """对任意向量化函数 f((m, d) 点集) 采样并乘上 e^{|y|²/2}"""
    rule = gauss_hermite(n)
    points, _ = tensor_grid(rule, dim)
    raw = np.asarray(func(points), dtype=complex).reshape(-1)
    if not np.all(np.isfinite(raw)):
        raise InvalidArgumentError("函数在网格上给出非有限值")
    with np.errstate(over="ignore"):
        values = raw * np.exp(0.5 * np.sum(points * points, axis=1))
    return SampledFunction(dim, rule, values)


def default_projection_degree(n: int) -> int:
    """采样投影的缺省次数；n 点规则对非多项式 g 只在约 n/2 次以内仍准确"""
    return max(0, (n - 1) // 2)


def project_samples(f: SampledFunction, max_degree: int, drop_below: float = 1e-12) -> HermiteExpansion:
    """由采样求 Hermite 系数 a_α = (f, h_α) ≈ Σ W_i g(y_i) p̃_α(y_i)

    各轴分离：先对每轴算 Σ_k w_k p̃_m(y_k) 的矩阵，再做张量收缩。
    |a_α| ≤ drop_below·max|a| 的系数视为求积舍入误差并丢弃。
    """
    rule = f.rule
    table = hermite_table(max_degree, rule.nodes, gaussian=False) * rule.weights
    coefficients = f.values
    for _ in range(f.dim):
        # 每次收缩第 0 轴并把新轴放到最后，d 次后轴序复原为 (m_1, …, m_d)
        coefficients = np.tensordot(coefficients, table, axes=([0], [1]))
    kept = np.indices(coefficients.shape).sum(axis=0) <= max_degree
    largest = float(np.max(np.abs(coefficients[kept]), initial=0.0))
    cutoff = drop_below * largest
    terms = {}
    for alpha in zip(*np.nonzero(kept)):
        if abs(coefficients[alpha]) > cutoff:
            terms[tuple(int(a) for a in alpha)] = complex(coefficients[alpha])
    return HermiteExpansion(f.dim, terms, max_degree)


def default_kernel_order(degree: int) -> int:
    """核积分路径的缺省求积阶数；指数因子 e^{√2 z_j y} 需要在多项式次数之外留出余量"""
    return max(32, degree + 24)


def bargmann_of_samples(f: SampledFunction, z: ArrayLike) -> complex:
    """核积分形式的 𝔙f(z)

    𝔄_d(z,y)f(y) = π^{-d/4} e^{-⟨z,z⟩/2} e^{√2⟨z,y⟩} g(y) e^{-|y|²}，
    每轴的 e^{√2 z_j y} 与权重组成向量，对 g 做 d 次张量收缩。
    """
    point = as_complex_points(z, f.dim)
    if point.shape[0] != 1:
        raise InvalidArgumentError("bargmann_of_samples 只接受单个点")
    zz = point[0]
    rule = f.rule
    result = f.values
    for j in range(f.dim):
        axis_vector = rule.weights * np.exp(SQRT2 * zz[j] * rule.nodes)
        result = np.tensordot(axis_vector, result, axes=([0], [0]))
    prefactor = math.pi ** (-f.dim / 4) * np.exp(-0.5 * np.sum(zz * zz))
    return complex(prefactor * result)


# ---------------------------------------------------------------- A² 几何

def a2_inner(F: FockSeries, G: FockSeries) -> complex:
    """(F,G)_{A²} = Σ a_α conj(b_α)（单项式在 dμ 下正交归一）"""
    if F.dim != G.dim:
        raise DimensionMismatchError(f"维度不一致: {F.dim} 与 {G.dim}")
    total = 0j
    for alpha, value in F.terms.items():
        other = G.terms.get(alpha)
        if other is not None:
            total += value * other.conjugate()
    return total


@lru_cache(maxsize=64)
def polar_rule(radial_order: int, angular_order: int) -> tuple[NDArray[np.complex128], NDArray[np.float64]]:
    """单个复坐标上 dμ = π^{-1}e^{-|z|²}dλ 的求积规则

    ρ = r² 用 Gauss–Laguerre，角度用等距梯形；dμ = (2π)^{-1} e^{-ρ} dρ dθ。

    Returns:
        tuple: (节点 z，长度 m·q；权重，和为 1)
    """
    if radial_order < 1 or angular_order < 1:
        raise InvalidArgumentError("径向与角向求积阶数必须 ≥ 1")
    rho, rho_weights = roots_laguerre(radial_order)
    theta = 2.0 * math.pi * np.arange(angular_order) / angular_order
    nodes = (np.sqrt(rho)[:, None] * np.exp(1j * theta)[None, :]).reshape(-1)
    weights = (rho_weights[:, None] * np.full(angular_order, 1.0 / angular_order)[None, :]).reshape(-1)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def a2_inner_quadrature(F: FockSeries, G: FockSeries, radial_order: Optional[int] = None,
                        angular_order: Optional[int] = None) -> complex:
    """用极坐标求积直接算 ∫ F(z) conj(G(z)) dμ(z)

    缺省 m = N+2，q = 2N+4（N 为两者次数上界的较大者），对 2N 次以内的被积多项式精确。
    """
    if F.dim != G.dim:
        raise DimensionMismatchError(f"维度不一致: {F.dim} 与 {G.dim}")
    degree = max(F.degree_bound, G.degree_bound)
    m = radial_order if radial_order is not None else degree + 2
    q = angular_order if angular_order is not None else 2 * degree + 4
    nodes_1d, weights_1d = polar_rule(m, q)
    mesh = np.meshgrid(*([nodes_1d] * F.dim), indexing="ij")
    points = np.stack([axis.reshape(-1) for axis in mesh], axis=-1)
    weight_mesh = np.meshgrid(*([weights_1d] * F.dim), indexing="ij")
    weights = np.prod(np.stack([w.reshape(-1) for w in weight_mesh], axis=-1), axis=-1)
    total = 0j
    # 分块求值，单项式矩阵大小为 块长 × 项数
    for start in range(0, points.shape[0], QUADRATURE_CHUNK):
        chunk = points[start:start + QUADRATURE_CHUNK]
        left = evaluate_fock_points(F, chunk)
        right = left if G is F else evaluate_fock_points(G, chunk)
        total += np.sum(weights[start:start + QUADRATURE_CHUNK] * left * np.conj(right))
    return complex(total)


# ---------------------------------------------------------------- 增长界校验

DECAY_KINDS = ("gs", "gs-dual", "schwartz", "tempered")


@dataclass(frozen=True)
class DecayReport:
    """增长界采样校验结果；margin = C·B(z) − |F(z)|"""
    worst_margin: float
    passed: bool
    worst_point: tuple[complex, ...]
    kind: str


def m_weight(points: NDArray[np.complex128], s: float, t: float) -> NDArray[np.float64]:
    """M_{s,t}(x+iξ) = |x|^{1/t} + |ξ|^{1/s}"""
    x_norm = np.linalg.norm(points.real, axis=1)
    xi_norm = np.linalg.norm(points.imag, axis=1)
    return x_norm ** (1.0 / t) + xi_norm ** (1.0 / s)


def decay_bound(points: NDArray[np.complex128], s: float, t: float, eps: float, kind: str) -> NDArray[np.float64]:
    """各类像空间对应的界函数 B(z)"""
    modulus_sq = np.sum(np.abs(points) ** 2, axis=1)
    if kind == "gs":
        return np.exp(0.5 * modulus_sq - eps * m_weight(points, s, t))
    if kind == "gs-dual":
        return np.exp(0.5 * modulus_sq + eps * m_weight(points, s, t))
    bracket = np.sqrt(1.0 + modulus_sq)
    if kind == "schwartz":
        return np.exp(0.5 * modulus_sq) * bracket ** (-eps)
    if kind == "tempered":
        return np.exp(0.5 * modulus_sq) * bracket ** eps
    raise InvalidArgumentError(f"未知的界类型: {kind}，可选 {', '.join(DECAY_KINDS)}")


def _margin_report(margins: NDArray[np.float64], points: NDArray[np.complex128], kind: str) -> DecayReport:
    worst = int(np.argmin(margins))
    return DecayReport(
        worst_margin=float(margins[worst]),
        passed=bool(margins[worst] >= 0.0),
        worst_point=tuple(complex(c) for c in points[worst]),
        kind=kind,
    )


def decay_margin(F: FockSeries, s: float, t: float, eps: float, C: float,
                 samples: Sequence[Sequence[complex]], kind: str = "gs") -> DecayReport:
    """在采样点上检查 |F(z)| ≤ C·B(z)

    Args:
        F: Fock 级数
        s, t: Gelfand–Shilov 参数（gs 类要求 > 1/2）
        eps: gs 类为 ε，schwartz/tempered 类为指数 N
        C: 常数 > 0
        samples: 非空复点集
        kind: gs / gs-dual / schwartz / tempered

    Returns:
        DecayReport: 最小 margin、是否通过及取到最小值的点
    """
    if len(samples) == 0:
        raise InvalidArgumentError("采样点集为空")
    if kind in ("gs", "gs-dual") and (s <= 0.5 or t <= 0.5):
        raise InvalidArgumentError(f"Gelfand–Shilov 参数需满足 s,t > 1/2，得到 s={s}, t={t}")
    if eps <= 0 or C <= 0:
        raise InvalidArgumentError("eps 与 C 必须为正")
    points = as_complex_points(samples, F.dim)
    margins = C * decay_bound(points, s, t, eps, kind) - np.abs(evaluate_fock_points(F, points))
    return _margin_report(margins, points, kind)


def sample_disc(dim: int, radius: float, count: int, seed: int = 0) -> list[ComplexPoint]:
    """每个坐标在半径 radius 的圆盘内均匀取样，确定性由 seed 保证"""
    if count < 1:
        raise InvalidArgumentError("采样数必须 ≥ 1")
    rng = np.random.default_rng(seed)
    modulus = radius * np.sqrt(rng.random((count, dim)))
    phase = 2.0 * math.pi * rng.random((count, dim))
    points = modulus * np.exp(1j * phase)
    return [tuple(complex(c) for c in row) for row in points]


def square_grid(dim: int, radius: float, count: int) -> list[ComplexPoint]:
    """实部与虚部各取 count 个等距点的网格，保留 |z| ≤ radius 的点"""
    axis = np.linspace(-radius, radius, count)
    mesh = np.meshgrid(*([axis] * (2 * dim)), indexing="ij")
    flat = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    points = flat[:, :dim] + 1j * flat[:, dim:]
    keep = np.sum(np.abs(points) ** 2, axis=1) <= radius * radius + 1e-12
    return [tuple(complex(c) for c in row) for row in points[keep]]
