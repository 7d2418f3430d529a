# src/core/hermite_core.py
"""Hermite 基础设施

多重指标组合、Hermite 函数（三项递推）、Gauss–Hermite 求积（Golub–Welsch）
以及基于 log-gamma 的阶乘权重。全部类型构造后不可变，函数无副作用。
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from types import MappingProxyType
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from src.config.env import MAX_DEGREE
from src.exceptions import DimensionMismatchError, ExpansionError, InvalidArgumentError

MultiIndex = tuple[int, ...]

PI_MINUS_QUARTER = math.pi ** -0.25
SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------- 多重指标

def graded_key(alpha: MultiIndex) -> tuple:
    """分次字典序的排序键：先按次数，再按字典序（首分量大者在前）"""
    return (sum(alpha), tuple(-a for a in alpha))


def _compositions(total: int, dim: int) -> Iterator[MultiIndex]:
    if dim == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, dim - 1):
            yield (first,) + rest


def shell_indices(dim: int, degree: int) -> list[MultiIndex]:
    """次数恰为 degree 的全部多重指标（一个"壳层"），按分次字典序"""
    if dim < 1:
        raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {dim}")
    if degree < 0:
        return []
    return list(_compositions(degree, dim))


def enumerate_multi_indices(dim: int, max_degree: int) -> list[MultiIndex]:
    """列出 |α| ≤ max_degree 的全部多重指标

    Args:
        dim: 维度 d ≥ 1
        max_degree: 最大次数

    Returns:
        list[MultiIndex]: 分次字典序、无重复，共 C(d+N, d) 个
    """
    if dim < 1:
        raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {dim}")
    indices: list[MultiIndex] = []
    for degree in range(max_degree + 1):
        indices.extend(_compositions(degree, dim))
    return indices


def validate_multi_index(alpha: Sequence[int], dim: Optional[int] = None) -> MultiIndex:
    """把序列规整为 MultiIndex 并检查非负与长度"""
    index = tuple(int(a) for a in alpha)
    if not index:
        raise ExpansionError("多重指标长度必须 ≥ 1")
    if any(a < 0 for a in index):
        raise ExpansionError(f"多重指标含负分量: {index}")
    if dim is not None and len(index) != dim:
        raise DimensionMismatchError(f"多重指标 {index} 的长度与维度 {dim} 不一致")
    return index


def log_factorial(alpha: Sequence[int]) -> float:
    """log(α!) = Σ log Γ(α_j + 1)"""
    return float(np.sum(gammaln(np.asarray(alpha, dtype=float) + 1.0)))


def shell_weight(gamma: Sequence[int]) -> float:
    """壳层权重 γ!/√((2γ)!)，用 log-gamma 求和再取指数，避免 (2γ)! 溢出"""
    g = np.asarray(gamma, dtype=float)
    log_value = np.sum(gammaln(g + 1.0) - 0.5 * gammaln(2.0 * g + 1.0))
    return float(np.exp(log_value))


# ---------------------------------------------------------------- Hermite 函数

def hermite_table(max_order: int, t: ArrayLike, gaussian: bool = True) -> NDArray[np.float64]:
    """用三项递推一次性求出 h_0..h_{max_order} 在 t 处的值

    h_{k+1}(t) = √(2/(k+1))·t·h_k(t) − √(k/(k+1))·h_{k−1}(t)，
    h_0(t) = π^{-1/4} e^{-t²/2}。gaussian=False 时去掉高斯因子，
    得到多项式部分 p̃_k = h_k·e^{t²/2}（关于权 e^{-t²} 正交归一）。

    Args:
        max_order: 最高阶
        t: 求值点（任意形状）
        gaussian: 是否包含 e^{-t²/2}

    Returns:
        NDArray: 形状 (max_order+1, *t.shape)
    """
    t = np.asarray(t, dtype=float)
    table = np.empty((max_order + 1,) + t.shape)
    table[0] = PI_MINUS_QUARTER * (np.exp(-0.5 * t * t) if gaussian else np.ones_like(t))
    if max_order >= 1:
        table[1] = math.sqrt(2.0) * t * table[0]
    for k in range(1, max_order):
        table[k + 1] = math.sqrt(2.0 / (k + 1)) * t * table[k] - math.sqrt(k / (k + 1)) * table[k - 1]
    return table


def hermite_eval(alpha: Sequence[int], x: Sequence[float]) -> float:
    """h_α(x) = Π_j h_{α_j}(x_j)"""
    index = validate_multi_index(alpha)
    point = np.asarray(x, dtype=float).reshape(-1)
    if point.shape[0] != len(index):
        raise DimensionMismatchError(f"点的维度 {point.shape[0]} 与多重指标 {index} 不一致")
    value = 1.0
    for order, coordinate in zip(index, point):
        value *= hermite_table(order, coordinate)[order]
    return float(value)


# ---------------------------------------------------------------- 求积

@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """关于权 e^{-x²} 的一维求积规则"""
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise InvalidArgumentError("求积节点与权重必须是等长的非空一维数组")
        if np.any(weights <= 0):
            raise InvalidArgumentError("求积权重必须为正")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return int(self.nodes.shape[0])

    def integrate(self, values: ArrayLike) -> complex:
        """Σ w_i v_i"""
        return complex(np.sum(self.weights * np.asarray(values)))


@lru_cache(maxsize=128)
def gauss_hermite(n: int) -> QuadratureRule:
    """n 点 Gauss–Hermite 规则，对 x^m e^{-x²}（m ≤ 2n−1）精确

    节点取 Jacobi 矩阵（对角 0，次对角 √(k/2)）的特征值；
    权重用 Christoffel 公式 w_i = e^{-x_i²} / Σ_k h_k(x_i)²，与三项递推共用。

    Args:
        n: 节点数 ≥ 1

    Returns:
        QuadratureRule: 节点升序，关于 0 对称
    """
    if n < 1:
        raise InvalidArgumentError(f"求积阶数必须 ≥ 1，得到 {n}")
    if n == 1:
        return QuadratureRule(np.zeros(1), np.array([SQRT_PI]))

    off_diagonal = np.sqrt(np.arange(1, n) / 2.0)
    nodes = eigh_tridiagonal(np.zeros(n), off_diagonal, eigvals_only=True)
    nodes = 0.5 * (nodes - nodes[::-1])
    if n % 2 == 1:
        nodes[n // 2] = 0.0

    table = hermite_table(n - 1, nodes)
    weights = np.exp(-nodes * nodes) / np.sum(table * table, axis=0)
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(nodes, weights)


def tensor_grid(rule: QuadratureRule, dim: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """张量积网格，行主序

    Returns:
        tuple: (points 形状 (n^d, d), weights 形状 (n^d,))
    """
    axes = [rule.nodes] * dim
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.reshape(-1) for m in mesh], axis=-1)
    weight_mesh = np.meshgrid(*([rule.weights] * dim), indexing="ij")
    weights = np.prod(np.stack([w.reshape(-1) for w in weight_mesh], axis=-1), axis=-1)
    return points, weights


# ---------------------------------------------------------------- 系数展开

@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """以多重指标为键的有限复系数表

    Attributes:
        dim: 维度 d
        terms: α → a_α（构造后按分次字典序排序并只读）
        degree_bound: 次数上界 N，缺省取最高次数
    """
    dim: int
    terms: Mapping[MultiIndex, complex]
    degree_bound: Optional[int] = None

    def __post_init__(self):
        if self.dim < 1:
            raise ExpansionError(f"维度必须 ≥ 1，得到 {self.dim}")
        cleaned: dict[MultiIndex, complex] = {}
        for alpha, coefficient in self.terms.items():
            index = validate_multi_index(alpha, self.dim)
            value = complex(coefficient)
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise ExpansionError(f"系数 a_{index} 不是有限数")
            cleaned[index] = value
        ordered = dict(sorted(cleaned.items(), key=lambda item: graded_key(item[0])))
        top = max((sum(alpha) for alpha in ordered), default=0)
        bound = top if self.degree_bound is None else int(self.degree_bound)
        if bound < top:
            raise ExpansionError(f"次数上界 {bound} 小于实际最高次数 {top}")
        if bound > MAX_DEGREE:
            raise ExpansionError(f"次数 {bound} 超过上限 {MAX_DEGREE}")
        object.__setattr__(self, "terms", MappingProxyType(ordered))
        object.__setattr__(self, "degree_bound", bound)

    @classmethod
    def zero(cls, dim: int, degree_bound: int = 0):
        return cls(dim, {}, degree_bound)

    @classmethod
    def basis(cls, alpha: Sequence[int], coefficient: complex = 1.0):
        """单项 a_α = coefficient"""
        index = validate_multi_index(alpha)
        return cls(len(index), {index: coefficient})

    def coefficient(self, alpha: Sequence[int]) -> complex:
        return self.terms.get(tuple(alpha), 0j)

    @property
    def is_zero(self) -> bool:
        return all(value == 0 for value in self.terms.values())

    def norm_squared(self) -> float:
        return float(sum(abs(value) ** 2 for value in self.terms.values()))

    @cached_property
    def alpha_array(self) -> NDArray[np.int64]:
        """(T, d) 整数数组，与 coefficient_array 同序"""
        if not self.terms:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.array(list(self.terms.keys()), dtype=np.int64)

    @cached_property
    def coefficient_array(self) -> NDArray[np.complex128]:
        return np.array(list(self.terms.values()), dtype=complex)

    def _check_same_space(self, other: "CoefficientSeries"):
        if type(other) is not type(self):
            raise TypeError(f"不能组合 {type(self).__name__} 与 {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatchError(f"维度不一致: {self.dim} 与 {other.dim}")

    def __add__(self, other: "CoefficientSeries"):
        self._check_same_space(other)
        merged = dict(self.terms)
        for alpha, value in other.terms.items():
            merged[alpha] = merged.get(alpha, 0j) + value
        return type(self)(self.dim, merged, max(self.degree_bound, other.degree_bound))

    def __sub__(self, other: "CoefficientSeries"):
        return self + other * -1.0

    def __mul__(self, scalar: complex):
        factor = complex(scalar)
        return type(self)(self.dim, {a: factor * v for a, v in self.terms.items()}, self.degree_bound)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.degree_bound == other.degree_bound
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.dim, self.degree_bound, tuple(self.terms.items())))

    def __repr__(self) -> str:
        shown = ", ".join(f"{alpha}: {value:.6g}" for alpha, value in list(self.terms.items())[:6])
        more = " …" if len(self.terms) > 6 else ""
        return f"{type(self).__name__}(dim={self.dim}, N={self.degree_bound}, {{{shown}{more}}})"


class HermiteExpansion(CoefficientSeries):
    """f = Σ a_α h_α，∥f∥²_{L²} = Σ |a_α|²"""

    def basis_matrix(self, points: ArrayLike, gaussian: bool = True) -> NDArray[np.float64]:
        """在点集上求各基函数的值

        Args:
            points: 形状 (m, d)
            gaussian: False 时返回多项式部分 p̃_α

        Returns:
            NDArray: 形状 (T, m)
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise DimensionMismatchError(f"点的维度 {pts.shape[1]} 与展开维度 {self.dim} 不一致")
        values = np.ones((len(self.terms), pts.shape[0]))
        for j in range(self.dim):
            table = hermite_table(self.degree_bound, pts[:, j], gaussian=gaussian)
            values *= table[self.alpha_array[:, j]]
        return values

    def evaluate(self, points: ArrayLike, gaussian: bool = True) -> NDArray[np.complex128]:
        """f(y) 在 (m, d) 点集上的值；gaussian=False 给出 f(y)·e^{|y|²/2}"""
        if not self.terms:
            return np.zeros(np.atleast_2d(points).shape[0], dtype=complex)
        return self.coefficient_array @ self.basis_matrix(points, gaussian=gaussian)


def l2_inner(f: HermiteExpansion, g: HermiteExpansion) -> complex:
    """(f, g)_{L²} = Σ a_α·conj(b_α)（由 {h_α} 的正交归一性）"""
    if f.dim != g.dim:
        raise DimensionMismatchError(f"维度不一致: {f.dim} 与 {g.dim}")
    total = 0j
    for alpha, value in f.terms.items():
        other = g.terms.get(alpha)
        if other is not None:
            total += value * other.conjugate()
    return total


def random_expansion(dim: int, max_degree: int, rng: np.random.Generator) -> HermiteExpansion:
    """随机复系数展开，系数取标准复高斯"""
    terms = {
        alpha: complex(rng.standard_normal(), rng.standard_normal())
        for alpha in enumerate_multi_indices(dim, max_degree)
    }
    return HermiteExpansion(dim, terms, max_degree)
