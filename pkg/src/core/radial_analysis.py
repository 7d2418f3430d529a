# src/core/radial_analysis.py
"""径向对称性的判定、径向剖面提取与降维

f 径向对称 ⇔ 奇指标系数全为 0 且 γ!/√((2γ)!)·a_{2γ} 只依赖 |γ|。
此时 𝔙f(z) = F₀(⟨z,z⟩)，F₀(w) = Σ_k (c_k/k!) w^k，
唯一的一维代表元 f₀ 满足 𝔙₁f₀(z) = F₀(z²)。
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import gammaln

from src.config.env import get_settings
from src.core.fock_space import DecayReport, as_complex_points, bargmann_of_expansion, evaluate_fock_points
from src.core.hermite_core import (
    HermiteExpansion,
    MultiIndex,
    gauss_hermite,
    hermite_table,
    shell_indices,
    shell_weight,
)
from src.exceptions import DimensionMismatchError, InvalidArgumentError, NotRadialError
from src.utils.logging import create_logger, debug

# 配置日志
logger_config = create_logger("Radial-Analysis")

# 壳层偏差的相对分母下限；全零壳层视为常值
SHELL_FLOOR = 1e-14
# E₀ 级数截断阈值
E0_TRUNCATION = 1e-16
MAX_E0_QUAD_ORDER = 300


@dataclass(frozen=True)
class RadialProfile:
    """壳层系数 (c_0, …, c_K)

    F(z) = Σ_k c_k Σ_{|γ|=k} z^{2γ}/γ!，等价地 F₀(w) = Σ_k (c_k/k!) w^k。
    """
    dim_of_origin: int
    c: tuple[complex, ...]

    def __post_init__(self):
        if self.dim_of_origin < 1:
            raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {self.dim_of_origin}")
        if len(self.c) == 0:
            raise InvalidArgumentError("径向剖面至少包含 c_0")
        object.__setattr__(self, "c", tuple(complex(v) for v in self.c))

    @property
    def K(self) -> int:
        return len(self.c) - 1

    def taylor_coefficients(self) -> NDArray[np.complex128]:
        """F₀ 的 Taylor 系数 c_k/k!"""
        k = np.arange(len(self.c), dtype=float)
        return np.asarray(self.c, dtype=complex) * np.exp(-gammaln(k + 1.0))


@dataclass(frozen=True)
class RadialReport:
    """径向检测报告；is_radial ⇔ odd_mass ≤ tol 且每个壳层偏差 ≤ tol"""
    is_radial: bool
    odd_mass: float
    shell_deviations: tuple[float, ...]
    profile: Optional[RadialProfile]
    tol: float


@dataclass(frozen=True, eq=False)
class OrthogonalMatrix:
    """ℝᵈ 上的正交（实酉）矩阵，Uz := U(Re z) + i·U(Im z)"""
    matrix: NDArray[np.float64]

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"正交矩阵必须是方阵，得到形状 {matrix.shape}")
        d = matrix.shape[0]
        if not np.allclose(matrix.T @ matrix, np.eye(d), rtol=0.0, atol=1e-12):
            raise InvalidArgumentError("矩阵不满足 UᵀU = I")
        if abs(abs(np.linalg.det(matrix)) - 1.0) > 1e-12:
            raise InvalidArgumentError("矩阵行列式的绝对值不为 1")
        matrix.flags.writeable = False
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def is_reflection(self) -> bool:
        return bool(np.linalg.det(self.matrix) < 0)

    def apply(self, points: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """对 (m, d) 复点集逐行作用"""
        return points.real @ self.matrix.T + 1j * (points.imag @ self.matrix.T)


def rotation_2d(angle: float) -> OrthogonalMatrix:
    c, s = math.cos(angle), math.sin(angle)
    return OrthogonalMatrix(np.array([[c, -s], [s, c]]))


def givens_rotation(d: int, i: int, j: int, angle: float) -> OrthogonalMatrix:
    """在 (i, j) 坐标平面内旋转 angle"""
    if not (0 <= i < d and 0 <= j < d and i != j):
        raise InvalidArgumentError(f"非法的坐标平面 ({i}, {j})，维度 {d}")
    matrix = np.eye(d)
    c, s = math.cos(angle), math.sin(angle)
    matrix[i, i] = c
    matrix[j, j] = c
    matrix[i, j] = -s
    matrix[j, i] = s
    return OrthogonalMatrix(matrix)


def random_orthogonal(d: int, rng: np.random.Generator, proper: Optional[bool] = None) -> OrthogonalMatrix:
    """随机高斯矩阵 QR 正交化并按 R 的对角符号修正（Haar 分布）

    Args:
        d: 维度
        rng: 随机数发生器
        proper: True 强制 det=+1，False 强制为反射，None 保持原样

    Returns:
        OrthogonalMatrix
    """
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    det = np.linalg.det(q)
    if (proper is True and det < 0) or (proper is False and det > 0):
        q[:, 0] = -q[:, 0]
    return OrthogonalMatrix(q)


# ---------------------------------------------------------------- 判定与提取

def _doubled(gamma: MultiIndex) -> MultiIndex:
    return tuple(2 * g for g in gamma)


def radial_test(f: HermiteExpansion, tol: Optional[float] = None) -> RadialReport:
    """按系数条件判定径向对称

    odd_mass 为含奇分量指标上的最大 |a_α|；对每个 k ≤ ⌊N/2⌋，
    v_γ = shell_weight(γ)·a_{2γ}（|γ| = k），偏差取 max|v_γ − 均值| / max(max|v_γ|, floor)。

    Args:
        f: Hermite 展开
        tol: 容差，缺省取配置中的 default_tol

    Returns:
        RadialReport: 径向时附带剖面 c_k = 壳层均值
    """
    tol = get_settings().default_tol if tol is None else tol
    if tol <= 0:
        raise InvalidArgumentError(f"容差必须为正，得到 {tol}")

    odd_mass = max(
        (abs(value) for alpha, value in f.terms.items() if any(a % 2 for a in alpha)),
        default=0.0,
    )
    deviations: list[float] = []
    means: list[complex] = []
    for k in range(f.degree_bound // 2 + 1):
        shell = shell_indices(f.dim, k)
        values = np.array([shell_weight(gamma) * f.coefficient(_doubled(gamma)) for gamma in shell])
        mean = complex(np.mean(values))
        scale = max(float(np.max(np.abs(values))), SHELL_FLOOR)
        deviations.append(float(np.max(np.abs(values - mean))) / scale)
        means.append(mean)

    is_radial = odd_mass <= tol and all(dev <= tol for dev in deviations)
    profile = RadialProfile(f.dim, tuple(means)) if is_radial else None
    debug(f"径向检测: dim={f.dim}, N={f.degree_bound}, odd_mass={odd_mass:.3e}, "
          f"最大壳层偏差={max(deviations):.3e}, 结果={is_radial}", logger_config)
    return RadialReport(
        is_radial=is_radial,
        odd_mass=float(odd_mass),
        shell_deviations=tuple(deviations),
        profile=profile,
        tol=float(tol),
    )


def extract_profile(f: HermiteExpansion, tol: Optional[float] = None) -> RadialProfile:
    """提取径向剖面 (c_0, …, c_K)，K = ⌊N/2⌋；非径向输入抛出携带报告的 NotRadialError"""
    report = radial_test(f, tol)
    if not report.is_radial:
        raise NotRadialError(
            f"输入不是径向对称的: odd_mass={report.odd_mass:.3e}, "
            f"最大壳层偏差={max(report.shell_deviations):.3e}, tol={report.tol:.1e}",
            report,
        )
    return report.profile


def eval_F0(p: RadialProfile, w: ArrayLike) -> complex | NDArray[np.complex128]:
    """F₀(w) = Σ_k (c_k/k!) w^k，Horner 求值"""
    coefficients = p.taylor_coefficients()
    w_arr = np.asarray(w, dtype=complex)
    acc = np.zeros_like(w_arr)
    for coefficient in coefficients[::-1]:
        acc = acc * w_arr + coefficient
    if acc.ndim == 0:
        return complex(acc)
    return acc


def profile_growth_margin(p: RadialProfile, eps: float, C: float, samples: Sequence[complex]) -> DecayReport:
    """在采样点上检查 |F₀(w)| ≤ C·e^{ε|w|}（F₀ 为指数型整函数的见证）"""
    if len(samples) == 0:
        raise InvalidArgumentError("采样点集为空")
    if eps <= 0 or C <= 0:
        raise InvalidArgumentError("eps 与 C 必须为正")
    w = np.asarray(samples, dtype=complex).reshape(-1)
    margins = C * np.exp(eps * np.abs(w)) - np.abs(eval_F0(p, w))
    worst = int(np.argmin(margins))
    return DecayReport(
        worst_margin=float(margins[worst]),
        passed=bool(margins[worst] >= 0.0),
        worst_point=(complex(w[worst]),),
        kind="profile",
    )


def unitary_pullback_residual(f: HermiteExpansion, U: OrthogonalMatrix,
                              points: Sequence[Sequence[complex]]) -> float:
    """max_z |(𝔙f)(Uz) − (𝔙f)(z)| / (1 + |(𝔙f)(z)|)"""
    if U.dim != f.dim:
        raise DimensionMismatchError(f"矩阵维度 {U.dim} 与展开维度 {f.dim} 不一致")
    if len(points) == 0:
        raise InvalidArgumentError("采样点集为空")
    F = bargmann_of_expansion(f)
    z = as_complex_points(points, f.dim)
    original = evaluate_fock_points(F, z)
    rotated = evaluate_fock_points(F, U.apply(z))
    return float(np.max(np.abs(rotated - original) / (1.0 + np.abs(original))))


# ---------------------------------------------------------------- 核 E 与 E₀

def default_e0_order(s: float, max_node: float) -> int:
    """最小的 k ≥ 1 使 (2 s y_max²)^k/(2k)! < 1e-16"""
    base = 2.0 * s * max_node * max_node
    if base <= 0.0:
        return 1
    log_base = math.log(base)
    k = 1
    while k * log_base - float(gammaln(2 * k + 1)) >= math.log(E0_TRUNCATION):
        k += 1
    return k


def _pair_with_first_axis(f: HermiteExpansion, nodes: NDArray[np.float64], weights: NDArray[np.float64],
                          first_axis_factor: NDArray[np.complex128]) -> complex:
    # ∫ P(y) e^{-|y|²} K(y_1) dy，P = Σ a_α Π p̃_{α_j}(y_j)
    if not f.terms:
        return 0j
    table = hermite_table(f.degree_bound, nodes, gaussian=False)
    first = table @ (weights * first_axis_factor)
    rest = table @ weights
    factors = first[f.alpha_array[:, 0]].astype(complex)
    for j in range(1, f.dim):
        factors = factors * rest[f.alpha_array[:, j]]
    return complex(np.sum(f.coefficient_array * factors))


def _check_real_point(f: HermiteExpansion, x: ArrayLike) -> NDArray[np.float64]:
    point = np.asarray(x, dtype=float).reshape(-1)
    if point.shape[0] != f.dim:
        raise DimensionMismatchError(f"点的维度 {point.shape[0]} 与展开维度 {f.dim} 不一致")
    return point


def eval_via_E0(f: HermiteExpansion, x: ArrayLike, K: Optional[int] = None) -> complex:
    """⟨f, E₀(|x|², ·)⟩，E₀(s,y) = π^{-d/4} e^{-(s+|y|²)/2} Σ_{k≤K} (2y₁²s)^k/(2k)!

    对径向 f 等于 (𝔙f)(x) = F₀(|x|²)。被积多项式次数为 N + 2K，
    求积阶数与缺省截断阶相互依赖，迭代到二者一致。

    Args:
        f: 径向 Hermite 展开（由调用方保证）
        x: ℝᵈ 中的点
        K: 级数截断阶 ≥ 1，缺省按最大节点自动选取

    Returns:
        complex
    """
    if K is not None and K < 1:
        raise InvalidArgumentError(f"截断阶 K 必须 ≥ 1，得到 {K}")
    point = _check_real_point(f, x)
    s = float(np.dot(point, point))

    n = max(32, f.degree_bound + 8)
    while True:
        rule = gauss_hermite(n)
        order = K if K is not None else default_e0_order(s, float(rule.nodes[-1]))
        needed = (f.degree_bound + 2 * order) // 2 + 1
        if needed <= n or n >= MAX_E0_QUAD_ORDER:
            break
        n = min(needed, MAX_E0_QUAD_ORDER)

    nodes = rule.nodes
    series = np.ones_like(nodes)
    term = np.ones_like(nodes)
    for k in range(1, order + 1):
        term = term * (2.0 * nodes * nodes * s) / ((2 * k - 1) * (2 * k))
        series = series + term

    value = _pair_with_first_axis(f, nodes, rule.weights, series.astype(complex))
    return complex(math.pi ** (-f.dim / 4) * math.exp(-0.5 * s) * value)


def eval_via_E(f: HermiteExpansion, x: ArrayLike, sign: int = 1) -> complex:
    """⟨f, E(t, ·)⟩，E(t,y) = π^{-d/4} exp(−½(t²+|y|²) + √2 t y₁)，t = ±|x|

    对径向 f，两个符号都给出 (𝔙f)(x)。
    """
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign 只能取 ±1，得到 {sign}")
    point = _check_real_point(f, x)
    t = sign * float(np.linalg.norm(point))
    rule = gauss_hermite(max(32, f.degree_bound + 8))
    factor = np.exp(math.sqrt(2.0) * t * rule.nodes).astype(complex)
    value = _pair_with_first_axis(f, rule.nodes, rule.weights, factor)
    return complex(math.pi ** (-f.dim / 4) * math.exp(-0.5 * t * t) * value)


# ---------------------------------------------------------------- 降维与合成

def _reduced_coefficient(c: complex, k: int) -> complex:
    """b_{2k} = (c_k/k!)·√((2k)!)"""
    return c * math.exp(0.5 * float(gammaln(2 * k + 1)) - float(gammaln(k + 1)))


def reduce_dimension(f: HermiteExpansion, tol: Optional[float] = None) -> HermiteExpansion:
    """径向 f ↦ 一维代表元 f₀ = Σ_k b_{2k} h_{2k}，满足 𝔙₁f₀(z) = F₀(z²)"""
    profile = extract_profile(f, tol)
    terms = {
        (2 * k,): _reduced_coefficient(c, k)
        for k, c in enumerate(profile.c)
        if c != 0
    }
    return HermiteExpansion(1, terms, 2 * profile.K)


def synth_radial(p: RadialProfile, d: int) -> HermiteExpansion:
    """extract_profile 的逆：a_{2γ} = c_{|γ|}·√((2γ)!)/γ!，其余系数为 0"""
    if d < 1:
        raise InvalidArgumentError(f"维度必须 ≥ 1，得到 {d}")
    terms: dict[MultiIndex, complex] = {}
    for k, c in enumerate(p.c):
        if c == 0:
            continue
        for gamma in shell_indices(d, k):
            terms[_doubled(gamma)] = c / shell_weight(gamma)
    return HermiteExpansion(d, terms, 2 * p.K)


def gaussian_profile(a: float, d: int, K: int) -> RadialProfile:
    """e^{-a|x|²} 的剖面：c_k = C·λ^k，λ = (1−2a)/(2(2a+1))，C = π^{d/4}(a+½)^{-d/2}"""
    if a <= 0:
        raise InvalidArgumentError(f"高斯参数 a 必须为正，得到 {a}")
    if K < 0:
        raise InvalidArgumentError(f"截断阶 K 必须 ≥ 0，得到 {K}")
    lam = (1.0 - 2.0 * a) / (2.0 * (2.0 * a + 1.0))
    scale = math.pi ** (d / 4) * (a + 0.5) ** (-d / 2)
    return RadialProfile(d, tuple(scale * lam ** k for k in range(K + 1)))


def synth_gaussian(a: float, d: int, K: int) -> HermiteExpansion:
    """e^{-a|x|²} 截断到 2K 次的 Hermite 展开"""
    return synth_radial(gaussian_profile(a, d, K), d)


def random_radial_profile(dim: int, K: int, rng: np.random.Generator) -> RadialProfile:
    """c_k 取标准复高斯"""
    values = rng.standard_normal(K + 1) + 1j * rng.standard_normal(K + 1)
    return RadialProfile(dim, tuple(complex(v) for v in values))
