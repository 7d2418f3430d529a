"""verify 子命令：桌面规模的全套数值验收

每项检查拿到独立派生的随机数发生器（种子 + 检查序号），
因此 --check 过滤不会改变其余检查的结果；报告中不含耗时等易变字段。
"""
import math
import sys
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from rich.console import Console
from rich.table import Table

from src.config.env import get_settings
from src.core.fock_space import (
    FockSeries,
    a2_inner_quadrature,
    bargmann_of_expansion,
    bargmann_of_samples,
    decay_margin,
    default_kernel_order,
    eval_fock_series,
    evaluate_fock_points,
    sample_expansion,
    square_grid,
)
from src.core.hermite_core import HermiteExpansion, enumerate_multi_indices, gauss_hermite, random_expansion
from src.core.radial_analysis import (
    eval_F0,
    eval_via_E0,
    extract_profile,
    gaussian_profile,
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
from src.core.stft_bridge import bridge_residual, inverse_bridge_residual, phase_grid
from src.exceptions import InvalidArgumentError, VerificationFailedError
from src.exceptions.errors import EXIT_OK
from src.models.documents import CheckResultDocument, VerifyReportDocument
from src.models.run_config import RunConfig
from src.utils.json_utils import write_json
from src.utils.logging import create_logger, info, warning

# 配置日志
logger_config = create_logger("Fock-Radial-Verify")

MONOMIAL_QUAD_ORDER = 24


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    description: str
    worst: float
    bound: float
    relation: str = "<="

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.worst):
            return False
        if self.relation == ">=":
            return bool(self.worst >= self.bound)
        return bool(self.worst <= self.bound)

    def to_document(self) -> CheckResultDocument:
        return CheckResultDocument(
            name=self.name,
            description=self.description,
            worst=float(self.worst),
            relation=self.relation,
            bound=float(self.bound),
            passed=self.passed,
        )


CheckFunction = Callable[[np.random.Generator], List[CheckOutcome]]

# 注册顺序即运行与输出顺序
CHECKS: Dict[str, CheckFunction] = {}


def register(name: str):
    def decorator(func: CheckFunction) -> CheckFunction:
        CHECKS[name] = func
        return func
    return decorator


def _random_points(rng: np.random.Generator, count: int, dim: int,
                   low: float = 0.0, high: float = 2.0) -> np.ndarray:
    """各坐标模长在 [low, high]、辐角均匀的复点集 (count, dim)"""
    modulus = rng.uniform(low, high, (count, dim))
    phase = rng.uniform(0.0, 2.0 * math.pi, (count, dim))
    return modulus * np.exp(1j * phase)


def _h2_shell(d: int = 2) -> HermiteExpansion:
    return HermiteExpansion(d, {tuple(2 if i == j else 0 for i in range(d)): 1.0 for j in range(d)})


# ---------------------------------------------------------------- 检查项

@register("quadrature")
def check_quadrature(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for n in (5, 20):
        rule = gauss_hermite(n)
        for k in range(n):
            exact = math.gamma(k + 0.5)
            approx = rule.integrate(rule.nodes ** (2 * k)).real
            worst = max(worst, abs(approx - exact) / exact)
    return [CheckOutcome("quadrature", "Gauss–Hermite 对 2n−1 次以内的矩精确", worst, 1e-10)]


@register("monomial")
def check_monomial(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for d in (1, 2, 3):
        points = _random_points(rng, 20, d, low=1.0, high=2.0)
        for alpha in enumerate_multi_indices(d, 8):
            samples = sample_expansion(HermiteExpansion.basis(alpha), MONOMIAL_QUAD_ORDER)
            expected = evaluate_fock_points(FockSeries.basis(alpha), points)
            for z, ref in zip(points, expected):
                value = bargmann_of_samples(samples, z)
                worst = max(worst, abs(value - ref) / abs(ref))
    return [CheckOutcome("monomial", "核积分 𝔙h_α 与 z^α/√(α!) 的相对误差（d ≤ 3，|α| ≤ 8）", worst, 1e-8)]


@register("isometry")
def check_isometry(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for _ in range(20):
        f = random_expansion(2, 10, rng)
        F = bargmann_of_expansion(f)
        norm = f.norm_squared()
        quadrature = a2_inner_quadrature(F, F).real
        worst = max(worst, abs(norm - quadrature) / (1.0 + norm))
    return [CheckOutcome("isometry", "∥f∥²_{L²} 与求积 ∥𝔙f∥²_{A²} 一致（d=2，N=10）", worst, 1e-8)]


@register("normalization")
def check_normalization(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = max(
        abs(a2_inner_quadrature(FockSeries.basis((0,) * d), FockSeries.basis((0,) * d)) - 1.0)
        for d in (1, 2, 3)
    )
    return [CheckOutcome("normalization", "dμ 为概率测度：(1,1)_{A²} = 1（d ≤ 3）", worst, 1e-10)]


@register("radial-positive")
def check_radial_positive(rng: np.random.Generator) -> List[CheckOutcome]:
    f = _h2_shell()
    report = radial_test(f, 1e-10)
    test_worst = max(report.odd_mass, max(report.shell_deviations))
    if not report.is_radial:
        test_worst = math.inf

    points = _random_points(rng, 10, 2)
    matrices = [random_orthogonal(2, rng, proper=True) for _ in range(9)]
    matrices.append(random_orthogonal(2, rng, proper=False))
    pullback = max(unitary_pullback_residual(f, U, points) for U in matrices)

    profile = extract_profile(f, 1e-10)
    values = evaluate_fock_points(bargmann_of_expansion(f), points)
    consistency = float(np.max(np.abs(values - eval_F0(profile, np.sum(points * points, axis=1)))))
    return [
        CheckOutcome("radial-positive:test", "h_(2,0)+h_(0,2) 通过系数判定", test_worst, 1e-10),
        CheckOutcome("radial-positive:pullback", "10 个正交 U（含一个反射）下 𝔙f(Uz) = 𝔙f(z)", pullback, 1e-9),
        CheckOutcome("radial-positive:profile", "𝔙f(z) = F₀(⟨z,z⟩)", consistency, 1e-10),
    ]


@register("radial-negative")
def check_radial_negative(rng: np.random.Generator) -> List[CheckOutcome]:
    tol = 1e-10
    odd = radial_test(HermiteExpansion(2, {(1, 0): 1.0}), tol)
    odd_worst = odd.odd_mass if not odd.is_radial else 0.0

    anti = HermiteExpansion(2, {(2, 0): 1.0, (0, 2): -1.0})
    anti_report = radial_test(anti, tol)
    shell_worst = max(anti_report.shell_deviations) if not anti_report.is_radial else 0.0
    pullback = unitary_pullback_residual(anti, rotation_2d(math.pi / 4), [(1.0, 0.0)])
    return [
        CheckOutcome("radial-negative:odd", "h_(1,0) 因奇指标系数被拒", odd_worst, tol, ">="),
        CheckOutcome("radial-negative:shell", "h_(2,0)−h_(0,2) 的壳层偏差约为 1", shell_worst, 0.5, ">="),
        CheckOutcome("radial-negative:pullback", "h_(2,0)−h_(0,2) 在 45° 旋转、z=(1,0) 处的拉回残差",
                     pullback, 0.1, ">="),
    ]


@register("reduction")
def check_reduction(rng: np.random.Generator) -> List[CheckOutcome]:
    reduced = reduce_dimension(_h2_shell())
    expected = HermiteExpansion(1, {(2,): 1.0})
    keys = set(reduced.terms) | set(expected.terms)
    shell_error = max(abs(reduced.coefficient(a) - expected.coefficient(a)) for a in keys)

    worst = 0.0
    for _ in range(10):
        profile = random_radial_profile(3, 8, rng)
        f0 = reduce_dimension(synth_radial(profile, 3))
        F0 = bargmann_of_expansion(f0)
        for z in _random_points(rng, 10, 1)[:, 0]:
            value = eval_fock_series(F0, (z,))
            ref = eval_F0(profile, z * z)
            worst = max(worst, abs(value - ref) / (1.0 + abs(ref)))
    return [
        CheckOutcome("reduction:shell", "reduce(h_(2,0)+h_(0,2)) = h_2", shell_error, 1e-12),
        CheckOutcome("reduction:random", "𝔙₁f₀(z) = F₀(z²)（10 个 d=3、K=8 的随机径向元）", worst, 1e-10),
    ]


@register("gaussian")
def check_gaussian(rng: np.random.Generator) -> List[CheckOutcome]:
    f = synth_gaussian(1.0, 1, 20)
    samples = sample_expansion(f, default_kernel_order(f.degree_bound))
    lam = -1.0 / 6.0
    scale = math.pi ** 0.25 * 1.5 ** -0.5
    radius = rng.uniform(0.0, 2.0, 20)
    angle = rng.uniform(0.0, 2.0 * math.pi, 20)
    worst = 0.0
    for z in radius * np.exp(1j * angle):
        value = bargmann_of_samples(samples, (z,))
        ref = scale * np.exp(lam * z * z)
        worst = max(worst, abs(value - ref) / abs(ref))
    return [CheckOutcome("gaussian", "e^{-|x|²} 的核积分变换与 C·e^{λz²} 的相对误差", worst, 1e-6)]


BRIDGE_TRIALS = ((1, 6), (2, 6), (1, 3), (2, 4))


@register("bridge")
def check_bridge(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for d, degree in BRIDGE_TRIALS:
        f = random_expansion(d, degree, rng)
        worst = max(worst, bridge_residual(f, phase_grid(d, -1.5, 1.5, 5)))
    return [CheckOutcome("bridge", "𝔙f(x+iξ) = U_𝔙(V_φf)(x,ξ)，5×5 相空间网格", worst, 1e-8)]


@register("inverse-bridge")
def check_inverse_bridge(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for d, degree in BRIDGE_TRIALS:
        f = random_expansion(d, degree, rng)
        worst = max(worst, inverse_bridge_residual(f, phase_grid(d, -1.5, 1.5, 5)))
    return [CheckOutcome("inverse-bridge", "由 𝔙f 还原 V_φf，5×5 相空间网格", worst, 1e-8)]


@register("e0")
def check_e0(rng: np.random.Generator) -> List[CheckOutcome]:
    cases = (_h2_shell(), HermiteExpansion(2, {(0, 0): 1.0}), synth_gaussian(1.0, 1, 20))
    worst = 0.0
    for f in cases:
        profile = extract_profile(f)
        for r in (0.0, 0.5, 1.0, 1.5, 2.0):
            direction = rng.standard_normal(f.dim)
            x = r * direction / np.linalg.norm(direction)
            value = eval_via_E0(f, x)
            ref = eval_F0(profile, r * r)
            worst = max(worst, abs(value - ref) / (1.0 + abs(ref)))
    return [CheckOutcome("e0", "⟨f, E₀(|x|², ·)⟩ = F₀(|x|²)（h0、h2-shell、gaussian:1，|x| ≤ 2）", worst, 1e-8)]


@register("roundtrip")
def check_roundtrip(rng: np.random.Generator) -> List[CheckOutcome]:
    worst = 0.0
    for d in (1, 2, 3):
        for K in (0, 4, 10):
            profile = random_radial_profile(d, K, rng)
            recovered = extract_profile(synth_radial(profile, d))
            for c, back in zip(profile.c, recovered.c):
                worst = max(worst, abs(c - back) / (1.0 + abs(c)))
    return [CheckOutcome("roundtrip", "extract_profile(synth_radial(p, d)) = p", worst, 1e-13)]


@register("decay")
def check_decay(rng: np.random.Generator) -> List[CheckOutcome]:
    constant = decay_margin(FockSeries.basis((0,)), 1.0, 1.0, 0.1, 1.0, square_grid(1, 3.0, 13))
    profile = gaussian_profile(1.0, 1, 20)
    w = rng.uniform(0.0, 10.0, 50) * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, 50))
    growth = profile_growth_margin(profile, 0.2, abs(profile.c[0]) * (1.0 + 1e-9), list(w))
    return [
        CheckOutcome("decay:gs", "F=1 满足 |F(z)| ≤ e^{|z|²/2−0.1·M_{1,1}(z)}（|z| ≤ 3 网格）",
                     constant.worst_margin, 0.0, ">="),
        CheckOutcome("decay:profile", "高斯剖面 |F₀(w)| ≤ C·e^{0.2|w|}", growth.worst_margin, 0.0, ">="),
    ]


# ---------------------------------------------------------------- 运行与展示

def _check_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def run_verify(seed: int, names: Optional[Sequence[str]] = None) -> VerifyReportDocument:
    """
    运行验收检查

    Args:
        seed: 随机种子
        names: 只运行这些检查组，为空时运行全部

    Returns:
        VerifyReportDocument: 逐项结果
    """
    selected = list(names) if names else list(CHECKS)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise InvalidArgumentError(f"未知的检查: {', '.join(unknown)}，可选 {', '.join(CHECKS)}")

    outcomes: List[CheckOutcome] = []
    for index, (name, func) in enumerate(CHECKS.items()):
        if name not in selected:
            continue
        results = func(_check_rng(seed, index))
        for outcome in results:
            info(f"{outcome.name}: worst={outcome.worst:.3e} {outcome.relation} {outcome.bound:.1e} "
                 f"→ {'通过' if outcome.passed else '失败'}", logger_config)
        outcomes.extend(results)

    return VerifyReportDocument(
        seed=seed,
        passed=all(outcome.passed for outcome in outcomes),
        checks=[outcome.to_document() for outcome in outcomes],
    )


def render_table(report: VerifyReportDocument, console: Optional[Console] = None):
    """以 rich 表格输出到 stdout（无颜色、固定宽度，输出可逐字节复现）"""
    console = console or Console(file=sys.stdout, width=120, color_system=None, highlight=False)
    table = Table(title=f"verify (seed={report.seed})")
    table.add_column("检查")
    table.add_column("最差值", justify="right")
    table.add_column("关系", justify="center")
    table.add_column("界", justify="right")
    table.add_column("结果", justify="center")
    for check in report.checks:
        table.add_row(
            check.name,
            f"{check.worst:.3e}",
            check.relation,
            f"{check.bound:.1e}",
            "PASS" if check.passed else "FAIL",
        )
    console.print(table)


def cmd_verify(config: RunConfig) -> int:
    """verify：运行检查、打印表格、可选写出 JSON 报告；有失败项时抛出 VerificationFailedError"""
    settings = get_settings()
    started = time.perf_counter()
    report = run_verify(config.seed, config.checks)
    elapsed = time.perf_counter() - started

    render_table(report)
    if config.out is not None:
        write_json(report, config.out)

    info(f"verify 耗时 {elapsed:.1f}s", logger_config)
    if elapsed > settings.verify_time_budget:
        warning(f"verify 耗时 {elapsed:.1f}s 超出预算 {settings.verify_time_budget:.0f}s", logger_config)

    failed = [check.name for check in report.checks if not check.passed]
    if failed:
        raise VerificationFailedError(f"{len(failed)} 项检查未通过: {', '.join(failed)}", failed)
    return EXIT_OK
