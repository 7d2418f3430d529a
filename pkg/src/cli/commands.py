"""各子命令的实现：读取输入、调用 core、写出 JSON/CSV，返回退出码"""
from typing import Union

import numpy as np
import pandas as pd

from src.cli.verify import cmd_verify
from src.config.env import get_settings
from src.core.fock_space import (
    FockSeries,
    SampledFunction,
    bargmann_of_expansion,
    bargmann_of_samples,
    default_kernel_order,
    default_projection_degree,
    evaluate_fock_points,
    inverse_bargmann,
    project_samples,
    sample_expansion,
)
from src.core.hermite_core import HermiteExpansion, random_expansion
from src.core.radial_analysis import (
    radial_test,
    random_radial_profile,
    reduce_dimension,
    synth_gaussian,
    synth_radial,
)
from src.core.stft_bridge import PhasePoint, stft_gaussian
from src.exceptions import (
    DimensionMismatchError,
    InvalidArgumentError,
    NotRadialError,
)
from src.exceptions.errors import EXIT_NOT_RADIAL, EXIT_OK
from src.models.documents import (
    CoefficientDocument,
    RadialProfileDocument,
    RadialReportDocument,
    SampledFunctionDocument,
)
from src.models.run_config import RunConfig
from src.utils.grid import parallel_map, phase_points
from src.utils.json_utils import load_document, load_function_input, write_csv, write_json
from src.utils.logging import create_logger, info, warning

# 配置日志
logger_config = create_logger("Fock-Radial-CLI")

# 预设未给出 --degree 时的缺省次数
DEFAULT_GAUSSIAN_DEGREE = 40
DEFAULT_RANDOM_RADIAL_DEGREE = 8
DEFAULT_RANDOM_DEGREE = 6


# ---------------------------------------------------------------- 输入

def _check_dim(config: RunConfig, dim: int):
    if config.dim is not None and config.dim != dim:
        raise DimensionMismatchError(f"--dim={config.dim} 与输入维度 {dim} 不一致")


def _read_input(config: RunConfig) -> Union[HermiteExpansion, FockSeries, SampledFunction]:
    if config.input is None:
        raise InvalidArgumentError(f"{config.command} 需要输入文件")
    document = load_function_input(config.input)
    _check_dim(config, document.dim)
    if isinstance(document, SampledFunctionDocument):
        info(f"读取采样函数: dim={document.dim}, n={document.n}", logger_config)
        return document.to_samples()
    info(f"读取系数展开: dim={document.dim}, 项数={len(document.terms)}", logger_config)
    if document.space == "fock":
        return document.to_fock()
    return document.to_expansion()


def _as_expansion(value: Union[HermiteExpansion, FockSeries, SampledFunction],
                  config: RunConfig) -> HermiteExpansion:
    """径向检测与降维只作用于系数；采样输入先投影到 |α| ≤ N"""
    if isinstance(value, FockSeries):
        return inverse_bargmann(value)
    if isinstance(value, SampledFunction):
        degree = config.degree
        if degree is None:
            degree = min(default_projection_degree(value.n), get_settings().max_degree)
        warning(f"采样输入经投影得到系数（N={degree}），建议配合 --tol 放宽容差", logger_config)
        return project_samples(value, degree)
    return value


# ---------------------------------------------------------------- synth

def _preset_dim(config: RunConfig, default: int) -> int:
    return config.dim if config.dim is not None else default


def build_preset(config: RunConfig) -> HermiteExpansion:
    """
    根据预设名称生成 Hermite 展开

    Args:
        config: 运行配置，使用其中的 preset / dim / degree / seed

    Returns:
        HermiteExpansion
    """
    name, _, argument = config.preset.partition(":")
    rng = np.random.default_rng(config.seed)

    if name == "h0":
        d = _preset_dim(config, 1)
        return HermiteExpansion(d, {(0,) * d: 1.0})
    if name == "h2-shell":
        d = _preset_dim(config, 2)
        return HermiteExpansion(d, {tuple(2 if i == j else 0 for i in range(d)): 1.0 for j in range(d)})
    if name == "h2-antishell":
        d = _preset_dim(config, 2)
        if d < 2:
            raise InvalidArgumentError("h2-antishell 需要 dim ≥ 2")
        first = (2,) + (0,) * (d - 1)
        second = (0, 2) + (0,) * (d - 2)
        return HermiteExpansion(d, {first: 1.0, second: -1.0})
    if name == "odd":
        d = _preset_dim(config, 2)
        return HermiteExpansion(d, {(1,) + (0,) * (d - 1): 1.0})
    if name == "gaussian":
        try:
            a = float(argument)
        except ValueError:
            raise InvalidArgumentError(f"gaussian 预设需要数值参数，例如 gaussian:1，得到 {config.preset!r}")
        degree = config.degree if config.degree is not None else DEFAULT_GAUSSIAN_DEGREE
        return synth_gaussian(a, _preset_dim(config, 1), degree // 2)
    if name == "profile":
        if not argument:
            raise InvalidArgumentError("profile 预设需要文件路径，例如 profile:c.json")
        profile = load_document(argument, RadialProfileDocument).to_profile()
        return synth_radial(profile, _preset_dim(config, profile.dim_of_origin))
    if name == "random-radial":
        d = _preset_dim(config, 2)
        degree = config.degree if config.degree is not None else DEFAULT_RANDOM_RADIAL_DEGREE
        return synth_radial(random_radial_profile(d, degree // 2, rng), d)
    if name == "random":
        degree = config.degree if config.degree is not None else DEFAULT_RANDOM_DEGREE
        return random_expansion(_preset_dim(config, 2), degree, rng)
    raise InvalidArgumentError(
        f"未知的预设: {config.preset}，可选 h0, h2-shell, h2-antishell, odd, gaussian:a, "
        f"profile:FILE, random-radial, random"
    )


def cmd_synth(config: RunConfig) -> int:
    """synth：生成展开并写出 JSON"""
    f = build_preset(config)
    info(f"预设 {config.preset}: dim={f.dim}, N={f.degree_bound}, 项数={len(f.terms)}", logger_config)
    write_json(CoefficientDocument.from_series(f), config.out)
    return EXIT_OK


# ---------------------------------------------------------------- transform / stft

def _grid_frame(points: np.ndarray, values: np.ndarray, dim: int) -> pd.DataFrame:
    columns = {}
    for j in range(dim):
        columns[f"x{j + 1}"] = points[:, j]
    for j in range(dim):
        columns[f"xi{j + 1}"] = points[:, dim + j]
    columns["re"] = values.real
    columns["im"] = values.imag
    columns["abs"] = np.abs(values)
    return pd.DataFrame(columns)


def cmd_transform(config: RunConfig) -> int:
    """
    transform：在 z = x + iξ 网格上求 𝔙f，输出 CSV

    series 路径直接求 Fock 级数；kernel 路径在张量 Gauss–Hermite 网格上做核积分，
    系数输入先采样（阶数取 --quad-order 或缺省值）。
    """
    settings = get_settings()
    value = _read_input(config)
    points = phase_points(config.grid, value.dim)
    z = points[:, :value.dim] + 1j * points[:, value.dim:]

    if config.path == "series":
        if isinstance(value, SampledFunction):
            raise InvalidArgumentError("采样输入只能使用 --path kernel")
        F = value if isinstance(value, FockSeries) else bargmann_of_expansion(value)
        values = evaluate_fock_points(F, z)
    else:
        if isinstance(value, SampledFunction):
            samples = value
        else:
            f = inverse_bargmann(value) if isinstance(value, FockSeries) else value
            n = config.quad_order or default_kernel_order(f.degree_bound)
            samples = sample_expansion(f, n)
        values = np.array(
            parallel_map(lambda point: bargmann_of_samples(samples, point), list(z), settings.worker_count),
            dtype=complex,
        )

    info(f"transform 完成: 路径={config.path}, 网格点数={len(z)}", logger_config)
    write_csv(_grid_frame(points, values, value.dim), config.out, settings.csv_digits)
    return EXIT_OK


def cmd_stft(config: RunConfig) -> int:
    """stft：在 (x, ξ) 网格上求高斯窗 STFT，输出 CSV"""
    settings = get_settings()
    value = _read_input(config)
    if isinstance(value, FockSeries):
        value = inverse_bargmann(value)
    dim = value.dim
    points = phase_points(config.grid, dim)
    phase = [PhasePoint(tuple(row[:dim]), tuple(row[dim:])) for row in points]
    values = np.array(
        parallel_map(lambda p: stft_gaussian(value, p, config.quad_order), phase, settings.worker_count),
        dtype=complex,
    )
    info(f"stft 完成: 网格点数={len(phase)}", logger_config)
    write_csv(_grid_frame(points, values, dim), config.out, settings.csv_digits)
    return EXIT_OK


# ---------------------------------------------------------------- radial / reduce

def cmd_radial(config: RunConfig) -> int:
    """radial：写出 RadialReport，径向返回 0，否则返回 3"""
    f = _as_expansion(_read_input(config), config)
    report = radial_test(f, config.tol)
    write_json(RadialReportDocument.from_report(report), config.out)
    if report.is_radial:
        info(f"输入为径向对称，剖面长度 K+1={len(report.profile.c)}", logger_config)
        return EXIT_OK
    warning(f"输入不是径向对称的: odd_mass={report.odd_mass:.3e}", logger_config)
    return EXIT_NOT_RADIAL


def cmd_reduce(config: RunConfig) -> int:
    """reduce：写出一维代表元 f₀；非径向时在 stdout 给出报告并返回 3"""
    f = _as_expansion(_read_input(config), config)
    try:
        reduced = reduce_dimension(f, config.tol)
    except NotRadialError as e:
        write_json(RadialReportDocument.from_report(e.report))
        raise
    info(f"降维完成: dim {f.dim} → 1, N={reduced.degree_bound}", logger_config)
    write_json(CoefficientDocument.from_series(reduced), config.out)
    return EXIT_OK


COMMAND_HANDLERS = {
    "synth": cmd_synth,
    "transform": cmd_transform,
    "stft": cmd_stft,
    "radial": cmd_radial,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
}


def dispatch(config: RunConfig) -> int:
    """按子命令分发"""
    return COMMAND_HANDLERS[config.command](config)
