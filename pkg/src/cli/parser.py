import argparse

from src.config.env import get_settings
from src.models.run_config import RunConfig


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--out", default=None, help="输出文件，缺省写 stdout")
    parser.add_argument("--dim", type=int, default=None, help="维度 d")
    parser.add_argument("--degree", type=int, default=None, help="次数上界 N")
    parser.add_argument("--quad-order", dest="quad_order", type=int, default=None, help="每轴求积阶数 n")
    parser.add_argument("--tol", type=float, default=None, help="径向判定容差")
    parser.add_argument("--seed", type=int, default=None, help="随机种子")
    parser.add_argument("--log-level", dest="log_level", default=None, help="日志级别")


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="fock-radial",
        description=f"{settings.app_description} (v{settings.app_version})",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, help="可用命令")

    synth_parser = subparsers.add_parser("synth", help="生成测试输入（Hermite 展开 JSON）")
    synth_parser.add_argument("--preset", required=True,
                              help="h0 | h2-shell | h2-antishell | odd | gaussian:a | profile:FILE | random-radial | random")
    _add_common(synth_parser)

    for name, help_text in (
        ("transform", "在复网格上求 Bargmann 变换，输出CSV"),
        ("stft", "在相空间网格上求高斯窗 STFT，输出CSV"),
    ):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("input", help="Hermite 展开或采样函数 JSON")
        sub.add_argument("--grid", action="append", default=[],
                         help="xmin:xmax:count，可重复：1 条共用、2 条分给 x/ξ、或 2d 条逐轴；负数起点写成 --grid=-1:1:5")
        if name == "transform":
            sub.add_argument("--path", choices=["series", "kernel"], default="series", help="求值路径")
        _add_common(sub)

    radial_parser = subparsers.add_parser("radial", help="径向对称检测，输出报告JSON（非径向退出码 3）")
    radial_parser.add_argument("input", help="Hermite 展开或采样函数 JSON")
    _add_common(radial_parser)

    reduce_parser = subparsers.add_parser("reduce", help="径向元素降维到一维代表元 f₀")
    reduce_parser.add_argument("input", help="Hermite 展开或采样函数 JSON")
    _add_common(reduce_parser)

    verify_parser = subparsers.add_parser("verify", help="运行全部验收检查")
    verify_parser.add_argument("--check", dest="checks", action="append", default=[],
                               help="只运行指定检查，可重复")
    _add_common(verify_parser)

    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    """把 argparse 结果转成经校验的 RunConfig（未给出的参数走默认值）"""
    values = {
        key: value
        for key, value in vars(args).items()
        if value is not None and key != "log_level"
    }
    return RunConfig(**values)
