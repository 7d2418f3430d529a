import sys
from pathlib import Path
from typing import Optional, Sequence

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.commands import dispatch
from src.cli.parser import build_parser, to_run_config
from src.config.env import get_settings
from src.exceptions import run_with_handlers
from src.utils.logging import create_logger, debug, set_level

# 配置日志
logger_config = create_logger("Fock-Radial")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行入口，返回进程退出码"""
    settings = get_settings()
    args = build_parser().parse_args(argv)
    set_level(args.log_level or settings.log_level)
    debug(f"{settings.app_name} v{settings.app_version}，命令: {args.command}", logger_config)

    def run() -> int:
        return dispatch(to_run_config(args))

    return run_with_handlers(run)


if __name__ == "__main__":
    sys.exit(main())
