# src/exceptions/handlers.py
from typing import Callable

from pydantic import ValidationError

from src.exceptions.errors import (
    EXIT_FAILURE,
    EXIT_INPUT_ERROR,
    FockRadialError,
    NotRadialError,
)
from src.utils.logging import create_logger, critical, error, warning

# 配置日志
logger_config = create_logger("Exception-Handlers")


def exit_code_for(exc: BaseException) -> int:
    """根据异常类型返回进程退出码

    Args:
        exc: 异常实例

    Returns:
        int: 退出码
    """
    if isinstance(exc, FockRadialError):
        return exc.exit_code
    if isinstance(exc, (ValidationError, OSError)):
        return EXIT_INPUT_ERROR
    return EXIT_FAILURE


def run_with_handlers(func: Callable[[], int]) -> int:
    """执行命令并把异常转换为退出码

    与服务端的异常处理器一一对应：业务异常按类型给出退出码，
    校验异常与IO异常视为输入错误，其余异常记录调用栈后返回 1。

    Args:
        func: 无参命令函数，返回退出码

    Returns:
        int: 退出码
    """
    try:
        return func()
    except NotRadialError as exc:
        warning(f"非径向输入: {exc.message}", logger_config)
        return exc.exit_code
    except FockRadialError as exc:
        error(f"{exc.error_type}: {exc.message}", logger_config)
        return exc.exit_code
    except ValidationError as exc:
        details = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()]
        error(f"数据验证失败: {details}", logger_config)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        error(f"文件读写失败: {exc}", logger_config)
        return EXIT_INPUT_ERROR
    except Exception as exc:
        critical(f"未预期异常: {type(exc).__name__}: {exc}", logger_config)
        return EXIT_FAILURE
