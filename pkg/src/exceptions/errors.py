# src/exceptions/errors.py
from typing import Any, Optional

# 退出码约定：0 成功，1 未预期异常/校验失败，2 输入错误，3 数学意义上的拒绝（非径向）
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_NOT_RADIAL = 3


class FockRadialError(Exception):
    """所有业务异常的基类"""
    exit_code: int = EXIT_FAILURE
    error_type: str = "error"

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail


class DimensionMismatchError(FockRadialError, ValueError):
    """维度不一致（多重指标、点、矩阵之间）"""
    exit_code = EXIT_INPUT_ERROR
    error_type = "dimension_mismatch"


class InvalidArgumentError(FockRadialError, ValueError):
    """参数非法：空采样集、非有限采样、截断阶数 < 1 等"""
    exit_code = EXIT_INPUT_ERROR
    error_type = "invalid_argument"


class ExpansionError(FockRadialError, ValueError):
    """系数展开非法：负指标、重复指标、超出次数上限"""
    exit_code = EXIT_INPUT_ERROR
    error_type = "expansion_error"


class SchemaError(FockRadialError, ValueError):
    """输入文件无法解析或不符合JSON格式约定"""
    exit_code = EXIT_INPUT_ERROR
    error_type = "schema_error"


class NotRadialError(FockRadialError):
    """输入合法但不是径向对称的，携带完整的检测报告"""
    exit_code = EXIT_NOT_RADIAL
    error_type = "not_radial"

    def __init__(self, message: str, report: Any):
        super().__init__(message, detail=report)
        self.report = report


class VerificationFailedError(FockRadialError):
    """verify 命令中至少一项检查未通过"""
    exit_code = EXIT_FAILURE
    error_type = "verification_failed"
