import json
import sys
from pathlib import Path
from typing import Optional, Type, TypeVar, Union

import pandas as pd
from pydantic import BaseModel, ValidationError

from src.exceptions import SchemaError
from src.models.documents import CoefficientDocument, SampledFunctionDocument
from src.utils.logging import create_logger, info

logger_config = create_logger("Json-Utils")

M = TypeVar("M", bound=BaseModel)


def read_json(path: Union[str, Path]) -> dict:
    """
    读取JSON文件，解析失败统一转成 SchemaError（退出码 2）

    Args:
        path: 文件路径

    Returns:
        dict: 解析结果
    """
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"无法读取输入文件 {path}: {e}")
    try:
        data = json.loads(content)
    except json.JSONDecodeError as e:
        raise SchemaError(f"输入文件 {path} 不是合法的JSON: {e}")
    if not isinstance(data, dict):
        raise SchemaError(f"输入文件 {path} 顶层必须是对象")
    return data


def parse_document(data: dict, model: Type[M], source: str = "<memory>") -> M:
    """按模型校验JSON对象"""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(p) for p in first["loc"])
        raise SchemaError(f"{source} 不符合 {model.__name__} 格式：{location} {first['msg']}")


def load_document(path: Union[str, Path], model: Type[M]) -> M:
    return parse_document(read_json(path), model, str(path))


def load_function_input(path: Union[str, Path]) -> Union[CoefficientDocument, SampledFunctionDocument]:
    """
    读取 transform/stft 的输入：含 values_re 的视为采样函数，否则视为系数展开

    Args:
        path: 文件路径

    Returns:
        文档模型
    """
    data = read_json(path)
    if "values_re" in data or "weighting" in data:
        return parse_document(data, SampledFunctionDocument, str(path))
    return parse_document(data, CoefficientDocument, str(path))


def write_json(document: BaseModel, path: Optional[Union[str, Path]] = None) -> None:
    """
    写出JSON文档；path 为空时写到 stdout

    Args:
        document: pydantic 文档
        path: 输出路径
    """
    text = document.model_dump_json(indent=2, exclude_none=False) + "\n"
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8")
    info(f"已写出 {type(document).__name__} 到 {path}", logger_config)


def write_csv(frame: pd.DataFrame, path: Optional[Union[str, Path]] = None, digits: int = 17) -> None:
    """
    以 %.{digits}g 写出CSV（17 位有效数字可无损往返 double）

    Args:
        frame: 数据表
        path: 输出路径，为空时写到 stdout
        digits: 有效数字位数
    """
    float_format = f"%.{digits}g"
    if path is None:
        frame.to_csv(sys.stdout, index=False, float_format=float_format, lineterminator="\n")
        sys.stdout.flush()
        return
    frame.to_csv(path, index=False, float_format=float_format, lineterminator="\n")
    info(f"已写出 {len(frame)} 行CSV到 {path}", logger_config)
