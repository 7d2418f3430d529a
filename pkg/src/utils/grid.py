import itertools
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.exceptions import InvalidArgumentError

T = TypeVar("T")
R = TypeVar("R")


class GridAxis(BaseModel):
    """单轴网格 xmin:xmax:count"""
    lower: float
    upper: float
    count: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_order(self):
        if self.upper < self.lower:
            raise ValueError(f"网格上界 {self.upper} 小于下界 {self.lower}")
        return self

    @classmethod
    def parse(cls, spec: str) -> "GridAxis":
        parts = spec.split(":")
        if len(parts) != 3:
            raise InvalidArgumentError(f"网格格式应为 xmin:xmax:count，得到 {spec!r}")
        try:
            return cls(lower=float(parts[0]), upper=float(parts[1]), count=int(parts[2]))
        except ValueError as e:
            raise InvalidArgumentError(f"无法解析网格 {spec!r}: {e}")

    def values(self) -> np.ndarray:
        return np.linspace(self.lower, self.upper, self.count)


def expand_axes(specs: Sequence[str], dim: int) -> List[GridAxis]:
    """把 --grid 参数扩成 2d 条轴 (x_1..x_d, ξ_1..ξ_d)

    一条：所有轴共用；两条：x 轴与 ξ 轴各一条；2d 条：逐轴给出。
    """
    axes = [GridAxis.parse(s) for s in specs] or [GridAxis(lower=0.0, upper=0.0, count=1)]
    if len(axes) == 1:
        return axes * (2 * dim)
    if len(axes) == 2:
        return [axes[0]] * dim + [axes[1]] * dim
    if len(axes) == 2 * dim:
        return axes
    raise InvalidArgumentError(f"--grid 需给出 1、2 或 2·dim={2 * dim} 条轴，得到 {len(axes)} 条")


def phase_points(specs: Sequence[str], dim: int) -> np.ndarray:
    """行主序的全网格，形状 (m, 2d)，前 d 列为 x，后 d 列为 ξ"""
    axes = expand_axes(specs, dim)
    return np.array(list(itertools.product(*(axis.values() for axis in axes))), dtype=float)


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int, chunk_size: int = 64) -> List[R]:
    """
    分块并行求值，结果顺序与输入一致

    Args:
        func: 单项函数
        items: 输入序列
        workers: 线程数上限
        chunk_size: 每块大小

    Returns:
        list: 与 items 同序的结果
    """
    if workers <= 1 or len(items) <= chunk_size:
        return [func(item) for item in items]
    chunks = [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = executor.map(lambda chunk: [func(item) for item in chunk], chunks)
        return [value for chunk in results for value in chunk]
