from typing import List, Literal, Optional

from pydantic import Field, field_validator

from src.config.env import get_settings
from src.models.common import DocumentBase


class RunConfig(DocumentBase):
    """命令行参数经校验后的运行配置"""
    command: Literal["synth", "transform", "stft", "radial", "reduce", "verify"] = Field(..., description="子命令")
    input: Optional[str] = Field(None, description="输入文件路径")
    out: Optional[str] = Field(None, description="输出文件路径，缺省写 stdout")
    dim: Optional[int] = Field(None, ge=1, description="维度")
    degree: Optional[int] = Field(None, ge=0, description="次数上界 N")
    quad_order: Optional[int] = Field(None, ge=1, description="每轴求积阶数 n")
    tol: float = Field(default_factory=lambda: get_settings().default_tol, gt=0, description="径向判定容差")
    grid: List[str] = Field(default_factory=list, description="网格 xmin:xmax:count")
    path: Literal["series", "kernel"] = Field("series", description="Bargmann 变换的求值路径")
    seed: int = Field(default_factory=lambda: get_settings().default_seed, description="随机种子")
    preset: Optional[str] = Field(None, description="synth 预设")
    checks: List[str] = Field(default_factory=list, description="verify 只运行这些检查")

    @field_validator("preset")
    def check_preset(cls, v):
        if v is not None and not v.strip():
            raise ValueError("preset 不能为空白字符串")
        return v
