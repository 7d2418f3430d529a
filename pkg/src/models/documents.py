from typing import List, Literal, Optional

import numpy as np
from pydantic import Field, field_validator, model_serializer, model_validator

from src.core.fock_space import FockSeries, SampledFunction
from src.core.hermite_core import CoefficientSeries, HermiteExpansion, gauss_hermite
from src.core.radial_analysis import RadialProfile, RadialReport
from src.models.common import ComplexValue, DocumentBase


class TermModel(DocumentBase):
    """单个系数 a_α"""
    alpha: List[int] = Field(..., description="多重指标")
    re: float = Field(..., description="系数实部")
    im: float = Field(0.0, description="系数虚部")

    @field_validator("alpha")
    def check_alpha(cls, v):
        if not v:
            raise ValueError("alpha 不能为空")
        if any(a < 0 for a in v):
            raise ValueError(f"alpha 含负分量: {v}")
        return v


class CoefficientDocument(DocumentBase):
    """HermiteExpansion / FockSeries 的JSON格式

    {"dim": d, "terms": [{"alpha": [..], "re": x, "im": y}, ...]}，Fock 一侧带 "space": "fock"。
    """
    space: Optional[Literal["hermite", "fock"]] = Field(None, description="所在空间，缺省为 L² 一侧")
    dim: int = Field(..., ge=1, description="维度")
    degree: Optional[int] = Field(None, ge=0, description="次数上界 N，缺省为最高次数")
    terms: List[TermModel] = Field(default_factory=list, description="按分次字典序排列的系数")

    @model_validator(mode="after")
    def check_terms(self):
        seen = set()
        for term in self.terms:
            if len(term.alpha) != self.dim:
                raise ValueError(f"alpha {term.alpha} 的长度与 dim={self.dim} 不一致")
            key = tuple(term.alpha)
            if key in seen:
                raise ValueError(f"重复的 alpha: {term.alpha}")
            seen.add(key)
        return self

    @model_serializer(mode="wrap")
    def omit_absent_tags(self, handler):
        # L² 一侧的文档只有 dim 与 terms
        data = handler(self)
        for key in ("space", "degree"):
            if data.get(key) is None:
                data.pop(key, None)
        return data

    @classmethod
    def from_series(cls, series: CoefficientSeries) -> "CoefficientDocument":
        space = "fock" if isinstance(series, FockSeries) else None
        top = max((sum(alpha) for alpha in series.terms), default=0)
        return cls(
            space=space,
            dim=series.dim,
            degree=series.degree_bound if series.degree_bound != top else None,
            terms=[
                TermModel(alpha=list(alpha), re=value.real, im=value.imag)
                for alpha, value in series.terms.items()
            ],
        )

    def _terms(self) -> dict:
        return {tuple(t.alpha): complex(t.re, t.im) for t in self.terms}

    def to_expansion(self) -> HermiteExpansion:
        return HermiteExpansion(self.dim, self._terms(), self.degree)

    def to_fock(self) -> FockSeries:
        return FockSeries(self.dim, self._terms(), self.degree)


class SampledFunctionDocument(DocumentBase):
    """采样函数：{"dim", "n", "values_re", "values_im", "weighting": "gaussian-factored"}，行主序"""
    weighting: Literal["gaussian-factored"] = Field("gaussian-factored",
                                                    description="values 存的是 f(y)·e^{|y|²/2}")
    dim: int = Field(..., ge=1)
    n: int = Field(..., ge=1, description="每轴 Gauss–Hermite 节点数")
    values_re: List[float]
    values_im: List[float]

    @model_validator(mode="after")
    def check_sizes(self):
        expected = self.n ** self.dim
        if len(self.values_re) != expected or len(self.values_im) != expected:
            raise ValueError(f"采样数应为 n^dim = {expected}")
        return self

    @classmethod
    def from_samples(cls, f: SampledFunction) -> "SampledFunctionDocument":
        flat = f.values.reshape(-1)
        return cls(dim=f.dim, n=f.n, values_re=flat.real.tolist(), values_im=flat.imag.tolist())

    def to_samples(self) -> SampledFunction:
        values = np.asarray(self.values_re) + 1j * np.asarray(self.values_im)
        return SampledFunction(self.dim, gauss_hermite(self.n), values)


class RadialProfileDocument(DocumentBase):
    """{"origin_dim": d, "c": [{"re", "im"}, ...]}"""
    origin_dim: int = Field(..., ge=1)
    c: List[ComplexValue] = Field(..., min_length=1)

    @classmethod
    def from_profile(cls, p: RadialProfile) -> "RadialProfileDocument":
        return cls(origin_dim=p.dim_of_origin, c=[ComplexValue.of(v) for v in p.c])

    def to_profile(self) -> RadialProfile:
        return RadialProfile(self.origin_dim, tuple(v.to_complex() for v in self.c))


class RadialReportDocument(DocumentBase):
    """{"is_radial", "odd_mass", "shell_deviations", "profile", "tol"}"""
    is_radial: bool
    odd_mass: float
    shell_deviations: List[float]
    profile: Optional[List[ComplexValue]] = None
    tol: float

    @classmethod
    def from_report(cls, report: RadialReport) -> "RadialReportDocument":
        profile = None
        if report.profile is not None:
            profile = [ComplexValue.of(v) for v in report.profile.c]
        return cls(
            is_radial=report.is_radial,
            odd_mass=report.odd_mass,
            shell_deviations=list(report.shell_deviations),
            profile=profile,
            tol=report.tol,
        )


class CheckResultDocument(DocumentBase):
    """verify 中单项检查的结果；relation 为 "<=" 时 worst 不得超过 bound，">=" 时不得低于 bound"""
    name: str
    description: str
    worst: float
    relation: Literal["<=", ">="] = "<="
    bound: float
    passed: bool


class VerifyReportDocument(DocumentBase):
    seed: int
    passed: bool
    checks: List[CheckResultDocument]
