from pydantic import BaseModel, ConfigDict, Field


class DocumentBase(BaseModel):
    """所有JSON文档的基类：拒绝未知字段与非有限浮点数"""
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class ComplexValue(DocumentBase):
    """复数 {"re": x, "im": y}"""
    re: float = Field(..., description="实部")
    im: float = Field(0.0, description="虚部")

    @classmethod
    def of(cls, value: complex) -> "ComplexValue":
        value = complex(value)
        return cls(re=value.real, im=value.imag)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)
