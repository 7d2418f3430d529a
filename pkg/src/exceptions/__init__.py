# src/exceptions/__init__.py
from src.exceptions.errors import (
    FockRadialError,
    DimensionMismatchError,
    InvalidArgumentError,
    ExpansionError,
    SchemaError,
    NotRadialError,
    VerificationFailedError,
)
from src.exceptions.handlers import run_with_handlers, exit_code_for

__all__ = [
    "FockRadialError",
    "DimensionMismatchError",
    "InvalidArgumentError",
    "ExpansionError",
    "SchemaError",
    "NotRadialError",
    "VerificationFailedError",
    "run_with_handlers",
    "exit_code_for",
]
