"""JSON 文档模型、读写工具与网格解析"""
import json
import math

import numpy as np
import pandas as pd
import pytest
from pydantic import ValidationError

from src.core.fock_space import FockSeries, sample_expansion
from src.core.hermite_core import HermiteExpansion
from src.core.radial_analysis import radial_test
from src.exceptions import (
    DimensionMismatchError,
    InvalidArgumentError,
    NotRadialError,
    SchemaError,
    VerificationFailedError,
    exit_code_for,
    run_with_handlers,
)
from src.models import (
    CoefficientDocument,
    ComplexValue,
    RadialProfileDocument,
    RadialReportDocument,
    RunConfig,
    SampledFunctionDocument,
)
from src.utils.grid import GridAxis, expand_axes, parallel_map, phase_points
from src.utils.json_utils import load_function_input, read_json, write_csv, write_json


def _terms(*items):
    return [{"alpha": list(alpha), "re": re, "im": im} for alpha, re, im in items]


# ---------------------------------------------------------------- 系数文档

def test_coefficient_document_round_trip():
    f = HermiteExpansion(2, {(2, 0): 1.0, (0, 2): 1 - 2j})
    document = CoefficientDocument.from_series(f)
    assert document.space is None
    assert document.degree is None
    again = CoefficientDocument.model_validate_json(document.model_dump_json())
    assert again.to_expansion() == f


def test_coefficient_document_keeps_explicit_degree():
    f = HermiteExpansion(1, {(0,): 1.0}, degree_bound=4)
    assert CoefficientDocument.from_series(f).degree == 4
    assert CoefficientDocument.from_series(f).to_expansion().degree_bound == 4


def test_coefficient_document_marks_fock_space():
    document = CoefficientDocument.from_series(FockSeries.basis((1,)))
    assert document.space == "fock"
    assert isinstance(document.to_fock(), FockSeries)


def test_coefficient_document_accepts_unsorted_terms():
    document = CoefficientDocument(dim=1, terms=_terms(((2,), 1.0, 0.0), ((0,), 2.0, 0.0)))
    assert list(document.to_expansion().terms) == [(0,), (2,)]


def test_coefficient_document_rejects_duplicates():
    with pytest.raises(ValidationError):
        CoefficientDocument(dim=1, terms=_terms(((1,), 1.0, 0.0), ((1,), 2.0, 0.0)))


def test_coefficient_document_rejects_length_mismatch():
    with pytest.raises(ValidationError):
        CoefficientDocument(dim=2, terms=_terms(((1,), 1.0, 0.0)))


def test_coefficient_document_rejects_negative_and_unknown_fields():
    with pytest.raises(ValidationError):
        CoefficientDocument(dim=1, terms=_terms(((-1,), 1.0, 0.0)))
    with pytest.raises(ValidationError):
        CoefficientDocument.model_validate({"dim": 1, "terms": [], "extra": 1})


def test_coefficient_document_rejects_nan():
    with pytest.raises(ValidationError):
        CoefficientDocument.model_validate({"dim": 1, "terms": [{"alpha": [0], "re": math.nan}]})


# ---------------------------------------------------------------- 采样与报告

def test_sampled_document_round_trip():
    samples = sample_expansion(HermiteExpansion(2, {(1, 1): 1j}), 4)
    document = SampledFunctionDocument.from_samples(samples)
    assert document.weighting == "gaussian-factored"
    assert len(document.values_re) == 16
    np.testing.assert_allclose(document.to_samples().values, samples.values)


def test_sampled_document_size_check():
    with pytest.raises(ValidationError):
        SampledFunctionDocument(dim=2, n=3, values_re=[0.0] * 8, values_im=[0.0] * 8)


def test_radial_report_document(h2_shell):
    document = RadialReportDocument.from_report(radial_test(h2_shell))
    data = json.loads(document.model_dump_json())
    assert data["is_radial"] is True
    assert data["profile"][1]["re"] == pytest.approx(1 / math.sqrt(2))
    assert set(data) == {"is_radial", "odd_mass", "shell_deviations", "profile", "tol"}


def test_hermite_document_json_has_only_dim_and_terms():
    data = json.loads(CoefficientDocument.from_series(HermiteExpansion(1, {(0,): 1.0})).model_dump_json())
    assert set(data) == {"dim", "terms"}
    fock = json.loads(CoefficientDocument.from_series(FockSeries.basis((1,))).model_dump_json())
    assert fock["space"] == "fock"
    assert "degree" not in fock
    padded = json.loads(CoefficientDocument.from_series(HermiteExpansion(1, {(0,): 1.0}, 3)).model_dump_json())
    assert padded["degree"] == 3


def test_non_radial_report_keeps_null_profile(h2_antishell):
    data = json.loads(RadialReportDocument.from_report(radial_test(h2_antishell)).model_dump_json())
    assert data["profile"] is None


def test_radial_profile_document():
    document = RadialProfileDocument(origin_dim=3, c=[ComplexValue(re=1.0), ComplexValue(re=0.0, im=2.0)])
    profile = document.to_profile()
    assert profile.dim_of_origin == 3
    assert profile.c == (1 + 0j, 2j)
    assert RadialProfileDocument.from_profile(profile) == document


def test_run_config_validation():
    assert RunConfig(command="verify").tol == pytest.approx(1e-9)
    with pytest.raises(ValidationError):
        RunConfig(command="verify", tol=0.0)
    with pytest.raises(ValidationError):
        RunConfig(command="synth", degree=-1)
    with pytest.raises(ValidationError):
        RunConfig(command="plot")


# ---------------------------------------------------------------- 读写

def test_read_json_errors(tmp_path):
    with pytest.raises(SchemaError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_json(bad)
    array = tmp_path / "array.json"
    array.write_text("[]", encoding="utf-8")
    with pytest.raises(SchemaError):
        read_json(array)


def test_load_function_input_detects_kind(tmp_path):
    coefficients = tmp_path / "f.json"
    coefficients.write_text(json.dumps({"dim": 1, "terms": _terms(((0,), 1.0, 0.0))}), encoding="utf-8")
    samples = tmp_path / "g.json"
    samples.write_text(json.dumps({"dim": 1, "n": 2, "values_re": [1, 1], "values_im": [0, 0]}),
                       encoding="utf-8")
    assert isinstance(load_function_input(coefficients), CoefficientDocument)
    assert isinstance(load_function_input(samples), SampledFunctionDocument)


def test_load_function_input_schema_error(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"dim": 2, "terms": _terms(((0,), 1.0, 0.0))}), encoding="utf-8")
    with pytest.raises(SchemaError):
        load_function_input(path)


def test_write_json_to_file(tmp_path):
    path = tmp_path / "out.json"
    write_json(ComplexValue(re=1.5, im=-2.0), path)
    assert json.loads(path.read_text(encoding="utf-8")) == {"re": 1.5, "im": -2.0}


def test_write_csv_round_trips_doubles(tmp_path):
    values = [1 / 3, math.pi * 1e-20, -2.0 ** 0.5]
    path = tmp_path / "out.csv"
    write_csv(pd.DataFrame({"v": values}), path)
    assert pd.read_csv(path)["v"].tolist() == values


# ---------------------------------------------------------------- 网格

def test_grid_axis_parse():
    axis = GridAxis.parse("-1:1:5")
    np.testing.assert_allclose(axis.values(), [-1, -0.5, 0, 0.5, 1])
    for bad in ("1:2", "a:b:c", "2:1:3", "0:1:0"):
        with pytest.raises((InvalidArgumentError, ValidationError)):
            GridAxis.parse(bad)


def test_expand_axes_counts():
    assert len(expand_axes(["0:1:2"], 3)) == 6
    x_axis, xi_axis = expand_axes(["0:1:2", "5:5:1"], 1)
    assert xi_axis.lower == 5
    with pytest.raises(InvalidArgumentError):
        expand_axes(["0:1:2"] * 3, 2)


def test_phase_points_row_major():
    points = phase_points(["0:1:2", "5:6:2"], 1)
    np.testing.assert_allclose(points, [[0, 5], [0, 6], [1, 5], [1, 6]])


def test_phase_points_default_is_origin():
    np.testing.assert_allclose(phase_points([], 2), [[0, 0, 0, 0]])


@pytest.mark.parametrize("workers", [1, 4])
def test_parallel_map_preserves_order(workers):
    items = list(range(300))
    assert parallel_map(lambda v: v * v, items, workers, chunk_size=7) == [v * v for v in items]


# ---------------------------------------------------------------- 退出码

def test_exit_codes():
    assert exit_code_for(DimensionMismatchError("x")) == 2
    assert exit_code_for(SchemaError("x")) == 2
    assert exit_code_for(NotRadialError("x", None)) == 3
    assert exit_code_for(VerificationFailedError("x")) == 1
    assert exit_code_for(RuntimeError("x")) == 1


def test_run_with_handlers_maps_exceptions():
    def raise_(exc):
        def func():
            raise exc
        return func

    assert run_with_handlers(lambda: 0) == 0
    assert run_with_handlers(raise_(InvalidArgumentError("bad"))) == 2
    assert run_with_handlers(raise_(NotRadialError("no", None))) == 3
    assert run_with_handlers(raise_(ZeroDivisionError())) == 1
    assert run_with_handlers(raise_(FileNotFoundError("gone"))) == 2


def test_unexpected_exception_is_logged_as_critical(monkeypatch):
    import src.exceptions.handlers as handlers

    messages = []
    monkeypatch.setattr(handlers, "critical", lambda message, logger_config=None: messages.append(message))
    monkeypatch.setattr(handlers, "error", lambda message, logger_config=None: messages.append("error"))
    assert run_with_handlers(lambda: 1 / 0) == 1
    assert len(messages) == 1
    assert "ZeroDivisionError" in messages[0]
