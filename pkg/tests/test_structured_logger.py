"""Testes unitários para o logging estruturado"""
import io
import json

import pytest

from config import settings
from core.logging import (
    add_run_id_to_context,
    configure_logging,
    get_current_run_id,
    get_logger,
    log_error,
    log_perimeter_result,
    log_pipeline_end,
    log_pipeline_start,
    log_witness_constructed,
)


@pytest.fixture
def json_stream():
    """Logs JSON em memória, restaurando a configuração dos testes ao final"""
    stream = io.StringIO()
    configure_logging(log_level="DEBUG", json_logs=True, include_timestamp=False, stream=stream)
    yield stream
    configure_logging(log_level="WARNING", json_logs=False, include_timestamp=settings.log_include_timestamp)


def records(stream: io.StringIO):
    return [json.loads(line) for line in stream.getvalue().splitlines() if line.strip()]


@pytest.mark.unit
class TestStructuredLogger:
    """Testes para os eventos padronizados"""

    def test_run_id_no_contexto(self, json_stream):
        """Testa que o run_id entra em todos os eventos"""
        run_id = add_run_id_to_context("run-123")
        logger = get_logger("tests.logging")
        context = log_pipeline_start(logger, "perimeter", spec_path="ball.profile")
        log_pipeline_end(logger, "perimeter", 0, context["start_time"])

        events = records(json_stream)
        assert run_id == get_current_run_id() == "run-123"
        assert [e["event"] for e in events] == ["pipeline_start", "pipeline_end"]
        assert all(e["run_id"] == "run-123" for e in events)
        assert events[0]["spec_path"] == "ball.profile"
        assert events[1]["exit_code"] == 0

    def test_floats_arredondados(self, json_stream):
        """Testa o arredondamento a 12 casas no resultado de perímetro"""
        logger = get_logger("tests.logging")
        log_perimeter_result(logger, "symmetral", 1.0 / 3.0, 0.1 + 0.2, 0.0, 0.0, window="(-inf,inf)")
        (event,) = records(json_stream)
        assert event["event"] == "perimeter_result"
        assert event["total"] == 0.333333333333
        assert event["ac_part"] == 0.3
        assert event["window"] == "(-inf,inf)"

    def test_erro_e_testemunha(self, json_stream):
        """Testa níveis e campos de erro e de testemunha"""
        logger = get_logger("tests.logging")
        log_witness_constructed(logger, "jump", z_bar=1.0, tau_norm=0.5)
        log_error(logger, "PreconditionError", "sem salto", command="witness")
        witness, error = records(json_stream)
        assert witness["level"] == "info" and witness["kind"] == "jump"
        assert error["level"] == "error"
        assert error["error_type"] == "PreconditionError"
        assert "spec_path" not in error

    def test_fim_com_erro_e_warning(self, json_stream):
        """Testa que exit_code ≠ 0 sobe o nível para warning"""
        logger = get_logger("tests.logging")
        log_pipeline_end(logger, "rigidity", 3, 0.0)
        (event,) = records(json_stream)
        assert event["level"] == "warning"
