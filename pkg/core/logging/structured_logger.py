"""
Logging estruturado dos pipelines de simetrização.

Eventos em JSON (máquina) ou console (humano), sempre em stderr para que
stdout carregue apenas relatórios e CSV. Cada execução da CLI recebe um
run_id propagado por contextvars.
"""

import logging
import sys
import time
import uuid
from contextvars import ContextVar
from typing import Any, Dict, Optional, TextIO

import structlog

run_id_var: ContextVar[Optional[str]] = ContextVar('run_id', default=None)

# Casas decimais dos floats emitidos nos eventos
FLOAT_DIGITS = 12


def configure_logging(
    log_level: str = "WARNING",
    json_logs: bool = False,
    include_timestamp: bool = True,
    stream: Optional[TextIO] = None
) -> None:
    """
    Configura structlog sobre o logging da stdlib.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR ou CRITICAL
        json_logs: JSONRenderer em vez de ConsoleRenderer
        include_timestamp: acrescenta timestamp ISO8601 (UTC)
        stream: destino (padrão sys.stderr); reconfigurar troca o handler
    """
    level = getattr(logging, log_level.upper())
    logging.basicConfig(format="%(message)s", stream=stream or sys.stderr, level=level, force=True)

    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
    ]
    if include_timestamp:
        processors.append(structlog.processors.TimeStamper(fmt="iso", utc=True))
    processors += [
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.JSONRenderer() if json_logs else structlog.dev.ConsoleRenderer(colors=False),
    ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.BoundLogger:
    """Logger estruturado do módulo (use __name__)"""
    return structlog.get_logger(name)


def add_run_id_to_context(run_id: Optional[str] = None) -> str:
    """Associa um run_id (uuid4 quando omitido) a todos os eventos seguintes"""
    run_id = run_id or str(uuid.uuid4())
    run_id_var.set(run_id)
    structlog.contextvars.bind_contextvars(run_id=run_id)
    return run_id


def get_current_run_id() -> Optional[str]:
    return run_id_var.get()


def _emit(logger: structlog.BoundLogger, level: str, event: str, fields: Dict[str, Any]) -> None:
    """Descarta campos None, arredonda floats e emite no nível pedido"""
    payload = {
        key: round(value, FLOAT_DIGITS) if isinstance(value, float) else value
        for key, value in fields.items()
        if value is not None
    }
    getattr(logger, level)(event, **payload)


def log_pipeline_start(
    logger: structlog.BoundLogger,
    command: str,
    spec_path: Optional[str] = None,
    **extra_context
) -> Dict[str, Any]:
    """
    Início de um subcomando.

    Returns:
        run_id e start_time, para o log_pipeline_end correspondente
    """
    run_id = get_current_run_id()
    _emit(logger, "info", "pipeline_start", dict(command=command, run_id=run_id, spec_path=spec_path, **extra_context))
    return {"run_id": run_id, "start_time": time.time()}


def log_pipeline_end(
    logger: structlog.BoundLogger,
    command: str,
    exit_code: int,
    start_time: float,
    **extra_context
) -> None:
    """Fim de um subcomando; exit_code ≠ 0 sobe o nível para warning"""
    fields = dict(
        command=command,
        exit_code=exit_code,
        processing_time_ms=int((time.time() - start_time) * 1000),
        **extra_context
    )
    _emit(logger, "info" if exit_code == 0 else "warning", "pipeline_end", fields)


def log_perimeter_result(
    logger: structlog.BoundLogger,
    kind: str,
    total: float,
    ac_part: float,
    jump_part: float,
    cantor_part: float,
    **extra_context
) -> None:
    """
    Resultado de um cálculo de perímetro.

    Args:
        kind: 'symmetral' ou 'tube'
        total: perímetro na janela
        ac_part: parte lateral (absolutamente contínua)
        jump_part: planos de salto
        cantor_part: parte de Cantor
    """
    fields = dict(kind=kind, total=total, ac_part=ac_part, jump_part=jump_part, cantor_part=cantor_part)
    _emit(logger, "debug", "perimeter_result", {**fields, **extra_context})


def log_rigidity_verdict(
    logger: structlog.BoundLogger,
    rigid: bool,
    failures_count: int,
    **extra_context
) -> None:
    _emit(logger, "info", "rigidity_verdict", dict(rigid=rigid, failures_count=failures_count, **extra_context))


def log_witness_constructed(logger: structlog.BoundLogger, kind: str, **parameters) -> None:
    """Construção de uma testemunha (split, jump, cantor ou staircase) com seus parâmetros"""
    _emit(logger, "info", "witness_constructed", dict(kind=kind, **parameters))


def log_error(
    logger: structlog.BoundLogger,
    error_type: str,
    error_message: str,
    command: Optional[str] = None,
    spec_path: Optional[str] = None,
    stacktrace: Optional[str] = None,
    **extra_context
) -> None:
    """
    Falha de um subcomando.

    Args:
        error_type: nome da exceção (PreconditionError, SpecParseError, ...)
        error_message: mensagem mostrada ao usuário
        command: subcomando em execução
        spec_path: documento de perfil processado
        stacktrace: apenas para erros internos
    """
    fields = dict(
        error_type=error_type,
        error_message=error_message,
        command=command,
        spec_path=spec_path,
        stacktrace=stacktrace,
        **extra_context
    )
    _emit(logger, "error", "error", fields)


def log_validation_error(
    logger: structlog.BoundLogger,
    validation_type: str,
    reason: str,
    spec_path: Optional[str] = None,
    **extra_context
) -> None:
    """Documento ou campo rejeitado na leitura (validation_type é o caminho do campo)"""
    fields = dict(validation_type=validation_type, reason=reason, spec_path=spec_path, **extra_context)
    _emit(logger, "warning", "validation_error", fields)


def log_performance_metric(
    logger: structlog.BoundLogger,
    operation: str,
    duration_ms: int,
    success: bool = True,
    **extra_context
) -> None:
    """Duração de uma operação numérica (perimeter_tube, oracle_perimeter)"""
    fields = dict(operation=operation, duration_ms=duration_ms, success=success, **extra_context)
    _emit(logger, "debug", "performance_metric", fields)
