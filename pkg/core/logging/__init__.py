"""Logging estruturado dos pipelines da CLI (structlog em stderr)"""

from core.logging.structured_logger import (
    get_logger,
    configure_logging,
    add_run_id_to_context,
    get_current_run_id,
    log_pipeline_start,
    log_pipeline_end,
    log_perimeter_result,
    log_rigidity_verdict,
    log_witness_constructed,
    log_error,
    log_validation_error,
    log_performance_metric,
)

__all__ = [
    'get_logger',
    'configure_logging',
    'add_run_id_to_context',
    'get_current_run_id',
    'log_pipeline_start',
    'log_pipeline_end',
    'log_perimeter_result',
    'log_rigidity_verdict',
    'log_witness_constructed',
    'log_error',
    'log_validation_error',
    'log_performance_metric',
]
