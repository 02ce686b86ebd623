import time
from typing import Dict, Tuple

from prometheus_client import Counter, Histogram, start_http_server

from src.core.config import config
from src.core.logging import get_logger

logger = get_logger(__name__)

LIFTS_PERFORMED = Counter(
    "lift_expanders_lifts_total",
    "количество выполненных 2-лифтов",
    ["strategy"],
)
EIGENSOLVES = Counter(
    "lift_expanders_eigensolves_total", "количество полных спектральных проверок уровня"
)
LEVEL_NOT_CONVERGED = Counter(
    "lift_expanders_level_not_converged_total",
    "количество уровней, не достигших целевого радиуса",
    ["strategy"],
)
LEVEL_LATENCY = Histogram(
    "lift_expanders_level_latency_seconds",
    "время построения одного уровня",
    ["strategy"],
)

_level_start_times: Dict[Tuple[str, int], float] = {}


def level_started_metrics(strategy: str, level: int):
    """Метрика для сбора времени старта уровня"""
    _level_start_times[(strategy, level)] = time.perf_counter()


def level_finished_metrics(strategy: str, level: int, converged: bool = True) -> float:
    """
    Метрика завершения уровня
    :return: длительность уровня в секундах
    """
    duration = 0.0
    start_time = _level_start_times.pop((strategy, level), None)
    if start_time is not None:
        duration = time.perf_counter() - start_time
        LEVEL_LATENCY.labels(strategy=strategy).observe(duration)

    LIFTS_PERFORMED.labels(strategy=strategy).inc()
    if not converged:
        LEVEL_NOT_CONVERGED.labels(strategy=strategy).inc()
    return duration


def eigensolve_metrics():
    EIGENSOLVES.inc()


def start_metrics_server() -> bool:
    """
    Поднять http-экспозицию метрик, если задан METRICS_PORT
    :return: запущен ли сервер
    """
    if config.METRICS_PORT <= 0:
        return False
    start_http_server(config.METRICS_PORT)
    logger.info(f"метрики доступны на порту {config.METRICS_PORT}")
    return True
