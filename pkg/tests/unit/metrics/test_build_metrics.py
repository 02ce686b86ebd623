from unittest.mock import patch

import pytest
from prometheus_client import REGISTRY

from src.infra.metrics.build import (
    eigensolve_metrics,
    level_finished_metrics,
    level_started_metrics,
    start_metrics_server,
)
from tests.config import config as test_config


def _sample(name: str, labels: dict = None) -> float:
    return REGISTRY.get_sample_value(name, labels or {}) or 0.0


@pytest.mark.unit
def test_level_metrics():
    """
    Тест метрик уровня: счетчики лифтов и несошедшихся уровней, длительность
    """
    labels = {"strategy": "metrics-test"}
    lifts = _sample("lift_expanders_lifts_total", labels)
    failed = _sample("lift_expanders_level_not_converged_total", labels)

    level_started_metrics("metrics-test", 1)
    duration = level_finished_metrics("metrics-test", 1, converged=False)

    assert duration >= 0.0
    assert _sample("lift_expanders_lifts_total", labels) == lifts + 1
    assert _sample("lift_expanders_level_not_converged_total", labels) == failed + 1


@pytest.mark.unit
def test_level_finished_without_start():
    """
    Тест завершения уровня без старта: длительность нулевая
    """
    assert level_finished_metrics("metrics-test", 99) == 0.0


@pytest.mark.unit
def test_eigensolve_metrics():
    """
    Тест счетчика спектральных проверок
    """
    before = _sample("lift_expanders_eigensolves_total")

    eigensolve_metrics()

    assert _sample("lift_expanders_eigensolves_total") == before + 1


@pytest.mark.unit
def test_metrics_server_disabled():
    """
    Тест: сервер метрик не поднимается при METRICS_PORT = 0
    """
    with patch("src.infra.metrics.build.config", test_config):
        with patch.object(test_config, "METRICS_PORT", 0):
            with patch("src.infra.metrics.build.start_http_server") as server:
                assert not start_metrics_server()

    server.assert_not_called()
