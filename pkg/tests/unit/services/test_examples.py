import numpy as np
import pytest

from src.application.services.examples import (
    harmonic_number,
    outer_product_matrix,
    outer_product_report,
    tightness_degree_table,
    tightness_family,
)
from src.core.exceptions import InvalidParameterError


@pytest.mark.unit
def test_harmonic_number():
    """
    Тест гармонического числа
    """
    assert harmonic_number(1) == pytest.approx(1.0)
    assert harmonic_number(4) == pytest.approx(25 / 12)


@pytest.mark.unit
def test_outer_product_report():
    """
    Тест матрицы x·x^T: старшее собственное значение H_n, выборочное
    отношение не больше него
    """
    report = outer_product_report(30, samples=500, seed=1)

    assert report.top_eigenvalue == pytest.approx(harmonic_number(30))
    assert report.harmonic == pytest.approx(harmonic_number(30))
    assert 0 < report.sampled_ratio <= report.top_eigenvalue + 1e-9


@pytest.mark.unit
def test_outer_product_matrix_rank_one():
    """
    Тест ранга матрицы x·x^T
    """
    matrix = outer_product_matrix(8)

    assert np.linalg.matrix_rank(matrix.entries) == 1
    assert matrix.entries[0, 0] == pytest.approx(1.0)
    with pytest.raises(InvalidParameterError):
        outer_product_matrix(0)


@pytest.mark.unit
def test_tightness_degree_table():
    """
    Тест таблицы степеней для Δ = 12, t = 1
    """
    table = tightness_degree_table(12, 1)

    assert table == ((24, 24), (6, 60))


@pytest.mark.unit
def test_tightness_degree_table_t2():
    """
    Тест таблицы степеней для Δ = 16, t = 2: знак плюс вне последней строки
    и столбца, кроме диагонали
    """
    table = tightness_degree_table(16, 2)

    assert table[0] == (32, 96, 192)
    assert table[1] == (24, 80, 224)
    assert table[2] == (12, 56, 272)


@pytest.mark.unit
@pytest.mark.parametrize("delta, t", [(1, 1), (12, 0), (0, 1)])
def test_tightness_degree_table_invalid(delta, t):
    """
    Тест отказа при нецелых степенях и некорректных параметрах
    """
    with pytest.raises(InvalidParameterError):
        tightness_degree_table(delta, t)


@pytest.mark.unit
@pytest.mark.slow
def test_tightness_family_rayleigh():
    """
    Тест семейства: отношение Рэлея тестового вектора равно 2Δ и не
    больше радиуса центрированной матрицы
    """
    graph, record = tightness_family(12, 1, 25, seed=3, samples=200)

    assert graph.n == 125
    assert record.tau == 5
    assert record.d == 60
    assert record.class_sizes == (25, 100)
    assert record.class_degrees == (48, 66)
    assert graph.degrees[:25] == (48,) * 25
    assert graph.degrees[25:] == (66,) * 100
    assert record.rayleigh == pytest.approx(24.0)
    assert record.lambda_centered >= record.rayleigh - 1e-9
    assert set(record.block_alpha) == {"0,0", "0,1", "1,1"}
