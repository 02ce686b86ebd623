import pytest
from pydantic import ValidationError

from src.core.models.signing import SearchParams


@pytest.mark.unit
def test_search_params_derived_thresholds():
    """
    Тест выводимых порогов SearchParams
    """
    params = SearchParams(d=3)

    assert params.target_radius == pytest.approx(2 * 2**0.5)
    assert params.radius_threshold > params.gamma > 3
    assert params.walk_length(32) % 2 == 0
    assert params.sparse_depth(32) == 5


@pytest.mark.unit
def test_search_params_explicit_values_kept():
    """
    Тест: заданные явно l и t_sparse не пересчитываются
    """
    params = SearchParams(d=4, l=6, t_sparse=2, target_radius=3.0)

    assert params.walk_length(1024) == 6
    assert params.sparse_depth(1024) == 2
    assert params.target_radius == 3.0


@pytest.mark.unit
@pytest.mark.parametrize(
    "kwargs",
    [{"d": 0}, {"d": 3, "l": 3}, {"d": 3, "l": 0}, {"d": 3, "t_sparse": 0}],
)
def test_search_params_validation(kwargs):
    """
    Тест отказа для некорректных параметров поиска
    """
    with pytest.raises(ValidationError):
        SearchParams(**kwargs)
