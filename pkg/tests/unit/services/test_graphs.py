import pytest

from src.application.services.graphs import (
    connected_regular_graphs,
    connected_subsets,
    connected_subsets_of_size,
    covering_check,
    disjoint_cliques,
    edge_count_between,
    make_complete,
    make_cycle,
    make_railway,
    random_biregular,
    random_regular,
    two_lift,
)
from src.core.exceptions import InvalidParameterError, SizeLimitError
from src.core.models.graph import Graph, LiftProjection, Signing
from tests.fixtures.unit.graphs import cycle4, k4, k4_one_negative  # noqa: F401


@pytest.mark.unit
def test_make_complete(k4):
    """
    Тест построения полного графа
    """
    assert k4.n == 4
    assert k4.m == 6
    assert k4.is_regular(3)
    assert k4.is_connected()


@pytest.mark.unit
@pytest.mark.parametrize("k", [0, 1])
def test_make_complete_too_small(k):
    """
    Тест отказа для K_0 и K_1
    """
    with pytest.raises(InvalidParameterError):
        make_complete(k)


@pytest.mark.unit
def test_make_railway_structure():
    """
    Тест железнодорожного графа: 3-регулярный, отрицательны четные шпалы
    """
    graph, signing = make_railway(3)

    assert graph.n == 12
    assert graph.m == 18
    assert graph.is_regular(3)
    assert signing.negative_count == 3


@pytest.mark.unit
def test_disjoint_cliques_components():
    """
    Тест несвязного объединения клик
    """
    graph = disjoint_cliques(3, 3)

    assert graph.n == 12
    assert graph.is_regular(3)
    assert len(graph.components()) == 3
    assert not graph.is_connected()


@pytest.mark.unit
def test_graph_rejects_loops_and_multi_edges():
    """
    Тест валидации графа: петли и кратные ребра запрещены
    """
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidParameterError):
        Graph.from_edges(3, [(0, 3)])


@pytest.mark.unit
def test_two_lift_is_covering(k4, k4_one_negative):
    """
    Тест 2-лифта: вдвое больше вершин и ребер, накрытие корректно
    """
    lifted, proj = two_lift(k4, k4_one_negative)

    assert lifted.n == 8
    assert lifted.m == 12
    assert lifted.is_regular(3)
    assert covering_check(lifted, k4, proj)


@pytest.mark.unit
def test_two_lift_negative_edge_crosses_fibers(k4, k4_one_negative):
    """
    Тест 2-лифта: ребро со знаком -1 соединяет разные слои
    """
    lifted, _ = two_lift(k4, k4_one_negative)

    assert lifted.has_edge(0, 5)
    assert lifted.has_edge(4, 1)
    assert not lifted.has_edge(0, 1)
    assert lifted.has_edge(2, 3)
    assert lifted.has_edge(6, 7)


@pytest.mark.unit
def test_two_lift_all_positive_is_two_copies(k4):
    """
    Тест 2-лифта по положительной разметке: две несвязные копии
    """
    lifted, _ = two_lift(k4, Signing.all_positive(k4))

    assert len(lifted.components()) == 2


@pytest.mark.unit
def test_two_lift_misaligned_signing(k4):
    """
    Тест отказа при разметке неверной длины
    """
    with pytest.raises(InvalidParameterError):
        two_lift(k4, Signing(signs=(1, 1)))


@pytest.mark.unit
def test_covering_check_rejects_cycle(k4):
    """
    Тест проверки накрытия: C_8 не накрывает K_4
    """
    assert not covering_check(make_cycle(8), k4, LiftProjection(parent_n=4))


@pytest.mark.unit
def test_edge_count_between_counts_inner_edges_twice(k4):
    """
    Тест e(S,T): ребро внутри S ∩ T считается дважды
    """
    assert edge_count_between(k4, [0, 1], [0, 1]) == 2
    assert edge_count_between(k4, [0], [1, 2, 3]) == 3
    assert edge_count_between(k4, [0, 1], [2, 3]) == 4


@pytest.mark.unit
def test_connected_subsets_cycle(cycle4):
    """
    Тест перечисления связных подмножеств C_4 размера не больше 3
    """
    subsets = list(connected_subsets(cycle4, 3))

    assert len(subsets) == 12
    assert len(set(subsets)) == 12
    assert frozenset({0, 2}) not in subsets
    assert sum(1 for s in subsets if len(s) == 3) == 4


@pytest.mark.unit
def test_connected_subsets_complete(k4):
    """
    Тест перечисления: в K_4 связны все непустые подмножества
    """
    assert len(set(connected_subsets(k4, 4))) == 15


@pytest.mark.unit
def test_connected_subsets_of_size_limit(k4):
    """
    Тест предела перебора связных подмножеств
    """
    assert len(connected_subsets_of_size(k4, 2)) == 6
    with pytest.raises(SizeLimitError):
        connected_subsets_of_size(k4, 4, limit=5)


@pytest.mark.unit
def test_random_regular_is_deterministic():
    """
    Тест случайного регулярного графа: простой, регулярный, воспроизводимый
    """
    first = random_regular(20, 3, seed=11)
    second = random_regular(20, 3, seed=11)

    assert first == second
    assert first.is_regular(3)
    assert first.m == 30


@pytest.mark.unit
def test_random_regular_dense_uses_complement():
    """
    Тест плотного случая через дополнение
    """
    graph = random_regular(10, 7, seed=3)

    assert graph.is_regular(7)


@pytest.mark.unit
@pytest.mark.parametrize("n, d", [(5, 3), (4, 4)])
def test_random_regular_invalid(n, d):
    """
    Тест отказа для нечетного n·d и d >= n
    """
    with pytest.raises(InvalidParameterError):
        random_regular(n, d)


@pytest.mark.unit
def test_random_biregular_degrees():
    """
    Тест двудольного графа с заданными степенями долей
    """
    graph = random_biregular(4, 8, 4, 2, seed=5)

    assert graph.degrees[:4] == (4, 4, 4, 4)
    assert graph.degrees[4:] == (2,) * 8
    assert all(u < 4 <= v for u, v in graph.edges)


@pytest.mark.unit
def test_random_biregular_handshake():
    """
    Тест отказа при нарушенном условии рукопожатия
    """
    with pytest.raises(InvalidParameterError):
        random_biregular(4, 8, 3, 2)


@pytest.mark.unit
@pytest.mark.parametrize("n, d, expected", [(4, 3, 1), (6, 3, 2), (6, 4, 1)])
def test_connected_regular_graphs_counts(n, d, expected):
    """
    Тест перечисления связных регулярных графов с точностью до изоморфизма
    """
    graphs = connected_regular_graphs(n, d)

    assert len(graphs) == expected
    assert all(g.is_regular(d) and g.is_connected() for g in graphs)


@pytest.mark.unit
@pytest.mark.slow
def test_connected_cubic_graphs_on_eight_vertices():
    """
    Тест перечисления: связных кубических графов на 8 вершинах ровно 5
    """
    assert len(connected_regular_graphs(8, 3)) == 5
