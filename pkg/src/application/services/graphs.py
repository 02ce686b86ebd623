from collections import defaultdict
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from src.core.config import config
from src.core.exceptions import (
    GenerationRetryError,
    InvalidParameterError,
    SizeLimitError,
)
from src.core.logging import get_logger
from src.core.models.graph import Edge, Graph, LiftProjection, Signing
from src.core.utils.retry import RetryConfig, retry_with_backoff
from src.core.utils.rng import make_rng

logger = get_logger(__name__)


def make_complete(k: int) -> Graph:
    """
    Полный граф K_k
    :param k: число вершин, не меньше 2
    :return: K_k
    """
    if k < 2:
        raise InvalidParameterError("k должно быть не меньше 2.")
    return Graph.from_edges(k, combinations(range(k), 2))


def make_cycle(n: int) -> Graph:
    """
    Цикл C_n с ребрами (i, i+1 mod n)
    :param n: число вершин, не меньше 3
    :return: C_n
    """
    if n < 3:
        raise InvalidParameterError("цикл определен для n >= 3.")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def railway_vertex(i: int, j: int, k: int) -> int:
    """Номер вершины (i, j) железнодорожного графа: i + j*2k"""
    return (i % (2 * k)) + j * 2 * k


def make_railway(k: int) -> Tuple[Graph, Signing]:
    """
    3-регулярный "железнодорожный" граф на {0..2k-1} x {0,1}: два цикла длины 2k
    и шпалы (i,0)-(i,1). Разметка равна -1 ровно на шпалах с четным i.
    :param k: параметр, не меньше 2
    :return: граф и его каноническая разметка
    """
    if k < 2:
        raise InvalidParameterError("k должно быть не меньше 2.")

    edges: List[Edge] = []
    signs: List[int] = []
    for j in (0, 1):
        for i in range(2 * k):
            edges.append((railway_vertex(i, j, k), railway_vertex(i + 1, j, k)))
            signs.append(1)
    for i in range(2 * k):
        edges.append((railway_vertex(i, 0, k), railway_vertex(i, 1, k)))
        signs.append(-1 if i % 2 == 0 else 1)

    return Graph.from_edges(4 * k, edges), Signing(signs=tuple(signs))


def disjoint_cliques(copies: int, d: int) -> Graph:
    """
    Несвязное объединение copies копий K_{d+1}
    :param copies: число компонент
    :param d: степень
    :return: граф на copies*(d+1) вершинах
    """
    if copies < 1 or d < 1:
        raise InvalidParameterError("copies и d должны быть положительными.")
    size = d + 1
    edges = [
        (c * size + a, c * size + b)
        for c in range(copies)
        for a, b in combinations(range(size), 2)
    ]
    return Graph.from_edges(copies * size, edges)


def _suitable(edges: Set[Edge], potential_edges: Dict[int, int]) -> bool:
    # остались ли допустимые пары среди вершин с неразмещенными полуребрами
    if not potential_edges:
        return True
    for s1 in potential_edges:
        for s2 in potential_edges:
            if s1 == s2:
                break
            a, b = (s1, s2) if s1 < s2 else (s2, s1)
            if (a, b) not in edges:
                return True
    return False


def _pair_stubs(stubs: List[int], rng: np.random.Generator) -> Set[Edge]:
    """
    Одна попытка модели конфигураций: перемешать полуребра, принять простые пары,
    оставшиеся полуребра перемешать заново.
    """
    edges: Set[Edge] = set()
    while stubs:
        potential: Dict[int, int] = defaultdict(int)
        order = rng.permutation(len(stubs))
        it = iter([stubs[i] for i in order])
        for s1, s2 in zip(it, it):
            a, b = (s1, s2) if s1 < s2 else (s2, s1)
            if a != b and (a, b) not in edges:
                edges.add((a, b))
            else:
                potential[s1] += 1
                potential[s2] += 1

        if not _suitable(edges, potential):
            raise GenerationRetryError("не осталось допустимых пар полуребер.")

        stubs = [v for v, count in potential.items() for _ in range(count)]
    return edges


def random_regular(n: int, d: int, seed: Optional[int] = None) -> Graph:
    """
    Случайный простой d-регулярный граф на n вершинах (модель конфигураций с
    отбрасыванием петель и кратных ребер). Для d > (n-1)/2 строится дополнение
    графа степени n-1-d.
    :param n: число вершин
    :param d: степень
    :param seed: зерно генератора
    :return: граф
    """
    if (n * d) % 2 != 0:
        raise InvalidParameterError("n * d должно быть четным.")
    if not 0 <= d < n:
        raise InvalidParameterError("должно выполняться 0 <= d < n.")

    complement = d > (n - 1) // 2
    degree = n - 1 - d if complement else d
    rng = make_rng(seed)

    @retry_with_backoff(RetryConfig(max_attempts=config.RANDOM_REGULAR_MAX_ATTEMPTS))
    def _try_creation() -> Set[Edge]:
        return _pair_stubs(list(range(n)) * degree, rng)

    edges = _try_creation() if degree > 0 else set()
    if complement:
        edges = {e for e in combinations(range(n), 2) if e not in edges}

    logger.debug(f"сгенерирован случайный {d}-регулярный граф на {n} вершинах")
    return Graph.from_edges(n, sorted(edges))


def random_biregular(
    left: int, right: int, c: int, d: int, seed: Optional[int] = None
) -> Graph:
    """
    Случайный простой двудольный граф: левые вершины 0..left-1 степени c,
    правые left..left+right-1 степени d.
    :param left: размер левой доли
    :param right: размер правой доли
    :param c: степень левых вершин
    :param d: степень правых вершин
    :param seed: зерно генератора
    :return: граф
    """
    if left * c != right * d:
        raise InvalidParameterError(
            f"нарушено условие рукопожатия: {left}*{c} != {right}*{d}."
        )
    if c > right or d > left or c < 0 or d < 0:
        raise InvalidParameterError("степени не помещаются в доли.")

    rng = make_rng(seed)

    @retry_with_backoff(RetryConfig(max_attempts=config.RANDOM_REGULAR_MAX_ATTEMPTS))
    def _try_creation() -> Set[Edge]:
        left_stubs = [v for v in range(left) for _ in range(c)]
        right_stubs = [left + v for v in range(right) for _ in range(d)]
        edges: Set[Edge] = set()
        while left_stubs:
            order = rng.permutation(len(right_stubs))
            shuffled = [right_stubs[i] for i in order]
            left_rest: List[int] = []
            right_rest: List[int] = []
            for a, b in zip(left_stubs, shuffled):
                if (a, b) in edges:
                    left_rest.append(a)
                    right_rest.append(b)
                else:
                    edges.add((a, b))
            if left_rest and all(
                (a, b) in edges for a in set(left_rest) for b in set(right_rest)
            ):
                raise GenerationRetryError("не осталось допустимых пар полуребер.")
            left_stubs, right_stubs = left_rest, right_rest
        return edges

    edges = _try_creation() if c > 0 else set()
    return Graph.from_edges(left + right, sorted(edges))


def two_lift(graph: Graph, signing: Signing) -> Tuple[Graph, LiftProjection]:
    """
    2-лифт графа по разметке: вершины x_0 = x, x_1 = x + n.
    Ребро со знаком +1 дает (x_0,y_0), (x_1,y_1);
    со знаком -1 дает (x_0,y_1), (x_1,y_0).
    :param graph: базовый граф
    :param signing: разметка, выровненная по ребрам графа
    :return: лифт и накрывающее отображение
    """
    signing.check_aligned(graph)
    n = graph.n
    edges: List[Edge] = []
    for (x, y), s in zip(graph.edges, signing.signs):
        if s == 1:
            edges.append((x, y))
            edges.append((x + n, y + n))
        else:
            edges.append((x, y + n))
            edges.append((x + n, y))
    return Graph.from_edges(2 * n, edges), LiftProjection(parent_n=n)


def covering_check(lifted: Graph, base: Graph, proj: LiftProjection) -> bool:
    """
    Проверить, что proj является 2:1 накрытием: у каждой вершины лифта ровно
    один сосед в слое каждого соседа ее проекции и нет других соседей.
    :param lifted: лифт
    :param base: базовый граф
    :param proj: накрывающее отображение
    :return: True если накрытие корректно
    """
    if lifted.n != 2 * base.n or proj.parent_n != base.n:
        raise InvalidParameterError(
            f"размер лифта {lifted.n} не равен удвоенному размеру базы {base.n}."
        )
    for v in range(lifted.n):
        x = proj.project(v)
        projected = [proj.project(w) for w in lifted.neighbors[v]]
        if len(projected) != len(set(projected)):
            return False
        if set(projected) != set(base.neighbors[x]):
            return False
    return True


def edge_count_between(
    graph: Graph, s: Iterable[int], t: Iterable[int]
) -> int:
    """
    e(S,T) = сумма A_uv по упорядоченным парам (u,v) из S x T.
    Ребро внутри S ∩ T считается дважды, что совпадает с квадратичной формой 1_S A 1_T.
    :param graph: граф
    :param s: множество S
    :param t: множество T
    :return: число ребер между S и T
    """
    s_set = graph.vertex_range_check(s)
    t_set = graph.vertex_range_check(t)
    count = 0
    for u, v in graph.edges:
        count += (u in s_set and v in t_set) + (v in s_set and u in t_set)
    return count


def connected_subsets(graph: Graph, t: int) -> Iterator[FrozenSet[int]]:
    """
    Перечислить все подмножества вершин размера <= t, индуцирующие связный подграф,
    каждое ровно один раз. Рост от минимальной вершины с исключающей окрестностью.
    :param graph: граф
    :param t: предельный размер
    :return: поток подмножеств
    """
    if t < 1:
        raise InvalidParameterError("t должно быть не меньше 1.")
    nbrs = graph.neighbors

    def _extend(
        subset: FrozenSet[int], extension: List[int], closed: FrozenSet[int], root: int
    ) -> Iterator[FrozenSet[int]]:
        yield subset
        if len(subset) == t:
            return
        ext = list(extension)
        while ext:
            w = ext.pop()
            new_ext = ext + [
                u for u in nbrs[w] if u > root and u not in closed
            ]
            yield from _extend(
                subset | {w}, new_ext, closed | nbrs[w] | {w}, root
            )

    for root in range(graph.n):
        ext = [u for u in nbrs[root] if u > root]
        yield from _extend(frozenset({root}), ext, nbrs[root] | {root}, root)


def connected_subsets_of_size(
    graph: Graph, size: int, limit: Optional[int] = None
) -> List[FrozenSet[int]]:
    """
    Связные подмножества ровно заданного размера с проверкой предела перебора
    :param graph: граф
    :param size: размер
    :param limit: предел числа просмотренных подмножеств
    :return: список подмножеств
    """
    limit = config.CONNECTED_SUBSETS_LIMIT if limit is None else limit
    result = []
    for seen, subset in enumerate(connected_subsets(graph, size), start=1):
        if seen > limit:
            logger.error(f"перебор связных подмножеств превысил предел {limit}")
            raise SizeLimitError("перебор связных подмножеств", limit, seen)
        if len(subset) == size:
            result.append(subset)
    return result


def _orderly_regular(n: int, d: int) -> Iterator[List[Edge]]:
    """
    Помеченные связные d-регулярные графы в BFS-нумерации: вершины обрабатываются
    по порядку, новые соседи получают наименьшие свободные номера.
    """
    adj: List[Set[int]] = [set() for _ in range(n)]

    def rec(v: int, touched: int) -> Iterator[List[Edge]]:
        if v == n:
            yield sorted((a, b) for a in range(n) for b in adj[a] if a < b)
            return
        if v >= touched:
            return
        need = d - len(adj[v])
        if need == 0:
            yield from rec(v + 1, touched)
            return
        old = [w for w in range(v + 1, touched) if len(adj[w]) < d and w not in adj[v]]
        for k_new in range(0, need + 1):
            k_old = need - k_new
            if touched + k_new > n or k_old > len(old):
                continue
            new = list(range(touched, touched + k_new))
            for chosen in combinations(old, k_old):
                picked = list(chosen) + new
                for w in picked:
                    adj[v].add(w)
                    adj[w].add(v)
                yield from rec(v + 1, touched + k_new)
                for w in picked:
                    adj[v].discard(w)
                    adj[w].discard(v)

    yield from rec(0, 1)


def connected_regular_graphs(n: int, d: int) -> List[Graph]:
    """
    Все связные простые d-регулярные графы на n вершинах с точностью до изоморфизма
    :param n: число вершин
    :param d: степень
    :return: по одному представителю на класс изоморфизма
    """
    if (n * d) % 2 != 0 or not 0 < d < n:
        raise InvalidParameterError("нет d-регулярных графов с такими n и d.")

    buckets: Dict[str, List[nx.Graph]] = defaultdict(list)
    found: List[Graph] = []
    for edges in _orderly_regular(n, d):
        candidate = Graph.from_edges(n, edges)
        g = candidate.to_networkx()
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
        if any(nx.is_isomorphic(g, other) for other in buckets[key]):
            continue
        buckets[key].append(g)
        found.append(candidate)

    logger.info(f"найдено {len(found)} связных {d}-регулярных графов на {n} вершинах")
    return found
