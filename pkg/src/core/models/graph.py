from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx

from src.core.exceptions import InvalidParameterError

Edge = Tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Неориентированный граф на вершинах 0..n-1.
    Порядок ребер фиксирован: разметка знаков выравнивается по нему.
    """

    n: int
    edges: Tuple[Edge, ...]
    is_simple: bool = True

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameterError("число вершин не может быть отрицательным.")
        normalized = tuple(_normalize_edge(int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", normalized)
        for u, v in normalized:
            if u == v:
                raise InvalidParameterError(f"петля в вершине {u} запрещена.")
            if u < 0 or v >= self.n:
                raise InvalidParameterError(
                    f"ребро ({u}, {v}) выходит за диапазон [0, {self.n})."
                )
        if self.is_simple and len(set(normalized)) != len(normalized):
            raise InvalidParameterError("кратные ребра в простом графе запрещены.")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        return cls(n=n, edges=tuple(edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """
        Построить граф из networkx; вершины перенумеровываются в порядке sorted()
        :param g: граф networkx
        :return: граф
        """
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = sorted(_normalize_edge(index[u], index[v]) for u, v in g.edges())
        return cls(n=len(nodes), edges=tuple(edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        """Отображение нормализованного ребра в его позицию"""
        return {e: i for i, e in enumerate(self.edges)}

    def index_of(self, u: int, v: int) -> Optional[int]:
        return self.edge_index.get(_normalize_edge(u, v))

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edge_index

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def is_regular(self, d: Optional[int] = None) -> bool:
        if self.n == 0:
            return True
        first = self.degrees[0] if d is None else d
        return all(x == first for x in self.degrees)

    def regular_degree(self) -> int:
        """
        Степень регулярного графа
        :return: d
        """
        if not self.is_regular():
            raise InvalidParameterError("граф не является регулярным.")
        return self.degrees[0] if self.n else 0

    def components(self) -> List[FrozenSet[int]]:
        return [frozenset(c) for c in nx.connected_components(self.to_networkx())]

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def vertex_range_check(self, vertices: Iterable[int]) -> FrozenSet[int]:
        result = frozenset(int(v) for v in vertices)
        for v in result:
            if v < 0 or v >= self.n:
                raise InvalidParameterError(
                    f"вершина {v} выходит за диапазон [0, {self.n})."
                )
        return result


@dataclass(frozen=True)
class Signing:
    """
    Знаковая разметка ребер: +1 или -1 на каждое ребро в порядке Graph.edges
    """

    signs: Tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        for i, s in enumerate(signs):
            if s not in (1, -1):
                raise InvalidParameterError(
                    f"знак ребра {i} должен быть +1 или -1, получено {s}."
                )
        object.__setattr__(self, "signs", signs)

    @classmethod
    def all_positive(cls, graph: Graph) -> "Signing":
        return cls(signs=(1,) * graph.m)

    @classmethod
    def all_negative(cls, graph: Graph) -> "Signing":
        return cls(signs=(-1,) * graph.m)

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, index: int) -> int:
        return self.signs[index]

    def negated(self) -> "Signing":
        return Signing(signs=tuple(-s for s in self.signs))

    @property
    def negative_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def check_aligned(self, graph: Graph) -> None:
        """
        Проверить, что разметка выровнена по ребрам графа
        :param graph: граф
        """
        if len(self.signs) != graph.m:
            raise InvalidParameterError(
                f"длина разметки {len(self.signs)} не совпадает с числом ребер "
                f"{graph.m}."
            )


@dataclass(frozen=True)
class LiftProjection:
    """
    Накрывающее отображение 2-лифта: вершина v лифта лежит над v mod parent_n,
    индекс слоя равен v div parent_n.
    """

    parent_n: int
    fiber_size: int = field(default=2, init=False)

    def project(self, v: int) -> int:
        return v % self.parent_n

    def fiber_index(self, v: int) -> int:
        return v // self.parent_n

    def lift(self, x: int, fiber: int) -> int:
        return x + fiber * self.parent_n

    def fiber(self, x: int) -> Tuple[int, int]:
        return (x, x + self.parent_n)
