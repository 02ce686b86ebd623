from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx
import numpy as np

from src.application.services.discrepancy import (
    ZERO_ONE_OPTIONS,
    discrepancy_witness,
    sparse_check,
    support_assignments,
)
from src.application.services.graphs import connected_subsets_of_size, two_lift
from src.application.services.sample_space import (
    pair_index,
    seedpair_of,
    space_bits,
)
from src.application.services.spectral import (
    signed_adjacency,
    signed_radii,
    spectral_radius,
    trace_power_batch,
    trace_power_walks,
)
from src.core.config import config
from src.core.enums import SpaceObjective
from src.core.exceptions import (
    InternalConsistencyError,
    InvalidParameterError,
    SizeLimitError,
)
from src.core.logging import get_logger
from src.core.models.graph import Graph, Signing
from src.core.models.signing import (
    GoodnessReport,
    SampleSpace,
    SearchParams,
    ceil_log2,
)
from src.core.utils.rng import make_rng

logger = get_logger(__name__)

_BATCH = 256
_EPS = 1e-12
_MAX_SUPPORT_EDGES = 16


@dataclass(frozen=True)
class ProbeResult:
    found: bool
    signing: Signing
    radius: float
    target: float
    exhaustive: bool


@dataclass(frozen=True)
class RefinementResult:
    """Итог локального улучшения: лучшая разметка и траектория радиуса"""

    signing: Signing
    iterations: int
    radius_trace: Tuple[float, ...]
    best_radius: float
    converged: bool


@dataclass(frozen=True)
class DerandomizationResult:
    """
    Итог метода условных ожиданий. final_value = trace(A_s^l) + d^l·violations
    """

    signing: Signing
    initial_expectation: Fraction
    final_value: Fraction
    trace_value: int
    violations: int
    l: int
    t_sparse: int


@dataclass(frozen=True)
class SpaceSearchResult:
    signing: Signing
    report: GoodnessReport
    seedpair: Tuple[int, int]
    best_value: float
    mean_value: float
    objective: SpaceObjective


def random_signing(graph: Graph, seed: Optional[int] = None) -> Signing:
    """
    Независимые равновероятные знаки на ребрах
    :param graph: граф
    :param seed: зерно
    :return: разметка
    """
    rng = make_rng(seed)
    return Signing(signs=tuple(int(x) for x in 2 * rng.integers(0, 2, graph.m) - 1))


def switch_signing(graph: Graph, signing: Signing, v: int) -> Signing:
    """
    Переключение в вершине v: меняет знаки всех инцидентных ребер,
    спектр A_s не меняется
    """
    signing.check_aligned(graph)
    graph.vertex_range_check([v])
    return Signing(
        signs=tuple(
            -s if v in edge else s for edge, s in zip(graph.edges, signing.signs)
        )
    )


def _forest_edges(graph: Graph) -> List[int]:
    forest = nx.minimum_spanning_tree(graph.to_networkx())
    return sorted(graph.index_of(u, v) for u, v in forest.edges())


def exhaustive_best_signing(graph: Graph) -> Tuple[Signing, float]:
    """
    Точный минимум спектрального радиуса по всем разметкам. Разметки, равные
    с точностью до переключений, имеют один спектр, поэтому ребра остовного
    леса фиксируются в +1 и перебираются только остальные.
    :param graph: граф с m <= EXHAUSTIVE_MAX_EDGES
    :return: (разметка, радиус)
    """
    if graph.m > config.EXHAUSTIVE_MAX_EDGES:
        logger.error(f"полный перебор разметок для m={graph.m} запрещен настройками")
        raise SizeLimitError(
            "полный перебор разметок", config.EXHAUSTIVE_MAX_EDGES, graph.m
        )
    forest = set(_forest_edges(graph))
    cotree = np.array([e for e in range(graph.m) if e not in forest], dtype=np.int64)
    total = 1 << len(cotree)

    best_radius, best_row = float("inf"), np.ones(graph.m)
    for start in range(0, total, _BATCH * 16):
        masks = np.arange(start, min(start + _BATCH * 16, total), dtype=np.int64)
        rows = np.ones((len(masks), graph.m))
        if len(cotree):
            bits = (masks[:, None] >> np.arange(len(cotree))[None, :]) & 1
            rows[:, cotree] = 1 - 2 * bits
        radii = signed_radii(graph, rows)
        idx = int(np.argmin(radii))
        if radii[idx] < best_radius - _EPS:
            best_radius, best_row = float(radii[idx]), rows[idx]

    logger.info(
        f"перебрано {total} классов разметок (m={graph.m}), "
        f"лучший радиус {best_radius:.6f}"
    )
    return Signing(signs=tuple(int(s) for s in best_row)), best_radius


def random_search(
    graph: Graph, budget: int, seed: Optional[int], target: Optional[float] = None
) -> Tuple[Signing, float, int]:
    """
    Случайные разметки пакетами, лучшая по радиусу; останов при достижении цели
    :param graph: граф
    :param budget: число разметок
    :param seed: зерно
    :param target: целевой радиус
    :return: (разметка, радиус, число просмотренных разметок)
    """
    if budget < 1:
        raise InvalidParameterError("budget должно быть положительным.")
    rng = make_rng(seed)
    best_radius, best_row, drawn = float("inf"), None, 0
    while drawn < budget:
        size = min(_BATCH, budget - drawn)
        rows = 2 * rng.integers(0, 2, (size, graph.m)) - 1
        radii = signed_radii(graph, rows)
        if target is not None:
            hits = np.nonzero(radii <= target + _EPS)[0]
            if len(hits):
                idx = int(hits[0])
                signing = Signing(signs=tuple(int(s) for s in rows[idx]))
                return signing, float(radii[idx]), drawn + idx + 1
        idx = int(np.argmin(radii))
        if radii[idx] < best_radius:
            best_radius, best_row = float(radii[idx]), rows[idx]
        drawn += size
    return Signing(signs=tuple(int(s) for s in best_row)), best_radius, drawn


def conjecture_probe(graph: Graph, params: SearchParams) -> ProbeResult:
    """
    Поиск разметки с радиусом <= 2·sqrt(d-1): полным перебором при малом m,
    иначе случайными разметками в пределах budget
    :param graph: d-регулярный граф
    :param params: параметры поиска
    :return: ProbeResult с лучшей найденной разметкой
    """
    if not graph.is_regular():
        raise InvalidParameterError("проверка гипотезы требует регулярного графа.")
    target = params.target_radius
    exhaustive = graph.m <= config.EXHAUSTIVE_MAX_EDGES
    if exhaustive:
        signing, radius = exhaustive_best_signing(graph)
    else:
        signing, radius, _ = random_search(graph, params.budget, params.seed, target)

    found = radius <= target + 1e-9
    if exhaustive and not found:
        logger.warning(
            f"контрпример: лучший радиус {radius:.9f} больше 2√(d-1)={target:.9f} "
            f"для графа n={graph.n}, m={graph.m}"
        )
    return ProbeResult(
        found=found,
        signing=signing,
        radius=radius,
        target=target,
        exhaustive=exhaustive,
    )


def is_good_signing(
    graph: Graph, signing: Signing, params: SearchParams
) -> GoodnessReport:
    """
    Сертификат хорошей разметки: радиус A_s не больше порога и лифт
    (γ(d), 1+⌈log2 n⌉)-разрежен
    :param graph: d-регулярный граф
    :param signing: разметка
    :param params: параметры (γ и порог радиуса)
    :return: GoodnessReport
    """
    radius = spectral_radius(signed_adjacency(graph, signing))
    depth = 1 + ceil_log2(graph.n)
    lifted, _ = two_lift(graph, signing)
    try:
        sparsity = sparse_check(lifted, params.gamma, depth)
    except SizeLimitError as e:
        e.partial = GoodnessReport(
            radius=radius,
            radius_threshold=params.radius_threshold,
            gamma=params.gamma,
            sparse_depth=depth,
            sparse_ok=False,
            sparsity=e.partial,
            partial=True,
        )
        raise
    return GoodnessReport(
        radius=radius,
        radius_threshold=params.radius_threshold,
        gamma=params.gamma,
        sparse_depth=depth,
        sparse_ok=sparsity.ok,
        sparsity=sparsity,
    )


class ConditionalEstimator:
    """
    Пессимистическая оценка X = Σ_p Y_p + Σ Z_{u,v} для метода условных ожиданий.
    Y_p: произведение знаков по замкнутому пути длины l. Пути группируются по
    множеству ребер нечетной кратности: при равновероятных незаданных знаках
    путь дает вклад, только если все такие ребра заданы.
    Z_{u,v}: d^l за каждую пару, нарушающую β-разреженность лифта на носителе
    из t+1 вершин, по одной в слое каждой вершины связного множества базы.
    """

    def __init__(self, graph: Graph, params: SearchParams):
        self.graph = graph
        self.params = params
        self.l = params.walk_length(graph.n)
        self.t_sparse = params.sparse_depth(graph.n)
        self.beta = params.gamma
        self.weight = graph.max_degree**self.l
        self.logger = get_logger(self.__class__.__name__)

        self.supports = self._violation_tables()
        self.logger.info(
            f"оценка построена: l={self.l}, t={self.t_sparse}, "
            f"носителей Z {len(self.supports)}"
        )

    @cached_property
    def walk_classes(self) -> Counter:
        """Число замкнутых путей длины l по множеству ребер нечетной кратности"""
        nbrs = self.graph.neighbors
        index = self.graph.edge_index
        states: Dict[Tuple[int, int, int], int] = {
            (v, v, 0): 1 for v in range(self.graph.n)
        }
        for _ in range(self.l):
            nxt: Dict[Tuple[int, int, int], int] = defaultdict(int)
            for (start, cur, mask), count in states.items():
                for w in nbrs[cur]:
                    e = index[(cur, w) if cur < w else (w, cur)]
                    nxt[(start, w, mask ^ (1 << e))] += count
            states = nxt

        classes: Counter = Counter()
        for (start, cur, mask), count in states.items():
            if start == cur:
                classes[mask] += count
        return classes

    def _violation_tables(self) -> List[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        if self.beta >= self.graph.max_degree:
            # поддеревья лифта степени d не нарушают β >= d
            self.logger.info(f"β={self.beta:.3f} >= d, слагаемые Z нулевые")
            return []

        tables = []
        for subset in connected_subsets_of_size(self.graph, self.t_sparse + 1):
            verts = sorted(subset)
            local = {v: i for i, v in enumerate(verts)}
            edge_ids = [
                self.graph.index_of(x, y)
                for a, x in enumerate(verts)
                for y in verts[a + 1:]
                if self.graph.has_edge(x, y)
            ]
            if not edge_ids:
                continue
            if len(edge_ids) > _MAX_SUPPORT_EDGES:
                raise SizeLimitError(
                    "ребер в носителе", _MAX_SUPPORT_EDGES, len(edge_ids)
                )

            u, v = support_assignments(len(verts), ZERO_ONE_OPTIONS)
            ends = [tuple(local[x] for x in self.graph.edges[e]) for e in edge_ids]
            w = np.stack([u[:, x] * v[:, y] + u[:, y] * v[:, x] for x, y in ends], 1)
            threshold = self.beta * np.sqrt(u.sum(axis=1) * v.sum(axis=1))

            patterns = (
                np.arange(1 << len(edge_ids))[:, None] >> np.arange(len(edge_ids))
            ) & 1
            counts = ((w @ patterns.T) > threshold[:, None] + _EPS).sum(axis=0)
            if not counts.any():
                continue

            fibers = (
                np.arange(1 << (len(verts) - 1))[:, None] >> np.arange(len(verts) - 1)
            ) & 1
            fibers = np.hstack([np.zeros((len(fibers), 1), dtype=int), fibers])
            sigma = np.stack(
                [np.where(fibers[:, x] == fibers[:, y], 1, -1) for x, y in ends], 1
            )
            tables.append((np.array(edge_ids), counts.astype(np.int64), sigma))
        return tables

    def y_expectation(self, assigned: np.ndarray) -> int:
        assigned_mask = sum(1 << int(e) for e in np.nonzero(assigned)[0])
        negative_mask = sum(1 << int(e) for e in np.nonzero(assigned < 0)[0])
        total = 0
        for mask, count in self.walk_classes.items():
            if mask & ~assigned_mask:
                continue
            total += -count if (mask & negative_mask).bit_count() & 1 else count
        return total

    def z_expectation(self, assigned: np.ndarray) -> Fraction:
        total = Fraction(0)
        for edge_ids, counts, sigma in self.supports:
            values = assigned[edge_ids]
            fixed = values != 0
            fixed_mask = int(sum(1 << i for i in np.nonzero(fixed)[0]))
            present = (sigma * values[None, :] == 1) & fixed[None, :]
            wanted = (present * (1 << np.arange(len(edge_ids)))[None, :]).sum(axis=1)
            idx = np.arange(len(counts))
            selected = (idx[None, :] & fixed_mask) == wanted[:, None]
            hits = int((selected * counts[None, :]).sum())
            free = len(edge_ids) - int(fixed.sum())
            # f и дополнение f дают одинаковые знаки, но разные носители
            total += Fraction(2 * hits, 1 << free)
        return total * self.weight

    def expectation(self, assigned: np.ndarray) -> Fraction:
        """
        E[X] при равновероятных знаках незаданных ребер
        :param assigned: массив длины m из {-1, 0, +1}, 0 означает незаданный
        :return: точное значение
        """
        return self.y_expectation(assigned) + self.z_expectation(assigned)

    def violation_count(self, signing: Signing) -> int:
        """Число нарушающих пар Z при полной разметке"""
        signing.check_aligned(self.graph)
        return int(self.z_expectation(np.array(signing.signs)) / self.weight)

    def exact_x(self, signing: Signing) -> int:
        trace = trace_power_walks(self.graph, signing, self.l)
        return trace + self.weight * self.violation_count(signing)

    def derandomize(self) -> DerandomizationResult:
        """
        Фиксировать знаки по одному, выбирая знак, не увеличивающий E[X].
        Вклад Y пересчитывается инкрементально: при фиксации ребра e меняются
        только классы путей, у которых e было последним незаданным ребром.
        :return: DerandomizationResult
        """
        masks = list(self.walk_classes)
        counts = [self.walk_classes[mask] for mask in masks]
        remaining = [mask.bit_count() for mask in masks]
        partial = [1] * len(masks)
        by_edge: Dict[int, List[int]] = defaultdict(list)
        for i, mask in enumerate(masks):
            for e in range(mask.bit_length()):
                if mask >> e & 1:
                    by_edge[e].append(i)

        assigned = np.zeros(self.graph.m, dtype=np.int64)
        y_value = sum(c for c, r in zip(counts, remaining) if r == 0)
        initial = y_value + self.z_expectation(assigned)
        current = initial
        for e in range(self.graph.m):
            ids = by_edge.get(e, [])
            delta = sum(counts[i] * partial[i] for i in ids if remaining[i] == 1)
            z_plus = z_minus = Fraction(0)
            if self.supports:
                assigned[e] = 1
                z_plus = self.z_expectation(assigned)
                assigned[e] = -1
                z_minus = self.z_expectation(assigned)
            plus, minus = y_value + delta + z_plus, y_value - delta + z_minus
            sign = 1 if plus <= minus else -1
            assigned[e] = sign
            current = plus if sign == 1 else minus
            y_value += sign * delta
            for i in ids:
                remaining[i] -= 1
                partial[i] *= sign
            self.logger.debug(f"ребро {e}: E[X]={float(current):.3f}")

        signing = Signing(signs=tuple(int(s) for s in assigned))
        trace = trace_power_walks(self.graph, signing, self.l)
        violations = self.violation_count(signing)
        if current > initial or current != trace + self.weight * violations:
            raise InternalConsistencyError(
                f"условное ожидание {current} расходится с X={trace}+{violations}·d^l."
            )
        return DerandomizationResult(
            signing=signing,
            initial_expectation=Fraction(initial),
            final_value=Fraction(current),
            trace_value=trace,
            violations=violations,
            l=self.l,
            t_sparse=self.t_sparse,
        )


def _assigned_from_partial(graph: Graph, partial: Mapping[int, int]) -> np.ndarray:
    assigned = np.zeros(graph.m, dtype=np.int64)
    for e, s in partial.items():
        if not 0 <= e < graph.m or s not in (1, -1):
            raise InvalidParameterError(f"некорректное присваивание ребру {e}: {s}.")
        assigned[e] = s
    return assigned


def expected_x_partial(
    graph: Graph, partial: Mapping[int, int], params: SearchParams
) -> float:
    """
    E[X] при заданных знаках части ребер
    :param graph: граф
    :param partial: номер ребра -> знак
    :param params: параметры (l, t_sparse, γ)
    :return: условное ожидание
    """
    estimator = ConditionalEstimator(graph, params)
    return float(estimator.expectation(_assigned_from_partial(graph, partial)))


def exact_x(graph: Graph, signing: Signing, params: SearchParams) -> int:
    return ConditionalEstimator(graph, params).exact_x(signing)


def derandomize_conditional(graph: Graph, params: SearchParams) -> Signing:
    """
    Детерминированная разметка методом условных ожиданий
    :param graph: граф настольного размера
    :param params: параметры
    :return: разметка с X <= E[X]
    """
    return ConditionalEstimator(graph, params).derandomize().signing


def local_refinement(
    graph: Graph, params: SearchParams, initial: Optional[Signing] = None
) -> RefinementResult:
    """
    Случайный старт; пока радиус выше цели, найти свидетеля расхождения знаковой
    матрицы и заново разыграть знаки ребер между его носителями.
    Сходимость не гарантирована, в этом случае converged=False.
    :param graph: граф
    :param params: параметры (target_radius, max_iterations, seed)
    :param initial: стартовая разметка вместо случайной
    :return: RefinementResult
    """
    rng = make_rng(params.seed)
    signs = (
        np.array(initial.signs)
        if initial is not None
        else 2 * rng.integers(0, 2, graph.m) - 1
    )
    d_bound = max(graph.max_degree, 1)
    ends = np.array(graph.edges, dtype=np.int64).reshape(-1, 2)

    def radius_of(row: np.ndarray) -> float:
        return float(signed_radii(graph, row[None, :])[0])

    radius = radius_of(signs)
    trace = [radius]
    best_signs, best_radius = signs.copy(), radius
    iterations = 0
    target = params.target_radius + _EPS
    while best_radius > target and iterations < params.max_iterations:
        iterations += 1
        matrix = signed_adjacency(graph, Signing(signs=tuple(int(s) for s in signs)))
        witness = discrepancy_witness(matrix, d_bound, check_guarantee=False)
        u = np.isin(ends, list(witness.u))
        v = np.isin(ends, list(witness.v))
        between = (u[:, 0] & v[:, 1]) | (u[:, 1] & v[:, 0])
        if not between.any():
            inside = np.isin(ends, list(witness.u | witness.v))
            between = inside[:, 0] & inside[:, 1]
        signs = signs.copy()
        signs[between] = 2 * rng.integers(0, 2, int(between.sum())) - 1

        radius = radius_of(signs)
        trace.append(radius)
        if radius < best_radius:
            best_signs, best_radius = signs.copy(), radius

    converged = best_radius <= params.target_radius + _EPS
    if not converged:
        logger.warning(
            f"локальное улучшение не сошлось за {iterations} итераций: "
            f"радиус {best_radius:.6f}"
        )
    return RefinementResult(
        signing=Signing(signs=tuple(int(s) for s in best_signs)),
        iterations=iterations,
        radius_trace=tuple(trace),
        best_radius=best_radius,
        converged=converged,
    )


def search_sample_space(
    graph: Graph,
    space: SampleSpace,
    params: SearchParams,
    objective: SpaceObjective = SpaceObjective.X_VALUE,
    pair_indexed: bool = False,
) -> SpaceSearchResult:
    """
    Обход всех точек ε-смещенного пространства: каждая точка дает разметку,
    выбирается точка с наименьшим X (или наименьшим радиусом).
    :param graph: граф
    :param space: пространство
    :param params: параметры
    :param objective: X или радиус
    :param pair_indexed: знак ребра (u, v) в позиции pair_index(u, v, n),
        иначе в позиции номера ребра
    :return: SpaceSearchResult
    """
    objective = SpaceObjective(objective)
    positions = (
        [pair_index(u, v, graph.n) for u, v in graph.edges]
        if pair_indexed
        else list(range(graph.m))
    )
    if positions and max(positions) >= space.m:
        raise InvalidParameterError(
            f"пространство длины {space.m} не покрывает позиции ребер графа."
        )
    rows = 1 - 2 * space_bits(space, positions).astype(np.int64)

    if objective == SpaceObjective.GOODNESS:
        values = np.concatenate(
            [
                signed_radii(graph, rows[i:i + _BATCH])
                for i in range(0, len(rows), _BATCH)
            ]
        )
    else:
        estimator = ConditionalEstimator(graph, params)
        values = np.concatenate(
            [
                trace_power_batch(graph, rows[i:i + _BATCH], estimator.l)
                for i in range(0, len(rows), _BATCH)
            ]
        ).astype(float)
        if estimator.supports:
            values += np.array(
                [
                    estimator.weight
                    * estimator.violation_count(Signing(signs=tuple(map(int, row))))
                    for row in rows
                ],
                dtype=float,
            )

    best = int(np.argmin(values))
    signing = Signing(signs=tuple(int(s) for s in rows[best]))
    report = is_good_signing(graph, signing, params)
    logger.info(
        f"обойдено {len(rows)} точек пространства, лучшее значение {values[best]:.4f}"
    )
    return SpaceSearchResult(
        signing=signing,
        report=report,
        seedpair=seedpair_of(space, best),
        best_value=float(values[best]),
        mean_value=float(values.mean()),
        objective=objective,
    )
