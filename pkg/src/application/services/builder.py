from typing import List, Optional, Tuple

from src.application.services.graphs import make_complete, two_lift
from src.application.services.sample_space import (
    ExplicitSigningSource,
    SpaceSigningSource,
    pair_space,
)
from src.application.services.signing import (
    derandomize_conditional,
    local_refinement,
    random_search,
    search_sample_space,
)
from src.application.services.spectral import graph_lambda, lift_spectrum_decompose
from src.core.abstractions.signing_source import SigningSource
from src.core.config import config
from src.core.enums import SigningStrategy, SpaceObjective
from src.core.exceptions import InternalConsistencyError, InvalidParameterError
from src.core.logging import get_logger
from src.core.models.build import BuildRecord, LevelRecord
from src.core.models.graph import Graph, Signing
from src.core.models.signing import LiftChain, SearchParams
from src.core.utils.rng import make_rng, spawn_seed
from src.infra.metrics.build import (
    eigensolve_metrics,
    level_finished_metrics,
    level_started_metrics,
)

def lift_depth(d: int, target_n: int) -> int:
    """
    Число лифтов от K_{d+1} до target_n вершин
    :param d: степень
    :param target_n: (d+1)·2^i
    :return: i
    """
    base_n = d + 1
    if d < 2:
        raise InvalidParameterError("d должно быть не меньше 2.")
    if target_n < base_n or target_n % base_n:
        raise InvalidParameterError(f"target_n должно иметь вид {base_n}·2^i.")
    ratio = target_n // base_n
    if ratio & (ratio - 1):
        raise InvalidParameterError(f"target_n должно иметь вид {base_n}·2^i.")
    return ratio.bit_length() - 1


class ExpanderBuilder:
    """
    Итеративное построение экспандера: G_0 = K_{d+1}, G_i есть 2-лифт G_{i-1}
    по разметке выбранной стратегии. Каждый уровень проверяется полным
    разложением спектра лифта на старую и новую части.
    """

    def __init__(
        self,
        d: int,
        strategy: SigningStrategy,
        params: Optional[SearchParams] = None,
        tol: Optional[float] = None,
    ):
        self.d = d
        self.strategy = SigningStrategy(strategy)
        self.params = params if params is not None else SearchParams(d=d)
        self.tol = config.LIFT_SPECTRUM_TOL if tol is None else tol
        if self.params.d != d:
            raise InvalidParameterError("степень параметров поиска не совпадает с d.")
        self.logger = get_logger(self.__class__.__name__)
        self.sources: List[SigningSource] = []
        self.base: Optional[Graph] = None

    def level_target(self) -> float:
        """
        Цель для новых собственных значений уровня: 2√(d-1) для случайного
        поиска и локального улучшения, порог хорошей разметки для
        детерминированных стратегий
        """
        if self.strategy in (SigningStrategy.RANDOM, SigningStrategy.LOCAL_REFINE):
            return self.params.target_radius
        return self.params.radius_threshold

    def _sign_level(self, graph: Graph, seed: int) -> Tuple[Signing, SigningSource]:
        params = self.params.model_copy(update={"seed": seed})
        if self.strategy == SigningStrategy.RANDOM:
            signing, _, drawn = random_search(
                graph, params.budget, seed, target=params.target_radius
            )
            self.logger.debug(f"случайный поиск: просмотрено {drawn} разметок")
        elif self.strategy == SigningStrategy.LOCAL_REFINE:
            signing = local_refinement(graph, params).signing
        elif self.strategy == SigningStrategy.DERANDOMIZED:
            signing = derandomize_conditional(graph, params)
        else:
            pairs = graph.n * (graph.n - 1) // 2
            space = pair_space(graph.n, max(pairs, 1).bit_length())
            result = search_sample_space(
                graph, space, params, SpaceObjective.X_VALUE, pair_indexed=True
            )
            return result.signing, SpaceSigningSource(space, result.seedpair, graph.n)
        return signing, ExplicitSigningSource(graph, signing)

    def _build_level(
        self, graph: Graph, level: int, seed: int, lambda_prev: float
    ) -> Tuple[Graph, LevelRecord]:
        strategy = self.strategy.value
        level_started_metrics(strategy, level)

        signing, source = self._sign_level(graph, seed)
        spectrum = lift_spectrum_decompose(graph, signing, self.tol)
        eigensolve_metrics()
        lifted, _ = two_lift(graph, signing)

        target = self.level_target()
        radius_new = spectrum.new_radius
        converged = radius_new <= target + 1e-9
        wall_time = level_finished_metrics(strategy, level, converged)
        if not converged:
            self.logger.warning(
                f"уровень {level}: радиус новых {radius_new:.6f} больше цели "
                f"{target:.6f}, продолжаем с лучшей найденной разметкой"
            )
        self.sources.append(source)

        record = LevelRecord(
            level=level,
            n=lifted.n,
            source=source.describe(),
            radius_new=radius_new,
            new_min=min(spectrum.new),
            new_max=max(spectrum.new),
            lambda_level=max(lambda_prev, radius_new),
            target=target,
            converged=converged,
            wall_time=wall_time,
        )
        self.logger.info(
            f"уровень {level}: n={lifted.n}, радиус новых {radius_new:.6f}, "
            f"λ={record.lambda_level:.6f}"
        )
        return lifted, record

    def build(self, target_n: int) -> Tuple[Graph, BuildRecord]:
        """
        Построить d-регулярный граф на target_n вершинах
        :param target_n: (d+1)·2^i
        :return: итоговый граф и журнал построения
        """
        depth = lift_depth(self.d, target_n)
        rng = make_rng(self.params.seed)
        graph = make_complete(self.d + 1)
        self.base = graph
        self.sources = []

        lambda_running = graph_lambda(graph)
        eigensolve_metrics()
        levels: List[LevelRecord] = []
        for level in range(1, depth + 1):
            graph, record = self._build_level(
                graph, level, spawn_seed(rng), lambda_running
            )
            lambda_running = record.lambda_level
            levels.append(record)

        final_lambda = graph_lambda(graph)
        eigensolve_metrics()
        if abs(final_lambda - lambda_running) > self.tol:
            raise InternalConsistencyError(
                f"λ итогового графа {final_lambda:.9f} не совпадает с композицией "
                f"уровней {lambda_running:.9f}."
            )
        if not graph.is_connected():
            self.logger.warning(f"итоговый граф на {graph.n} вершинах несвязен")

        record = BuildRecord(
            d=self.d,
            base_n=self.d + 1,
            strategy=self.strategy.value,
            levels=tuple(levels),
            final_n=graph.n,
            final_lambda=final_lambda,
            lambda_composed=lambda_running,
            converged=all(r.converged for r in levels),
            seed=self.params.seed,
        )
        self.logger.info(
            f"построен граф n={graph.n}, d={self.d}, λ={final_lambda:.6f}, "
            f"уровней {len(levels)}"
        )
        return graph, record

    def chain(self) -> LiftChain:
        """Цепочка лифтов последнего построения"""
        if self.base is None:
            raise InvalidParameterError("цепочка доступна только после построения.")
        return LiftChain(base=self.base, sources=tuple(self.sources))


def build_expander(
    d: int,
    target_n: int,
    strategy: SigningStrategy = SigningStrategy.RANDOM,
    params: Optional[SearchParams] = None,
    tol: Optional[float] = None,
) -> Tuple[Graph, BuildRecord]:
    """
    Построить экспандер итерированными 2-лифтами K_{d+1}
    :param d: степень
    :param target_n: (d+1)·2^i
    :param strategy: стратегия поиска разметок
    :param params: параметры поиска
    :param tol: допуск сверки спектров уровней и композиции λ
    :return: граф и журнал построения
    """
    return ExpanderBuilder(d, strategy, params, tol).build(target_n)
