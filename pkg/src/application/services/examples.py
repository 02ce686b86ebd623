from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.application.services.discrepancy import (
    bipartite_jumbledness_sampled,
    centered_entries,
    jumbledness_alpha_sampled,
    sample_pair_ratio,
)
from src.application.services.graphs import random_biregular, random_regular
from src.application.services.spectral import adjacency_matrix, eigenvalues_sym
from src.core.exceptions import InvalidParameterError
from src.core.logging import get_logger
from src.core.models.graph import Graph
from src.core.models.spectral import SymMatrix
from src.core.utils.rng import make_rng, spawn_seed

logger = get_logger(__name__)

DEFAULT_SAMPLES = 2000


@dataclass(frozen=True)
class OuterProductReport:
    n: int
    harmonic: float
    top_eigenvalue: float
    sampled_ratio: float


@dataclass(frozen=True)
class TightnessRecord:
    """
    Параметры и измерения семейства с λ ≈ α·log(d/α): таблица степеней d_{i,j},
    измеренная α каждого блока, отношение Рэлея тестового вектора и спектральный
    радиус центрированной матрицы.
    """

    delta: int
    t: int
    big_n: int
    tau: int
    d: int
    class_sizes: Tuple[int, ...]
    degree_table: Tuple[Tuple[int, ...], ...]
    class_degrees: Tuple[int, ...]
    block_alpha: Dict[str, float]
    rayleigh: float
    lambda_centered: float
    alpha_sampled: float
    seed: Optional[int] = None


def harmonic_number(n: int) -> float:
    return float(sum(1.0 / i for i in range(1, n + 1)))


def outer_product_matrix(n: int) -> SymMatrix:
    """
    Матрица x·x^T для x_i = 1/sqrt(i), i = 1..n: ранг 1, собственное значение H_n
    :param n: размер
    :return: SymMatrix
    """
    if n < 1:
        raise InvalidParameterError("n должно быть положительным.")
    x = 1.0 / np.sqrt(np.arange(1, n + 1, dtype=float))
    return SymMatrix(entries=np.outer(x, x))


def outer_product_report(
    n: int, samples: int = DEFAULT_SAMPLES, seed: Optional[int] = None
) -> OuterProductReport:
    """
    H_n, старшее собственное значение и выборочное отношение |1_S A 1_T|/sqrt(|S||T|)
    """
    matrix = outer_product_matrix(n)
    top = eigenvalues_sym(matrix).eigenvalues[0]
    ratio, *_ = sample_pair_ratio(matrix.entries, samples, seed)
    return OuterProductReport(
        n=n, harmonic=harmonic_number(n), top_eigenvalue=top, sampled_ratio=ratio
    )


def tightness_degree_table(delta: int, t: int) -> Tuple[Tuple[int, ...], ...]:
    """
    d_{i,j} = Δ·4^j ± Δ·2^(j-i), плюс при (i < t и j < t) или i = j = t
    :param delta: Δ
    :param t: число классов минус один
    :return: таблица (t+1)×(t+1)
    """
    if t < 1:
        raise InvalidParameterError("t должно быть не меньше 1.")
    if delta < 1:
        raise InvalidParameterError("Δ должно быть положительным.")
    table: List[Tuple[int, ...]] = []
    for i in range(t + 1):
        row = []
        for j in range(t + 1):
            sign = 1 if (i < t and j < t) or i == j == t else -1
            value = delta * 4**j + sign * delta * Fraction(2) ** (j - i)
            if value.denominator != 1 or value < 0:
                raise InvalidParameterError(
                    f"степень d_{{{i},{j}}} = {value} не целая неотрицательная."
                )
            row.append(int(value))
        table.append(tuple(row))
    return tuple(table)


def _check_handshake(
    table: Tuple[Tuple[int, ...], ...], sizes: Tuple[int, ...]
) -> None:
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            if table[i][j] * sizes[i] != table[j][i] * sizes[j]:
                raise InvalidParameterError(
                    f"блок ({i}, {j}) нарушает условие рукопожатия."
                )


def tightness_family(
    delta: int,
    t: int,
    big_n: int,
    seed: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
) -> Tuple[Graph, TightnessRecord]:
    """
    Граф из классов V_i размера 4^i·N: внутри V_i случайный d_{i,i}-регулярный
    граф, между V_i и V_j случайный двудольный граф степеней d_{i,j}, d_{j,i}.
    τ = (4^(t+1) - 1)/3 и d = τΔ, так что все степени целые.
    :param delta: Δ
    :param t: t >= 1
    :param big_n: N
    :param seed: зерно
    :param samples: число выборок для оценок α
    :return: граф и запись параметров с измерениями
    """
    if big_n < 1:
        raise InvalidParameterError("N должно быть положительным.")
    table = tightness_degree_table(delta, t)
    tau = (4 ** (t + 1) - 1) // 3
    d = tau * delta
    sizes = tuple(4**i * big_n for i in range(t + 1))
    offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(sizes)[:-1]]))
    _check_handshake(table, sizes)

    rng = make_rng(seed)
    edges: List[Tuple[int, int]] = []
    block_alpha: Dict[str, float] = {}
    for i in range(t + 1):
        for j in range(i, t + 1):
            block_seed = spawn_seed(rng)
            if i == j:
                block = random_regular(sizes[i], table[i][i], block_seed)
                edges.extend((offsets[i] + u, offsets[i] + v) for u, v in block.edges)
                alpha = jumbledness_alpha_sampled(block, samples, block_seed).alpha
            else:
                block = random_biregular(
                    sizes[i], sizes[j], table[i][j], table[j][i], block_seed
                )
                edges.extend(
                    (offsets[i] + u, offsets[j] + v - sizes[i]) for u, v in block.edges
                )
                alpha = bipartite_jumbledness_sampled(
                    block,
                    range(sizes[i]),
                    range(sizes[i], sizes[i] + sizes[j]),
                    samples,
                    block_seed,
                )
            block_alpha[f"{i},{j}"] = alpha
            logger.debug(f"блок ({i}, {j}): измеренная α={alpha:.4f}")

    graph = Graph.from_edges(sum(sizes), sorted(edges))
    centered = centered_entries(adjacency_matrix(graph).entries, d)

    x = np.concatenate(
        [np.full(size, 2.0**-i) for i, size in enumerate(sizes[:-1])]
        + [np.full(sizes[-1], -(2.0**-t))]
    )
    rayleigh = float(x @ centered @ x) / float(x @ x)
    lambda_centered = eigenvalues_sym(SymMatrix(entries=centered)).radius
    alpha_sampled, *_ = sample_pair_ratio(centered, samples, seed)

    record = TightnessRecord(
        delta=delta,
        t=t,
        big_n=big_n,
        tau=tau,
        d=d,
        class_sizes=sizes,
        degree_table=table,
        class_degrees=tuple(sum(row) for row in table),
        block_alpha=block_alpha,
        rayleigh=rayleigh,
        lambda_centered=lambda_centered,
        alpha_sampled=alpha_sampled,
        seed=seed,
    )
    logger.info(
        f"семейство t={t}, Δ={delta}: n={graph.n}, отношение Рэлея {rayleigh:.4f}, "
        f"λ центрированной матрицы {lambda_centered:.4f}"
    )
    return graph, record
