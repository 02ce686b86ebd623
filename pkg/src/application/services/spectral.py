from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.application.services.graphs import two_lift
from src.core.config import config
from src.core.exceptions import (
    InternalConsistencyError,
    InvalidParameterError,
    SolverFailureError,
)
from src.core.logging import get_logger
from src.core.models.graph import Graph, Signing
from src.core.models.spectral import SpectralReport, SymMatrix

logger = get_logger(__name__)


@dataclass(frozen=True)
class LiftSpectrum:
    """Старый спектр (A), новый спектр (A_s) и спектр материализованного лифта"""

    old: Tuple[float, ...]
    new: Tuple[float, ...]
    lifted: SpectralReport

    @property
    def new_radius(self) -> float:
        return max((abs(x) for x in self.new), default=0.0)


def signed_adjacency(graph: Graph, signing: Signing) -> SymMatrix:
    """
    Знаковая матрица смежности: элемент (x,y) равен s(x,y) для ребра и 0 иначе
    :param graph: граф
    :param signing: разметка
    :return: симметричная матрица
    """
    signing.check_aligned(graph)
    a = np.zeros((graph.n, graph.n))
    if graph.m:
        us, vs = np.array(graph.edges).T
        signs = np.array(signing.signs, dtype=float)
        a[us, vs] = signs
        a[vs, us] = signs
    return SymMatrix(entries=a)


def adjacency_matrix(graph: Graph) -> SymMatrix:
    return signed_adjacency(graph, Signing.all_positive(graph))


def signed_adjacency_batch(graph: Graph, sign_rows: np.ndarray) -> np.ndarray:
    """
    Стек знаковых матриц смежности для пакета разметок
    :param graph: граф
    :param sign_rows: массив (k, m) из ±1
    :return: массив (k, n, n)
    """
    sign_rows = np.asarray(sign_rows, dtype=float).reshape(-1, graph.m)
    stack = np.zeros((sign_rows.shape[0], graph.n, graph.n))
    if graph.m:
        us, vs = np.array(graph.edges).T
        stack[:, us, vs] = sign_rows
        stack[:, vs, us] = sign_rows
    return stack


def signed_radii(graph: Graph, sign_rows: np.ndarray) -> np.ndarray:
    """Спектральные радиусы знаковых матриц для пакета разметок"""
    stack = signed_adjacency_batch(graph, sign_rows)
    if graph.n == 0:
        return np.zeros(stack.shape[0])
    eig = np.linalg.eigvalsh(stack)
    return np.maximum(np.abs(eig[:, 0]), np.abs(eig[:, -1]))


def eigenvalues_sym(matrix: SymMatrix, tol: Optional[float] = None) -> SpectralReport:
    """
    Полный спектр симметричной матрицы плотным решателем с проверкой невязки
    :param matrix: матрица
    :param tol: допуск на невязку относительно нормы матрицы
    :return: спектр по убыванию
    """
    tol = config.SPECTRAL_TOL if tol is None else tol
    if matrix.dim == 0:
        return SpectralReport(eigenvalues=(), tol=tol)

    a = matrix.entries
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as e:
        raise SolverFailureError(f"решатель не сошелся: {e}", residual=float("inf"))

    scale = max(float(np.linalg.norm(a, ord=2)) if a.any() else 0.0, 1.0)
    residual = float(np.linalg.norm(a @ vectors - vectors * values, axis=0).max())
    if residual > tol * scale:
        logger.error(f"невязка собственных векторов {residual:.3e} выше допуска")
        raise SolverFailureError("невязка собственных пар выше допуска", residual)

    return SpectralReport(eigenvalues=tuple(float(x) for x in values[::-1]), tol=tol)


def spectral_radius(matrix: SymMatrix) -> float:
    if matrix.dim == 0:
        return 0.0
    values = np.linalg.eigvalsh(matrix.entries)
    return float(max(abs(values[0]), abs(values[-1])))


def extremal_eigenvector(matrix: SymMatrix) -> Tuple[float, np.ndarray]:
    """
    Собственный вектор при собственном значении наибольшего модуля
    :param matrix: матрица
    :return: (собственное значение, вектор)
    """
    values, vectors = np.linalg.eigh(matrix.entries)
    idx = 0 if abs(values[0]) > abs(values[-1]) else len(values) - 1
    return float(values[idx]), vectors[:, idx]


def graph_lambda(graph: Graph) -> float:
    """λ(G) = max |λ_i| по i >= 2"""
    return eigenvalues_sym(adjacency_matrix(graph)).lambda2


def multiset_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """
    ℓ∞ расстояние между отсортированными мультимножествами
    :return: расстояние, inf при разной длине
    """
    if len(a) != len(b):
        return float("inf")
    if not len(a):
        return 0.0
    return float(np.max(np.abs(np.sort(a) - np.sort(b))))


def lift_spectrum_decompose(
    graph: Graph, signing: Signing, tol: Optional[float] = None
) -> LiftSpectrum:
    """
    Разложить спектр 2-лифта на старые (A) и новые (A_s) собственные значения
    и сверить их объединение со спектром материализованного лифта.
    :param graph: базовый граф
    :param signing: разметка
    :param tol: допуск сравнения мультимножеств
    :return: LiftSpectrum
    """
    tol = config.LIFT_SPECTRUM_TOL if tol is None else tol
    old = eigenvalues_sym(adjacency_matrix(graph))
    new = eigenvalues_sym(signed_adjacency(graph, signing))
    lifted_graph, _ = two_lift(graph, signing)
    lifted = eigenvalues_sym(adjacency_matrix(lifted_graph))

    distance = multiset_distance(old.eigenvalues + new.eigenvalues, lifted.eigenvalues)
    if distance > tol:
        logger.error(f"спектр лифта расходится с old ⊎ new на {distance:.3e}")
        raise InternalConsistencyError(
            f"спектр лифта не равен объединению старого и нового: {distance:.3e}."
        )
    return LiftSpectrum(old=old.eigenvalues, new=new.eigenvalues, lifted=lifted)


def trace_power_walks(graph: Graph, signing: Signing, l: int) -> int:
    """
    Сумма произведений знаков по замкнутым путям длины l, то есть trace(A_s^l).
    Считается целочисленным возведением в степень.
    :param graph: граф
    :param signing: разметка
    :param l: четная длина, не меньше 2
    :return: след
    """
    if l < 2 or l % 2:
        raise InvalidParameterError("l должно быть четным и не меньше 2.")
    if l > 16:
        logger.warning(f"след степени {l} дорог и может переполниться")
    a = signed_adjacency(graph, signing).entries.astype(np.int64)
    return int(np.trace(np.linalg.matrix_power(a, l)))


def trace_power_batch(graph: Graph, sign_rows: np.ndarray, l: int) -> np.ndarray:
    """trace(A_s^l) для пакета разметок, целочисленно"""
    stack = signed_adjacency_batch(graph, sign_rows).astype(np.int64)
    powered = np.linalg.matrix_power(stack, l)
    return np.trace(powered, axis1=1, axis2=2)
