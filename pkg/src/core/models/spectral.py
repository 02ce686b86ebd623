from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.core.exceptions import InvalidParameterError


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """
    Плотная вещественная симметричная матрица
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidParameterError("матрица должна быть квадратной.")
        if not np.array_equal(arr, arr.T):
            raise InvalidParameterError("матрица должна быть симметричной.")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def has_zero_diagonal(self) -> bool:
        return bool(np.all(np.diag(self.entries) == 0))

    def row_l1_max(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.abs(self.entries).sum(axis=1).max())

    def bilinear(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ self.entries @ v)


@dataclass(frozen=True)
class SpectralReport:
    """
    Отсортированный по убыванию спектр с допуском решателя
    """

    eigenvalues: Tuple[float, ...]
    tol: float

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @property
    def radius(self) -> float:
        if not self.eigenvalues:
            return 0.0
        return max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1]))

    @property
    def lambda2(self) -> float:
        """max |λ_i| по i >= 2 (для матрицы смежности графа)"""
        rest = self.eigenvalues[1:]
        return max((abs(x) for x in rest), default=0.0)

    def as_array(self) -> np.ndarray:
        return np.array(self.eigenvalues, dtype=float)
