from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class DiscrepancyWitness:
    """
    Пара 0/1 векторов с непересекающимися носителями и их отношение |uMv|/(|u||v|)
    """

    u: FrozenSet[int]
    v: FrozenSet[int]
    value: float
    ratio: float

    def indicator_u(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        x[sorted(self.u)] = 1.0
        return x

    def indicator_v(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        x[sorted(self.v)] = 1.0
        return x

    def sorted_u(self) -> Tuple[int, ...]:
        return tuple(sorted(self.u))

    def sorted_v(self) -> Tuple[int, ...]:
        return tuple(sorted(self.v))


@dataclass(frozen=True)
class DyadicVector:
    """
    Вектор, все ненулевые координаты которого равны ±2^{-level}, level >= 1.
    signs[j] ∈ {-1, 0, 1}; levels[j] имеет смысл только при signs[j] != 0.
    scale: глобальный множитель, на который был поделен исходный вектор.
    """

    signs: Tuple[int, ...]
    levels: Tuple[int, ...]
    scale: float = 1.0

    @property
    def n(self) -> int:
        return len(self.signs)

    def values(self) -> np.ndarray:
        out = np.zeros(self.n)
        for j, (s, lv) in enumerate(zip(self.signs, self.levels)):
            if s:
                out[j] = s * 2.0 ** (-lv)
        return out

    def level_sets(self) -> dict:
        """Отображение level -> множество индексов S_i"""
        sets: dict = {}
        for j, (s, lv) in enumerate(zip(self.signs, self.levels)):
            if s:
                sets.setdefault(lv, set()).add(j)
        return {k: frozenset(v) for k, v in sorted(sets.items())}

    def level_sizes(self) -> dict:
        return {k: len(v) for k, v in self.level_sets().items()}

    def sign_vector(self, level: int) -> np.ndarray:
        """Знаковый вектор x^i, ограниченный на S_i"""
        out = np.zeros(self.n)
        for j, (s, lv) in enumerate(zip(self.signs, self.levels)):
            if s and lv == level:
                out[j] = s
        return out


@dataclass(frozen=True)
class JumbledResult:
    """Результат поиска максимального отклонения e(S,T) от d|S||T|/n"""

    alpha: float
    s: FrozenSet[int]
    t: FrozenSet[int]
    deviation: float
    exact: bool


@dataclass(frozen=True)
class SparsityResult:
    """
    Результат проверки (β,t)-разреженности.
    violation хранит первую нарушающую пару векторов
    как отображения вершина -> значение.
    worst_ratio равен None, если перебор отсечен оценкой по степеням.
    """

    ok: bool
    beta: float
    t: int
    worst_ratio: Optional[float]
    violation: Optional[Tuple[Dict[int, int], Dict[int, int]]] = None
    checked_subsets: int = 0
    pruned: bool = False
