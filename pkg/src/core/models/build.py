from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class LevelRecord:
    """
    Запись об одном уровне построения.
    radius_new: спектральный радиус знаковой матрицы (новые собственные значения),
    new_min, new_max: крайние новые собственные значения,
    lambda_level: λ(G_i) по композиции старых и новых.
    """

    level: int
    n: int
    source: str
    radius_new: float
    new_min: float
    new_max: float
    lambda_level: float
    target: float
    converged: bool
    wall_time: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class BuildRecord:
    """
    Журнал построения экспандера: база, уровни и итоговая λ
    """

    d: int
    base_n: int
    strategy: str
    levels: Tuple[LevelRecord, ...]
    final_n: int
    final_lambda: float
    lambda_composed: float
    converged: bool
    seed: Optional[int] = None
    graph_path: Optional[str] = None

    @property
    def depth(self) -> int:
        return len(self.levels)

    def non_converged_levels(self) -> Tuple[int, ...]:
        return tuple(r.level for r in self.levels if not r.converged)
