import math
from dataclasses import dataclass
from typing import Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.core.abstractions.signing_source import SigningSource
from src.core.config import config
from src.core.exceptions import InvalidParameterError
from src.core.models.discrepancy import SparsityResult
from src.core.models.graph import Graph


def gamma_threshold(d: int) -> float:
    """
    γ(d) = C·sqrt(d·log2 d), C = GAMMA_CONSTANT
    :param d: степень
    :return: порог разреженности
    """
    if d < 1:
        raise InvalidParameterError("d должно быть положительным.")
    return config.GAMMA_CONSTANT * math.sqrt(d * math.log2(d))


def radius_threshold(d: int) -> float:
    """Порог радиуса хорошей разметки: γ(d)·log2 d"""
    return gamma_threshold(d) * math.log2(d) if d > 1 else 0.0


def ceil_log2(n: int) -> int:
    return max(0, math.ceil(math.log2(n))) if n > 1 else 0


class SearchParams(BaseModel):
    """
    Параметры поиска разметки. Пропущенные пороги выводятся из d.
    """

    d: int = Field(ge=1)
    gamma: Optional[float] = None
    target_radius: Optional[float] = None
    radius_threshold: Optional[float] = None
    budget: int = Field(default_factory=lambda: config.DEFAULT_SEARCH_BUDGET, ge=1)
    l: Optional[int] = None
    t_sparse: Optional[int] = None
    seed: Optional[int] = None
    max_iterations: int = Field(
        default_factory=lambda: config.LOCAL_REFINE_MAX_ITERATIONS, ge=0
    )

    @field_validator("l")
    @classmethod
    def validate_l(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and (v < 2 or v % 2):
            raise ValueError("l должно быть четным и не меньше 2")
        return v

    @field_validator("t_sparse")
    @classmethod
    def validate_t_sparse(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("t_sparse должно быть не меньше 1")
        return v

    @model_validator(mode="after")
    def fill_thresholds(self) -> "SearchParams":
        if self.gamma is None:
            self.gamma = gamma_threshold(self.d)
        if self.target_radius is None:
            self.target_radius = 2 * math.sqrt(max(self.d - 1, 0))
        if self.radius_threshold is None:
            self.radius_threshold = radius_threshold(self.d)
        return self

    @classmethod
    def for_graph(cls, graph: Graph, **overrides) -> "SearchParams":
        """
        Параметры для графа: d берется как максимальная степень
        :param graph: граф
        :param overrides: явные значения полей
        :return: SearchParams
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        overrides.setdefault("d", max(graph.max_degree, 1))
        return cls(**overrides)

    def walk_length(self, n: int) -> int:
        """l по умолчанию: 2⌈log2 n⌉, не больше WALK_LENGTH_CAP, четное"""
        if self.l is not None:
            return self.l
        cap = config.WALK_LENGTH_CAP - config.WALK_LENGTH_CAP % 2
        return max(2, min(2 * ceil_log2(n), cap))

    def sparse_depth(self, n: int) -> int:
        """t_sparse по умолчанию: ⌈log2 n⌉"""
        if self.t_sparse is not None:
            return self.t_sparse
        return max(1, ceil_log2(n))


@dataclass(frozen=True)
class GoodnessReport:
    """
    Сертификат хорошей разметки: радиус A_s и (γ, 1+⌈log2 n⌉)-разреженность лифта
    """

    radius: float
    radius_threshold: float
    gamma: float
    sparse_depth: int
    sparse_ok: bool
    sparsity: Optional[SparsityResult] = None
    partial: bool = False

    @property
    def is_good(self) -> bool:
        return self.radius <= self.radius_threshold and self.sparse_ok


@dataclass(frozen=True)
class SampleSpace:
    """
    ε-смещенное пространство строк длины m с зернами (x, y) ∈ GF(2^s)^2.
    modulus: неприводимый многочлен степени s в битовой записи.
    """

    m: int
    field_log: int
    modulus: int
    k: int = 4

    @property
    def size(self) -> int:
        return 1 << (2 * self.field_log)

    @property
    def bias(self) -> float:
        return max(self.m - 1, 0) / (1 << self.field_log)


@dataclass(frozen=True)
class LiftChain:
    """
    Цепочка 2-лифтов: базовый граф и источник знаков для каждого уровня.
    Граф уровня i имеет base.n·2^i вершин.
    """

    base: Graph
    sources: Tuple[SigningSource, ...]

    @property
    def depth(self) -> int:
        return len(self.sources)

    def level_size(self, level: int) -> int:
        return self.base.n << level
