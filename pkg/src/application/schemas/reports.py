from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator

from src.core.config import config
from src.core.enums import SigningStrategy
from src.core.models.build import BuildRecord, LevelRecord
from src.core.models.discrepancy import (
    DiscrepancyWitness,
    JumbledResult,
    SparsityResult,
)
from src.core.models.signing import GoodnessReport

REPORT_SCHEMA = 1


class BuildRequest(BaseModel):
    """
    Параметры команды build
    """

    d: int = Field(ge=2)
    target_n: int = Field(ge=3)
    strategy: SigningStrategy = SigningStrategy.RANDOM
    budget: int = Field(default_factory=lambda: config.DEFAULT_SEARCH_BUDGET, ge=1)
    seed: Optional[int] = None
    l: Optional[int] = None
    t_sparse: Optional[int] = None
    tol: Optional[float] = Field(default=None, gt=0)

    @field_validator("target_n")
    @classmethod
    def validate_target_n(cls, v: int, info: ValidationInfo) -> int:
        d = info.data.get("d")
        if d is not None and (v % (d + 1) or (v // (d + 1)) & (v // (d + 1) - 1)):
            raise ValueError(f"target_n должно иметь вид {d + 1}·2^i")
        return v

    @field_validator("l")
    @classmethod
    def validate_l(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and (v < 2 or v % 2):
            raise ValueError("l должно быть четным и не меньше 2")
        return v


class ReportBase(BaseModel):
    """
    Общая часть JSON-отчетов CLI
    """

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    command: str
    params: Dict[str, Any] = Field(default_factory=dict)


class LevelReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    level: int
    n: int
    source: str
    radius_new: float
    new_min: float
    new_max: float
    lambda_level: float = Field(alias="lambda")
    target: float
    converged: bool
    wall_time: Optional[float] = None

    @classmethod
    def from_record(cls, record: LevelRecord, timings: bool = False) -> "LevelReport":
        """
        Отчет уровня; время уровня пишется только по запросу, иначе
        повторные запуски дают разный JSON
        """
        return cls(
            level=record.level,
            n=record.n,
            source=record.source,
            radius_new=record.radius_new,
            new_min=record.new_min,
            new_max=record.new_max,
            lambda_level=record.lambda_level,
            target=record.target,
            converged=record.converged,
            wall_time=record.wall_time if timings else None,
        )


class FinalReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    d: int
    lambda_value: float = Field(alias="lambda")
    lambda_composed: float
    alpha_sampled: Optional[float] = None
    graph_path: Optional[str] = None
    chain_path: Optional[str] = None


class BuildReport(ReportBase):
    command: str = "build"
    levels: List[LevelReport]
    final: FinalReport
    converged: bool

    @classmethod
    def from_record(
        cls,
        record: BuildRecord,
        params: Dict[str, Any],
        alpha_sampled: Optional[float] = None,
        chain_path: Optional[str] = None,
        timings: bool = False,
    ) -> "BuildReport":
        return cls(
            params=params,
            levels=[LevelReport.from_record(r, timings) for r in record.levels],
            final=FinalReport(
                n=record.final_n,
                d=record.d,
                lambda_value=record.final_lambda,
                lambda_composed=record.lambda_composed,
                alpha_sampled=alpha_sampled,
                graph_path=record.graph_path,
                chain_path=chain_path,
            ),
            converged=record.converged,
        )


class JumbledReport(BaseModel):
    alpha: float
    exact: bool
    s: List[int]
    t: List[int]
    deviation: float

    @classmethod
    def from_result(cls, result: JumbledResult) -> "JumbledReport":
        return cls(
            alpha=result.alpha,
            exact=result.exact,
            s=sorted(result.s),
            t=sorted(result.t),
            deviation=result.deviation,
        )


class SparsityReport(BaseModel):
    ok: bool
    beta: float
    t: int
    worst_ratio: Optional[float] = None
    u: Optional[Dict[int, int]] = None
    v: Optional[Dict[int, int]] = None
    checked_subsets: int = 0
    pruned: bool = False

    @classmethod
    def from_result(cls, result: SparsityResult) -> "SparsityReport":
        u, v = result.violation if result.violation is not None else (None, None)
        return cls(
            ok=result.ok,
            beta=result.beta,
            t=result.t,
            worst_ratio=result.worst_ratio,
            u=u,
            v=v,
            checked_subsets=result.checked_subsets,
            pruned=result.pruned,
        )


class AnalyzeReport(ReportBase):
    command: str = "analyze"
    n: int
    m: int
    regular: bool
    d: Optional[int] = None
    connected: bool
    components: int
    signed: bool
    eigenvalues: List[float]
    radius: float
    lambda2: float = Field(alias="lambda")
    jumbled: Optional[JumbledReport] = None
    mixing_ok: Optional[bool] = None
    converse_bound: Optional[float] = None
    sparsity: Optional[SparsityReport] = None


class GoodnessSection(BaseModel):
    radius: float
    radius_threshold: float
    gamma: float
    sparse_depth: int
    sparse_ok: bool
    is_good: bool
    partial: bool = False
    sparsity: Optional[SparsityReport] = None

    @classmethod
    def from_report(cls, report: GoodnessReport) -> "GoodnessSection":
        return cls(
            radius=report.radius,
            radius_threshold=report.radius_threshold,
            gamma=report.gamma,
            sparse_depth=report.sparse_depth,
            sparse_ok=report.sparse_ok,
            is_good=report.is_good,
            partial=report.partial,
            sparsity=(
                SparsityReport.from_result(report.sparsity)
                if report.sparsity is not None
                else None
            ),
        )


class SignReport(ReportBase):
    command: str = "sign"
    strategy: str
    radius: float
    target: float
    negative_edges: int
    goodness: GoodnessSection
    details: Dict[str, Any] = Field(default_factory=dict)
    signing_path: Optional[str] = None


class VerifyReport(ReportBase):
    command: str = "verify"
    goodness: GoodnessSection


class LiftReport(ReportBase):
    command: str = "lift"
    n: int
    m: int
    covering_ok: bool
    old_radius: float
    new_radius: float
    lambda_lift: float = Field(alias="lambda")
    lift_path: Optional[str] = None


class WitnessReport(ReportBase):
    command: str = "witness"
    matrix: str
    rho: float
    d: float
    alpha_star: float
    u: List[int]
    v: List[int]
    value: float
    ratio: float

    @classmethod
    def from_witness(
        cls,
        witness: DiscrepancyWitness,
        params: Dict[str, Any],
        matrix: str,
        rho: float,
        d: float,
        alpha_star: float,
    ) -> "WitnessReport":
        return cls(
            params=params,
            matrix=matrix,
            rho=rho,
            d=d,
            alpha_star=alpha_star,
            u=list(witness.sorted_u()),
            v=list(witness.sorted_v()),
            value=witness.value,
            ratio=witness.ratio,
        )


class ExampleReport(ReportBase):
    command: str = "example"
    family: str
    n: int
    m: int
    details: Dict[str, Any] = Field(default_factory=dict)
    out_path: Optional[str] = None


class OracleQuery(BaseModel):
    i: int
    j: int
    adjacent: bool


class OracleReport(ReportBase):
    command: str = "oracle"
    level: int
    level_n: int
    queries: List[OracleQuery] = Field(default_factory=list)
    checked_pairs: Optional[int] = None
    consistent: Optional[bool] = None
