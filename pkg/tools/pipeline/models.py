# ====== Code Summary ======
# Report records of a pipeline run. Every record serializes to JSON-native dicts through
# `to_dict` and is rebuilt by `from_dict`, so that a report read back from disk compares equal
# to the one that was written. Wall-times live only in `PipelineReport.timings`.

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum

# ====== Internal Project Imports ======
from acflow import AcConfig
from baseline import GreedyConfig
from formulations import FormulationConfig
from mga import MgaConfig, MgaCriterion, MgaError
from milp import MilpConfig
from pipeline.exceptions import PipelineError

PROBLEMS = ("ots", "uc")
ALL_CRITERIA = tuple(criterion.value for criterion in MgaCriterion)
SAFE_LABELS = ("Safe", "Optimal")


def to_jsonable(value):
    """Tuples to lists, enums to values, non-finite floats to None, dataclasses to dicts."""
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass(frozen=True)
class PipelineConfig:
    """
    Everything a run depends on besides the case file.

    Attributes:
        problem (str): "ots" or "uc".
        criteria (tuple[str, ...]): MGA criteria to run, in report order.
        mga (MgaConfig): Tolerance, iteration limit, seed and MGA workers (criterion is overridden per run).
        formulation (FormulationConfig): DC model options.
        milp (MilpConfig): Branch-and-bound settings.
        ac (AcConfig): Recovery settings.
        greedy (GreedyConfig | None): Greedy baseline settings, None to skip it.
        workers (int): Criteria run concurrently.
    """
    problem: str = "ots"
    criteria: tuple[str, ...] = ALL_CRITERIA
    mga: MgaConfig = field(default_factory=MgaConfig)
    formulation: FormulationConfig = field(default_factory=FormulationConfig)
    milp: MilpConfig = field(default_factory=MilpConfig)
    ac: AcConfig = field(default_factory=AcConfig)
    greedy: GreedyConfig | None = None
    workers: int = 1

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise PipelineError(f"problem must be one of {PROBLEMS}, got {self.problem!r}")
        try:
            criteria = tuple(MgaCriterion.from_tag(c).value for c in self.criteria)
        except MgaError as e:
            raise PipelineError(str(e)) from e
        if not criteria:
            raise PipelineError("at least one MGA criterion is required")
        if len(set(criteria)) != len(criteria):
            raise PipelineError(f"criteria repeated: {criteria}")
        object.__setattr__(self, "criteria", criteria)
        if self.workers < 1:
            raise PipelineError(f"workers must be at least 1, got {self.workers}")

    def to_dict(self) -> dict:
        return to_jsonable(self)


@dataclass(frozen=True)
class AlternativeRecord:
    """
    One alternative with its AC recovery.

    Attributes:
        criterion (str): Criterion that produced it ("base" for the DC optimum).
        iteration (int): MGA iteration (0 for the base solution).
        topology (tuple[int, ...]): Binary decision vector.
        dc_objective (float): DC cost.
        connected (int): Connected branches (OTS) or committed devices (UC).
        classification (str): Infeasible, Overloaded, Safe or Optimal.
        converged (bool): Recovery converged.
        ac_objective (float | None): AC cost, None when not converged.
        max_slack (float): Largest thermal slack.
        violation (float): Largest equality/bound violation of the recovered point.
        redispatch (tuple[float, ...]): AC minus DC real output per device.
        bus_roles (tuple[str, ...]): Generator/load/junction per bus (UC only).
        v (tuple[float, ...]): Recovered voltage magnitude per bus.
        theta (tuple[float, ...]): Recovered angle per bus.
        p_g (tuple[float, ...]): Recovered real output per device.
        q_g (tuple[float, ...]): Recovered reactive output per device.
    """
    criterion: str
    iteration: int
    topology: tuple[int, ...]
    dc_objective: float
    connected: int
    classification: str
    converged: bool
    ac_objective: float | None
    max_slack: float
    violation: float
    redispatch: tuple[float, ...]
    bus_roles: tuple[str, ...] = ()
    v: tuple[float, ...] = ()
    theta: tuple[float, ...] = ()
    p_g: tuple[float, ...] = ()
    q_g: tuple[float, ...] = ()

    @property
    def is_safe(self) -> bool:
        return self.classification in SAFE_LABELS

    @property
    def redispatch_mean(self) -> float:
        if not self.redispatch:
            return 0.0
        return sum(abs(d) for d in self.redispatch) / len(self.redispatch)

    def to_dict(self) -> dict:
        return to_jsonable(self)

    @classmethod
    def from_dict(cls, data: dict) -> "AlternativeRecord":
        return cls(
            **{
                **data,
                "topology": tuple(data["topology"]),
                "redispatch": tuple(data["redispatch"]),
                "bus_roles": tuple(data.get("bus_roles", ())),
                **{key: tuple(data.get(key, ())) for key in ("v", "theta", "p_g", "q_g")},
            }
        )


@dataclass(frozen=True)
class CriterionReport:
    """
    Attributes:
        criterion (str): MGA criterion tag.
        alternatives (tuple[AlternativeRecord, ...]): Base solution then every new alternative.
        trajectory (tuple[int, ...]): Connected count per alternative.
        stop_reason (str): "duplicate", "max_iter" or "iter_limit".
        iterations (int): MGA subproblems solved.
        duplicates (int): Random-vector repeats dropped.
        skipped (tuple[int, ...]): Iterations stopped by the node/time limit.
        notes (tuple[str, ...]): Run notes.
        counts (dict[str, int]): Alternatives per classification.
        recoveries_to_first_safe (int | None): Recoveries until the first Safe/Optimal alternative.
    """
    criterion: str
    alternatives: tuple[AlternativeRecord, ...]
    trajectory: tuple[int, ...]
    stop_reason: str
    iterations: int
    duplicates: int = 0
    skipped: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()
    counts: dict = field(default_factory=dict)
    recoveries_to_first_safe: int | None = None

    @property
    def converged(self) -> bool:
        return self.stop_reason == "duplicate"

    @property
    def feasible_set(self) -> frozenset:
        return frozenset(alt.topology for alt in self.alternatives if alt.is_safe)

    def to_dict(self) -> dict:
        return to_jsonable(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CriterionReport":
        return cls(
            criterion=data["criterion"],
            alternatives=tuple(AlternativeRecord.from_dict(a) for a in data["alternatives"]),
            trajectory=tuple(data["trajectory"]),
            stop_reason=data["stop_reason"],
            iterations=data["iterations"],
            duplicates=data.get("duplicates", 0),
            skipped=tuple(data.get("skipped", ())),
            notes=tuple(data.get("notes", ())),
            counts=dict(data.get("counts", {})),
            recoveries_to_first_safe=data.get("recoveries_to_first_safe"),
        )


@dataclass(frozen=True)
class OverlapResult:
    """
    Attributes:
        sizes (tuple[tuple[str, int], ...]): Feasible set size per criterion.
        pairwise (tuple[tuple[str, str, int], ...]): |A ∩ B| for every criterion pair.
        common (int): Solutions feasible for every criterion.
        union (int): Distinct feasible solutions over all criteria.
    """
    sizes: tuple[tuple[str, int], ...] = ()
    pairwise: tuple[tuple[str, str, int], ...] = ()
    common: int = 0
    union: int = 0

    def between(self, a: str, b: str) -> int:
        for left, right, count in self.pairwise:
            if {left, right} == {a, b}:
                return count
        raise KeyError((a, b))

    def to_dict(self) -> dict:
        return to_jsonable(self)

    @classmethod
    def from_dict(cls, data: dict) -> "OverlapResult":
        return cls(
            sizes=tuple(tuple(s) for s in data["sizes"]),
            pairwise=tuple(tuple(p) for p in data["pairwise"]),
            common=data["common"],
            union=data["union"],
        )


@dataclass(frozen=True)
class PipelineReport:
    """
    Result of `run_pipeline`.

    Attributes:
        case (dict): Case name, path and sizes.
        problem (str): "ots" or "uc".
        status (str): Base MILP status.
        base (AlternativeRecord | None): Base DC optimum and its recovery.
        criteria (tuple[CriterionReport, ...]): One entry per requested criterion.
        overlap (OverlapResult): Overlap of the Safe/Optimal sets.
        redispatch (dict): Per-device re-dispatch summary over distinct alternatives.
        best_known_cost (float | None): Cheapest Safe AC cost found.
        greedy (dict | None): Greedy baseline trajectory.
        config (dict): Resolved configuration.
        timings (dict): Wall-times, excluded from equality.
    """
    case: dict
    problem: str
    status: str
    base: AlternativeRecord | None = None
    criteria: tuple[CriterionReport, ...] = ()
    overlap: OverlapResult = field(default_factory=OverlapResult)
    redispatch: dict = field(default_factory=dict)
    best_known_cost: float | None = None
    greedy: dict | None = None
    config: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def solved(self) -> bool:
        return self.status == "Optimal"

    @property
    def alternatives(self) -> tuple[AlternativeRecord, ...]:
        return tuple(alt for report in self.criteria for alt in report.alternatives)

    def criterion(self, tag: str) -> CriterionReport:
        for report in self.criteria:
            if report.criterion == tag:
                return report
        raise KeyError(tag)

    def to_dict(self, include_timings: bool = True) -> dict:
        data = {
            "case": to_jsonable(self.case),
            "problem": self.problem,
            "status": self.status,
            "base": None if self.base is None else self.base.to_dict(),
            "criteria": [report.to_dict() for report in self.criteria],
            "overlap": self.overlap.to_dict(),
            "redispatch": to_jsonable(self.redispatch),
            "best_known_cost": self.best_known_cost,
            "greedy": to_jsonable(self.greedy),
            "config": to_jsonable(self.config),
        }
        if include_timings:
            data["timings"] = to_jsonable(self.timings)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineReport":
        try:
            return cls(
                case=data["case"],
                problem=data["problem"],
                status=data["status"],
                base=None if data.get("base") is None else AlternativeRecord.from_dict(data["base"]),
                criteria=tuple(CriterionReport.from_dict(c) for c in data.get("criteria", ())),
                overlap=OverlapResult.from_dict(data["overlap"]) if data.get("overlap") else OverlapResult(),
                redispatch=data.get("redispatch", {}),
                best_known_cost=data.get("best_known_cost"),
                greedy=data.get("greedy"),
                config=data.get("config", {}),
                timings=data.get("timings", {}),
            )
        except (KeyError, TypeError) as e:
            raise PipelineError(f"malformed report: {e}") from e
