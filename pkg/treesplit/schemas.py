"""
Pydantic Schemas for treesplit
Type-safe records for weight specs, search results and benchmark rows
"""

from pydantic import BaseModel, Field, ValidationError, model_validator
from typing import Literal, Optional, List, Tuple

from .errors import InvalidWeightSpec


class WeightSpec(BaseModel):
    """How generated vertices get their (scaled, integer) weights."""
    kind: Literal["const", "uniform"]
    value: int = 1
    lo: int = 0
    hi: int = 0
    seed: int = 0

    @model_validator(mode="after")
    def _check_bounds(self):
        if self.kind == "const" and self.value < 0:
            raise ValueError(f"constant weight must be >= 0, got {self.value}")
        if self.kind == "uniform" and not (0 <= self.lo <= self.hi):
            raise ValueError(f"uniform bounds must satisfy 0 <= lo <= hi, got [{self.lo}, {self.hi}]")
        return self

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "WeightSpec":
        """Parse 'const:<c>' or 'uniform:<lo>:<hi>'."""
        parts = text.strip().split(":")
        try:
            if parts[0] == "const" and len(parts) == 2:
                return cls(kind="const", value=int(parts[1]), seed=seed)
            if parts[0] == "uniform" and len(parts) == 3:
                return cls(kind="uniform", lo=int(parts[1]), hi=int(parts[2]), seed=seed)
        except (ValueError, ValidationError) as e:
            raise InvalidWeightSpec(f"invalid weight spec {text!r}: {e}") from e
        raise InvalidWeightSpec(f"invalid weight spec {text!r}; expected const:<c> or uniform:<lo>:<hi>")

    def describe(self) -> str:
        if self.kind == "const":
            return f"const:{self.value}"
        return f"uniform:{self.lo}:{self.hi}"


class TraceRecord(BaseModel):
    """One examined vertex of a search."""
    iteration: int
    vertex: int
    outcome: Literal["found", "descend", "not_splittable"]
    anchor: Optional[int] = None
    component_weight: Optional[str] = None


class ResultRecord(BaseModel):
    """
    Output of `treesplit split`.

    Carries enough to re-verify the verdict from the tree file alone: the
    edge and side weights for a split, the witness for not_splittable.
    """
    verdict: Literal["split", "not_splittable"]
    method: str
    start: Optional[int] = None
    edge: Optional[Tuple[int, int]] = None
    side_weights: Optional[Tuple[str, str]] = None
    witness: Optional[int] = None
    total: str
    epsilon: str
    scale: int
    iterations: int
    elapsed_ms: float
    trace: Optional[List[TraceRecord]] = None


class CheckRecord(BaseModel):
    """Output of `treesplit check`."""
    edge: Tuple[int, int]
    cut_edge: bool
    side_weights: Tuple[str, str]
    total: str
    epsilon: str


class BenchInstanceRow(BaseModel):
    """One (instance, method, start strategy) measurement."""
    instance: int
    seed: int
    n: int
    total: int
    doubled_epsilon: int
    method: Literal["descent", "literal", "baseline"]
    start_strategy: str
    start: Optional[int] = None
    verdict: Literal["split", "not_splittable", "found", "gave_up"]
    steps: int
    elapsed_ms: float


class BenchSummaryRow(BaseModel):
    """Aggregate over all instances for one method and start strategy."""
    method: str
    start_strategy: str
    instances: int
    split: int = 0
    not_splittable: int = 0
    found: int = 0
    gave_up: int = 0
    mean_steps: float
    median_steps: float
    mean_ms: float
    total_ms: float = Field(ge=0)
