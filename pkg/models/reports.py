# models/reports.py - verdicts, cuts and report records
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class Criticality(str, Enum):
    NON_SNARK = "non-snark"
    NOT_CRITICAL = "not-critical"
    STRICTLY_CRITICAL = "strictly-critical"
    BICRITICAL = "bicritical"


class RemovablePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    adjacent: bool


class EdgeCut(BaseModel):
    """An edge cut with the two vertex sides it separates."""
    model_config = ConfigDict(frozen=True)

    edges: Tuple[int, ...]
    side_a: Tuple[int, ...]
    side_b: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)


class CyclicConnectivity(BaseModel):
    """
    Cyclic connectivity of a closed cubic graph.

    When no edge cut separates two cycles, `separating` is False and `value` is the
    cycle rank |E| - |V| + 1, which is what the convention for such graphs assigns.
    """
    model_config = ConfigDict(frozen=True)

    value: int
    separating: bool
    cut: Optional[EdgeCut] = None

    @property
    def label(self) -> str:
        return str(self.value) if self.separating else f"{self.value} (no cycle-separating cut)"


class PropertyReport(BaseModel):
    is_snark: Optional[bool] = None
    is_critical: Optional[bool] = None
    is_bicritical: Optional[bool] = None
    is_strictly_critical: Optional[bool] = None
    criticality: Optional[Criticality] = None
    removable_vertex_pairs: List[RemovablePair] = []
    scan_complete: bool = False
    girth: Optional[int] = None
    cyclic_connectivity: Optional[int] = None
    cyclic_cut: Optional[EdgeCut] = None
    order: int = 0
    timings: Dict[str, float] = {}

    def verdicts(self) -> Dict[str, object]:
        return self.model_dump(exclude={"timings"})


class ReportRecord(BaseModel):
    """One line of the append-only report stream."""
    kind: Literal["verify", "build", "claim", "oracle"] = "verify"
    source: str
    canonical_hash: str
    tool_version: str
    report: Optional[PropertyReport] = None
    claim: Optional["ClaimResult"] = None
    started_at: str
    wall_seconds: float = 0.0


class ClaimCheck(BaseModel):
    name: str
    provenance: Literal["PUBLISHED", "DERIVED", "TRIVIAL"]
    anchor: str = ""
    expected: str
    observed: str = ""
    passed: bool = False
    seconds: float = 0.0


class ClaimResult(BaseModel):
    claim_id: str
    title: str
    checks: List[ClaimCheck] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)


ReportRecord.model_rebuild()
