"""Query, result, reduction and bench models."""
from datetime import datetime
from typing import List, Dict, NamedTuple, Optional, Literal, Tuple

from pydantic import BaseModel, Field, field_validator

QueryMode = Literal["exists", "count", "report"]
IndexKind = Literal["count", "report", "zero-beta", "baseline", "quadratic"]


class ConsecutivePair(NamedTuple):
    """Occurrence i of P1 followed by occurrence j of P2 with nothing of either in between."""
    i: int
    j: int

    @property
    def distance(self) -> int:
        return self.j - self.i

    def render(self) -> str:
        return f"{self.i},{self.j}"


class GapQuery(BaseModel):
    """Two patterns and a distance range [alpha, beta]."""
    p1: bytes = Field(..., description="First pattern")
    p2: bytes = Field(..., description="Second pattern")
    alpha: int = Field(default=0, ge=0, description="Minimum distance")
    beta: int = Field(..., ge=0, description="Maximum distance")

    model_config = {"frozen": True}

    def effective_range(self, n: int) -> Tuple[int, int]:
        """Distances are at least 1 and at most n - 1; the range may come out empty."""
        return max(self.alpha, 1), min(self.beta, n - 1)


class ReportResult(BaseModel):
    """Valid consecutive pairs sorted by i."""
    pairs: List[ConsecutivePair] = Field(default_factory=list)

    @field_validator("pairs")
    @classmethod
    def _sorted_unique(cls, pairs: List[ConsecutivePair]) -> List[ConsecutivePair]:
        for prev, cur in zip(pairs, pairs[1:]):
            if cur.i <= prev.i:
                raise ValueError(f"pairs must be strictly increasing in i: {prev} then {cur}")
        return pairs

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def exists(self) -> bool:
        return bool(self.pairs)

    def render(self) -> str:
        return " ".join(pair.render() for pair in self.pairs)


class OracleResult(ReportResult):
    """Brute-force answer for one query."""


class QueryLine(BaseModel):
    """One parsed query-script line."""
    mode: QueryMode
    p1: bytes = Field(..., min_length=1)
    p2: bytes = Field(..., min_length=1)
    alpha: int = Field(..., ge=0)
    beta: int = Field(..., ge=0)

    @field_validator("p1", "p2")
    @classmethod
    def _no_separators(cls, value: bytes) -> bytes:
        if b"\t" in value or b"\n" in value:
            raise ValueError("patterns cannot contain tab or newline")
        return value

    def to_query(self) -> GapQuery:
        return GapQuery(p1=self.p1, p2=self.p2, alpha=self.alpha, beta=self.beta)


class IndexHeader(BaseModel):
    """Leading record of an index file."""
    magic: bytes = Field(default=b"GAPIDX")
    version: int = Field(default=1, ge=0, le=0xFFFF)
    kind: IndexKind


# Reduction models

class SetSystem(BaseModel):
    """m sets over string element identifiers."""
    sets: List[List[str]] = Field(default_factory=list)

    @field_validator("sets")
    @classmethod
    def _distinct_elements(cls, sets: List[List[str]]) -> List[List[str]]:
        for idx, members in enumerate(sets):
            if len(set(members)) != len(members):
                raise ValueError(f"set {idx + 1} lists an element twice")
        return sets

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def total_size(self) -> int:
        return sum(len(s) for s in self.sets)

    def frequencies(self) -> Dict[str, int]:
        freq: Dict[str, int] = {}
        for members in self.sets:
            for e in members:
                freq[e] = freq.get(e, 0) + 1
        return freq


class FixedFreqInstance(BaseModel):
    """Set system in which every element occurs in exactly `frequency` sets."""
    bucket: int = Field(..., ge=0, description="Frequency class j; 0 for hand-built instances")
    frequency: int = Field(..., ge=1)
    sets: List[List[str]]
    parent: List[Optional[int]] = Field(..., description="Original set id per instance set, None for dummies")

    @property
    def num_real(self) -> int:
        return sum(1 for p in self.parent if p is not None)

    @property
    def total_size(self) -> int:
        return sum(len(s) for s in self.sets)

    def elements(self) -> List[str]:
        return sorted({e for members in self.sets for e in members})


class ReductionString(BaseModel):
    """Text over {0,1,$} whose small-gap codeword pairs encode set intersections."""
    text: bytes
    codewords: List[str]
    codeword_length: int = Field(..., ge=1)
    block_size: int = Field(..., ge=0)
    frequency: int
    num_real: int


# Bench events

class BenchRequest(BaseModel):
    """A bench run over one or more texts."""
    texts: Dict[str, bytes] = Field(..., min_length=1, description="Text id to text")
    queries: List[QueryLine] = Field(default_factory=list)
    kind: IndexKind = Field(default="count")
    tau: Optional[int] = Field(default=None, ge=1)
    per_text_queries: Optional[Dict[str, List[QueryLine]]] = Field(
        default=None, description="Overrides `queries` for the listed texts"
    )

    def queries_for(self, text_id: str) -> List[QueryLine]:
        if self.per_text_queries and text_id in self.per_text_queries:
            return self.per_text_queries[text_id]
        return self.queries


class BenchmarkEvent(BaseModel):
    """Base class for bench events."""
    timestamp: datetime = Field(default_factory=datetime.utcnow)
    event_type: str


class QueryEvent(BenchmarkEvent):
    """Cost of one query."""
    event_type: Literal["query"] = "query"
    text_id: str
    mode: QueryMode
    n: int
    occ: int
    wall_ms: float
    ors_calls: int
    error: Optional[str] = None


class FitEvent(BenchmarkEvent):
    """Log-log slope of ORS calls against n for one mode."""
    event_type: Literal["fit"] = "fit"
    mode: QueryMode
    exponent: Optional[float] = None
    points: int


class SummaryEvent(BenchmarkEvent):
    """Bench run summary."""
    event_type: Literal["summary"] = "summary"
    total_queries: int
    total_duration_ms: float
    errors: List[str] = Field(default_factory=list)
