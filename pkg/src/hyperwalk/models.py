"""Report and run-configuration models shared by the CLI and the analysis service."""
from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

# Vertex keys: dense ids (finite), words (trees, linked-triangle), integer tuples (Cayley)
VertexKey = Union[int, str, list[int]]

# [[k, "num/den"], ...] in increasing k
Row = list[tuple[int, str]]


class RunConfig(BaseModel):
    """Validated options of one CLI invocation."""

    graph: str = Field(description="Graph family spec, e.g. prism:6 or file:graph.json")
    base: Optional[str] = Field(default=None, description="Base point key, or 'all'")
    max_level: Optional[int] = Field(default=None, ge=0, description="Truncation level for infinite graphs")
    format: Literal["text", "json"] = "text"
    workers: int = Field(default=1, ge=1)
    samples: int = Field(default=100_000, ge=1)
    seed: int = 7


class SearchConfig(BaseModel):
    order: int = Field(ge=1, description="Number of vertices")
    degree: int = Field(ge=1, description="Common vertex degree")
    productive: bool = False
    mixed: bool = False
    format: Literal["text", "json"] = "text"
    workers: int = Field(default=1, ge=1)


class ConvolutionReport(BaseModel):
    base: VertexKey
    max_level: int
    exact: bool = Field(description="Rows are exact, not estimates")
    rows: dict[str, Row] = Field(description="'i,j' -> R_i∘R_j")


class MetricsReport(BaseModel):
    radius: int
    diameter: int
    self_centered: bool


class AnalyzeReport(ConvolutionReport):
    """The convolution table at top level, followed by graph metrics."""

    graph: str
    finite: bool
    metrics: Optional[MetricsReport] = None
    partition: list[int] = Field(description="Sizes of the distance levels around the base point")


class FailureReport(BaseModel):
    axiom: str
    witness: list[VertexKey]
    lhs: Optional[Row] = None
    rhs: Optional[Row] = None
    detail: str = ""


class ClassReport(BaseModel):
    members: list[VertexKey]
    productive: bool


class VerdictReport(BaseModel):
    graph: str
    base: Optional[VertexKey] = None
    productive: bool
    scope: int
    finite: bool
    failures: list[FailureReport] = []
    classes: Optional[list[ClassReport]] = None


class IntersectionArrayReport(BaseModel):
    b: list[int]
    c: list[int]


class RegularityWitnessReport(BaseModel):
    level: int
    pairs: list[list[VertexKey]]
    counts: list[list[int]] = Field(description="(c_i, a_i, b_i) for each pair")


class CrosscheckReport(BaseModel):
    holds: bool
    checked: int
    bose_mesner: Optional[bool] = None
    normalized: Optional[bool] = None
    linearization: Optional[bool] = None
    failures: list[str] = []


class SchemeReport(BaseModel):
    graph: str
    distance_regular: bool
    scope: int
    intersection_array: Optional[IntersectionArrayReport] = None
    witness: Optional[RegularityWitnessReport] = None
    p: dict[str, int] = Field(default={}, description="'i,j,k' -> p_{i,j}^k, nonzero entries only")
    srg: Optional[tuple[int, int, int, int]] = None
    identities: Optional[dict[str, int]] = Field(default=None, description="Checked instances per identity")
    identity_failures: list[str] = []
    crosscheck: Optional[CrosscheckReport] = None


class McReport(BaseModel):
    graph: str
    base: VertexKey
    i: int
    j: int
    samples: int
    seed: int
    frequencies: dict[str, float]
    exact: dict[str, str]
    z_scores: dict[str, Optional[float]] = Field(description="Binomial z-score per level; null where the exact weight is 0 or 1 and missed")


class SearchHit(BaseModel):
    name: str
    edges: list[tuple[int, int]]
    productive_vertices: Optional[list[int]] = None


class SearchReport(BaseModel):
    order: int
    degree: int
    filter: Literal["none", "productive", "mixed"]
    graphs: list[SearchHit]
