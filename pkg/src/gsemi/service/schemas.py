"""Request and response models for the JSON API.

Wire shapes mirror the on-disk file formats: a semigroup document carries
either a numerical generator list or an explicit (conductor, small) pair,
and a curve document carries per-branch polynomial series with exact
coefficients encoded as strings.
"""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SemigroupDoc(BaseModel):
    """On-the-wire semigroup: generators XOR (conductor + small)."""

    model_config = ConfigDict(extra="forbid")

    branches: Optional[int] = None
    name: Optional[str] = None
    generators: Optional[list[int]] = None
    conductor: Optional[list[int]] = None
    small: Optional[list[list[int]]] = None

    @model_validator(mode="after")
    def _one_presentation(self) -> "SemigroupDoc":
        has_gens = self.generators is not None
        has_expl = self.conductor is not None or self.small is not None
        if has_gens == has_expl:
            raise ValueError(
                "provide either generators or conductor+small, not both"
            )
        if has_expl and (self.conductor is None or self.small is None):
            raise ValueError("explicit form needs both conductor and small")
        return self

    def to_core_dict(self) -> dict:
        doc: dict[str, Any] = {}
        if self.branches is not None:
            doc["branches"] = self.branches
        if self.name is not None:
            doc["name"] = self.name
        if self.generators is not None:
            doc["generators"] = self.generators
        else:
            doc["conductor"] = self.conductor
            doc["small"] = self.small
        return doc


class CurveDoc(BaseModel):
    """On-the-wire curve presentation; coefficients validated downstream."""

    model_config = ConfigDict(extra="forbid")

    branches: Optional[int] = None
    field: Union[str, dict, None] = None
    generators: list = Field(min_length=1)
    name: Optional[str] = None

    def to_core_dict(self) -> dict:
        doc: dict[str, Any] = {"generators": self.generators}
        if self.branches is not None:
            doc["branches"] = self.branches
        if self.field is not None:
            doc["field"] = self.field
        if self.name is not None:
            doc["name"] = self.name
        return doc


class ViolationModel(BaseModel):
    code: str
    message: str
    # a vector, a pair of vectors, or a labeled dict, depending on the axiom
    witness: Optional[Any] = None


class ValidationResponse(BaseModel):
    valid: bool
    violations: list[ViolationModel]
    branches: Optional[int] = None
    name: Optional[str] = None


class IndicesModel(BaseModel):
    alpha: list[int]
    gamma: list[int]
    m: int
    r: int
    n: Optional[int] = None
    d: Optional[list[int]] = None
    degenerate: bool = False


class ClassificationModel(BaseModel):
    gorenstein: bool
    kunz: bool
    nearly_gorenstein_point: bool
    eta: int
    mu: int
    delta_invariant: int
    level: str


class InvariantsResponse(BaseModel):
    name: Optional[str] = None
    branches: int
    conductor: list[int]
    order_mode: str
    indices: IndicesModel
    classification: ClassificationModel


class CertificateModel(BaseModel):
    method: str
    points: list[list[int]]
    witnesses: list[list[list[int]]]


class NoetherResponse(BaseModel):
    name: Optional[str] = None
    order_mode: str
    target_length: int
    found: bool
    full_chain: Optional[CertificateModel] = None
    part1_chain: Optional[CertificateModel] = None
    recipe_applicable: bool
    diagnostics: list[dict]


class IngestOptions(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_trunc: Optional[int] = Field(default=None, ge=1)
    max_depth: Optional[int] = Field(default=None, ge=1)
    start_trunc: Optional[int] = Field(default=None, ge=1)


class IngestRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    curve: CurveDoc
    options: IngestOptions = Field(default_factory=IngestOptions)


class IngestResponse(BaseModel):
    semigroup: dict
    provenance: dict
    delta: int


class CorpusItem(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    curve: CurveDoc


class CorpusRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    items: list[CorpusItem]
    order_mode: Literal["lt-neq", "lt-all"] = "lt-neq"
    max_trunc: Optional[int] = Field(default=None, ge=1)


class CorpusRow(BaseModel):
    name: str
    status: Literal["ok", "invalid", "error"]
    detail: Optional[str] = None
    branches: Optional[int] = None
    alpha: Optional[list[int]] = None
    beta: Optional[list[int]] = None
    gamma: Optional[list[int]] = None
    m: Optional[int] = None
    r: Optional[int] = None
    n: Optional[int] = None
    gorenstein: Optional[bool] = None
    kunz: Optional[bool] = None
    eta: Optional[int] = None
    mu: Optional[int] = None
    delta: Optional[int] = None
    chain_length: Optional[int] = None
    recipe_applicable: Optional[bool] = None
    dp_success: Optional[bool] = None
    runtime_ms: Optional[float] = None


class CorpusResponse(BaseModel):
    order_mode: str
    rows: list[CorpusRow]
    counts: dict[str, int]
