from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from .errors import ParseError
from .field import FieldElement, parse_rational
from .linalg import Matrix, Subspace


def _check_rational(v):
    try:
        parse_rational(v)
    except ParseError as e:
        raise ValueError(str(e))
    return v


def _vector_json(v) -> List[List[str]]:
    return [x.to_json() for x in v]


# Problem files

RationalText = Union[str, int]
ElementText = Union[RationalText, List[RationalText]]


class FieldSpec(BaseModel):
    minpoly: List[RationalText] = Field(..., min_length=2, description="Coefficients lowest degree first, monic")

    @field_validator("minpoly")
    @classmethod
    def validate_minpoly(cls, v):
        for c in v:
            _check_rational(c)
        return v


class BracketSpec(BaseModel):
    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    coeffs: Dict[str, RationalText]

    @field_validator("coeffs")
    @classmethod
    def validate_coeffs(cls, v):
        for k, c in v.items():
            if not k.strip().isdigit():
                raise ValueError(f"basis index '{k}' is not a non-negative integer")
            _check_rational(c)
        return v


class AlgebraSpec(BaseModel):
    dim: int = Field(..., ge=0)
    names: Optional[List[str]] = None
    brackets: List[BracketSpec] = []

    @model_validator(mode="after")
    def validate_indices(self):
        if self.names is not None and len(self.names) != self.dim:
            raise ValueError(f"{len(self.names)} names for dimension {self.dim}")
        for b in self.brackets:
            if b.i >= self.dim or b.j >= self.dim:
                raise ValueError(f"bracket ({b.i}, {b.j}) out of range for dimension {self.dim}")
            for k in b.coeffs:
                if int(k) >= self.dim:
                    raise ValueError(f"coefficient index {k} out of range for dimension {self.dim}")
        return self


class StructureSpec(BaseModel):
    label: str
    matrix: List[List[ElementText]]

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v):
        for row in v:
            if len(row) != len(v):
                raise ValueError("structure matrix must be square")
            for x in row:
                for c in (x if isinstance(x, list) else [x]):
                    _check_rational(c)
        return v


class HypercomplexSpec(BaseModel):
    I: StructureSpec
    J: StructureSpec
    K: StructureSpec


class ProblemSpec(BaseModel):
    name: str = "unnamed"
    provenance: str = ""
    field: Optional[FieldSpec] = None
    algebra: AlgebraSpec
    complex_structures: List[StructureSpec] = []
    hypercomplex: Optional[HypercomplexSpec] = None

    @model_validator(mode="after")
    def validate_structure_sizes(self):
        specs = list(self.complex_structures)
        if self.hypercomplex is not None:
            specs += [self.hypercomplex.I, self.hypercomplex.J, self.hypercomplex.K]
        for s in specs:
            if len(s.matrix) != self.algebra.dim:
                raise ValueError(f"structure '{s.label}' is {len(s.matrix)}x{len(s.matrix)}, algebra has dimension {self.algebra.dim}")
        return self


# Core report models

class ReportModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    def summary(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")


class SpherePoint(BaseModel):
    """(a, b, c) with a^2 + b^2 + c^2 = 1, the parameter of L = aI + bJ + cK"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a: Fraction
    b: Fraction
    c: Fraction

    @field_validator("a", "b", "c", mode="before")
    @classmethod
    def read_rational(cls, v):
        try:
            return parse_rational(v)
        except ParseError as e:
            raise ValueError(str(e))

    @field_serializer("a", "b", "c")
    def serialize_rational(self, v: Fraction) -> str:
        return str(v)

    def norm_squared(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c

    def is_on_sphere(self) -> bool:
        return self.norm_squared() == 1

    def antipode(self) -> "SpherePoint":
        return SpherePoint(a=-self.a, b=-self.b, c=-self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


class AxiomCheck(BaseModel):
    name: str
    passed: bool
    required: bool = True
    witness: Optional[str] = None


class ValidationReport(BaseModel):
    problem: str
    checks: List[AxiomCheck] = []

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def failures(self) -> List[str]:
        return [f"{c.name} ({c.witness})" if c.witness else c.name for c in self.checks if c.required and not c.passed]


class SeriesReport(ReportModel):
    kind: Literal["lower", "upper"]
    terms: List[Subspace]
    steps: int = Field(..., ge=0)

    @field_serializer("terms")
    def serialize_terms(self, terms: List[Subspace]):
        return [t.to_json() for t in terms]

    @property
    def dims(self) -> List[int]:
        return [t.dim for t in self.terms]

    def summary(self) -> Dict[str, Any]:
        return {"kind": self.kind, "steps": self.steps, "dims": self.dims}


class ClosureReport(ReportModel):
    mode: Literal["L", "H", "plain"]
    input: Subspace
    result: Subspace
    iterations: int = Field(..., ge=0)

    @field_serializer("input", "result")
    def serialize_subspace(self, w: Subspace):
        return w.to_json()

    def summary(self) -> Dict[str, Any]:
        return {"mode": self.mode, "input_dim": self.input.dim, "result_dim": self.result.dim, "iterations": self.iterations}


class DifferentialCount(BaseModel):
    """Closed holomorphic 1-forms: real codimension of [g,g] + L[g,g] and the complex dimension (half of it)"""

    real_codim: int = Field(..., ge=0)
    complex_dim: int = Field(..., ge=0)


class AlbaneseReport(ReportModel):
    mode: Literal["L", "H"]
    kernel: Subspace
    torus_real_dim: int = Field(..., ge=0)
    torus_complex_dim: int = Field(..., ge=0)
    quaternionic_dim: Optional[int] = None
    induced_ops: Dict[str, Matrix]
    complement: List[int]
    quotient_labels: List[str]
    closure_iterations: int = 0

    @field_serializer("kernel")
    def serialize_kernel(self, w: Subspace):
        return w.to_json()

    @field_serializer("induced_ops")
    def serialize_ops(self, ops: Dict[str, Matrix]):
        return {label: m.to_json() for label, m in ops.items()}

    def summary(self) -> Dict[str, Any]:
        out = {
            "mode": self.mode,
            "kernel_dim": self.kernel.dim,
            "torus_real_dim": self.torus_real_dim,
            "torus_complex_dim": self.torus_complex_dim,
        }
        if self.quaternionic_dim is not None:
            out["quaternionic_dim"] = self.quaternionic_dim
        return out


class TowerLevel(BaseModel):
    algebra_dim: int
    center_dim: int
    fiber_dim: int
    quotient_dim: int
    center_rational: bool
    structures_preserved: bool


class TowerReport(BaseModel):
    mode: Literal["L", "H"]
    levels: List[TowerLevel]

    @property
    def steps(self) -> int:
        return len(self.levels)

    @property
    def structures_preserved(self) -> List[bool]:
        return [level.structures_preserved for level in self.levels]

    def summary(self) -> Dict[str, Any]:
        return {"mode": self.mode, "levels": [[lv.algebra_dim, lv.center_dim, lv.fiber_dim] for lv in self.levels]}


class ExceptionalWitness(ReportModel):
    """W_{Q,L} together with x in it and Q in {I, J, K} with Qx outside it"""

    point: SpherePoint
    closure: Subspace
    vector: List[FieldElement]
    operator: Literal["I", "J", "K"]
    image: List[FieldElement]

    @field_serializer("closure")
    def serialize_closure(self, w: Subspace):
        return w.to_json()

    @field_serializer("vector", "image")
    def serialize_vector(self, v: List[FieldElement]):
        return _vector_json(v)


class ScanSample(ReportModel):
    u: Optional[Fraction] = None
    v: Optional[Fraction] = None
    point: SpherePoint
    kernel: Subspace
    kernel_dim: int
    kernel_equals_H_closure: bool

    @field_serializer("u", "v")
    def serialize_parameter(self, x: Optional[Fraction]):
        return None if x is None else str(x)

    @field_serializer("kernel")
    def serialize_kernel(self, w: Subspace):
        return w.to_json()


class ScanReport(ReportModel):
    samples: List[ScanSample]
    h_closure: Subspace
    h_closure_dim: int
    exceptional: List[SpherePoint] = []
    witnesses: List[ExceptionalWitness] = []

    @field_serializer("h_closure")
    def serialize_closure(self, w: Subspace):
        return w.to_json()

    def csv_rows(self) -> List[List[str]]:
        rows = [["u", "v", "a", "b", "c", "kernel_dim", "equal"]]
        for s in self.samples:
            rows.append([
                "" if s.u is None else str(s.u),
                "" if s.v is None else str(s.v),
                str(s.point.a), str(s.point.b), str(s.point.c),
                str(s.kernel_dim),
                "true" if s.kernel_equals_H_closure else "false",
            ])
        return rows

    def summary(self) -> Dict[str, Any]:
        return {
            "samples": len(self.samples),
            "h_closure_dim": self.h_closure_dim,
            "kernel_dims": [s.kernel_dim for s in self.samples],
            "exceptional": [p.model_dump(mode="json") for p in self.exceptional],
        }


class ReportEnvelope(BaseModel):
    command: str
    input: str
    input_sha256: str
    report: Dict[str, Any]
