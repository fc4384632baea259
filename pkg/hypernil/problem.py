"""
Problem files: a Lie algebra, an optional number field and the structures on it.

Reading goes text -> ProblemSpec (pydantic) -> core objects; writing goes
back through the core objects, so re-serialization is canonical.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from .errors import MissingStructure, NotNilpotent, ParseError, ProblemValidationError
from .field import QQ, NumberField
from .lie import LieAlgebra, jacobi_witness, lower_central_series
from .linalg import Matrix
from .models import AxiomCheck, ProblemSpec, StructureSpec, ValidationReport
from .structures import (
    ComplexStructure,
    HypercomplexTriple,
    abelian_witness,
    check_almost_complex,
    check_quaternionic,
    nijenhuis_witness,
)

logger = logging.getLogger(__name__)


class Problem:
    def __init__(
        self,
        algebra: LieAlgebra,
        field: NumberField = QQ,
        complex_structures: Optional[Dict[str, ComplexStructure]] = None,
        hypercomplex: Optional[HypercomplexTriple] = None,
        name: str = "unnamed",
        provenance: str = "",
        source_sha256: str = "",
    ):
        self.algebra = algebra
        self.field = field
        self.complex_structures = dict(complex_structures or {})
        self.hypercomplex = hypercomplex
        self.name = name
        self.provenance = provenance
        self.source_sha256 = source_sha256

    @property
    def structures(self) -> List[ComplexStructure]:
        """Every complex structure in the file, the triple's members last"""
        out = list(self.complex_structures.values())
        if self.hypercomplex is not None:
            out.extend(self.hypercomplex.members)
        return out

    def structure(self, label: Optional[str] = None) -> ComplexStructure:
        """
        The structure named label (I, J, K also name the triple's members),
        or the first complex structure, or the triple's I.
        """
        if label is None:
            if self.complex_structures:
                return next(iter(self.complex_structures.values()))
            if self.hypercomplex is not None:
                return self.hypercomplex.I
            raise MissingStructure(f"problem '{self.name}' has no complex structure")
        if label in self.complex_structures:
            return self.complex_structures[label]
        if self.hypercomplex is not None:
            for key, member in zip("IJK", self.hypercomplex.members):
                if label in (key, member.label):
                    return member
        raise MissingStructure(f"problem '{self.name}' has no structure labelled '{label}'")

    def triple(self) -> HypercomplexTriple:
        if self.hypercomplex is None:
            raise MissingStructure(f"problem '{self.name}' has no hypercomplex triple")
        return self.hypercomplex

    def selected(self, label: Optional[str] = None) -> Union[ComplexStructure, HypercomplexTriple]:
        """--structure wins; otherwise the triple when present, else the first complex structure"""
        if label is None and self.hypercomplex is not None:
            return self.hypercomplex
        return self.structure(label)


def _location(error: Dict[str, Any]) -> str:
    return ".".join(str(part) for part in error["loc"]) or "<root>"


def _structure(spec: StructureSpec, dim: int, field: NumberField) -> ComplexStructure:
    return ComplexStructure(Matrix(spec.matrix, field, ncols=dim), spec.label)


def parse_problem(text: Union[str, bytes], source: str = "<string>") -> Problem:
    raw = text.encode() if isinstance(text, str) else text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"{source}: line {e.lineno}, column {e.colno}")
    try:
        spec = ProblemSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ParseError(first["msg"], location=f"{source}: {_location(first)}")

    field = NumberField(spec.field.minpoly) if spec.field is not None else QQ
    n = spec.algebra.dim
    brackets: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for b in spec.algebra.brackets:
        if (b.i, b.j) in brackets or (b.j, b.i) in brackets:
            raise ParseError(f"bracket ({b.i}, {b.j}) given twice", location=source)
        brackets[(b.i, b.j)] = {int(k): c for k, c in b.coeffs.items()}
    algebra = LieAlgebra(n, brackets, names=spec.algebra.names, validate=False)

    complex_structures: Dict[str, ComplexStructure] = {}
    for s in spec.complex_structures:
        if s.label in complex_structures:
            raise ParseError(f"structure label '{s.label}' used twice", location=source)
        complex_structures[s.label] = _structure(s, n, field)
    hypercomplex = None
    if spec.hypercomplex is not None:
        hypercomplex = HypercomplexTriple(
            _structure(spec.hypercomplex.I, n, field),
            _structure(spec.hypercomplex.J, n, field),
            _structure(spec.hypercomplex.K, n, field),
        )

    logger.debug("parsed problem '%s': dim %d over %s", spec.name, n, field)
    return Problem(
        algebra=algebra,
        field=field,
        complex_structures=complex_structures,
        hypercomplex=hypercomplex,
        name=spec.name,
        provenance=spec.provenance,
        source_sha256=hashlib.sha256(raw).hexdigest(),
    )


def load_problem(path: Union[str, Path], validate: bool = True) -> Problem:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", location=str(path))
    problem = parse_problem(raw, source=str(path))
    if validate:
        require_valid(problem)
    return problem


def _pair(g: LieAlgebra, witness) -> Optional[str]:
    if witness is None:
        return None
    return f"({g.names[witness[0]]}, {g.names[witness[1]]})"


def validate_problem(problem: Problem) -> ValidationReport:
    """Every axiom with the first failing basis pair or triple as witness"""
    g = problem.algebra
    checks = []

    triple = jacobi_witness(g)
    checks.append(AxiomCheck(
        name="jacobi",
        passed=triple is None,
        witness=None if triple is None else "(" + ", ".join(g.names[i] for i in triple) + ")",
    ))
    try:
        lower_central_series(g)
        checks.append(AxiomCheck(name="nilpotent", passed=True))
    except NotNilpotent as e:
        checks.append(AxiomCheck(name="nilpotent", passed=False, witness=str(e)))

    for L in problem.structures:
        almost = check_almost_complex(L)
        checks.append(AxiomCheck(name=f"{L.label}: square is -Id", passed=almost))
        if not almost:
            continue
        integrable = nijenhuis_witness(g, L)
        checks.append(AxiomCheck(name=f"{L.label}: integrable", passed=integrable is None, witness=_pair(g, integrable)))
        abelian = abelian_witness(g, L)
        checks.append(AxiomCheck(name=f"{L.label}: abelian", passed=abelian is None, required=False, witness=_pair(g, abelian)))

    if problem.hypercomplex is not None and all(check_almost_complex(m) for m in problem.hypercomplex.members):
        checks.append(AxiomCheck(name="quaternionic relations IJ = -JI = K", passed=check_quaternionic(problem.hypercomplex)))

    return ValidationReport(problem=problem.name, checks=checks)


def require_valid(problem: Problem) -> ValidationReport:
    report = validate_problem(problem)
    if not report.ok:
        raise ProblemValidationError(report.failures)
    return report


def problem_to_dict(problem: Problem) -> Dict[str, Any]:
    h = problem.hypercomplex
    return {
        "name": problem.name,
        "provenance": problem.provenance,
        "field": problem.field.to_json(),
        "algebra": problem.algebra.to_json(),
        "complex_structures": [L.to_json() for L in problem.complex_structures.values()],
        "hypercomplex": None if h is None else h.to_json(),
    }


def problem_to_json(problem: Problem) -> str:
    return json.dumps(problem_to_dict(problem), indent=2, sort_keys=True) + "\n"
