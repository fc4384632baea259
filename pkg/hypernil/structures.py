"""
Complex and hypercomplex structure operators on a Lie algebra.

A complex structure is a matrix L with L^2 = -Id (column j holds L e_j).
Integrability is decided by the Nijenhuis expression and, for rational L,
cross-checked against the (1,0)-eigenspace being a subalgebra over Q(i).
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

from .errors import FieldMismatch, InvariantViolation, NotAlmostComplex, NotOnSphere, NotQuaternionic
from .field import GAUSSIAN, QQ, NumberField
from .lie import LieAlgebra, upper_central_series
from .linalg import Matrix, Vector, common_field, kernel
from .models import SpherePoint

logger = logging.getLogger(__name__)


class ComplexStructure:
    """An operator L on g; almost complexity is checked by the functions below, not here"""

    __slots__ = ("op", "label")

    def __init__(self, op: Matrix, label: str = "L"):
        if not op.is_square:
            raise NotAlmostComplex(f"structure '{label}' is {op.nrows}x{op.ncols}")
        self.op = op
        self.label = label

    @property
    def field(self) -> NumberField:
        return self.op.field

    @property
    def dim(self) -> int:
        return self.op.nrows

    def __neg__(self) -> "ComplexStructure":
        return ComplexStructure(-self.op, f"-{self.label}")

    def to_json(self) -> Dict[str, Any]:
        return {"label": self.label, "matrix": self.op.to_json()}

    def __repr__(self):
        return f"ComplexStructure({self.label!r}, dim={self.dim})"


class HypercomplexTriple:
    __slots__ = ("I", "J", "K")

    def __init__(self, I: ComplexStructure, J: ComplexStructure, K: ComplexStructure):
        if not I.dim == J.dim == K.dim:
            raise NotQuaternionic(f"structures of dimensions {I.dim}, {J.dim}, {K.dim}")
        common_field(I.field, J.field, K.field)
        self.I = I
        self.J = J
        self.K = K

    @property
    def dim(self) -> int:
        return self.I.dim

    @property
    def members(self) -> Tuple[ComplexStructure, ComplexStructure, ComplexStructure]:
        return (self.I, self.J, self.K)

    def to_json(self) -> Dict[str, Any]:
        return {"I": self.I.to_json(), "J": self.J.to_json(), "K": self.K.to_json()}

    def __repr__(self):
        return f"HypercomplexTriple(dim={self.dim})"


StructureLike = Union[ComplexStructure, Matrix]


def _op(L: StructureLike) -> Matrix:
    return L.op if isinstance(L, ComplexStructure) else L


def _add(*vectors: Vector) -> Vector:
    return tuple(sum(xs[1:], xs[0]) for xs in zip(*vectors))


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def check_almost_complex(L: StructureLike) -> bool:
    m = _op(L)
    if not m.is_square:
        return False
    return m @ m == -Matrix.identity(m.nrows, m.field)


def _require_almost_complex(L: StructureLike) -> None:
    if not check_almost_complex(L):
        label = L.label if isinstance(L, ComplexStructure) else "L"
        raise NotAlmostComplex(f"{label}^2 != -Id")


# Integrability

def nijenhuis(g: LieAlgebra, L: StructureLike, x: Sequence[Any], y: Sequence[Any]) -> Vector:
    """N(x, y) = [x, y] + L[Lx, y] + L[x, Ly] - [Lx, Ly]"""
    m = _op(L)
    lx, ly = m.apply(x), m.apply(y)
    return _add(
        g.bracket(x, y),
        m.apply(g.bracket(lx, y)),
        m.apply(g.bracket(x, ly)),
        _neg(g.bracket(lx, ly)),
    )


def nijenhuis_witness(g: LieAlgebra, L: StructureLike) -> Optional[Tuple[int, int]]:
    """First basis pair i < j with N(e_i, e_j) != 0"""
    field = _op(L).field
    for i, j in combinations(range(g.dim), 2):
        if any(nijenhuis(g, L, g.basis_vector(i, field), g.basis_vector(j, field))):
            return (i, j)
    return None


def _as_rational_matrix(m: Matrix) -> Matrix:
    return Matrix([[x.rational_value() for x in row] for row in m.rows], QQ, ncols=m.ncols)


def holomorphic_subalgebra_witness(g: LieAlgebra, L: StructureLike) -> Optional[Tuple[int, int]]:
    """
    The +i eigenspace g^{1,0} = ker(L - i Id) over Q(i); returns the first pair of
    its basis vectors whose bracket leaves it, or None when it is a subalgebra.
    Only defined for rational L.
    """
    m = _op(L)
    if not m.is_rational():
        raise FieldMismatch("the (1,0) eigenspace check needs a rational structure")
    m = _as_rational_matrix(m).over(GAUSSIAN)
    shifted = m - Matrix.identity(m.nrows, GAUSSIAN).scale(GAUSSIAN.generator)
    v10 = kernel(shifted)
    if v10.dim * 2 != g.dim:
        raise InvariantViolation(f"(1,0) eigenspace has dimension {v10.dim} in dimension {g.dim}")
    vectors = v10.vectors
    for a, b in combinations(range(len(vectors)), 2):
        if not v10.contains_vector(g.bracket(vectors[a], vectors[b])):
            return (a, b)
    return None


def check_integrable(g: LieAlgebra, L: StructureLike) -> bool:
    _require_almost_complex(L)
    witness = nijenhuis_witness(g, L)
    result = witness is None
    if _op(L).is_rational():
        if (holomorphic_subalgebra_witness(g, L) is None) != result:
            raise InvariantViolation("Nijenhuis and (1,0)-subalgebra integrability checks disagree")
    if witness is not None:
        logger.debug("Nijenhuis tensor nonzero on (%s, %s)", g.names[witness[0]], g.names[witness[1]])
    return result


# Abelian structures

AbelianForm = Literal["invariant", "mixed"]


def abelian_witness(g: LieAlgebra, L: StructureLike, form: AbelianForm = "invariant") -> Optional[Tuple[int, int]]:
    """
    First basis pair violating abelianness.

    form "invariant" tests [x, y] = [Lx, Ly]; form "mixed" tests [Lx, y] = -[x, Ly].
    """
    m = _op(L)
    field = m.field
    for i, j in combinations(range(g.dim), 2):
        x, y = g.basis_vector(i, field), g.basis_vector(j, field)
        lx, ly = m.apply(x), m.apply(y)
        if form == "invariant":
            lhs, rhs = g.bracket(x, y), g.bracket(lx, ly)
        else:
            lhs, rhs = g.bracket(lx, y), _neg(g.bracket(x, ly))
        if lhs != rhs:
            return (i, j)
    return None


def check_abelian(g: LieAlgebra, L: StructureLike) -> bool:
    _require_almost_complex(L)
    invariant = abelian_witness(g, L, "invariant") is None
    mixed = abelian_witness(g, L, "mixed") is None
    if invariant != mixed:
        raise InvariantViolation("the two forms of the abelian condition disagree")
    return invariant


# Hypercomplex structures

def check_quaternionic(h: HypercomplexTriple) -> bool:
    for member in h.members:
        _require_almost_complex(member)
    I, J, K = h.I.op, h.J.op, h.K.op
    return I @ J == K and J @ I == -K


def induced_structure(h: HypercomplexTriple, p: SpherePoint) -> ComplexStructure:
    """L = aI + bJ + cK"""
    if not p.is_on_sphere():
        raise NotOnSphere(f"{p} has squared norm {p.norm_squared()}")
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    op = h.I.op.scale(p.a) + h.J.op.scale(p.b) + h.K.op.scale(p.c)
    if not check_almost_complex(op):
        raise InvariantViolation(f"induced structure at {p} does not square to -Id")
    return ComplexStructure(op, f"L{p}")


def _point(a, b, c) -> SpherePoint:
    return SpherePoint(a=a, b=b, c=c)


AXIS_POINTS: List[SpherePoint] = [
    _point(1, 0, 0), _point(-1, 0, 0),
    _point(0, 1, 0), _point(0, -1, 0),
    _point(0, 0, 1), _point(0, 0, -1),
]

SAMPLE_POINTS: List[SpherePoint] = AXIS_POINTS + [
    _point(Fraction(3, 5), Fraction(4, 5), 0),
    _point(0, Fraction(3, 5), Fraction(4, 5)),
]


def check_hypercomplex(g: LieAlgebra, h: HypercomplexTriple) -> bool:
    """
    Quaternionic relations plus integrability of I and J. Two independent
    integrable structures make the whole sphere integrable; K and the sample
    points are checked as well and a disagreement raises InvariantViolation.
    """
    if not check_quaternionic(h):
        return False
    if not (check_integrable(g, h.I) and check_integrable(g, h.J)):
        return False
    if not check_integrable(g, h.K):
        raise InvariantViolation("I and J are integrable but K is not")
    for p in SAMPLE_POINTS:
        if not check_integrable(g, induced_structure(h, p)):
            raise InvariantViolation(f"induced structure at {p} is not integrable")
    return True


def check_abelian_hypercomplex(g: LieAlgebra, h: HypercomplexTriple) -> bool:
    """True iff the triple is hypercomplex with I abelian; J, K and the sampled structures are then checked too"""
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    if not (check_integrable(g, h.I) and check_integrable(g, h.J)):
        return False
    if not check_abelian(g, h.I):
        return False
    for L in (h.J, h.K, *(induced_structure(h, p) for p in SAMPLE_POINTS)):
        if not check_abelian(g, L):
            raise InvariantViolation(f"I is abelian but {L.label} is not")
    return True


def series_invariance(g: LieAlgebra, ops: Mapping[str, StructureLike]) -> Dict[str, List[bool]]:
    """Invariance of each upper central series term under each operator"""
    terms = upper_central_series(g).terms
    return {label: [t.is_invariant(_op(L)) for t in terms] for label, L in ops.items()}


_QUATERNION_UNITS = {
    "I": [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    "J": [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
    "K": [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
}


def standard_quaternion_triple(blocks: int = 1, field: NumberField = QQ) -> HypercomplexTriple:
    """Left multiplication by i, j, k on H^blocks in the basis (1, i, j, k) of each block"""
    members = []
    for label, rows in _QUATERNION_UNITS.items():
        unit = Matrix(rows, field)
        members.append(ComplexStructure(Matrix.block_diag(*([unit] * blocks)), label))
    return HypercomplexTriple(*members)
