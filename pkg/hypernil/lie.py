"""
Nilpotent Lie algebras given by rational structure constants in a fixed
(lattice) basis, with their lower and upper central series.
"""

import logging
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from .errors import AmbientMismatch, JacobiViolation, NotNilpotent, ParseError
from .field import QQ, NumberField, parse_rational
from .linalg import Matrix, Subspace, Vector, common_field, kernel
from .models import SeriesReport

logger = logging.getLogger(__name__)


class LieAlgebra:
    """
    brackets maps (i, j) to the coefficients {k: c_ij^k} of [e_i, e_j].
    Pairs with i > j are folded in by antisymmetry; omitted pairs bracket to zero.
    """

    def __init__(
        self,
        dim: int,
        brackets: Optional[Mapping[Tuple[int, int], Mapping[int, Any]]] = None,
        names: Optional[Sequence[str]] = None,
        validate: bool = True,
    ):
        if dim < 0:
            raise ParseError("dimension must be non-negative")
        self.dim = dim
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.names) != dim:
            raise ParseError(f"{len(self.names)} names for dimension {dim}")

        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), coeffs in (brackets or {}).items():
            for idx in (i, j, *coeffs.keys()):
                if not 0 <= int(idx) < dim:
                    raise ParseError(f"basis index {idx} out of range for dimension {dim}")
            values = {int(k): parse_rational(c) for k, c in coeffs.items()}
            if i == j:
                if any(values.values()):
                    raise ParseError(f"[e{i}, e{i}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            entry = table.setdefault((i, j), {})
            for k, c in values.items():
                entry[k] = entry.get(k, Fraction(0)) + sign * c

        self._terms: Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]] = {}
        for key in sorted(table):
            terms = tuple((k, c) for k, c in sorted(table[key].items()) if c)
            if terms:
                self._terms[key] = terms

        if validate:
            self.validate()

    def validate(self) -> None:
        """Jacobi identity and nilpotency; raises JacobiViolation / NotNilpotent"""
        witness = jacobi_witness(self)
        if witness is not None:
            i, j, l = witness
            raise JacobiViolation(f"Jacobi identity fails on ({self.names[i]}, {self.names[j]}, {self.names[l]})")
        lower_central_series(self)

    @property
    def brackets(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        return {key: dict(terms) for key, terms in self._terms.items()}

    @property
    def is_abelian(self) -> bool:
        return not self._terms

    def structure_constants(self, i: int, j: int) -> Tuple[Fraction, ...]:
        """Dense coefficients of [e_i, e_j]"""
        out = [Fraction(0)] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self._terms.get((i, j), ()):
            out[k] = sign * c
        return tuple(out)

    def bracket_basis(self, i: int, j: int, field: NumberField = QQ) -> Vector:
        return tuple(field.element(c) for c in self.structure_constants(i, j))

    def bracket(self, u: Sequence[Any], v: Sequence[Any]) -> Vector:
        """[u, v] for coordinate vectors over any field (bilinear extension of the basis brackets)"""
        if len(u) != self.dim or len(v) != self.dim:
            raise AmbientMismatch(f"vectors of length {len(u)}, {len(v)} in dimension {self.dim}")
        fields = [x.field for x in list(u[:1]) + list(v[:1]) if hasattr(x, "field")]
        field = common_field(*fields) if fields else QQ
        u = [field.element(x) for x in u]
        v = [field.element(x) for x in v]
        out = [field.zero] * self.dim
        for (i, j), terms in self._terms.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                for k, c in terms:
                    out[k] = out[k] + coef * c
        return tuple(out)

    def _rational_bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for (i, j), terms in self._terms.items():
            coef = u[i] * v[j] - u[j] * v[i]
            if coef:
                for k, c in terms:
                    out[k] += coef * c
        return tuple(out)

    def basis_vector(self, i: int, field: NumberField = QQ) -> Vector:
        zero, one = field.zero, field.one
        return tuple(one if k == i else zero for k in range(self.dim))

    def full(self, field: NumberField = QQ) -> Subspace:
        return Subspace.full(self.dim, field)

    def zero(self, field: NumberField = QQ) -> Subspace:
        return Subspace.zero(self.dim, field)

    def subspace(self, labels: Sequence[str], field: NumberField = QQ) -> Subspace:
        """Coordinate subspace spanned by the named basis vectors"""
        return Subspace.coordinate(self.dim, [self.names.index(name) for name in labels], field)

    def to_json(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "names": list(self.names),
            "brackets": [
                {"i": i, "j": j, "coeffs": {str(k): str(c) for k, c in terms}}
                for (i, j), terms in self._terms.items()
            ],
        }

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={list(self.names)})"


def jacobi_witness(g: LieAlgebra) -> Optional[Tuple[int, int, int]]:
    """First basis triple i < j < l on which the Jacobi identity fails, or None"""
    basis = [tuple(Fraction(int(k == i)) for k in range(g.dim)) for i in range(g.dim)]
    for i, j, l in combinations(range(g.dim), 3):
        ij = g.structure_constants(i, j)
        jl = g.structure_constants(j, l)
        li = g.structure_constants(l, i)
        total = [
            a + b + c
            for a, b, c in zip(
                g._rational_bracket(ij, basis[l]),
                g._rational_bracket(jl, basis[i]),
                g._rational_bracket(li, basis[j]),
            )
        ]
        if any(total):
            return (i, j, l)
    return None


def jacobi_check(g: LieAlgebra) -> bool:
    return jacobi_witness(g) is None


def bracket_subspaces(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """span{[u, v] : u in basis(a), v in basis(b)}"""
    if a.ambient_dim != g.dim or b.ambient_dim != g.dim:
        raise AmbientMismatch(f"subspaces of ambient dimension {a.ambient_dim}, {b.ambient_dim} in an algebra of dimension {g.dim}")
    field = common_field(a.field, b.field)
    vectors = [g.bracket(u, v) for u in a.over(field).vectors for v in b.over(field).vectors]
    return Subspace.span(vectors, g.dim, field)


def derived_algebra(g: LieAlgebra, field: NumberField = QQ) -> Subspace:
    full = g.full(field)
    return bracket_subspaces(g, full, full)


def lower_central_series(g: LieAlgebra, field: NumberField = QQ) -> SeriesReport:
    full = g.full(field)
    terms = [full]
    while terms[-1].dim > 0:
        nxt = bracket_subspaces(g, full, terms[-1])
        if nxt == terms[-1]:
            raise NotNilpotent(f"lower central series stabilizes at dimension {nxt.dim}")
        terms.append(nxt)
    logger.debug("lower central series dims %s", [t.dim for t in terms])
    return SeriesReport(kind="lower", terms=terms, steps=len(terms) - 1)


def _next_upper(g: LieAlgebra, prev: Subspace) -> Subspace:
    """{v : [v, e_j] in prev for all j}, as the kernel of v -> ([v, e_j] mod prev)_j"""
    n = g.dim
    field = prev.field
    comp = prev.complement_indices()
    if not comp:
        return g.full(field)
    columns = []
    for l in range(n):
        column = []
        for j in range(n):
            column.extend(prev.quotient_coordinates(g.bracket_basis(l, j, field)))
        columns.append(tuple(column))
    return kernel(Matrix.from_columns(columns, n * len(comp), field))


def upper_central_series(g: LieAlgebra, field: NumberField = QQ) -> SeriesReport:
    terms = [g.zero(field)]
    while terms[-1].dim < g.dim:
        nxt = _next_upper(g, terms[-1])
        if nxt == terms[-1]:
            raise NotNilpotent(f"upper central series stabilizes at dimension {nxt.dim} < {g.dim}")
        terms.append(nxt)
    logger.debug("upper central series dims %s", [t.dim for t in terms])
    return SeriesReport(kind="upper", terms=terms, steps=len(terms) - 1)


def center(g: LieAlgebra, field: NumberField = QQ) -> Subspace:
    return _next_upper(g, g.zero(field))


def nilpotency_step(g: LieAlgebra) -> int:
    return lower_central_series(g).steps


def is_ideal(g: LieAlgebra, w: Subspace) -> bool:
    return w.contains(bracket_subspaces(g, g.full(w.field), w))
