"""
Exact linear algebra over a NumberField.

Vectors are tuples of FieldElements.  Matrices act on column vectors, so
column j of an operator holds the coordinates of the image of e_j.
Subspaces are kept in reduced row-echelon form, which makes equality a
comparison of bases.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import AmbientMismatch, FieldMismatch, NotInvertible
from .field import QQ, FieldElement, NumberField

logger = logging.getLogger(__name__)

Vector = Tuple[FieldElement, ...]


def _lift_element(x: FieldElement, field: NumberField) -> FieldElement:
    if x.field == field:
        return x
    return field.element(x)


def common_field(*fields: NumberField) -> NumberField:
    """The field every argument embeds into: all equal, or Q together with one extension"""
    wide = [f for f in fields if f.degree > 1]
    if not wide:
        return fields[0] if fields else QQ
    target = wide[0]
    for f in wide[1:]:
        if f != target:
            raise FieldMismatch(f"{f} and {target} differ")
    return target


class Matrix:
    """Dense matrix of FieldElements; treat as immutable"""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, rows: Sequence[Sequence[Any]], field: NumberField = QQ, ncols: Optional[int] = None):
        converted = tuple(tuple(field.element(x) for x in row) for row in rows)
        if ncols is None:
            if not converted:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(converted[0])
        for row in converted:
            if len(row) != ncols:
                raise AmbientMismatch(f"row of length {len(row)} in a matrix with {ncols} columns")
        self.field = field
        self.nrows = len(converted)
        self.ncols = ncols
        self.rows = converted

    @classmethod
    def _raw(cls, rows: Tuple[Vector, ...], field: NumberField, ncols: int) -> "Matrix":
        obj = cls.__new__(cls)
        obj.field = field
        obj.nrows = len(rows)
        obj.ncols = ncols
        obj.rows = rows
        return obj

    @classmethod
    def identity(cls, n: int, field: NumberField = QQ) -> "Matrix":
        zero, one = field.zero, field.one
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), field, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: NumberField = QQ) -> "Matrix":
        zero = field.zero
        return cls._raw(tuple((zero,) * ncols for _ in range(nrows)), field, ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int, field: NumberField = QQ) -> "Matrix":
        rows = tuple(tuple(field.element(col[i]) for col in columns) for i in range(nrows))
        return cls._raw(rows, field, len(columns))

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        field = common_field(*(b.field for b in blocks))
        n = sum(b.ncols for b in blocks)
        zero = field.zero
        rows: List[Vector] = []
        offset = 0
        for b in blocks:
            for row in b.rows:
                full = [zero] * n
                for j, x in enumerate(row):
                    full[offset + j] = _lift_element(x, field)
                rows.append(tuple(full))
            offset += b.ncols
        return cls._raw(tuple(rows), field, n)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_rational(self) -> bool:
        return all(x.is_rational() for row in self.rows for x in row)

    def over(self, field: NumberField) -> "Matrix":
        """The same matrix with entries read in a field containing the current one"""
        if field == self.field:
            return self
        return Matrix._raw(tuple(tuple(field.element(x) for x in row) for row in self.rows), field, self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        if len(v) != self.ncols:
            raise AmbientMismatch(f"vector of length {len(v)} for a matrix with {self.ncols} columns")
        field = common_field(self.field, *(x.field for x in v[:1]))
        m = self.over(field)
        v = [_lift_element(x, field) for x in v]
        out = []
        for row in m.rows:
            acc = field.zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise AmbientMismatch(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        field = common_field(self.field, other.field)
        a, b = self.over(field), other.over(field)
        cols = [b.column(j) for j in range(b.ncols)]
        rows = []
        for row in a.rows:
            out = []
            for col in cols:
                acc = field.zero
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                out.append(acc)
            rows.append(tuple(out))
        return Matrix._raw(tuple(rows), field, b.ncols)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise AmbientMismatch("matrix shapes differ")
        field = common_field(self.field, other.field)
        a, b = self.over(field), other.over(field)
        if sign > 0:
            rows = tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows))
        else:
            rows = tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows))
        return Matrix._raw(rows, field, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in row) for row in self.rows), self.field, self.ncols)

    def scale(self, c: Any) -> "Matrix":
        if isinstance(c, FieldElement):
            field = common_field(self.field, c.field)
            c = _lift_element(c, field)
            m = self.over(field)
            return Matrix._raw(tuple(tuple(x * c for x in row) for row in m.rows), field, self.ncols)
        q = Fraction(c)
        return Matrix._raw(tuple(tuple(x * q for x in row) for row in self.rows), self.field, self.ncols)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise NotInvertible("only square matrices are invertible")
        n = self.nrows
        ident = Matrix.identity(n, self.field)
        augmented = [row + irow for row, irow in zip(self.rows, ident.rows)]
        reduced, pivots = _echelon(augmented, 2 * n, self.field)
        if pivots[:n] != list(range(n)) or len(reduced) < n:
            raise NotInvertible("matrix is singular")
        return Matrix._raw(tuple(tuple(row[n:]) for row in reduced[:n]), self.field, n)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_json(self) -> List[List[List[str]]]:
        return [[x.to_json() for x in row] for row in self.rows]

    def __repr__(self):
        return f"Matrix({[[repr(x) for x in row] for row in self.rows]})"


def _echelon(rows: Sequence[Sequence[FieldElement]], ncols: int, field: NumberField) -> Tuple[List[Vector], List[int]]:
    """Gauss-Jordan elimination; leftmost pivot, first qualifying row. Zero rows are dropped."""
    work = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        pivot_row = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b if b else a for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work[:r]], pivots


def rref(m: Matrix) -> Matrix:
    reduced, _ = _echelon(m.rows, m.ncols, m.field)
    return Matrix._raw(tuple(reduced), m.field, m.ncols)


class Subspace:
    """
    Subspace of K^n given by an RREF basis (rows are basis vectors).

    is_rational is true when every basis entry lies in Q; RREF of a rational
    spanning set is rational, so this is the same as admitting a rational basis.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "is_rational")

    def __init__(self, basis: Matrix, pivots: Optional[Sequence[int]] = None):
        if pivots is None:
            reduced, pivots = _echelon(basis.rows, basis.ncols, basis.field)
            basis = Matrix._raw(tuple(reduced), basis.field, basis.ncols)
        self.field = basis.field
        self.ambient_dim = basis.ncols
        self.basis = basis
        self.pivots = tuple(pivots)
        self.is_rational = basis.is_rational()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Any]], ambient_dim: int, field: NumberField = QQ) -> "Subspace":
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append(tuple(field.element(x) for x in v))
        reduced, pivots = _echelon(rows, ambient_dim, field)
        return cls(Matrix._raw(tuple(reduced), field, ambient_dim), pivots)

    @classmethod
    def zero(cls, ambient_dim: int, field: NumberField = QQ) -> "Subspace":
        return cls(Matrix._raw((), field, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int, field: NumberField = QQ) -> "Subspace":
        return cls(Matrix.identity(ambient_dim, field), tuple(range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int], field: NumberField = QQ) -> "Subspace":
        """span{e_i : i in indices}"""
        ident = Matrix.identity(ambient_dim, field)
        chosen = sorted(set(indices))
        return cls(Matrix._raw(tuple(ident.rows[i] for i in chosen), field, ambient_dim), chosen)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> Tuple[Vector, ...]:
        return self.basis.rows

    def over(self, field: NumberField) -> "Subspace":
        if field == self.field:
            return self
        return Subspace(self.basis.over(field), self.pivots)

    def reduce(self, v: Sequence[FieldElement]) -> Vector:
        """Residue of v modulo the subspace; it vanishes at every pivot column"""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        field = common_field(self.field, *(x.field for x in v[:1]))
        out = [_lift_element(x, field) for x in v]
        for row, p in zip(self.vectors, self.pivots):
            c = out[p]
            if c:
                out = [a - c * _lift_element(b, field) if b else a for a, b in zip(out, row)]
        return tuple(out)

    def contains_vector(self, v: Sequence[FieldElement]) -> bool:
        return not any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains_vector(v) for v in other.vectors)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.pivots != other.pivots:
            return False
        return self.basis.rows == other.basis.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def complement_indices(self) -> List[int]:
        """Lexicographically first standard vectors completing the basis: the non-pivot columns"""
        pivots = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in pivots]

    def quotient_coordinates(self, v: Sequence[FieldElement]) -> Vector:
        """Coordinates of v + W in the basis {e_j + W : j in complement_indices()}"""
        residue = self.reduce(v)
        return tuple(residue[j] for j in self.complement_indices())

    def is_invariant(self, op: Matrix) -> bool:
        return all(self.contains_vector(op.apply(v)) for v in self.vectors)

    def to_json(self) -> Dict[str, Any]:
        return {"ambient_dim": self.ambient_dim, "basis": [[x.to_json() for x in v] for v in self.vectors]}

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, pivots={list(self.pivots)})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def kernel(m: Matrix) -> Subspace:
    """{v : m v = 0}, one basis vector per free column of rref(m)"""
    reduced, pivots = _echelon(m.rows, m.ncols, m.field)
    field = m.field
    zero, one = field.zero, field.one
    free = [j for j in range(m.ncols) if j not in set(pivots)]
    vectors = []
    for f in free:
        v = [zero] * m.ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        vectors.append(tuple(v))
    return Subspace.span(vectors, m.ncols, field)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    field = common_field(a.field, b.field)
    return Subspace.span(a.over(field).vectors + b.over(field).vectors, a.ambient_dim, field)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rref of [[A, A], [B, 0]]; rows with vanishing left half span the intersection"""
    _check_ambient(a, b)
    field = common_field(a.field, b.field)
    n = a.ambient_dim
    zero = field.zero
    blocks = [v + v for v in a.over(field).vectors] + [v + (zero,) * n for v in b.over(field).vectors]
    reduced, _ = _echelon(blocks, 2 * n, field)
    common = [row[n:] for row in reduced if not any(row[:n])]
    return Subspace.span(common, n, field)


def apply(m: Matrix, w: Subspace) -> Subspace:
    if not m.is_square or m.ncols != w.ambient_dim:
        raise AmbientMismatch(f"{m.nrows}x{m.ncols} operator on ambient dimension {w.ambient_dim}")
    field = common_field(m.field, w.field)
    return Subspace.span((m.apply(v) for v in w.over(field).vectors), w.ambient_dim, field)


def rationalize(w: Subspace) -> Subspace:
    """Smallest rational subspace containing w: span of the Q-coordinate parts of its RREF basis"""
    if w.is_rational:
        return w
    field = w.field
    vectors = []
    for v in w.vectors:
        for k in range(field.degree):
            part = tuple(field.element(x.coeffs[k]) for x in v)
            if any(part):
                vectors.append(part)
    return Subspace.span(vectors, w.ambient_dim, field)
