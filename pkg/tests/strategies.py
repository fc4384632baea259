from hypothesis import strategies as st

from hypernil.field import QQ, NumberField
from hypernil.linalg import Matrix, Subspace
from hypernil.structures import ComplexStructure

SQRT2 = NumberField(["-2", "0", "1"])
CBRT2 = NumberField(["-2", "0", "0", "1"])

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def field_elements(field: NumberField):
    return st.lists(small_rationals, min_size=field.degree, max_size=field.degree).map(field.element)


def vectors(n: int, field: NumberField = QQ):
    return st.lists(field_elements(field), min_size=n, max_size=n).map(tuple)


def subspaces(n: int, field: NumberField = QQ, max_vectors: int = 3):
    return st.lists(vectors(n, field), min_size=0, max_size=max_vectors).map(lambda vs: Subspace.span(vs, n, field))


def matrices(nrows: int, ncols: int, field: NumberField = QQ):
    return st.lists(vectors(ncols, field), min_size=nrows, max_size=nrows).map(lambda rows: Matrix(rows, field, ncols=ncols))


def _unit_triangular(n: int, lower: bool):
    count = n * (n - 1) // 2
    ints = st.lists(st.integers(-2, 2), min_size=count, max_size=count)

    def build(values):
        it = iter(values)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 1
            for j in range(n):
                if (j < i) if lower else (j > i):
                    rows[i][j] = next(it)
        return Matrix(rows)

    return ints.map(build)


def rotation(n: int, field: NumberField = QQ) -> Matrix:
    """Block-diagonal [[0, -1], [1, 0]] on consecutive pairs"""
    block = Matrix([[0, -1], [1, 0]], field)
    return Matrix.block_diag(*([block] * (n // 2)))


def complex_structures(n: int):
    """P R P^-1 with R the standard rotation and P a product of unit triangular integer matrices"""

    def conjugate(pair):
        lower, upper = pair
        p = lower @ upper
        return ComplexStructure(p @ rotation(n) @ p.inverse(), "L")

    return st.tuples(_unit_triangular(n, True), _unit_triangular(n, False)).map(conjugate)


@st.composite
def structure_and_subspaces(draw, max_dim: int = 6):
    """(L, w, extra) with w and extra rational subspaces of the same ambient space"""
    n = draw(st.sampled_from([d for d in (2, 4, 6) if d <= max_dim]))
    L = draw(complex_structures(n))
    w = draw(subspaces(n, max_vectors=2))
    extra = draw(subspaces(n, max_vectors=1))
    return L, w, extra
