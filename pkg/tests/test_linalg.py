import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypernil.errors import AmbientMismatch, NotInvertible
from hypernil.field import QQ
from hypernil.linalg import (
    Matrix,
    Subspace,
    apply,
    kernel,
    rationalize,
    rref,
    subspace_intersect,
    subspace_sum,
)

from tests.strategies import CBRT2, SQRT2, matrices, subspaces, vectors


def span(*vs, field=QQ):
    return Subspace.span(vs, len(vs[0]), field)


def test_rref_example():
    m = Matrix([[0, 2, 4], [1, 1, 1], [2, 4, 6]])
    assert rref(m) == Matrix([[1, 0, -1], [0, 1, 2]])


def test_rref_over_extension():
    a = SQRT2.generator
    assert rref(Matrix([[1, a], [a, 2]], SQRT2)) == Matrix([[1, a]], SQRT2)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 4))
def test_rref_idempotent(m):
    assert rref(rref(m)) == rref(m)


def test_zero_subspace():
    z = Subspace.zero(3)
    assert z.dim == 0
    assert z.is_rational
    assert z.vectors == ()


def test_equal_spans_compare_equal():
    a = span((1, 0, 1), (0, 1, 1))
    b = span((1, 1, 2), (1, -1, 0))
    assert a == b
    assert hash(a) == hash(b)
    assert a != span((1, 0, 0), (0, 1, 0))


@settings(max_examples=100, deadline=None)
@given(st.lists(vectors(4), min_size=1, max_size=3), st.integers(1, 3))
def test_span_independent_of_spanning_set(vs, k):
    shuffled = vs[k % len(vs):] + vs[:k % len(vs)]
    doubled = shuffled + [tuple(x * 2 for x in vs[0])]
    assert Subspace.span(vs, 4) == Subspace.span(doubled, 4)


def test_sum_and_intersection_examples():
    e1, e2, e3 = span((1, 0, 0)), span((0, 1, 0)), span((0, 0, 1))
    full = Subspace.full(3)
    assert subspace_intersect(full, full) == full
    assert subspace_intersect(e1, e2).dim == 0
    assert subspace_intersect(span((1, 0, 0), (0, 1, 0)), span((0, 1, 0), (0, 0, 1))) == e2
    assert subspace_sum(e1, e3) == Subspace.coordinate(3, [0, 2])


@settings(max_examples=100, deadline=None)
@given(subspaces(4), subspaces(4))
def test_dimension_formula(a, b):
    assert subspace_sum(a, b).dim + subspace_intersect(a, b).dim == a.dim + b.dim


@settings(max_examples=50, deadline=None)
@given(subspaces(3, SQRT2), subspaces(3, SQRT2))
def test_intersection_over_extension(a, b):
    both = subspace_intersect(a, b)
    assert a.contains(both) and b.contains(both)
    assert subspace_sum(a, b).dim + both.dim == a.dim + b.dim


def test_kernel():
    m = Matrix([[1, 1, 0], [0, 0, 1]])
    assert kernel(m) == span((1, -1, 0))
    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(2, 2)) == Subspace.full(2)


@settings(max_examples=100, deadline=None)
@given(matrices(3, 3))
def test_kernel_is_annihilated(m):
    for v in kernel(m).vectors:
        assert not any(m.apply(v))


def test_inverse():
    m = Matrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == Matrix.identity(2)
    with pytest.raises(NotInvertible):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_inverse_over_extension():
    a = SQRT2.generator
    m = Matrix([[1, a], [0, 1]], SQRT2)
    assert m.inverse() == Matrix([[1, -a], [0, 1]], SQRT2)


def test_apply():
    kodaira_i = Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    w = Subspace.coordinate(4, [1, 3])
    assert apply(Matrix.identity(4), w) == w
    assert apply(Matrix.zeros(4, 4), w).dim == 0
    assert apply(kodaira_i, Subspace.coordinate(4, [2])) == Subspace.coordinate(4, [3])
    with pytest.raises(AmbientMismatch):
        apply(Matrix.identity(3), w)


def test_containment_and_reduce():
    w = span((1, 1, 0))
    assert w.contains_vector(tuple(QQ.element(x) for x in (2, 2, 0)))
    assert not w.contains_vector(tuple(QQ.element(x) for x in (1, 0, 0)))
    assert Subspace.full(3) >= w
    assert w <= Subspace.full(3)
    with pytest.raises(AmbientMismatch):
        w.contains(Subspace.full(2))


def test_complement_and_quotient_coordinates():
    w = span((0, 1, 1))
    assert w.complement_indices() == [0, 2]
    v = tuple(QQ.element(x) for x in (3, 1, 2))
    assert w.quotient_coordinates(v) == (QQ.element(3), QQ.element(1))


def test_block_diag():
    r = Matrix([[0, -1], [1, 0]])
    m = Matrix.block_diag(r, r)
    assert m @ m == -Matrix.identity(4)


def test_rationalize_examples():
    a = SQRT2.generator
    one = SQRT2.one
    assert rationalize(span((one, a), field=SQRT2)) == Subspace.full(2)
    w = span((one, one + a, a), field=SQRT2)
    assert rationalize(w) == span((1, 1, 0), (0, 1, 1))
    rational = span((1, 2, 3))
    assert rationalize(rational) == rational
    assert rationalize(rational).is_rational


@pytest.mark.parametrize("field", [SQRT2, CBRT2], ids=["sqrt2", "cbrt2"])
def test_rationalize_closure_laws(field):
    @settings(max_examples=250, deadline=None)
    @given(subspaces(3, field), subspaces(3, field, max_vectors=1))
    def check(w, extra):
        r = rationalize(w)
        assert r.is_rational
        assert r.contains(w)
        assert rationalize(r) == r
        assert rationalize(subspace_sum(w, extra)).contains(r)
        assert (rationalize(w) == w) == w.is_rational

    check()


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        subspace_sum(Subspace.full(2), Subspace.full(3))
    with pytest.raises(AmbientMismatch):
        Subspace.span([(1, 0)], 3)
