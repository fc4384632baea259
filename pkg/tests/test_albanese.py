import pytest

from hypernil import catalog
from hypernil.albanese import albanese, descend, h_albanese, quotient_hypercomplex, quotient_structure, toric_tower
from hypernil.errors import NotAbelian, NotAnIdeal, NotHypercomplex, NotIntegrable, NotInvariant, NotQuaternionic, NotRational
from hypernil.lie import center, derived_algebra, nilpotency_step, upper_central_series
from hypernil.linalg import Matrix, Subspace
from hypernil.structures import (
    ComplexStructure,
    check_abelian,
    check_almost_complex,
    check_quaternionic,
    standard_quaternion_triple,
)

from tests.strategies import SQRT2

ROTATION = Matrix([[0, -1], [1, 0]])
ABELIAN_COMPLEX = ["kodaira", "kodaira_sqrt2", "abelian2", "abelian4_sqrt2", "h3xh3"]
ABELIAN_HYPERCOMPLEX = ["abelian4", "abelian8", "quaternionic_heisenberg8"]


def test_kodaira_albanese(kodaira):
    g = kodaira.algebra
    report = albanese(g, kodaira.structure("I"))
    assert report.kernel == g.subspace(["z", "t"])
    assert report.torus_real_dim == 2
    assert report.torus_complex_dim == 1
    assert report.complement == [0, 1]
    assert report.quotient_labels == ["x", "y"]
    assert report.induced_ops["I"] == ROTATION
    assert report.closure_iterations == 1


def test_abelian_albanese_is_the_torus():
    problem = catalog.load("abelian2")
    report = albanese(problem.algebra, problem.structure())
    assert report.kernel.dim == 0
    assert report.torus_complex_dim == 1


def test_irrational_structure_albanese():
    problem = catalog.load("kodaira_sqrt2")
    report = albanese(problem.algebra, problem.structure())
    assert report.kernel == problem.algebra.subspace(["z", "t"])
    assert report.kernel.is_rational
    assert check_almost_complex(report.induced_ops["L"])


def test_non_integrable_rejected(kodaira):
    swapped = ComplexStructure(Matrix([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]))
    with pytest.raises(NotIntegrable):
        albanese(kodaira.algebra, swapped)


def test_non_abelian_albanese():
    problem = catalog.load("complex_heisenberg6")
    report = albanese(problem.algebra, problem.structure("J"))
    assert report.kernel == Subspace.coordinate(6, [4, 5])
    assert report.torus_complex_dim == 2


@pytest.mark.parametrize("name", ABELIAN_COMPLEX)
def test_abelian_albanese_is_positive_dimensional(name):
    problem = catalog.load(name)
    g, L = problem.algebra, problem.structure()
    report = albanese(g, L)
    assert report.torus_complex_dim >= 1
    assert report.torus_real_dim % 2 == 0
    k = nilpotency_step(g)
    assert upper_central_series(g).terms[k - 1].contains(report.kernel)


@pytest.mark.parametrize("name", ABELIAN_HYPERCOMPLEX)
def test_h_albanese_is_positive_dimensional(name):
    problem = catalog.load(name)
    report = h_albanese(problem.algebra, problem.triple())
    assert report.quaternionic_dim >= 1
    assert report.torus_real_dim % 4 == 0
    I, J, K = (report.induced_ops[label] for label in "IJK")
    assert I @ J == K and J @ I == -K


def test_quaternionic_heisenberg_h_albanese(qh8):
    report = h_albanese(qh8.algebra, qh8.triple())
    assert report.kernel == Subspace.coordinate(8, [4, 5, 6, 7])
    assert report.quaternionic_dim == 1
    assert report.mode == "H"


def test_h_albanese_agrees_with_albanese_of_members(qh8):
    kernel = h_albanese(qh8.algebra, qh8.triple()).kernel
    for L in qh8.triple().members:
        assert albanese(qh8.algebra, L).kernel == kernel


def test_h_albanese_rejects_non_integrable_triple(kodaira):
    h = standard_quaternion_triple()
    assert check_quaternionic(h)
    with pytest.raises(NotQuaternionic) as exc:
        h_albanese(kodaira.algebra, h)
    assert isinstance(exc.value, NotHypercomplex)
    assert isinstance(exc.value, NotIntegrable)


def test_quotient_structure(kodaira):
    g, I = kodaira.algebra, kodaira.structure("I")
    same, same_I = quotient_structure(g, g.zero(), I)
    assert same.to_json()["brackets"] == g.to_json()["brackets"]
    assert same_I.op == I.op
    zero, zero_I = quotient_structure(g, g.full(), I)
    assert zero.dim == 0
    q, qI = quotient_structure(g, g.subspace(["z", "t"]), I)
    assert q.dim == 2 and q.is_abelian
    assert q.names == ("x", "y")
    assert qI.op == ROTATION


def test_quotient_errors(kodaira):
    g, I = kodaira.algebra, kodaira.structure("I")
    with pytest.raises(NotAnIdeal):
        quotient_structure(g, g.subspace(["x", "y"]), I)
    with pytest.raises(NotInvariant):
        quotient_structure(g, g.subspace(["z"]), I)
    a = SQRT2.generator
    irrational = Subspace.span([(0, 0, SQRT2.one, a)], 4, SQRT2)
    with pytest.raises(NotRational):
        quotient_structure(g, irrational, I)


def test_albanese_survives_quotient():
    problem = catalog.load("h3xh3")
    g, L = problem.algebra, problem.structure()
    report = albanese(g, L)
    q, qL = quotient_structure(g, center(g), L)
    assert report.kernel.contains(center(g))
    assert albanese(q, qL).torus_real_dim == report.torus_real_dim


def test_descend(kodaira):
    I = kodaira.structure("I")
    assert descend(I.op, kodaira.algebra.subspace(["x", "y"])) == ROTATION


def test_kodaira_tower(kodaira):
    report = toric_tower(kodaira.algebra, kodaira.structure("I"))
    assert [(lv.algebra_dim, lv.center_dim, lv.fiber_dim) for lv in report.levels] == [(4, 2, 2), (2, 2, 2)]
    assert [lv.quotient_dim for lv in report.levels] == [2, 0]
    assert report.structures_preserved == [True, True]
    assert report.steps == 2


def test_abelian_tower(abelian4):
    report = toric_tower(abelian4.algebra, abelian4.triple())
    assert report.mode == "H"
    assert [(lv.algebra_dim, lv.center_dim, lv.fiber_dim) for lv in report.levels] == [(4, 4, 4)]


def test_quaternionic_heisenberg_tower(qh8):
    report = toric_tower(qh8.algebra, qh8.triple())
    assert [(lv.algebra_dim, lv.center_dim) for lv in report.levels] == [(8, 4), (4, 4)]
    assert all(report.structures_preserved)


@pytest.mark.parametrize("name", ABELIAN_COMPLEX + ABELIAN_HYPERCOMPLEX)
def test_tower_on_abelian_catalog(name):
    problem = catalog.load(name)
    g = problem.algebra
    structure = problem.selected()
    report = toric_tower(g, structure)
    assert report.steps == nilpotency_step(g)
    dims = [lv.algebra_dim for lv in report.levels]
    assert dims == sorted(dims, reverse=True) and len(set(dims)) == len(dims)
    assert report.levels[-1].quotient_dim == 0
    for lv in report.levels:
        assert lv.center_rational and lv.structures_preserved
        assert lv.fiber_dim == lv.center_dim


def test_tower_quotients_stay_hypercomplex(qh8):
    g, h = qh8.algebra, qh8.triple()
    q, qh = quotient_hypercomplex(g, center(g), h)
    assert q.is_abelian
    assert check_quaternionic(qh)
    assert all(check_abelian(q, m) for m in qh.members)


def test_tower_refuses_non_abelian():
    problem = catalog.load("complex_heisenberg6")
    with pytest.raises(NotAbelian):
        toric_tower(problem.algebra, problem.structure())


def test_derived_algebra_inside_kernel(kodaira):
    report = albanese(kodaira.algebra, kodaira.structure("I"))
    assert report.kernel.contains(derived_algebra(kodaira.algebra))
