"""
Albanese and H-Albanese quotients, and the tower of quotients by successive centers.

Quotients g/W are written in the basis {e_j + W : j not a pivot of W},
the lexicographically first standard complement.
"""

import logging
from typing import Dict, List, Sequence, Tuple, Union

from .errors import (
    CenterNotInvariant,
    InvariantViolation,
    NotAbelian,
    NotAnIdeal,
    NotHypercomplex,
    NotIntegrable,
    NotInvariant,
    NotQuaternionic,
    NotRational,
    QuotientNotEven,
)
from .lie import LieAlgebra, center, derived_algebra, is_ideal
from .linalg import Matrix, Subspace, common_field
from .models import AlbaneseReport, TowerLevel, TowerReport
from .saturation import rational_invariant_closure, rational_invariant_closure_H
from .structures import (
    ComplexStructure,
    HypercomplexTriple,
    check_abelian,
    check_abelian_hypercomplex,
    check_almost_complex,
    check_hypercomplex,
    check_integrable,
    check_quaternionic,
)

logger = logging.getLogger(__name__)


def descend(op: Matrix, w: Subspace) -> Matrix:
    """The operator induced on g/w by a w-invariant op"""
    field = common_field(op.field, w.field)
    comp = w.complement_indices()
    n = w.ambient_dim
    columns = []
    for j in comp:
        e = tuple(field.one if k == j else field.zero for k in range(n))
        columns.append(w.quotient_coordinates(op.apply(e)))
    return Matrix.from_columns(columns, len(comp), field)


def quotient_algebra(g: LieAlgebra, ideal: Subspace) -> LieAlgebra:
    if not ideal.is_rational:
        raise NotRational("quotient by an irrational subspace")
    if not is_ideal(g, ideal):
        raise NotAnIdeal("[g, W] is not contained in W")
    comp = ideal.complement_indices()
    brackets: Dict[Tuple[int, int], Dict[int, object]] = {}
    for a in range(len(comp)):
        for b in range(a + 1, len(comp)):
            coords = ideal.quotient_coordinates(g.bracket_basis(comp[a], comp[b], ideal.field))
            coeffs = {k: c.rational_value() for k, c in enumerate(coords) if c}
            if coeffs:
                brackets[(a, b)] = coeffs
    return LieAlgebra(len(comp), brackets, names=[g.names[j] for j in comp])


def _quotient(
    g: LieAlgebra, ideal: Subspace, structures: Sequence[ComplexStructure]
) -> Tuple[LieAlgebra, List[ComplexStructure]]:
    for L in structures:
        if not ideal.is_invariant(L.op):
            raise NotInvariant(f"subspace is not {L.label}-invariant")
    q = quotient_algebra(g, ideal)
    induced = []
    for L in structures:
        op = descend(L.op, ideal)
        if not check_almost_complex(op):
            raise InvariantViolation(f"induced {L.label} does not square to -Id")
        induced.append(ComplexStructure(op, L.label))
    return q, induced


def quotient_structure(g: LieAlgebra, ideal: Subspace, L: ComplexStructure) -> Tuple[LieAlgebra, ComplexStructure]:
    """(g/ideal, induced L) for a rational L-invariant ideal"""
    if not ideal.is_rational:
        raise NotRational("quotient by an irrational subspace")
    q, (induced,) = _quotient(g, ideal, [L])
    return q, induced


def quotient_hypercomplex(g: LieAlgebra, ideal: Subspace, h: HypercomplexTriple) -> Tuple[LieAlgebra, HypercomplexTriple]:
    if not ideal.is_rational:
        raise NotRational("quotient by an irrational subspace")
    q, (I, J, K) = _quotient(g, ideal, list(h.members))
    return q, HypercomplexTriple(I, J, K)


def _check_kernel(g: LieAlgebra, derived: Subspace, kernel: Subspace) -> None:
    # [g, W] in [g, g] in W, so W is an ideal and g/W is abelian
    if not kernel.contains(derived) or not is_ideal(g, kernel):
        raise InvariantViolation("Albanese kernel is not an ideal containing [g, g]")


def albanese(g: LieAlgebra, L: ComplexStructure) -> AlbaneseReport:
    if not check_integrable(g, L):
        raise NotIntegrable(f"{L.label} is not integrable")
    derived = derived_algebra(g)
    closure = rational_invariant_closure(derived, L)
    kernel = closure.result
    _check_kernel(g, derived, kernel)
    real_dim = g.dim - kernel.dim
    if real_dim % 2:
        raise QuotientNotEven(f"Albanese quotient has odd dimension {real_dim}")
    induced = descend(L.op, kernel)
    if not check_almost_complex(induced):
        raise InvariantViolation(f"induced {L.label} does not square to -Id")
    comp = kernel.complement_indices()
    logger.debug("Albanese of %s: kernel dim %d, torus real dim %d", L.label, kernel.dim, real_dim)
    return AlbaneseReport(
        mode="L",
        kernel=kernel,
        torus_real_dim=real_dim,
        torus_complex_dim=real_dim // 2,
        induced_ops={L.label: induced},
        complement=comp,
        quotient_labels=[g.names[j] for j in comp],
        closure_iterations=closure.iterations,
    )


def h_albanese(g: LieAlgebra, h: HypercomplexTriple) -> AlbaneseReport:
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    if not check_hypercomplex(g, h):
        raise NotHypercomplex("the triple is not integrable")
    derived = derived_algebra(g)
    closure = rational_invariant_closure_H(derived, h)
    kernel = closure.result
    _check_kernel(g, derived, kernel)
    real_dim = g.dim - kernel.dim
    if real_dim % 4:
        raise QuotientNotEven(f"H-Albanese quotient has dimension {real_dim}, not divisible by 4")
    induced = HypercomplexTriple(*(ComplexStructure(descend(m.op, kernel), m.label) for m in h.members))
    if not check_quaternionic(induced):
        raise InvariantViolation("induced triple breaks the quaternionic relations")
    comp = kernel.complement_indices()
    return AlbaneseReport(
        mode="H",
        kernel=kernel,
        torus_real_dim=real_dim,
        torus_complex_dim=real_dim // 2,
        quaternionic_dim=real_dim // 4,
        induced_ops={m.label: m.op for m in induced.members},
        complement=comp,
        quotient_labels=[g.names[j] for j in comp],
        closure_iterations=closure.iterations,
    )


def _structures_valid(g: LieAlgebra, structures: Sequence[ComplexStructure], hypercomplex: bool) -> bool:
    # Jacobi and nilpotency of g were checked when the quotient was built
    for L in structures:
        if not (check_almost_complex(L) and check_integrable(g, L) and check_abelian(g, L)):
            return False
    if hypercomplex:
        return check_quaternionic(HypercomplexTriple(*structures))
    return True


def toric_tower(g: LieAlgebra, structure: Union[ComplexStructure, HypercomplexTriple]) -> TowerReport:
    """
    g -> g/z(g) -> ... -> 0. Each level quotients by the full center, which is
    rational and, for abelian structures, invariant.
    """
    hypercomplex = isinstance(structure, HypercomplexTriple)
    if hypercomplex:
        if not check_abelian_hypercomplex(g, structure):
            raise NotAbelian("the hypercomplex structure is not abelian")
        structures = list(structure.members)
    else:
        if not check_abelian(g, structure):
            raise NotAbelian(f"{structure.label} is not abelian")
        structures = [structure]

    levels = []
    current = g
    while current.dim > 0:
        z = center(current)
        for L in structures:
            if not z.is_invariant(L.op):
                raise CenterNotInvariant(f"center of a {current.dim}-dimensional level is not {L.label}-invariant")
        q, structures = _quotient(current, z, structures)
        level = TowerLevel(
            algebra_dim=current.dim,
            center_dim=z.dim,
            fiber_dim=z.dim,
            quotient_dim=q.dim,
            center_rational=z.is_rational,
            structures_preserved=_structures_valid(q, structures, hypercomplex),
        )
        logger.debug("tower level %s", level)
        levels.append(level)
        current = q
    return TowerReport(mode="H" if hypercomplex else "L", levels=levels)
