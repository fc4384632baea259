"""
Invariant closures of subspaces.

W_{Q,L} is the smallest rational L-invariant subspace containing W, computed
as the fixed point of W -> rationalize(W + LW) starting from rationalize(W).
W_{Q,H} uses I and J and K together; K-invariance follows from the other two.
"""

import logging
from typing import Sequence, Tuple

from .config import get_settings
from .errors import InvariantViolation, NotIntegrable, NotQuaternionic, SaturationDidNotConverge
from .lie import LieAlgebra, derived_algebra
from .linalg import Matrix, Subspace, apply, rationalize, subspace_sum
from .models import ClosureReport, DifferentialCount
from .structures import ComplexStructure, HypercomplexTriple, check_integrable, check_quaternionic

logger = logging.getLogger(__name__)


def _iteration_cap(ambient_dim: int) -> int:
    return get_settings().max_iter or max(ambient_dim, 1)


def _saturate(w: Subspace, ops: Sequence[Matrix], rational: bool) -> Tuple[Subspace, int]:
    current = rationalize(w) if rational else w
    cap = _iteration_cap(w.ambient_dim)
    iterations = 0
    while True:
        nxt = current
        for op in ops:
            nxt = subspace_sum(nxt, apply(op, current))
        if rational:
            nxt = rationalize(nxt)
        if nxt == current:
            return current, iterations
        iterations += 1
        if iterations > cap:
            raise SaturationDidNotConverge(f"no fixed point after {cap} iterations (dimension {nxt.dim})")
        logger.debug("closure iteration %d: dim %d -> %d", iterations, current.dim, nxt.dim)
        current = nxt


def _check_closure(w: Subspace, result: Subspace, ops: Sequence[Matrix], rational: bool) -> None:
    if not result.contains(w):
        raise InvariantViolation("closure does not contain its input")
    if rational and not result.is_rational:
        raise InvariantViolation("rational closure is not rational")
    for op in ops:
        if not result.is_invariant(op):
            raise InvariantViolation("closure is not invariant")


def invariant_closure(w: Subspace, L: ComplexStructure) -> Subspace:
    """w + Lw, which is L-invariant because L^2 = -Id"""
    result = subspace_sum(w, apply(L.op, w))
    _check_closure(w, result, [L.op], rational=False)
    return result


def invariant_closure_report(w: Subspace, L: ComplexStructure) -> ClosureReport:
    result = invariant_closure(w, L)
    return ClosureReport(mode="plain", input=w, result=result, iterations=0 if result == w else 1)


def rational_invariant_closure(w: Subspace, L: ComplexStructure) -> ClosureReport:
    result, iterations = _saturate(w, [L.op], rational=True)
    _check_closure(w, result, [L.op], rational=True)
    return ClosureReport(mode="L", input=w, result=result, iterations=iterations)


def rational_invariant_closure_H(w: Subspace, h: HypercomplexTriple) -> ClosureReport:
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    ops = [m.op for m in h.members]
    result, iterations = _saturate(w, ops, rational=True)
    _check_closure(w, result, ops, rational=True)
    return ClosureReport(mode="H", input=w, result=result, iterations=iterations)


def quaternionic_span(w: Subspace, h: HypercomplexTriple) -> Subspace:
    """w + Iw + Jw + Kw, no rationalization"""
    result = w
    for member in h.members:
        result = subspace_sum(result, apply(member.op, w))
    return result


def parallel_form_space_dim(g: LieAlgebra, h: HypercomplexTriple) -> int:
    """
    Invariant 1-forms eta with eta, I eta, J eta, K eta all closed. A closed
    invariant form is one vanishing on [g, g], so this is the codimension of
    [g,g] + I[g,g] + J[g,g] + K[g,g].
    """
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    return g.dim - quaternionic_span(derived_algebra(g), h).dim


def closed_holomorphic_differential_dim(g: LieAlgebra, L: ComplexStructure) -> DifferentialCount:
    if not check_integrable(g, L):
        raise NotIntegrable(f"{L.label} is not integrable")
    codim = g.dim - invariant_closure(derived_algebra(g), L).dim
    return DifferentialCount(real_codim=codim, complex_dim=codim // 2)
