"""
Scans over rational points of the twistor sphere {aI + bJ + cK}.

For each point the minimal rational L-invariant closure of W is compared with
the minimal rational H-invariant closure; points where they differ are
exceptional and get a checkable certificate.
"""

import logging
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, List, Optional, Sequence, Tuple

from .config import get_settings
from .errors import InvariantViolation, NotExceptional, NotQuaternionic, ParseError
from .field import parse_rational
from .lie import LieAlgebra, derived_algebra
from .linalg import Subspace
from .models import ExceptionalWitness, ScanReport, ScanSample, SpherePoint
from .saturation import rational_invariant_closure, rational_invariant_closure_H
from .structures import AXIS_POINTS, HypercomplexTriple, check_quaternionic, induced_structure

logger = logging.getLogger(__name__)

GridPoint = Tuple[Fraction, Fraction]


def sphere_point(u: Any, v: Any) -> SpherePoint:
    """Inverse stereographic projection from the north pole: (0, 0) is the south pole"""
    u, v = parse_rational(u), parse_rational(v)
    s = 1 + u * u + v * v
    p = SpherePoint(a=2 * u / s, b=2 * v / s, c=(u * u + v * v - 1) / s)
    if not p.is_on_sphere():
        raise InvariantViolation(f"{p} is off the sphere")
    return p


def default_grid(n: int = 3) -> List[GridPoint]:
    """{(i/n, j/n) : -n <= i, j <= n}"""
    if n < 1:
        raise ParseError(f"grid size must be positive, got {n}")
    return [(Fraction(i, n), Fraction(j, n)) for i in range(-n, n + 1) for j in range(-n, n + 1)]


def _evaluate_sample(task) -> ScanSample:
    h, w, h_closure, u, v, point = task
    L = induced_structure(h, point)
    closure = rational_invariant_closure(w, L).result
    if not h_closure.contains(closure):
        raise InvariantViolation(f"closure at {point} is not contained in the H-closure")
    return ScanSample(
        u=u,
        v=v,
        point=point,
        kernel=closure,
        kernel_dim=closure.dim,
        kernel_equals_H_closure=closure == h_closure,
    )


def scan(
    g: LieAlgebra,
    h: HypercomplexTriple,
    w: Optional[Subspace] = None,
    grid: Optional[Sequence[GridPoint]] = None,
    extra_points: Sequence[SpherePoint] = AXIS_POINTS,
    workers: Optional[int] = None,
) -> ScanReport:
    if not check_quaternionic(h):
        raise NotQuaternionic("IJ = -JI = K does not hold")
    if w is None:
        w = derived_algebra(g)
    if grid is None:
        grid = default_grid()
    workers = workers or get_settings().workers
    h_closure = rational_invariant_closure_H(w, h).result

    tasks = [(h, w, h_closure, u, v, sphere_point(u, v)) for u, v in grid]
    tasks += [(h, w, h_closure, None, None, p) for p in extra_points]
    logger.info("scanning %d sphere points with %d worker(s)", len(tasks), workers)

    if workers > 1:
        with Pool(processes=workers) as pool:
            samples = pool.map(_evaluate_sample, tasks)
    else:
        samples = [_evaluate_sample(t) for t in tasks]

    exceptional = [s.point for s in samples if not s.kernel_equals_H_closure]
    witnesses = []
    for p in exceptional:
        witness = exceptional_witness(g, h, w, p)
        if not verify_witness(witness, h):
            raise InvariantViolation(f"certificate for {p} does not verify")
        witnesses.append(witness)
    if exceptional:
        logger.info("%d exceptional point(s)", len(exceptional))

    return ScanReport(
        samples=samples,
        h_closure=h_closure,
        h_closure_dim=h_closure.dim,
        exceptional=exceptional,
        witnesses=witnesses,
    )


def exceptional_witness(g: LieAlgebra, h: HypercomplexTriple, w: Optional[Subspace], p: SpherePoint) -> ExceptionalWitness:
    """A basis vector x of W_{Q,L} and Q in {I, J, K} with Qx outside W_{Q,L}"""
    if w is None:
        w = derived_algebra(g)
    L = induced_structure(h, p)
    closure = rational_invariant_closure(w, L).result
    if closure == rational_invariant_closure_H(w, h).result:
        raise NotExceptional(f"closures coincide at {p}")
    for x in closure.vectors:
        for name, member in zip("IJK", h.members):
            image = member.op.apply(x)
            if not closure.contains_vector(image):
                return ExceptionalWitness(point=p, closure=closure, vector=list(x), operator=name, image=list(image))
    raise InvariantViolation(f"closure at {p} is H-invariant but differs from the H-closure")


def verify_witness(witness: ExceptionalWitness, h: HypercomplexTriple) -> bool:
    """Re-check a certificate from its own data"""
    closure = witness.closure
    L = induced_structure(h, witness.point)
    op = getattr(h, witness.operator).op
    image = op.apply(witness.vector)
    return (
        closure.is_rational
        and closure.is_invariant(L.op)
        and closure.contains_vector(witness.vector)
        and image == tuple(witness.image)
        and not closure.contains_vector(image)
    )
