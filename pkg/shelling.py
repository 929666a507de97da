"""
Pulling triangulations, shellings and shelling-derived h-vectors.

Covers the triangulation Delta of Q^{d,n} obtained by pulling x_0 (facets
J_i = [x_0, x_i, ..., x_{i+d-1}]), its shelling certificate and shallowness,
the colex shelling of the boundary of Q^{d,n}, and the antistar of x_0.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from check_reports import CheckReport, verdict_report
from face_lattice import (
    FaceLattice,
    FVector,
    HVector,
    build_lattice,
    interval_is_boolean,
)
from facet_families import (
    InvalidParameters,
    PolytopeError,
    VertexSet,
    braxtope_facets,
    format_face,
    multiplex_facets,
    shift_facets,
    vertex_set,
)
from rational_geometry import Realization, hull_facets, realize_braxtope, simplex_volume

logger = logging.getLogger(__name__)


class ShellingError(PolytopeError):
    pass


class NotShelling(ShellingError):
    """A step has no unique minimal new face."""

    def __init__(self, step: int, minimal_faces: Sequence[VertexSet]):
        self.step = step
        self.minimal_faces = [vertex_set(face) for face in minimal_faces]
        found = ", ".join(format_face(face) for face in self.minimal_faces) or "none"
        super().__init__(f"step {step} has minimal new faces {found}")


class PropertyFails(ShellingError):
    """A colex shelling step violates one of: (a) unique minimal face, (b) simplex, (c) simplex quotient."""

    def __init__(self, step: int, which: str):
        self.step = step
        self.which = which
        super().__init__(f"step {step} fails property ({which})")


@dataclass(frozen=True)
class SimplicialComplexOrdered:
    """An ordered list of distinct simplices; the order matters for shellings."""
    facets: Tuple[VertexSet, ...]

    def __post_init__(self):
        if len(set(self.facets)) != len(self.facets):
            raise InvalidParameters("complex lists a facet twice")

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def vertices(self) -> VertexSet:
        return vertex_set(v for facet in self.facets for v in facet)

    def faces(self) -> List[VertexSet]:
        """Every nonempty face, ordered by dimension then lexicographically."""
        found = {face for facet in self.facets for size in range(1, len(facet) + 1)
                 for face in combinations(facet, size)}
        return sorted(found, key=lambda face: (len(face), face))


@dataclass
class ShellingCertificate:
    """Minimal new faces G_j per step (G_1 is empty) and whether each step is a shelling step."""
    facets: Tuple[VertexSet, ...]
    minimal_faces: List[Optional[VertexSet]]
    valid: List[bool]

    @property
    def ok(self) -> bool:
        return all(self.valid)


def pulling_triangulation(d: int, n: int) -> SimplicialComplexOrdered:
    """J_1, ..., J_{n-d+1} with J_i = {x_0} + {x_i, ..., x_{i+d-1}}."""
    if d < 3 or n < d:
        raise InvalidParameters(f"pulling triangulation needs n >= d >= 3, got d={d}, n={n}")
    return SimplicialComplexOrdered(tuple((0,) + tuple(range(i, i + d)) for i in range(1, n - d + 2)))


def pull_lattice(lattice: FaceLattice, order: Optional[Sequence[int]] = None) -> SimplicialComplexOrdered:
    """
    Pulling triangulation of a polytope from its face lattice.

    Each nonsimplex face is coned from its first vertex in order over the pulled
    triangulations of its facets that miss that vertex.
    """
    rank = {v: k for k, v in enumerate(order if order is not None else lattice.vertices)}
    memo: Dict[VertexSet, List[VertexSet]] = {}

    def pull(face: VertexSet) -> List[VertexSet]:
        if face in memo:
            return memo[face]
        if len(face) == lattice.dims[face] + 1:
            memo[face] = [face]
            return memo[face]
        apex = min(face, key=rank.__getitem__)
        simplices = []
        for lower in sorted(lattice.hasse.predecessors(face)):
            if apex not in lower:
                simplices.extend(vertex_set(s + (apex,)) for s in pull(lower))
        memo[face] = simplices
        return simplices

    return SimplicialComplexOrdered(tuple(pull(lattice.top)))


def complex_f_vector(complex_: SimplicialComplexOrdered) -> FVector:
    """f_{-1}, ..., f_{k-1} of a pure complex whose facets have k vertices, closed by a formal f_k = 1."""
    size = max(len(facet) for facet in complex_)
    counts = [1] + [0] * size + [1]
    for face in complex_.faces():
        counts[len(face)] += 1
    return FVector(size, tuple(counts))


def _minimal(faces: Iterable[VertexSet]) -> List[VertexSet]:
    faces = list(faces)
    return sorted(face for face in faces if not any(set(other) < set(face) for other in faces))


def shelling_check(complex_: SimplicialComplexOrdered, strict: bool = True) -> ShellingCertificate:
    """
    Verify that the facet order is a shelling.

    At step j the faces of J_j lying in no earlier facet must have a unique minimal
    element G_j.

    Raises:
        NotShelling: At the first bad step, when strict.
    """
    sizes = {len(facet) for facet in complex_}
    if len(sizes) > 1:
        raise InvalidParameters(f"facets of mixed sizes {sorted(sizes)}")

    minimal_faces: List[Optional[VertexSet]] = []
    valid: List[bool] = []
    earlier: List[set] = []
    for step, facet in enumerate(complex_.facets, start=1):
        new = [face for size in range(len(facet) + 1) for face in combinations(facet, size)
               if not any(set(face) <= previous for previous in earlier)]
        minimal = _minimal(new)
        if len(minimal) == 1:
            minimal_faces.append(minimal[0])
            valid.append(True)
        else:
            if strict:
                raise NotShelling(step, minimal)
            minimal_faces.append(None)
            valid.append(False)
        logger.debug("shelling step %d: minimal new faces %s", step, minimal)
        earlier.append(set(facet))
    return ShellingCertificate(complex_.facets, minimal_faces, valid)


def shelling_h(cert: ShellingCertificate, facet_size: int) -> HVector:
    """h_k = number of steps whose minimal new face has k vertices."""
    if not cert.ok:
        raise InvalidParameters("h-vector needs a valid shelling certificate")
    h = [0] * (facet_size + 1)
    for face in cert.minimal_faces:
        h[len(face)] += 1
    return HVector(tuple(h))


@dataclass(frozen=True)
class ShallowResult:
    ok: bool
    witness: Optional[VertexSet] = None
    carrier: Optional[VertexSet] = None
    carrier_dim: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


def shallow_check(complex_: SimplicialComplexOrdered, lattice: FaceLattice) -> ShallowResult:
    """
    Every k-face of the complex must lie in a face of the polytope of dimension at most 2k.

    The smallest face containing a simplex is the intersection of the facets that
    contain it (the whole polytope when none does).
    """
    stray = set(complex_.vertices()) - set(lattice.vertices)
    if stray:
        raise InvalidParameters(f"complex uses non-vertices {sorted(stray)}")
    for face in complex_.faces():
        carrier = lattice.closure(face)
        carrier_dim = lattice.dims[carrier]
        if carrier_dim > 2 * (len(face) - 1):
            return ShallowResult(False, face, carrier, carrier_dim)
    return ShallowResult(True)


def colex_key(facet: Sequence[int]) -> Tuple[int, ...]:
    return tuple(reversed(vertex_set(facet)))


def colex_order(family: Iterable[Sequence[int]]) -> Tuple[VertexSet, ...]:
    """Facets as ascending tuples, compared from their largest element down."""
    return tuple(sorted((vertex_set(facet) for facet in family), key=colex_key))


@dataclass(frozen=True)
class ColexStep:
    facet: VertexSet
    minimal_faces: Tuple[VertexSet, ...]
    unique_minimal: bool
    minimal_is_simplex: bool
    quotient_is_simplex: bool

    @property
    def ok(self) -> bool:
        return self.unique_minimal and self.minimal_is_simplex and self.quotient_is_simplex

    @property
    def minimal_face(self) -> Optional[VertexSet]:
        return self.minimal_faces[0] if self.unique_minimal else None

    def failed_property(self) -> Optional[str]:
        if not self.unique_minimal:
            return "a"
        if not self.minimal_is_simplex:
            return "b"
        if not self.quotient_is_simplex:
            return "c"
        return None


def colex_shelling_props(lattice: FaceLattice, family: Iterable[Sequence[int]],
                         strict: bool = False) -> List[ColexStep]:
    """
    Walk the colex order of the facets and test, at every step j:
    (a) the faces of F_j outside earlier facets have a unique minimal face G_j,
    (b) G_j is a simplex ([empty, G_j] is Boolean),
    (c) the quotient F_j/G_j is a simplex ([G_j, F_j] is Boolean).

    Raises:
        PropertyFails: At the first failing step, when strict.
    """
    steps: List[ColexStep] = []
    earlier: List[set] = []
    for step, facet in enumerate(colex_order(family), start=1):
        new = [face for face in lattice.faces_below(facet)
               if not any(set(face) <= previous for previous in earlier)]
        minimal = tuple(_minimal(new))
        unique = len(minimal) == 1
        simplex = unique and interval_is_boolean(lattice, (), minimal[0])
        quotient = unique and interval_is_boolean(lattice, minimal[0], facet)
        result = ColexStep(facet, minimal, unique, simplex, quotient)
        if strict and not result.ok:
            raise PropertyFails(step, result.failed_property())
        steps.append(result)
        earlier.append(set(facet))
    return steps


def antistar_check(d: int, n: int, lattice: Optional[FaceLattice] = None) -> CheckReport:
    """
    The antistar of x_0 in Q^{d,n} triangulates the (d-1)-multiplex on x_1 < ... < x_n.

    Checks that the maximal faces missing x_0 are T_1..T_{n-d+1}, that they cover
    x_1..x_n, that every (d-2)-face lying in exactly one T_i sits in exactly one
    facet of the multiplex, that each multiplex facet is the union of those
    boundary simplices, and that (d-2)-faces shared by two T_i lie in no multiplex facet.
    """
    if d < 3 or n < d:
        raise InvalidParameters(f"antistar check needs n >= d >= 3, got d={d}, n={n}")
    family = braxtope_facets(d, n)
    if lattice is None:
        lattice = build_lattice(n + 1, family)

    failures: List[str] = []
    notes = [f"maximal antistar faces are T_1..T_{n - d + 1}"]

    antistar = [face for face in lattice.dims if face and 0 not in face]
    maximal = set(_maximal(antistar))
    expected = {family.facet_labelled(f"T_{i}") for i in range(1, n - d + 2)}
    for face in sorted(maximal ^ expected):
        failures.append(f"maximal antistar face mismatch {format_face(face)}")

    covered = {v for face in maximal for v in face}
    for v in range(1, n + 1):
        if v not in covered:
            failures.append(f"vertex {v} not covered")

    ridges = Counter(ridge for simplex in maximal for ridge in combinations(simplex, d - 1))
    boundary = sorted(ridge for ridge, count in ridges.items() if count == 1)
    interior = sorted(ridge for ridge, count in ridges.items() if count > 1)
    multiplex = sorted(shift_facets(multiplex_facets(d - 1, n - 1), 1))

    for ridge in boundary:
        holders = [facet for facet in multiplex if set(ridge) <= set(facet)]
        if len(holders) != 1:
            failures.append(f"boundary simplex {format_face(ridge)} lies in {len(holders)} multiplex facets")
    for facet in multiplex:
        union = {v for ridge in boundary if set(ridge) <= set(facet) for v in ridge}
        if union != set(facet):
            failures.append(f"multiplex facet {format_face(facet)} is not covered by boundary simplices")
    for ridge in interior:
        if any(set(ridge) <= set(facet) for facet in multiplex):
            failures.append(f"interior simplex {format_face(ridge)} lies in a multiplex facet")

    if all(len(facet) == d - 1 for facet in multiplex):
        notes.append("the multiplex is simplicial here, so boundary simplices equal its facets")
    return verdict_report("antistar", {"d": d, "n": n}, failures, notes)


def _maximal(faces: Iterable[VertexSet]) -> List[VertexSet]:
    faces = list(faces)
    return sorted(face for face in faces if not any(set(face) < set(other) for other in faces))


def volume_cover_check(d: int, n: int, real: Optional[Realization] = None) -> CheckReport:
    """
    Geometric check that Delta covers Q^{d,n}: the J_i volumes sum to the volume of Q,
    computed from a pulling triangulation of the hull oracle's lattice that pulls
    x_n first. Also checks that every T_i (i >= 1) is a facet of some J_i.
    """
    if real is None:
        real = realize_braxtope(d, n)
    delta = pulling_triangulation(d, n)
    failures: List[str] = []

    for i in range(1, n - d + 2):
        t_i = tuple(range(i, i + d))
        if not any(set(t_i) <= set(simplex) for simplex in delta):
            failures.append(f"T_{i} = {format_face(t_i)} is in no J_i")

    hull = hull_facets(real)
    lattice = build_lattice(n + 1, hull)
    independent = pull_lattice(lattice, order=list(range(n, -1, -1)))
    delta_volume = sum(simplex_volume(real.subset(simplex)) for simplex in delta)
    hull_volume = sum(simplex_volume(real.subset(simplex)) for simplex in independent)
    if delta_volume != hull_volume:
        failures.append(f"vol(Delta) = {delta_volume} but vol(Q) = {hull_volume}")
    return verdict_report("volume_cover", {"d": d, "n": n}, failures,
                          [f"vol(Q) = {hull_volume} from {len(independent)} simplices"])


if __name__ == "__main__":
    delta = pulling_triangulation(4, 6)
    cert = shelling_check(delta)
    print(f"Delta(Q^4,6): {[format_face(f) for f in delta]}")
    print(f"G_j: {[format_face(g) for g in cert.minimal_faces]}")
    print(f"h(Delta) = {shelling_h(cert, 5).entries}")
    family = braxtope_facets(4, 6)
    lattice = build_lattice(7, family)
    print(f"shallow: {bool(shallow_check(delta, lattice))}")
    print(f"colex: {[format_face(f) for f in colex_order(family)]}")
