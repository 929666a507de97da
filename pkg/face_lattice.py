"""
Face lattices of polytopes given by their facets, and the counting invariants
built on them: f-vectors, flag vectors, h-vectors, vertex figures, intervals,
and the pyramid/bipyramid/polygon constructions used as a reference comparand.

Faces are VertexSets; the covering relation is kept in a networkx DiGraph whose
edges point from a face to the faces covering it.
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from facet_families import (
    InvalidParameters,
    PolytopeError,
    VertexSet,
    format_face,
    vertex_set,
)

logger = logging.getLogger(__name__)


class LatticeError(PolytopeError):
    """The facets do not close up to the face lattice of a polytope."""


class NotGraded(LatticeError):
    pass


class IsolatedVertex(LatticeError):
    pass


class VertexAbsent(LatticeError):
    pass


class NotFaces(LatticeError):
    pass


def binomial(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a."""
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


class FaceLattice:
    """All faces of a polytope with their dimensions and the Hasse diagram."""

    def __init__(self, dims: Dict[VertexSet, int], hasse: nx.DiGraph, vertices: Sequence[int]):
        self.dims = dict(dims)
        self.hasse = hasse
        self.vertices: VertexSet = vertex_set(vertices)
        self.top: VertexSet = max(self.dims, key=self.dims.get)
        self.bottom: VertexSet = min(self.dims, key=self.dims.get)
        self.d = self.dims[self.top]
        self._below: Dict[VertexSet, FrozenSet[VertexSet]] = {}

    @classmethod
    def from_faces(cls, dims: Dict[Iterable[int], int], vertices: Optional[Iterable[int]] = None) -> "FaceLattice":
        """Build the lattice from explicit face dimensions; covers join faces one dimension apart."""
        canonical = {vertex_set(face): dim for face, dim in dims.items()}
        by_dim: Dict[int, List[VertexSet]] = {}
        for face, dim in canonical.items():
            by_dim.setdefault(dim, []).append(face)

        hasse = nx.DiGraph()
        hasse.add_nodes_from(canonical)
        for dim, faces in by_dim.items():
            for lower in faces:
                members = set(lower)
                for upper in by_dim.get(dim + 1, []):
                    if members <= set(upper):
                        hasse.add_edge(lower, upper)

        if vertices is None:
            vertices = [v for face, dim in canonical.items() if dim == 0 for v in face]
        return cls(canonical, hasse, vertices)

    def __len__(self) -> int:
        return len(self.dims)

    def __contains__(self, face) -> bool:
        return vertex_set(face) in self.dims

    def __repr__(self) -> str:
        return f"FaceLattice(d={self.d}, vertices={len(self.vertices)}, faces={len(self.dims)})"

    def dim(self, face: Iterable[int]) -> int:
        key = vertex_set(face)
        if key not in self.dims:
            raise NotFaces(f"{format_face(key)} is not a face")
        return self.dims[key]

    def faces_of_dim(self, k: int) -> List[VertexSet]:
        return sorted(face for face, dim in self.dims.items() if dim == k)

    def facets(self) -> List[VertexSet]:
        return self.faces_of_dim(self.d - 1)

    def edges(self) -> List[VertexSet]:
        return self.faces_of_dim(1)

    def is_edge(self, u: int, v: int) -> bool:
        face = vertex_set((u, v))
        return len(face) == 2 and self.dims.get(face) == 1

    def faces_below(self, face: Iterable[int]) -> FrozenSet[VertexSet]:
        """Every face contained in face, itself included."""
        key = vertex_set(face)
        if key not in self._below:
            if key not in self.dims:
                raise NotFaces(f"{format_face(key)} is not a face")
            self._below[key] = frozenset(nx.ancestors(self.hasse, key)) | {key}
        return self._below[key]

    def closure(self, members: Iterable[int]) -> VertexSet:
        """Smallest face containing the given vertices: the intersection of the facets containing them."""
        wanted = set(members)
        result: Optional[set] = None
        for facet in self.facets():
            if wanted <= set(facet):
                result = set(facet) if result is None else result & set(facet)
        return self.top if result is None else vertex_set(result)

    def interval(self, lower: Iterable[int], upper: Iterable[int]) -> List[VertexSet]:
        low, high = vertex_set(lower), vertex_set(upper)
        for face in (low, high):
            if face not in self.dims:
                raise NotFaces(f"{format_face(face)} is not a face")
        if not set(low) <= set(high):
            raise NotFaces(f"{format_face(low)} is not contained in {format_face(high)}")
        members = set(low)
        return sorted(face for face in self.faces_below(high) if members <= set(face))


def build_lattice(n_vertices: int, family: Iterable[Sequence[int]]) -> FaceLattice:
    """
    Close a facet family under intersection and rank it into a face lattice.

    The covers of a face G are the minimal sets among closure(G + v), v not in G,
    where closure(S) is the intersection of the facets containing S (the whole
    vertex set when none does). Dimensions are longest-chain ranks from the bottom.

    Args:
        n_vertices: Number of vertices; vertices are 0..n_vertices-1.
        family: FacetFamily or iterable of facets.

    Returns:
        FaceLattice of the family.

    Raises:
        IsolatedVertex: A vertex lies in no facet.
        NotGraded: The closure is not graded, or its atoms are not the vertices.
    """
    facets = [frozenset(facet) for facet in family]
    if not facets:
        raise LatticeError("empty facet family")
    vertices = frozenset(range(n_vertices))
    covered = frozenset().union(*facets)
    if covered - vertices:
        raise LatticeError(f"facets use vertices outside 0..{n_vertices - 1}: {sorted(covered - vertices)}")
    if vertices - covered:
        raise IsolatedVertex(f"vertex {min(vertices - covered)} lies in no facet")

    def closure(members: FrozenSet[int]) -> FrozenSet[int]:
        containing = [facet for facet in facets if members <= facet]
        return frozenset.intersection(*containing) if containing else vertices

    bottom = closure(frozenset())
    graph = nx.DiGraph()
    graph.add_node(bottom)
    queue = deque([bottom])
    while queue:
        face = queue.popleft()
        candidates = {closure(face | {v}) for v in vertices - face}
        for candidate in candidates:
            if any(other < candidate for other in candidates):
                continue
            if candidate not in graph:
                queue.append(candidate)
            graph.add_edge(face, candidate)

    rank: Dict[FrozenSet[int], int] = {}
    for node in nx.topological_sort(graph):
        rank[node] = max((rank[p] + 1 for p in graph.predecessors(node)), default=0)
    for low, high in graph.edges:
        if rank[high] != rank[low] + 1:
            raise NotGraded(f"{format_face(sorted(low))} is covered by {format_face(sorted(high))} "
                            f"across ranks {rank[low]} and {rank[high]}")

    atoms = {node for node, r in rank.items() if r == 1}
    if bottom or atoms != {frozenset([v]) for v in vertices}:
        raise NotGraded("the atoms of the closure are not the single vertices")

    family_d = getattr(family, "d", None)
    top_dim = rank[vertices] - 1
    if family_d is not None and top_dim != family_d:
        raise NotGraded(f"facets close up to a {top_dim}-dimensional lattice, expected {family_d}")

    lattice = FaceLattice(
        {vertex_set(node): r - 1 for node, r in rank.items()},
        nx.relabel_nodes(graph, {node: vertex_set(node) for node in graph}),
        vertices,
    )
    logger.debug("built lattice with %d faces, d=%d", len(lattice), lattice.d)
    return lattice


def simplicial_lattice(facets: Iterable[Sequence[int]]) -> FaceLattice:
    """
    Face poset of a pure simplicial complex, with a formal top above the facets.

    A single facet is its own top (the complex is a simplex).
    """
    facets = [vertex_set(facet) for facet in facets]
    dims: Dict[VertexSet, int] = {}
    for facet in facets:
        for size in range(len(facet) + 1):
            for face in combinations(facet, size):
                dims[face] = size - 1
    vertices = vertex_set(v for facet in facets for v in facet)
    if len(facets) > 1:
        dims[vertices] = max(len(facet) for facet in facets)
    return FaceLattice.from_faces(dims, vertices)


@dataclass(frozen=True)
class FVector:
    """f_{-1}, f_0, ..., f_d of a d-dimensional lattice."""
    d: int
    counts: Tuple[int, ...]

    def f(self, j: int) -> int:
        if j < -1 or j > self.d:
            return 0
        return self.counts[j + 1]

    def proper(self) -> Tuple[int, ...]:
        return self.counts[1:-1]

    def euler_holds(self) -> bool:
        alternating = sum((-1) ** j * self.f(j) for j in range(self.d))
        return alternating == 1 - (-1) ** self.d

    def __str__(self) -> str:
        return f"f = {self.proper()}"


@dataclass(frozen=True)
class FlagVector:
    """f_S for every S subset of {0, ..., d-1}; keys are sorted tuples."""
    d: int
    entries: Dict[Tuple[int, ...], int]

    def __getitem__(self, dims: Iterable[int]) -> int:
        return self.entries[tuple(sorted(dims))]

    def differences(self, other: "FlagVector") -> List[Tuple[int, ...]]:
        keys = sorted(set(self.entries) | set(other.entries), key=lambda s: (len(s), s))
        return [s for s in keys if self.entries.get(s) != other.entries.get(s)]

    def to_dict(self) -> Dict:
        return {",".join(map(str, s)): count for s, count in sorted(self.entries.items(), key=lambda i: (len(i[0]), i[0]))}

    def __str__(self) -> str:
        rows = [f"f_{{{','.join(map(str, s))}}} = {count}"
                for s, count in sorted(self.entries.items(), key=lambda i: (len(i[0]), i[0]))]
        return "\n".join(rows)


@dataclass(frozen=True)
class HVector:
    entries: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __str__(self) -> str:
        return f"h = {self.entries}"


def f_vector(lattice: FaceLattice) -> FVector:
    counts = [0] * (lattice.d + 2)
    for dim in lattice.dims.values():
        counts[dim + 1] += 1
    return FVector(lattice.d, tuple(counts))


def flag_vector(lattice: FaceLattice) -> FlagVector:
    """
    Count S-flags for all S by dynamic programming along chains.

    chains[S][G] is the number of S-flags whose largest face is G; extending S by a
    larger dimension t sums chains[S] over the faces below each t-face.
    """
    by_dim: Dict[int, List[VertexSet]] = {}
    for face, dim in lattice.dims.items():
        by_dim.setdefault(dim, []).append(face)

    below_by_dim: Dict[VertexSet, Dict[int, List[VertexSet]]] = {}
    for face, dim in lattice.dims.items():
        if 0 < dim < lattice.d:
            grouped: Dict[int, List[VertexSet]] = {}
            for lower in lattice.faces_below(face):
                grouped.setdefault(lattice.dims[lower], []).append(lower)
            below_by_dim[face] = grouped

    chains: Dict[Tuple[int, ...], Dict[VertexSet, int]] = {}
    entries: Dict[Tuple[int, ...], int] = {(): 1}
    for size in range(1, lattice.d + 1):
        for dims in combinations(range(lattice.d), size):
            if size == 1:
                counts = {face: 1 for face in by_dim.get(dims[0], [])}
            else:
                prefix, last = chains[dims[:-1]], dims[-2]
                counts = {face: sum(prefix.get(lower, 0) for lower in below_by_dim[face].get(last, []))
                          for face in by_dim.get(dims[-1], [])}
            chains[dims] = counts
            entries[dims] = sum(counts.values())
    return FlagVector(lattice.d, entries)


def h_from_f_simplicial(f: FVector, d: int) -> HVector:
    """
    h_i = sum_{j=0}^{i} (-1)^{i-j} C(d-j, d-i) f_{j-1}, for 0 <= i <= d.

    Pass d = polytope dimension for the boundary of a simplicial polytope, and
    d = dim + 1 for a dim-dimensional simplicial ball (facets of dim + 1 vertices).
    """
    return HVector(tuple(
        sum((-1) ** (i - j) * binomial(d - j, d - i) * f.f(j - 1) for j in range(i + 1))
        for i in range(d + 1)
    ))


def vertex_figure(lattice: FaceLattice, v: int) -> FaceLattice:
    """
    The interval from {v} to the top, one rank down.

    Each face containing v becomes the set of its edges through v, each edge
    named by its other endpoint.
    """
    if (v,) not in lattice.dims or lattice.dims[(v,)] != 0:
        raise VertexAbsent(f"{v} is not a vertex of the lattice")
    neighbours = [u for edge in lattice.edges() if v in edge for u in edge if u != v]
    dims = {}
    for face, dim in lattice.dims.items():
        if v in face:
            members = set(face)
            dims[vertex_set(u for u in neighbours if u in members)] = dim - 1
    return FaceLattice.from_faces(dims, neighbours)


def interval_is_boolean(lattice: FaceLattice, lower: Iterable[int], upper: Iterable[int]) -> bool:
    """True iff [lower, upper] is a Boolean lattice, i.e. the quotient upper/lower is a simplex."""
    low, high = vertex_set(lower), vertex_set(upper)
    members = lattice.interval(low, high)
    k = lattice.dims[high] - lattice.dims[low]
    if len(members) != 2 ** k:
        return False
    atoms = [face for face in members if lattice.dims[face] == lattice.dims[low] + 1]
    if len(atoms) != k:
        return False

    def atoms_below(face: VertexSet) -> FrozenSet[VertexSet]:
        return frozenset(atom for atom in atoms if set(atom) <= set(face))

    images = {face: atoms_below(face) for face in members}
    if len(set(images.values())) != len(members):
        return False
    for face, image in images.items():
        if len(image) != lattice.dims[face] - lattice.dims[low]:
            return False
    for first, second in combinations(members, 2):
        if (set(first) <= set(second)) != (images[first] <= images[second]):
            return False
        if (set(second) <= set(first)) != (images[second] <= images[first]):
            return False
    return True


def polygon_lattice(m: int) -> FaceLattice:
    """Face lattice of the m-gon on vertices 0..m-1 in cyclic order."""
    if m < 3:
        raise InvalidParameters(f"a polygon needs at least 3 vertices, got {m}")
    dims: Dict[Tuple[int, ...], int] = {(): -1, tuple(range(m)): 2}
    for i in range(m):
        dims[(i,)] = 0
        dims[vertex_set((i, (i + 1) % m))] = 1
    return FaceLattice.from_faces(dims, range(m))


def pyramid_lattice(base: FaceLattice) -> FaceLattice:
    """Pyramid over base; the apex is the next unused vertex label."""
    apex = max(base.vertices) + 1
    dims = {}
    for face, dim in base.dims.items():
        dims[face] = dim
        dims[face + (apex,)] = dim + 1
    return FaceLattice.from_faces(dims, base.vertices + (apex,))


def bipyramid_lattice(base: FaceLattice) -> FaceLattice:
    """Bipyramid over base; the two apexes are joined to every proper face of the base."""
    north, south = max(base.vertices) + 1, max(base.vertices) + 2
    dims = {}
    for face, dim in base.dims.items():
        if face == base.top:
            continue
        dims[face] = dim
        dims[face + (north,)] = dim + 1
        dims[face + (south,)] = dim + 1
    vertices = base.vertices + (north, south)
    dims[vertices] = base.d + 1
    return FaceLattice.from_faces(dims, vertices)


def reference_comparand(d: int, n: int) -> FaceLattice:
    """The (d-3)-fold pyramid over the bipyramid over an (n-d+2)-gon."""
    if d < 3 or n <= d:
        raise InvalidParameters(f"reference comparand needs d >= 3 and n > d, got d={d}, n={n}")
    lattice = bipyramid_lattice(polygon_lattice(n - d + 2))
    for _ in range(d - 3):
        lattice = pyramid_lattice(lattice)
    return lattice


def braxtope_closed_forms(d: int, n: int) -> Tuple[FVector, HVector]:
    """
    Closed forms for Q^{d,n}:
    f_j = C(d+1, j+1) + (n-d) [C(d-1, j) + C(d-2, j-1)], and
    h = (1, n-d+1, ..., n-d+1, 1) with d+1 entries.
    """
    if d < 3 or n < d:
        raise InvalidParameters(f"closed forms need n >= d >= 3, got d={d}, n={n}")
    counts = tuple(binomial(d + 1, j + 1) + (n - d) * (binomial(d - 1, j) + binomial(d - 2, j - 1))
                   for j in range(-1, d + 1))
    h = (1,) + (n - d + 1,) * (d - 1) + (1,)
    return FVector(d, counts), HVector(h)


if __name__ == "__main__":
    from facet_families import braxtope_facets

    family = braxtope_facets(4, 6)
    lattice = build_lattice(family.n + 1, family)
    print(lattice)
    print(f_vector(lattice))
    print(f"f_{{0,3}} = {flag_vector(lattice)[(0, 3)]}")
    print(f"comparand: {f_vector(reference_comparand(4, 6))}")
    print(f"closed forms: {braxtope_closed_forms(4, 6)[0]}, {braxtope_closed_forms(4, 6)[1]}")
