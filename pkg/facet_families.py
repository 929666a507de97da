"""
Facet families of braxtopes and related generalized simplices.

Every family is generated straight from its defining index formula on a vertex
array x_0 < x_1 < ... < x_n, with the clamping convention x_t = x_0 for t <= 0
and x_t = x_n for t >= n. Vertices are plain integers; a face is stored as a
strictly increasing tuple of vertex indices (a VertexSet).
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

VertexId = int
VertexSet = Tuple[VertexId, ...]


class PolytopeError(ValueError):
    """Base class for every error raised by the braxtope toolkit."""


class InvalidParameters(PolytopeError):
    """Parameters outside an operation's preconditions."""


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Canonical VertexSet: deduplicated and sorted."""
    return tuple(sorted(set(vertices)))


def _clamp(t: int, n: int) -> int:
    return min(max(t, 0), n)


@dataclass(frozen=True)
class FacetFamily:
    """The facets of a (combinatorial) d-polytope on the vertices 0..n."""
    d: int
    n: int
    facets: Tuple[VertexSet, ...]
    labels: Dict[VertexSet, Tuple[str, ...]] = field(default_factory=dict, compare=False)
    kind: str = field(default="custom", compare=False)

    def __len__(self) -> int:
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __contains__(self, facet) -> bool:
        return vertex_set(facet) in self.facet_set()

    def facet_set(self) -> FrozenSet[VertexSet]:
        return frozenset(self.facets)

    def vertices(self) -> VertexSet:
        return vertex_set(v for facet in self.facets for v in facet)

    def label_of(self, facet: Iterable[int]) -> Tuple[str, ...]:
        return self.labels.get(vertex_set(facet), ())

    def facet_labelled(self, label: str) -> Optional[VertexSet]:
        """Look up a facet by one of its labels, e.g. "E_3" or "T_{1,4}"."""
        for facet, names in self.labels.items():
            if label in names:
                return facet
        return None

    def same_facets(self, other: "FacetFamily") -> bool:
        return self.facet_set() == other.facet_set()


def _make_family(d: int, n: int, labelled: Iterable[Tuple[str, Iterable[int]]],
                 kind: str) -> FacetFamily:
    """Deduplicate clamped facets, merge their labels and validate the family."""
    labels: Dict[VertexSet, List[str]] = {}
    for label, members in labelled:
        facet = vertex_set(members)
        labels.setdefault(facet, []).append(label)

    facets = tuple(sorted(labels))
    full = tuple(range(n + 1))
    for facet in facets:
        if facet == full:
            raise InvalidParameters(f"{kind}({d}, {n}): facet {labels[facet]} is the whole vertex set")
        if facet and (facet[0] < 0 or facet[-1] > n):
            raise InvalidParameters(f"{kind}({d}, {n}): facet {facet} leaves 0..{n}")
    for first, second in combinations(facets, 2):
        small, big = sorted((first, second), key=len)
        if set(small) <= set(big):
            raise InvalidParameters(f"{kind}({d}, {n}): facet {small} lies inside facet {big}")

    return FacetFamily(
        d=d,
        n=n,
        facets=facets,
        labels={facet: tuple(names) for facet, names in labels.items()},
        kind=kind,
    )


def simplex_facets(d: int) -> FacetFamily:
    """Facets of the d-simplex on 0..d; facet "S_i" is the one missing vertex i."""
    if d < 0:
        raise InvalidParameters(f"simplex dimension must be >= 0, got {d}")
    everything = range(d + 1)
    return _make_family(d, d, ((f"S_{i}", (v for v in everything if v != i)) for i in everything),
                        kind="simplex")


def braxtope_facets(d: int, n: int) -> FacetFamily:
    """
    Facets of the d-braxtope Q^{d,n}.

    For n >= d >= 3 these are T_i = [x_i, ..., x_{i+d-1}] for 0 <= i <= n-d+1 and
    E_j = [x_0, x_{j-(d-2)}, ..., x_{j-1}, x_{j+1}, ..., x_{j+(d-2)}] for 2 <= j <= n,
    under clamping. A braxtope of dimension d <= 2 is a d-simplex, so n must equal d.

    Args:
        d: Dimension.
        n: Largest vertex index.

    Returns:
        FacetFamily with 2n - d + 1 facets, labelled "T_i" and "E_j".
    """
    if d < 0:
        raise InvalidParameters(f"braxtope dimension must be >= 0, got {d}")
    if n < d:
        raise InvalidParameters(f"braxtope needs n >= d, got d={d}, n={n}")
    if d <= 2:
        if n != d:
            raise InvalidParameters(f"a {d}-braxtope is a simplex, so n must equal d (got n={n})")
        family = simplex_facets(d)
        return FacetFamily(d, n, family.facets, family.labels, kind="braxtope")

    labelled = []
    for i in range(n - d + 2):
        labelled.append((f"T_{i}", range(i, i + d)))
    for j in range(2, n + 1):
        members = [0]
        members += [_clamp(t, n) for t in range(j - (d - 2), j)]
        members += [_clamp(t, n) for t in range(j + 1, j + d - 1)]
        labelled.append((f"E_{j}", members))
    return _make_family(d, n, labelled, kind="braxtope")


def multiplex_facets(d: int, n: int) -> FacetFamily:
    """
    Facets of the d-multiplex: [x_{i-d+1}, ..., x_{i-1}, x_{i+1}, ..., x_{i+d-1}] for 0 <= i <= n.

    The formula gives empty facets for d = 1, so the 1-multiplex is the segment (n = 1).
    """
    if d < 1:
        raise InvalidParameters(f"multiplex dimension must be >= 1, got {d}")
    if n < d:
        raise InvalidParameters(f"multiplex needs n >= d, got d={d}, n={n}")
    if d == 1:
        if n != 1:
            raise InvalidParameters(f"a 1-multiplex is a segment, so n must be 1 (got n={n})")
        return _make_family(1, 1, [("M_0", [1]), ("M_1", [0])], kind="multiplex")

    labelled = []
    for i in range(n + 1):
        members = [_clamp(t, n) for t in range(i - d + 1, i)]
        members += [_clamp(t, n) for t in range(i + 1, i + d)]
        labelled.append((f"M_{i}", members))
    return _make_family(d, n, labelled, kind="multiplex")


def rd_braxtope_facets(r: int, d: int, n: int) -> FacetFamily:
    """
    Facets of the (r,d)-braxtope.

    For n >= d >= r + 2 the facets are T_{i,j} for 0 <= i <= r-1 and r <= j <= n-d+r,
    T_{0,0} = [x_0, ..., x_{d-1}] and E_j for r+1 <= j <= n. For d <= r + 1 it is a
    d-simplex. r = 0 gives the d-multiplex and r = 1 the d-braxtope.
    """
    if r < 0:
        raise InvalidParameters(f"r must be >= 0, got {r}")
    if d < 0:
        raise InvalidParameters(f"dimension must be >= 0, got {d}")
    if d <= r + 1:
        if n != d:
            raise InvalidParameters(f"a ({r},{d})-braxtope with d <= r+1 is a simplex, so n must equal d")
        family = simplex_facets(d)
        return FacetFamily(d, n, family.facets, family.labels, kind="rd-braxtope")
    if n < d:
        raise InvalidParameters(f"({r},{d})-braxtope needs n >= d, got n={n}")

    head = set(range(r))
    width = d - r - 1
    labelled = []
    for i in range(r):
        for j in range(r, n - d + r + 1):
            labelled.append((f"T_{{{i},{j}}}", (head - {i}) | set(range(j, j + d - r + 1))))
    labelled.append(("T_{0,0}", range(d)))
    for j in range(r + 1, n + 1):
        members = set(head)
        members.update(_clamp(t, n) for t in range(j - width, j))
        members.update(_clamp(t, n) for t in range(j + 1, j + width + 1))
        labelled.append((f"E_{j}", members))
    return _make_family(d, n, labelled, kind="rd-braxtope")


@dataclass(frozen=True)
class GaleWitness:
    """A facet that is not a Gale set, with two outside vertices and the members between them."""
    facet: VertexSet
    pair: Tuple[VertexId, VertexId]
    count: int


@dataclass(frozen=True)
class GaleCheck:
    ok: bool
    witness: Optional[GaleWitness] = None

    def __bool__(self) -> bool:
        return self.ok


def gale_witness(n: int, facet: Sequence[int]) -> Optional[GaleWitness]:
    """Return the first pair of non-members separated by an odd number of members, if any."""
    members = set(facet)
    outside = [v for v in range(n + 1) if v not in members]
    for low, high in combinations(outside, 2):
        count = sum(1 for v in members if low < v < high)
        if count % 2:
            return GaleWitness(vertex_set(facet), (low, high), count)
    return None


def gale_check(n: int, family: Iterable[Sequence[int]]) -> GaleCheck:
    """
    Test whether every facet of a family is a Gale set in 0..n.

    Args:
        n: Largest vertex index of the ambient vertex array.
        family: FacetFamily or any iterable of facets; facets are visited in sorted order.

    Returns:
        GaleCheck, carrying the first failing facet when the test fails.
    """
    facets = sorted(vertex_set(facet) for facet in family)
    for facet in facets:
        if facet and (facet[0] < 0 or facet[-1] > n):
            raise InvalidParameters(f"facet {facet} is not inside 0..{n}")
    for facet in facets:
        witness = gale_witness(n, facet)
        if witness is not None:
            return GaleCheck(False, witness)
    return GaleCheck(True)


def cyclic_facets(d: int, n: int) -> FacetFamily:
    """Facets of the cyclic d-polytope with n+1 vertices, by Gale evenness over all d-subsets."""
    if d < 2:
        raise InvalidParameters(f"cyclic polytope dimension must be >= 2, got {d}")
    if n < d:
        raise InvalidParameters(f"cyclic polytope needs n >= d, got d={d}, n={n}")
    labelled = [("C", subset) for subset in combinations(range(n + 1), d)
                if gale_witness(n, subset) is None]
    return _make_family(d, n, labelled, kind="cyclic")


def cube_facets(d: int) -> FacetFamily:
    """Facets of the d-cube; vertex v has coordinate k equal to bit k of v."""
    if d < 1:
        raise InvalidParameters(f"cube dimension must be >= 1, got {d}")
    n = 2 ** d - 1
    labelled = []
    for k in range(d):
        for bit in (0, 1):
            labelled.append((f"x{k}={bit}", [v for v in range(n + 1) if (v >> k) & 1 == bit]))
    return _make_family(d, n, labelled, kind="cube")


def family_from_facets(d: int, n: int, facets: Iterable[Iterable[int]], kind: str = "custom") -> FacetFamily:
    """Wrap externally supplied facets (e.g. from a document) as a validated FacetFamily."""
    return _make_family(d, n, ((kind, facet) for facet in facets), kind=kind)


def shift_facets(facets: Iterable[Sequence[int]], offset: int) -> FrozenSet[VertexSet]:
    """Translate every label by offset (labels 0..m become offset..m+offset)."""
    return frozenset(tuple(v + offset for v in facet) for facet in facets)


def relabel(face: Sequence[int], vertices: Sequence[int]) -> VertexSet:
    """Rewrite face in the induced order of vertices: the k-th smallest vertex becomes k."""
    position = {v: k for k, v in enumerate(sorted(vertices))}
    return vertex_set(position[v] for v in face)


def is_simplicial(family: FacetFamily) -> bool:
    return all(len(facet) == family.d for facet in family.facets)


def format_face(face: Sequence[int]) -> str:
    """Compact face notation used in reports: (0, 1, 3) -> "{0,1,3}"."""
    return "{" + ",".join(str(v) for v in face) + "}"


if __name__ == "__main__":
    for d, n in [(3, 4), (4, 6)]:
        family = braxtope_facets(d, n)
        print(f"Q^{d},{n}: {len(family)} facets")
        for facet in family:
            print(f"  {format_face(facet):15} {', '.join(family.label_of(facet))}")

    print(f"\nmultiplex(3,4): {[format_face(f) for f in multiplex_facets(3, 4)]}")
    print(f"cyclic(4,5): {len(cyclic_facets(4, 5))} facets")
    print(f"gale_check(Q^3,4): {gale_check(4, braxtope_facets(3, 4))}")
