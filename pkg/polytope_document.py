"""
JSON documents for facet families, realizations and their invariants.

A document is the only interchange format of the toolkit: generated families,
hand-written custom families and exported artifacts all share one schema.
Rational coordinates are stored as "p/q" strings so nothing is rounded.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from face_lattice import (
    FaceLattice,
    braxtope_closed_forms,
    build_lattice,
    f_vector,
    flag_vector,
    h_from_f_simplicial,
)
from facet_families import (
    FacetFamily,
    InvalidParameters,
    PolytopeError,
    braxtope_facets,
    cyclic_facets,
    family_from_facets,
    format_face,
    is_simplicial,
    multiplex_facets,
    rd_braxtope_facets,
)
from rational_geometry import GeometryError, Realization, hull_facets
from shelling import colex_order

logger = logging.getLogger(__name__)

KINDS = ("braxtope", "multiplex", "cyclic", "rd-braxtope", "custom")


class DocumentError(PolytopeError):
    """Malformed or inconsistent polytope document."""


def _is_integer(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_coordinate(value) -> bool:
    return isinstance(value, str) or _is_integer(value)


@dataclass
class PolytopeDocument:
    """A facet family with its parameters, optional coordinates and optional invariants."""
    kind: str
    d: int
    n: int
    facets: List[List[int]]
    r: Optional[int] = None
    vertices: Optional[Realization] = None
    invariants: Optional[Dict] = field(default=None, compare=False)

    def __repr__(self):
        return f"PolytopeDocument({self.kind}, d={self.d}, n={self.n}, {len(self.facets)} facets)"

    def family(self) -> FacetFamily:
        """The facets as a validated family."""
        try:
            return family_from_facets(self.d, self.n, self.facets, kind=self.kind)
        except InvalidParameters as error:
            raise DocumentError(f"inconsistent facets: {error}")

    def lattice(self) -> FaceLattice:
        return build_lattice(self.n + 1, self.family())

    def to_dict(self) -> Dict:
        data = {
            "kind": self.kind,
            "parameters": {"r": self.r, "d": self.d, "n": self.n},
            "facets": [list(facet) for facet in self.facets],
        }
        if self.vertices is not None:
            data["vertices"] = self.vertices.to_dict()["points"]
        if self.invariants is not None:
            data["invariants"] = self.invariants
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> "PolytopeDocument":
        """
        Build a document from parsed JSON and check it.

        Facets must be sorted, in range and form a clutter; vertices, when present,
        must number n+1 and their convex hull must have exactly these facets.

        Raises:
            DocumentError: On any schema or consistency violation.
        """
        if not isinstance(data, dict):
            raise DocumentError("document must be a JSON object")
        kind = data.get("kind", "custom")
        if kind not in KINDS:
            raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")

        params = data.get("parameters")
        if not isinstance(params, dict):
            raise DocumentError("missing 'parameters' object")
        d, n, r = params.get("d"), params.get("n"), params.get("r")
        if not all(_is_integer(value) for value in (d, n)) or not (r is None or _is_integer(r)):
            raise DocumentError("parameters need integer 'd' and 'n' (and optional integer 'r')")
        if d < 0 or n < 0:
            raise DocumentError(f"parameters must be nonnegative, got d={d}, n={n}")

        raw_facets = data.get("facets")
        if not isinstance(raw_facets, list) or not raw_facets:
            raise DocumentError("'facets' must be a nonempty list of vertex lists")
        facets: List[List[int]] = []
        for facet in raw_facets:
            if not isinstance(facet, list) or not all(_is_integer(v) for v in facet):
                raise DocumentError(f"facet {facet!r} is not a list of integers")
            if facet != sorted(set(facet)):
                raise DocumentError(f"facet {facet} is not a sorted list of distinct vertices")
            if facet and (facet[0] < 0 or facet[-1] > n):
                raise DocumentError(f"facet {facet} has vertices outside 0..{n}")
            facets.append(facet)
        used = set().union(*facets)
        if d >= 1 and len(used) != n + 1:
            missing = min(set(range(max(used, default=-1) + 2)) - used)
            raise DocumentError(f"vertex {missing} lies in no facet; every vertex 0..{n} must be used")

        vertices = None
        if data.get("vertices") is not None:
            raw_points = data["vertices"]
            if not isinstance(raw_points, list) or not all(
                    isinstance(point, list) and all(_is_coordinate(x) for x in point) for point in raw_points):
                raise DocumentError('vertices must be lists of "p/q" strings or integers')
            try:
                vertices = Realization.from_dict({"d": d, "points": data["vertices"]})
            except (TypeError, ValueError, ZeroDivisionError) as error:
                raise DocumentError(f"bad vertex coordinates: {error}")
            if vertices.n != n:
                raise DocumentError(f"{len(vertices.points)} vertices given, expected {n + 1}")

        document = cls(kind, d, n, facets, r=r, vertices=vertices, invariants=data.get("invariants"))
        family = document.family()
        if vertices is not None:
            try:
                hull = hull_facets(vertices)
            except GeometryError as error:
                raise DocumentError(f"vertices do not realize the facets: {error}")
            if not hull.same_facets(family):
                stray = sorted(hull.facet_set() ^ family.facet_set())
                raise DocumentError(f"vertices do not realize the facets (first difference {format_face(stray[0])})")
        return document

    @classmethod
    def from_family(cls, family: FacetFamily, r: Optional[int] = None,
                    vertices: Optional[Realization] = None) -> "PolytopeDocument":
        kind = family.kind if family.kind in KINDS else "custom"
        return cls(kind, family.d, family.n, [list(facet) for facet in family.facets], r=r, vertices=vertices)


def generate_document(kind: str, d: int, n: int, r: Optional[int] = None) -> PolytopeDocument:
    """Run the generator for kind and wrap its family."""
    if kind == "braxtope":
        family = braxtope_facets(d, n)
    elif kind == "multiplex":
        family = multiplex_facets(d, n)
    elif kind == "cyclic":
        family = cyclic_facets(d, n)
    elif kind == "rd-braxtope":
        if r is None:
            raise InvalidParameters("rd-braxtope needs --r")
        family = rd_braxtope_facets(r, d, n)
    else:
        raise InvalidParameters(f"cannot generate kind {kind!r}")
    return PolytopeDocument.from_family(family, r=r)


def compute_invariants(document: PolytopeDocument, lattice: Optional[FaceLattice] = None) -> Dict:
    """
    f-vector, flag vector and, when one is known, the h-vector.

    Simplicial families get the h-vector of their f-vector; braxtope documents the
    closed form (1, n-d+1, ..., n-d+1, 1). Other families carry "h": null.
    """
    if lattice is None:
        lattice = document.lattice()
    f = f_vector(lattice)
    invariants = {"f": list(f.counts), "flags": flag_vector(lattice).to_dict(), "h": None}
    h = document_h_vector(document, lattice)
    if h is not None:
        invariants["h"] = list(h.entries)
    return invariants


def document_h_vector(document: PolytopeDocument, lattice: FaceLattice):
    if is_simplicial(document.family()):
        return h_from_f_simplicial(f_vector(lattice), document.d)
    if document.kind == "braxtope" and document.d >= 3:
        return braxtope_closed_forms(document.d, document.n)[1]
    return None


def incidence_rows(document: PolytopeDocument) -> List[str]:
    """0/1 facet-vertex incidence, one row per facet in colex order, columns x_0..x_n."""
    rows = []
    for facet in colex_order(document.facets):
        members = set(facet)
        rows.append(" ".join("1" if v in members else "0" for v in range(document.n + 1)))
    return rows


def load_document(path: str) -> PolytopeDocument:
    """
    Read and validate a document.

    Raises:
        DocumentError: File missing or unreadable, not UTF-8 JSON, or not a valid document.
    """
    filepath = Path(path)
    if not filepath.exists():
        raise DocumentError(f"document not found: {filepath}")
    try:
        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as error:
        raise DocumentError(f"{filepath.name} is not valid JSON: {error}")
    except UnicodeDecodeError as error:
        raise DocumentError(f"{filepath.name} is not UTF-8 text: {error.reason}")
    except OSError as error:
        raise DocumentError(f"cannot read {filepath}: {error.strerror or error}")
    document = PolytopeDocument.from_dict(data)
    logger.debug("loaded %r from %s", document, filepath)
    return document


def dump_document(document: PolytopeDocument) -> str:
    return json.dumps(document.to_dict(), indent=2)


def save_document(document: PolytopeDocument, path: str) -> None:
    filepath = Path(path)
    with open(filepath, 'w', encoding='utf-8') as f:
        f.write(dump_document(document) + "\n")
    logger.info("wrote %r to %s", document, filepath)


if __name__ == "__main__":
    document = generate_document("braxtope", 3, 4)
    print(dump_document(document))
    print("\nIncidence (colex order):")
    for row in incidence_rows(document):
        print(f"  {row}")
