"""
Exact rational geometry for braxtopes.

Realizes Q^{d,n} in R^d by the inductive beneath-beyond step (each new vertex is
placed in the 3-flat L = <x_0, x_{n-d}, x_{n-d+1}, x_{n-1}>, beyond E'_{n-1} and
beneath the remaining facets), and checks every realization against a brute-force
convex hull oracle. All arithmetic uses fractions.Fraction; linear algebra goes
through sympy so nothing is ever rounded.
"""

import logging
import os
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from dotenv import load_dotenv

from facet_families import (
    FacetFamily,
    InvalidParameters,
    PolytopeError,
    braxtope_facets,
    family_from_facets,
    format_face,
)

# Load environment
env_path = Path(__file__).parent / ".env"
if env_path.exists():
    load_dotenv(env_path)

logger = logging.getLogger(__name__)

RationalPoint = Tuple[Fraction, ...]
Plane = Tuple[Fraction, ...]  # (a_1, ..., a_d, b) for a.x + b = 0

MAX_HALVINGS = 48


class GeometryError(PolytopeError):
    pass


class NotFullDimensional(GeometryError):
    pass


class DegenerateFacet(GeometryError):
    pass


class SearchFailed(GeometryError):
    pass


class Position(Enum):
    """Position of a point relative to a facet hyperplane, seen from the polytope's interior."""
    BENEATH = "beneath"
    ON = "on"
    BEYOND = "beyond"


def to_fraction(value: Union[int, str, Fraction, sympy.Rational]) -> Fraction:
    """Exact conversion from ints, "p/q" strings, Fractions and sympy rationals."""
    if isinstance(value, (float, bool, sympy.Float)):
        raise TypeError(f"inexact coordinate {value!r}; use an integer or a \"p/q\" string")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _matrix(rows: Iterable[Iterable[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Realization:
    """Coordinates of a labelled vertex array; points[i] is x_i."""
    d: int
    points: Tuple[RationalPoint, ...]

    def __post_init__(self):
        for point in self.points:
            if len(point) != self.d:
                raise InvalidParameters(f"point {point} is not in R^{self.d}")
        if len(set(self.points)) != len(self.points):
            raise InvalidParameters("realization repeats a point")

    @property
    def n(self) -> int:
        return len(self.points) - 1

    def __getitem__(self, i: int) -> RationalPoint:
        return self.points[i]

    def subset(self, indices: Iterable[int]) -> List[RationalPoint]:
        return [self.points[i] for i in indices]

    def extend(self, point: Sequence[Fraction]) -> "Realization":
        return Realization(self.d, self.points + (tuple(point),))

    def drop_last(self) -> "Realization":
        return Realization(self.d, self.points[:-1])

    def to_dict(self) -> Dict:
        return {"d": self.d, "points": [[format_rational(x) for x in point] for point in self.points]}

    @classmethod
    def from_dict(cls, data: Dict) -> "Realization":
        points = tuple(tuple(to_fraction(x) for x in point) for point in data["points"])
        return cls(int(data["d"]), points)


def orientation(points: Sequence[Sequence[Fraction]]) -> int:
    """Sign of det [1 | p_i] over d+1 points of R^d; zero iff they are affinely dependent."""
    d = len(points[0])
    if len(points) != d + 1:
        raise InvalidParameters(f"orientation needs {d + 1} points in R^{d}, got {len(points)}")
    det = _matrix([(Fraction(1),) + tuple(to_fraction(x) for x in p) for p in points]).det()
    return int(sympy.sign(det))


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    origin = [to_fraction(x) for x in points[0]]
    rows = [[to_fraction(x) - o for x, o in zip(p, origin)] for p in points[1:]]
    if not rows:
        return 0
    return _matrix(rows).rank()


def hyperplane(points: Sequence[Sequence[Fraction]]) -> Optional[Plane]:
    """The unique hyperplane through the points, or None when they do not span one."""
    rows = [tuple(to_fraction(x) for x in p) + (Fraction(1),) for p in points]
    basis = _matrix(rows).nullspace()
    if len(basis) != 1:
        return None
    return tuple(to_fraction(x) for x in basis[0])


def evaluate(plane: Plane, point: Sequence[Fraction]) -> Fraction:
    return sum((a * x for a, x in zip(plane, point)), plane[-1])


def centroid(points: Sequence[Sequence[Fraction]]) -> RationalPoint:
    count = len(points)
    return tuple(sum(coords, Fraction(0)) / count for coords in zip(*points))


def simplex_volume(points: Sequence[Sequence[Fraction]]) -> Fraction:
    """Euclidean volume |det(p_i - p_0)| / d! of a d-simplex."""
    d = len(points[0])
    origin = points[0]
    det = _matrix([[x - o for x, o in zip(p, origin)] for p in points[1:]]).det()
    return abs(to_fraction(det)) / factorial(d)


def hull_facets(real: Realization) -> FacetFamily:
    """
    Facets of the convex hull by brute force over all d-subsets of the points.

    A d-subset spanning a hyperplane with every point weakly on one side yields
    the facet of points on that hyperplane. Subsets inside a facet already found
    are skipped. Cost is O(C(n+1, d) * n) exact evaluations, meant for desk-scale n.
    """
    d, points = real.d, real.points
    if affine_rank(points) < d:
        raise NotFullDimensional(f"{len(points)} points do not span R^{d}")

    found: List[frozenset] = []
    for subset in combinations(range(len(points)), d):
        members = set(subset)
        if any(members <= facet for facet in found):
            continue
        plane = hyperplane([points[i] for i in subset])
        if plane is None:
            continue
        values = [evaluate(plane, p) for p in points]
        if all(v >= 0 for v in values) or all(v <= 0 for v in values):
            found.append(frozenset(i for i, v in enumerate(values) if v == 0))
    return family_from_facets(d, real.n, found, kind="hull")


def _oriented_plane(real: Realization, facet: Sequence[int], interior: RationalPoint) -> Plane:
    """Hyperplane of a facet, signed so that the interior point evaluates positive."""
    plane = hyperplane(real.subset(facet))
    if plane is None:
        raise DegenerateFacet(f"{format_face(facet)} does not span a hyperplane")
    side = evaluate(plane, interior)
    if side == 0:
        raise DegenerateFacet(f"the interior point lies on the hyperplane of {format_face(facet)}")
    return plane if side > 0 else tuple(-a for a in plane)


def _position(value: Fraction) -> Position:
    if value == 0:
        return Position.ON
    return Position.BENEATH if value > 0 else Position.BEYOND


def classify(point: Sequence[Fraction], facet: Sequence[int], real: Realization) -> Position:
    """
    Beneath/on/beyond position of point relative to a facet of real.

    The beneath side is the side of the vertex centroid.

    Raises:
        DegenerateFacet: The facet does not span a hyperplane.
    """
    plane = _oriented_plane(real, facet, centroid(real.points))
    return _position(evaluate(plane, tuple(to_fraction(x) for x in point)))


def standard_simplex(d: int) -> Realization:
    """Origin followed by the unit basis vectors: Q^{d,d} in vertex-array order."""
    zero, one = Fraction(0), Fraction(1)
    points = [tuple(zero for _ in range(d))]
    points += [tuple(one if k == i else zero for k in range(d)) for i in range(d)]
    return Realization(d, tuple(points))


def default_seed() -> Optional[int]:
    """BRAX_SEED from the environment, if set."""
    raw = os.getenv("BRAX_SEED")
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidParameters(f"BRAX_SEED must be an integer, got {raw!r}")


def _start_weights(seed: Optional[int]) -> Tuple[Fraction, Fraction, Fraction]:
    if seed is None:
        return (Fraction(1, 3),) * 3
    rng = random.Random(seed)
    raw = [Fraction(rng.randint(1, 9)) for _ in range(3)]
    total = sum(raw)
    return tuple(w / total for w in raw)


def realize_step(prev: Realization, seed: Optional[int] = None) -> Realization:
    """
    Extend a verified realization of Q^{d,n-1} by a vertex x_n to Q^{d,n}.

    The search starts at a point of the triangle [x_0, x_{n-d+1}, x_{n-1}] (the
    supporting plane of L in the hyperplane of E'_{n-1}) and moves away from
    x_{n-d}, which stays inside L and crosses E'_{n-1}. The step length is halved
    until the point is beyond E'_{n-1}, on the facets E'_j (n-d+2 <= j <= n-2)
    whose intersection is L, beneath the rest, and the hull oracle confirms
    the facets of Q^{d,n}.

    Raises:
        SearchFailed: No step length in the bounded search works.
    """
    d, n = prev.d, prev.n + 1
    if d < 3 or n - 1 < d:
        raise InvalidParameters(f"realize_step needs Q^{{d,n-1}} with n-1 >= d >= 3, got d={d}, n-1={n - 1}")

    pts = prev.points
    flat = [0, n - d, n - d + 1, n - 1]
    if affine_rank(prev.subset(flat)) != 3:
        raise SearchFailed(f"<x_0, x_{n - d}, x_{n - d + 1}, x_{n - 1}> is not a 3-flat")

    before = braxtope_facets(d, n - 1)
    target = braxtope_facets(d, n)
    crossed = before.facet_labelled(f"E_{n - 1}")
    containing_flat = {before.facet_labelled(f"E_{j}") for j in range(n - d + 2, n - 1)}

    interior = centroid(pts)
    planes = {facet: _oriented_plane(prev, facet, interior) for facet in before}
    wanted = {}
    for facet in before:
        if facet == crossed:
            wanted[facet] = Position.BEYOND
        elif facet in containing_flat:
            wanted[facet] = Position.ON
        else:
            wanted[facet] = Position.BENEATH

    weights = _start_weights(seed)
    anchor = [pts[0], pts[n - d + 1], pts[n - 1]]
    base = tuple(sum(w * p[k] for w, p in zip(weights, anchor)) for k in range(d))
    direction = tuple(b - x for b, x in zip(base, pts[n - d]))

    step = Fraction(1)
    for _ in range(MAX_HALVINGS):
        candidate = tuple(b + step * v for b, v in zip(base, direction))
        if all(_position(evaluate(planes[f], candidate)) is want for f, want in wanted.items()):
            extended = prev.extend(candidate)
            if hull_facets(extended).same_facets(target):
                logger.debug("placed x_%d at step %s", n, step)
                return extended
            logger.debug("x_%d at step %s passes beneath-beyond but not the hull oracle", n, step)
        step /= 2
    raise SearchFailed(f"no position for x_{n} found in {MAX_HALVINGS} halvings")


def _pyramid_realization(d: int, n: int, seed: Optional[int]) -> Realization:
    """
    Q^{d,n} for d+1 <= n <= 2d-3 as a (2d-2-n)-fold pyramid over Q^{k,2k-2}, k = n-d+2.

    The base keeps its first k coordinates and supplies x_0..x_{n-d+1}, x_d..x_n;
    the apices x_{n-d+2}..x_{d-1} are lifted to the unit vectors e_k, ..., e_{d-1}.
    """
    k = n - d + 2
    base = realize_braxtope(k, 2 * k - 2, seed)
    base_labels = list(range(0, n - d + 2)) + list(range(d, n + 1))
    apices = list(range(n - d + 2, d))

    zero, one = Fraction(0), Fraction(1)
    points: Dict[int, RationalPoint] = {}
    for label, point in zip(base_labels, base.points):
        points[label] = tuple(point) + (zero,) * (d - k)
    for offset, label in enumerate(apices):
        points[label] = tuple(one if c == k + offset else zero for c in range(d))

    real = Realization(d, tuple(points[label] for label in range(n + 1)))
    if not hull_facets(real).same_facets(braxtope_facets(d, n)):
        raise SearchFailed(f"pyramid construction of Q^{{{d},{n}}} failed the hull oracle")
    return real


def realize_braxtope(d: int, n: int, seed: Optional[int] = None) -> Realization:
    """
    Exact realization of Q^{d,n}: the standard simplex, then one realize_step per vertex.

    Args:
        d: Dimension (>= 3).
        n: Largest vertex index (>= d).
        seed: Optional perturbation of the search start; defaults to BRAX_SEED.

    Returns:
        Realization whose hull facets are braxtope_facets(d, n) under identity labels.
    """
    if d < 3 or n < d:
        raise InvalidParameters(f"realize_braxtope needs n >= d >= 3, got d={d}, n={n}")
    if seed is None:
        seed = default_seed()

    real = standard_simplex(d)
    for m in range(d + 1, n + 1):
        try:
            real = realize_step(real, seed)
        except SearchFailed:
            if m > 2 * d - 3:
                raise
            logger.warning("inductive step to Q^{%d,%d} failed; using the pyramid construction", d, m)
            real = _pyramid_realization(d, m, seed)
    logger.info("realized Q^{%d,%d} with %d exact points", d, n, len(real.points))
    return real


if __name__ == "__main__":
    real = realize_braxtope(3, 7)
    for i, point in enumerate(real.points):
        print(f"  x_{i} = ({', '.join(format_rational(x) for x in point)})")
    hull = hull_facets(real)
    print(f"✓ hull oracle: {len(hull)} facets, matches Q^3,7: {hull.same_facets(braxtope_facets(3, 7))}")
