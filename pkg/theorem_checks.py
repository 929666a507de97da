"""
Machine checks of the structure theorems for braxtopes.

Every check returns a CheckReport. A theorem that fails on the given input is a
FAIL verdict with witnesses, never an exception; parameters outside a check's
range raise InvalidParameters. Conjectural statements are reported REPORT_ONLY.
"""

import logging
from typing import Iterable, List, Optional, Sequence

from check_reports import CheckReport, Verdict, suite_passed, verdict_report
from face_lattice import (
    FaceLattice,
    LatticeError,
    binomial,
    braxtope_closed_forms,
    build_lattice,
    f_vector,
    flag_vector,
    h_from_f_simplicial,
    reference_comparand,
    vertex_figure,
)
from facet_families import (
    InvalidParameters,
    _clamp,
    braxtope_facets,
    format_face,
    multiplex_facets,
    rd_braxtope_facets,
    relabel,
    shift_facets,
    vertex_set,
)
from rational_geometry import (
    GeometryError,
    Realization,
    affine_rank,
    hull_facets,
    realize_braxtope,
)
from shelling import (
    antistar_check,
    colex_shelling_props,
    complex_f_vector,
    pulling_triangulation,
    shallow_check,
    shelling_check,
    shelling_h,
    volume_cover_check,
)

logger = logging.getLogger(__name__)

SUITES = ("prop1", "braxial", "shelling", "geometry", "conjectures", "all")


def _require_braxtope(d: int, n: int):
    if d < 3 or n < d:
        raise InvalidParameters(f"braxtope checks need n >= d >= 3, got d={d}, n={n}")


def _facet_differences(found: Iterable[Sequence[int]], expected: Iterable[Sequence[int]]) -> List[str]:
    found, expected = set(map(vertex_set, found)), set(map(vertex_set, expected))
    witnesses = [f"missing facet {format_face(f)}" for f in sorted(expected - found)]
    witnesses += [f"unexpected facet {format_face(f)}" for f in sorted(found - expected)]
    return witnesses


def braxtope_lattice(d: int, n: int) -> FaceLattice:
    return build_lattice(n + 1, braxtope_facets(d, n))


def family_check(d: int, n: int, family: Iterable[Sequence[int]]) -> CheckReport:
    """A supplied facet family equals braxtope_facets(d, n)."""
    _require_braxtope(d, n)
    return verdict_report("family", {"d": d, "n": n},
                          _facet_differences(family, braxtope_facets(d, n)))


def prop1_check(d: int, n: int, lattice: FaceLattice, real: Optional[Realization] = None) -> CheckReport:
    """
    Edges, 2-faces and 3-faces of Q^{d,n}, and affine independence of x_t, ..., x_{t+d}.

    The 3-face statement is checked for d >= 4; for d = 3 the listed five vertices
    are never a proper face.
    """
    _require_braxtope(d, n)
    failures: List[str] = []
    notes: List[str] = []

    def expect_edge(u: int, v: int, wanted: bool, part: int):
        if lattice.is_edge(u, v) != wanted:
            state = "missing" if wanted else "unexpected"
            failures.append(f"({part}) {state} edge {format_face(vertex_set((u, v)))}")

    for u in range(1, n + 1):
        expect_edge(0, u, True, 1)
    for u in range(n + 1):
        if u != 1:
            expect_edge(1, u, u == 0 or 2 <= u <= d, 2)
    for u in range(n):
        expect_edge(u, n, u == 0 or n - d + 1 <= u <= n - 1, 3)
    for t in range(2, n):
        for u in range(n + 1):
            if u != t:
                expect_edge(t, u, u == 0 or t - d + 1 <= u <= t + d - 1, 4)

    for k in range(2, d - 1):
        for t in range(0, n - k + 1):
            face = vertex_set((0, t + 1, t + k))
            if lattice.dims.get(face) != 2:
                failures.append(f"(5) {format_face(face)} is not a 2-face")

    if d >= 4:
        for t in range(1, n - d + 1):
            face = vertex_set((0, t, t + 1, t + d - 1, t + d))
            if lattice.dims.get(face) != 3:
                failures.append(f"(6) {format_face(face)} is not a 3-face")
    else:
        notes.append("(6) applies from d = 4")

    if real is None:
        notes.append("(7) skipped: no realization supplied")
    else:
        for t in range(n - d + 1):
            rank = affine_rank(real.subset(range(t, t + d + 1)))
            if rank != d:
                failures.append(f"(7) x_{t}..x_{t + d} span a {rank}-flat")
    return verdict_report("prop1", {"d": d, "n": n}, failures, notes)


def deletion_check(d: int, n: int, real: Realization) -> CheckReport:
    """Dropping x_n from a realization of Q^{d,n} leaves Q^{d,n-1} under identity labels."""
    _require_braxtope(d, n)
    if n < d + 1:
        raise InvalidParameters(f"deletion needs n >= d+1, got d={d}, n={n}")
    if real.n != n or real.d != d:
        raise InvalidParameters(f"realization has d={real.d}, n={real.n}, expected d={d}, n={n}")
    smaller = hull_facets(real.drop_last())
    failures = _facet_differences(smaller, braxtope_facets(d, n - 1))
    return verdict_report("deletion", {"d": d, "n": n}, failures,
                          [f"hull of x_0..x_{n - 1} has {len(smaller)} facets"])


def braxial_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    """Every facet, relabelled in its induced order, is a (d-1)-braxtope."""
    _require_braxtope(d, n)
    failures: List[str] = []
    for facet in lattice.facets():
        ridges = [relabel(face, facet) for face in lattice.faces_below(facet)
                  if lattice.dims[face] == d - 2]
        try:
            expected = braxtope_facets(d - 1, len(facet) - 1)
        except InvalidParameters:
            failures.append(f"facet {format_face(facet)} has no {d - 1}-braxtope with {len(facet)} vertices")
            continue
        if set(ridges) != expected.facet_set():
            failures.append(f"facet {format_face(facet)} is not a {d - 1}-braxtope in its induced order")
    return verdict_report("braxial", {"d": d, "n": n}, failures,
                          [f"{len(lattice.facets())} facets compared"])


def vertex_figure_facets(d: int, n: int) -> frozenset:
    """Facets of Q^{d,n}/x_0 on labels 1..n, clamped into 1..n."""
    faces = set()
    for i in range(1, n + 1):
        members = [_clamp(t, n) for t in range(i - d + 2, i)]
        members += [_clamp(t, n) for t in range(i + 1, i + d - 1)]
        faces.add(vertex_set(max(1, v) for v in members))
    return frozenset(faces)


def vertex_figure_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    """Q^{d,n}/x_0 is the (d-1)-multiplex on x_1 < ... < x_n."""
    _require_braxtope(d, n)
    failures: List[str] = []
    try:
        figure = vertex_figure(lattice, 0)
    except LatticeError as error:
        return verdict_report("vertex_figure", {"d": d, "n": n}, [f"vertex figure at x_0: {error}"])
    formula = vertex_figure_facets(d, n)
    failures += _facet_differences(figure.facets(), formula)
    multiplex = shift_facets(multiplex_facets(d - 1, n - 1), 1)
    if formula != multiplex:
        failures += [f"formula vs multiplex: {w}" for w in _facet_differences(formula, multiplex)]
    return verdict_report("vertex_figure", {"d": d, "n": n}, failures)


def pyramid_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    """
    For d+1 <= n <= 2d-3, Q^{d,n} is a (2d-2-n)-fold pyramid with apices
    x_{n-d+2}, ..., x_{d-1} over the (n-d+2)-braxtope on x_0..x_{n-d+1}, x_d..x_n.
    """
    if d < 3 or not d + 1 <= n <= 2 * d - 3:
        raise InvalidParameters(f"pyramid check needs d+1 <= n <= 2d-3, got d={d}, n={n}")
    failures: List[str] = []
    apices = list(range(n - d + 2, d))
    facets = lattice.facets()
    for apex in apices:
        missing = [facet for facet in facets if apex not in facet]
        if len(missing) != 1:
            failures.append(f"apex x_{apex} misses {len(missing)} facets")

    base_labels = list(range(0, n - d + 2)) + list(range(d, n + 1))
    k = n - d + 2
    stripped = [vertex_set(v for v in facet if v not in apices)
                for facet in facets if all(a in facet for a in apices)]
    base = [relabel(face, base_labels) for face in stripped]
    expected = braxtope_facets(k, 2 * k - 2)
    failures += [f"base: {w}" for w in _facet_differences(base, expected)]
    notes = [f"apices {', '.join(f'x_{a}' for a in apices)}; base Q^{{{k},{2 * k - 2}}} "
             f"on {format_face(base_labels)}"]
    return verdict_report("pyramid", {"d": d, "n": n}, failures, notes)


def fvector_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    """Lattice f-vector against the closed form, plus the Euler relation."""
    _require_braxtope(d, n)
    counted = f_vector(lattice)
    closed, _ = braxtope_closed_forms(d, n)
    failures = [f"f_{j} = {counted.f(j)}, closed form {closed.f(j)}"
                for j in range(-1, d + 1) if counted.f(j) != closed.f(j)]
    if not counted.euler_holds():
        failures.append(f"Euler relation fails for {counted}")
    return verdict_report("fvector", {"d": d, "n": n}, failures, [str(counted)])


def elementary_quantity(d: int, lattice: FaceLattice) -> int:
    """f_{0,2} - 3 f_2 + f_1 - d f_0 + C(d+1, 2)."""
    f = f_vector(lattice)
    flags = flag_vector(lattice)
    return flags[(0, 2)] - 3 * f.f(2) + f.f(1) - d * f.f(0) + binomial(d + 1, 2)


def elementary_check(d: int, lattice: FaceLattice) -> CheckReport:
    """The elementary identity holds and every 2-face is a triangle."""
    if d < 3 or lattice.d != d:
        raise InvalidParameters(f"elementary check needs a lattice of dimension d >= 3, got d={d}, lattice d={lattice.d}")
    failures: List[str] = []
    quantity = elementary_quantity(d, lattice)
    if quantity != 0:
        failures.append(f"elementary quantity is {quantity}")
    for face in lattice.faces_of_dim(2):
        if len(face) != 3:
            failures.append(f"2-face {format_face(face)} has {len(face)} vertices")
            break
    return verdict_report("elementary", {"d": d}, failures)


def flag_conjecture_check(d: int, n: int) -> CheckReport:
    """
    Flag vectors of Q^{d,n} against the (d-3)-fold pyramid over the bipyramid over
    an (n-d+2)-gon. Equal f-vectors are required; flag differences are findings.
    """
    if d < 3 or n <= d:
        raise InvalidParameters(f"flag comparison needs n > d >= 3, got d={d}, n={n}")
    params = {"d": d, "n": n}
    ours, theirs = braxtope_lattice(d, n), reference_comparand(d, n)
    f_ours, f_theirs = f_vector(ours), f_vector(theirs)
    if f_ours != f_theirs:
        return verdict_report("flag_conjecture", params, [f"f-vectors differ: {f_ours} vs {f_theirs}"])

    flags_ours, flags_theirs = flag_vector(ours), flag_vector(theirs)
    differences = flags_ours.differences(flags_theirs)
    witnesses = [f"f_{{{','.join(map(str, s))}}}: {flags_ours.entries.get(s)} vs {flags_theirs.entries.get(s)}"
                 for s in differences]
    notes = ["f-vectors equal",
             f"{len(flags_ours.entries) - len(differences)} of {len(flags_ours.entries)} flag numbers agree"]
    return CheckReport("flag_conjecture", params, Verdict.REPORT_ONLY, witnesses, notes)


def h_consistency_check(d: int, n: int) -> CheckReport:
    """
    The shelling of the pulling triangulation gives h = (1, n-d, 0, ..., 0), matching
    the h-vector of its f-vector, and the closed form of h(Q) is (1, n-d+1, ..., n-d+1, 1).
    """
    _require_braxtope(d, n)
    failures: List[str] = []
    delta = pulling_triangulation(d, n)
    cert = shelling_check(delta, strict=False)
    if not cert.ok:
        step = cert.valid.index(False) + 1
        failures.append(f"pulling triangulation is not shelled at step {step}")
        return verdict_report("h_consistency", {"d": d, "n": n}, failures)

    h_delta = shelling_h(cert, d + 1)
    expected = (1, n - d) + (0,) * d
    if h_delta.entries != expected:
        failures.append(f"h(Delta) = {h_delta.entries}, expected {expected}")
    from_f = h_from_f_simplicial(complex_f_vector(delta), d + 1)
    if from_f != h_delta:
        failures.append(f"h from f(Delta) = {from_f.entries} disagrees with the shelling")

    _, h_q = braxtope_closed_forms(d, n)
    pattern = (1,) + (n - d + 1,) * (d - 1) + (1,)
    if h_q.entries != pattern:
        failures.append(f"h(Q) = {h_q.entries}, expected {pattern}")
    notes = [f"h(Delta) = {h_delta.entries}", f"h(Q) = {h_q.entries}",
             "h(Q) follows from h(Delta) by the shallow-triangulation transfer, which is cited, not re-derived"]
    return verdict_report("h_consistency", {"d": d, "n": n}, failures, notes)


def shallow_triangulation_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    result = shallow_check(pulling_triangulation(d, n), lattice)
    failures = []
    if not result.ok:
        failures.append(f"{format_face(result.witness)} lies only in the {result.carrier_dim}-face "
                        f"{format_face(result.carrier)}")
    return verdict_report("shallow", {"d": d, "n": n}, failures)


def colex_shelling_check(d: int, n: int, lattice: FaceLattice) -> CheckReport:
    family = braxtope_facets(d, n)
    steps = colex_shelling_props(lattice, family)
    failures = [f"step {k} {format_face(step.facet)} fails ({step.failed_property()})"
                for k, step in enumerate(steps, start=1) if not step.ok]
    return verdict_report("colex_shelling", {"d": d, "n": n}, failures,
                          [f"{len(steps)} steps"])


def rd_reduction_check(d: int, n: int) -> CheckReport:
    """(0,d)-braxtopes are d-multiplexes, (1,d)-braxtopes are d-braxtopes; r = 2 is reported."""
    _require_braxtope(d, n)
    failures: List[str] = []
    failures += [f"r=0: {w}" for w in _facet_differences(rd_braxtope_facets(0, d, n), multiplex_facets(d, n))]
    failures += [f"r=1: {w}" for w in _facet_differences(rd_braxtope_facets(1, d, n), braxtope_facets(d, n))]

    notes: List[str] = []
    if d >= 4:
        family = rd_braxtope_facets(2, d, n)
        try:
            lattice = build_lattice(n + 1, family)
            notes.append(f"r=2: {len(family)} facets, graded lattice with {f_vector(lattice)}")
        except LatticeError as error:
            notes.append(f"r=2: {len(family)} facets, no face lattice ({error})")
    return verdict_report("rd_reduction", {"d": d, "n": n}, failures, notes)


def realization_check(d: int, n: int, real: Realization) -> CheckReport:
    """The hull oracle reproduces braxtope_facets(d, n) from the coordinates."""
    _require_braxtope(d, n)
    hull = hull_facets(real)
    failures = _facet_differences(hull, braxtope_facets(d, n))
    return verdict_report("realization", {"d": d, "n": n}, failures,
                          [f"{len(hull)} hull facets from {len(real.points)} points"])


def _skipped(name: str, d: int, n: int, why: str) -> CheckReport:
    return CheckReport(name, {"d": d, "n": n}, Verdict.SKIPPED, notes=[why])


def run_suite(d: int, n: int, suite: str = "all", lattice: Optional[FaceLattice] = None,
              realization: Optional[Realization] = None) -> List[CheckReport]:
    """
    Run the checks of a named suite on Q^{d,n}.

    Args:
        d: Dimension (>= 3).
        n: Largest vertex index (>= d).
        suite: One of prop1, braxial, shelling, geometry, conjectures, all.
        lattice: Face lattice of Q^{d,n}; built when omitted.
        realization: Coordinates for the geometry suite; realized when omitted.

    Returns:
        Reports in a fixed order.
    """
    _require_braxtope(d, n)
    if suite not in SUITES:
        raise InvalidParameters(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if lattice is None:
        lattice = braxtope_lattice(d, n)
    wanted = set(SUITES[:-1]) if suite == "all" else {suite}
    reports: List[CheckReport] = []

    if "prop1" in wanted:
        reports.append(prop1_check(d, n, lattice))
    if "braxial" in wanted:
        reports.append(braxial_check(d, n, lattice))
        reports.append(vertex_figure_check(d, n, lattice))
        if d + 1 <= n <= 2 * d - 3:
            reports.append(pyramid_check(d, n, lattice))
        else:
            reports.append(_skipped("pyramid", d, n, "applies for d+1 <= n <= 2d-3"))
        reports.append(fvector_check(d, n, lattice))
        reports.append(elementary_check(d, lattice))
    if "shelling" in wanted:
        reports.append(h_consistency_check(d, n))
        reports.append(shallow_triangulation_check(d, n, lattice))
        reports.append(colex_shelling_check(d, n, lattice))
        reports.append(antistar_check(d, n, lattice))
    if "geometry" in wanted:
        try:
            real = realization if realization is not None else realize_braxtope(d, n)
        except GeometryError as error:
            reports.append(verdict_report("realization", {"d": d, "n": n}, [str(error)]))
        else:
            reports.append(realization_check(d, n, real))
            if n >= d + 1:
                reports.append(deletion_check(d, n, real))
            else:
                reports.append(_skipped("deletion", d, n, "needs n >= d+1"))
            reports.append(prop1_check(d, n, lattice, real))
            reports.append(volume_cover_check(d, n, real))
    if "conjectures" in wanted:
        if n > d:
            reports.append(flag_conjecture_check(d, n))
        else:
            reports.append(_skipped("flag_conjecture", d, n, "needs n > d"))
        reports.append(rd_reduction_check(d, n))

    logger.info("suite %s on Q^{%d,%d}: %d reports, passed=%s", suite, d, n, len(reports), suite_passed(reports))
    return reports


if __name__ == "__main__":
    for report in run_suite(4, 6):
        print(("✓ " if report.passed else "❌ ") + report.summary())
