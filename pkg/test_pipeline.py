#!/usr/bin/env python3
"""
End-to-end pipeline: generate a braxtope, store it as a document, build its face
lattice, compute invariants, realize it exactly and run every verification suite.

Runs under pytest, or as a script for a printed walkthrough.
"""

import pytest

from check_reports import Verdict, suite_passed
from face_lattice import braxtope_closed_forms, f_vector
from polytope_document import PolytopeDocument, compute_invariants, generate_document, load_document, save_document
from rational_geometry import hull_facets, realize_braxtope
from theorem_checks import family_check, run_suite


def run_pipeline(d: int, n: int, workdir):
    # Step 1: Generate and store
    document = generate_document("braxtope", d, n)
    path = workdir / f"q{d}{n}.json"
    save_document(document, str(path))

    # Step 2: Reload and build the lattice
    loaded = load_document(str(path))
    lattice = loaded.lattice()

    # Step 3: Invariants
    invariants = compute_invariants(loaded, lattice)

    # Step 4: Exact coordinates, stored beside the facets
    real = realize_braxtope(d, n)
    realized = PolytopeDocument.from_family(loaded.family(), vertices=real)
    realized_path = workdir / f"q{d}{n}-realized.json"
    save_document(realized, str(realized_path))
    realized = load_document(str(realized_path))

    # Step 5: Every suite
    reports = [family_check(d, n, realized.facets)]
    reports += run_suite(d, n, "all", lattice=lattice, realization=realized.vertices)
    return loaded, lattice, invariants, realized, reports


@pytest.mark.parametrize("d,n", [(3, 5), (4, 6), (5, 7)])
def test_pipeline(d, n, tmp_path):
    document, lattice, invariants, realized, reports = run_pipeline(d, n, tmp_path)

    closed_f, closed_h = braxtope_closed_forms(d, n)
    assert f_vector(lattice) == closed_f
    assert invariants["f"] == list(closed_f.counts)
    assert invariants["h"] == list(closed_h.entries)
    assert hull_facets(realized.vertices).same_facets(document.family())

    assert suite_passed(reports), [r.summary() for r in reports if not r.passed]
    verdicts = {r.check_name: r.verdict for r in reports}
    assert verdicts["flag_conjecture"] is Verdict.REPORT_ONLY
    assert verdicts["realization"] is Verdict.PASS


def main():
    import tempfile
    from pathlib import Path

    print("\n" + "=" * 70)
    print("  BRAXTOPE TOOLKIT - TEST PIPELINE")
    print("=" * 70 + "\n")

    with tempfile.TemporaryDirectory() as tmp:
        document, lattice, invariants, realized, reports = run_pipeline(4, 6, Path(tmp))

    print(f"STEP 1-2: {document!r}, {lattice!r}")
    print(f"STEP 3:   f = {invariants['f']}, h = {invariants['h']}")
    print(f"STEP 4:   {len(realized.vertices.points)} exact points")
    print("STEP 5:")
    for report in reports:
        print(("  ✓ " if report.passed else "  ❌ ") + report.summary())


if __name__ == "__main__":
    main()
