"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are collected and shown in the terminal summary (see conftest).
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from gnc import models
from gnc.cli import dumps, run
from gnc.cohomology import sheaf_cohomology, GenericForm, classify_hypotheses, multiplication_verdict
from gnc.complex_core import (
    ValidationError,
    cardinality_model,
    generate_random_model,
    lc_centers,
    lc_centers_B0_intersections,
    lcs,
    lcs_chain,
    nc_model,
    validate,
)
from gnc.suite import (
    check_adjunction,
    check_cohomology_oracles,
    check_ideal_sequences,
    check_injectivity,
    check_vanishing_window,
    projective,
)

LINES = []


@contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            note = f" (over the {limit:g} s limit)"
            raise AssertionError(f"criterion {number} took {elapsed:.2f} s, limit {limit} s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        LINES.append(f"ACCEPTANCE {number:2d} {status}  {title}  [{elapsed:.2f} s]{note}")
        print(LINES[-1])


def fs(*faces):
    return {frozenset(f) for f in faces}


def test_criterion_01_axiom_gate():
    with criterion(1, "axiom gate", limit=1):
        validate(3, [[0, 1], [1, 2], [0, 2]])
        validate(2, [[0, 1]], {0: 1, 1: 1})
        for n in range(2, 7):
            nc_model(n, range(n))
            nc_model(n, range(1, n), {0: Fraction(1, 2)})
            for size in range(1, n + 1):
                cardinality_model(n, range(max(0, size - 2)), size)
        for seed in range(60):
            m = generate_random_model(seed, 3 + seed % 5, 2 + seed % 2, 2 + seed % 6)
            validate(m.ambient, m.facets, m.boundary)
        with pytest.raises(ValidationError) as info:
            validate(*models.NON_GNC)
        assert info.value.axiom == "b" and info.value.witness == {"face": [0], "facet": [0, 1]}
        assert info.value.replay(models.NON_GNC[1], models.NON_GNC[2])


def test_criterion_02_lcs_chains():
    with criterion(2, "LCS chain regression", limit=1):
        xyz = lcs_chain(models.xyz())
        assert [set(m.facets) for m in xyz] == [fs({0, 1}, {1, 2}, {0, 2}), fs({0}, {1}, {2}), fs(())]
        plane = lcs_chain(models.plane_with_axes())
        assert [set(m.facets) for m in plane] == [fs({0, 1}), fs({0}, {1}), fs(())]


def test_criterion_03_lc_center_decomposition(corpus):
    with criterion(3, "lc-center decomposition over 200 models", limit=30):
        assert len(corpus) == 200 and max(m.ambient for m in corpus) <= 7
        for m in corpus:
            y = lcs(m)
            assert lc_centers(m) == set(m.facets) | (lc_centers(y) if y else set())
            if not m.boundary:
                assert lc_centers(m) == lc_centers_B0_intersections(m)


def test_criterion_04_adjunction_degrees(corpus):
    with criterion(4, "adjunction degrees and simplicial identities, n <= 3", limit=60):
        for m in corpus:
            result = check_adjunction(m, 3)
            assert result["passed"], (m, result)


def test_criterion_05_cohomology_oracles(corpus):
    with criterion(5, "fine-graded engine vs descent oracle, Euler identity", limit=300):
        for m in corpus:
            result = check_cohomology_oracles(projective(m), range(0, 6), range(-5, 6))
            assert result["passed"], (m, result)


def test_criterion_06_named_values():
    with criterion(6, "named values"):
        tri = projective(models.triangle())
        assert sheaf_cohomology(tri, 0) == (1, 1)
        for d in range(1, 5):
            assert sheaf_cohomology(tri, d)[0] == 3 * d
        cone = projective(models.cone())
        assert sheaf_cohomology(cone, 1)[0] == 4
        assert sheaf_cohomology(cone, -1)[2] == 1
        assert sheaf_cohomology(projective(models.projective_plane()), -3)[2] == 1


def test_criterion_07_vanishing(corpus):
    with criterion(7, "vanishing above the log canonical degree"):
        contractible = check_vanishing_window(projective(models.cone(0)))
        assert 0 in contractible["twists"] and contractible["passed"]
        failures = []
        for m in corpus:
            result = check_vanishing_window(projective(m))
            if not result["passed"]:
                failures.append((m, result["failures"]))
        assert not failures


def test_criterion_08_injectivity(corpus):
    with criterion(8, "injectivity whenever EV or TK holds"):
        tri = projective(models.triangle())
        form = GenericForm.random(tri, 1, 0)
        (control,) = multiplication_verdict(tri, 0, form, [1])
        assert control["source_dim"] == 1 and not control["injective"]
        assert not any(classify_hypotheses(tri, 0, form).values())
        instances = 0
        for m in corpus:
            result = check_injectivity(projective(m), seed=0)
            assert result["passed"], (m, result["failures"], result["disagreements"])
            for inst in result["instances"]:
                instances += 1
                for v in inst["verdicts"]:
                    assert v["tag"] == ("vacuous" if v["source_dim"] == 0 else "substantive")
        assert instances > 0


def test_criterion_09_ideal_sequence(corpus):
    with criterion(9, "ideal sequence for unions of <= 3 lc centers"):
        checked = 0
        for m in corpus:
            result = check_ideal_sequences(m, 3, 4)
            assert result["passed"], (m, result["failures"][:5])
            checked += result["unions"]
        assert checked > 0


def test_criterion_10_report_determinism(tmp_path):
    with criterion(10, "report determinism"):
        outputs = []
        path = tmp_path / "model.json"
        m = generate_random_model(1, 4, 3, 3)
        path.write_text(json.dumps({"ambient": m.ambient, "facets": [[i + 1 for i in sorted(f)] for f in m.facets],
                                    "boundary": {str(i + 1): str(b) for i, b in m.boundary.items()}}))
        for _ in range(2):
            proc = subprocess.run([sys.executable, "-m", "gnc", "report", str(path)], capture_output=True,
                                 env={"GNC_SEED": "0", "PATH": ""}, check=False)
            assert proc.returncode == 0, proc.stdout
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1]
        again = [run(["report", str(path)]) for _ in range(2)]
        assert again[0][0] == 0 and dumps(again[0][1]) == dumps(again[1][1])
        assert dumps(again[0][1]).encode() + b"\n" == outputs[0]
