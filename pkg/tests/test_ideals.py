import itertools
import random

from hypothesis import given, strategies as st

from gnc import models
from gnc.cohomology import ProjectiveModel, sheaf_cohomology
from gnc.complex_core import faces, lc_centers, lcs
from gnc.ideals import (
    IdealSequenceChecker,
    check_ideal_sequence,
    hilbert_function,
    hilbert_function_by_enumeration,
    intersect_with_lcs,
    normalization_preimage,
)

from .conftest import models as random_models


def fs(*faces_):
    return frozenset(frozenset(f) for f in faces_)


def test_hilbert_examples():
    assert hilbert_function([{0, 1}, {1, 2}, {0, 2}], 2) == 6
    assert hilbert_function([{4}], 3) == 1
    assert hilbert_function([], 2) == 0
    assert hilbert_function([()], 0) == 1 and hilbert_function([()], 2) == 0


def test_intersect_examples():
    xyz = models.xyz()
    assert intersect_with_lcs(xyz, [{0, 1}]) == fs({0}, {1})
    assert intersect_with_lcs(xyz, [{0}]) == fs({0})
    assert intersect_with_lcs(xyz, xyz.facets) == fs({0}, {1}, {2})


def test_preimage_examples():
    xyz = models.xyz()
    pre = normalization_preimage(xyz, [{1}])
    assert pre[frozenset({0, 1})] == fs({1}) and pre[frozenset({1, 2})] == fs({1})
    assert pre[frozenset({0, 2})] == fs(())
    whole = normalization_preimage(xyz, xyz.facets)
    assert all(whole[f] == fs(f) for f in xyz.facets)
    assert all(v == fs(()) for v in normalization_preimage(xyz, [()]).values())


def test_sequence_examples():
    xyz = models.xyz()
    assert check_ideal_sequence(xyz, [{0, 1}], 4)
    assert check_ideal_sequence(xyz, [{0}, {2}], 4)


@given(random_models(), st.integers(0, 5))
def test_hilbert_matches_enumeration_and_h0(m, d):
    all_faces = faces(m)
    h = hilbert_function(all_faces, d)
    assert h == hilbert_function_by_enumeration(all_faces, d, m.ambient)
    p = ProjectiveModel(m)
    if d >= 1 and p.facets:
        assert h == sheaf_cohomology(p, d)[0]


@given(random_models(), st.integers(0, 10**6))
def test_random_unions(m, seed):
    if lcs(m) is None:
        return
    centers = sorted(lc_centers(m), key=lambda g: (len(g), sorted(g)))
    rng = random.Random(seed)
    z = rng.sample(centers, min(len(centers), rng.randint(1, 3)))
    assert check_ideal_sequence(m, z, 4)
    assert IdealSequenceChecker(m).check(z, 4)
    y = lcs(m)
    assert intersect_with_lcs(m, z) <= lc_centers(y)
    for f, pieces in normalization_preimage(m, z).items():
        assert all(g <= f for g in pieces)


@given(random_models(max_ambient=5, max_facets=4))
def test_batch_checker_matches_direct(m):
    if lcs(m) is None:
        return
    checker = IdealSequenceChecker(m)
    for z in itertools.islice(checker.unions(2), 60):
        assert checker.check(z, 4) == check_ideal_sequence(m, z, 4)
