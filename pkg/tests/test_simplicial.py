from fractions import Fraction

import pytest
from hypothesis import given

from gnc import models
from gnc.complex_core import normalization_components, validate
from gnc.simplicial import (
    ALL_TUPLES,
    STRICT_ORDERED,
    apply_simplicial_map,
    check_lc_center_surjectivity,
    check_level_adjunction,
    check_simplicial_identities,
    component_degree,
    compose,
    degeneracy_map,
    face_map,
    level_components,
    log_canonical_degree,
)

from .conftest import models as random_models


def test_xyz_pairwise_level():
    comps = level_components(models.xyz(), 1, STRICT_ORDERED)
    assert sorted(sorted(c.intersection) for c in comps) == [[0], [1], [2]]


def test_cone_triple_level():
    comps = level_components(models.cone(Fraction(1, 2)), 2, STRICT_ORDERED)
    assert [c.intersection for c in comps] == [frozenset({3})]


def test_all_tuples_count():
    m = models.cone()
    assert len(level_components(m, 2, ALL_TUPLES)) == 27


def test_unknown_mode():
    with pytest.raises(ValueError):
        level_components(models.xyz(), 1, "cyclic")


def test_level_zero_is_normalization():
    m = models.cone(Fraction(1, 2))
    comps = level_components(m, 0, STRICT_ORDERED)
    assert [(c.tuple[0], dict(c.induced_boundary)) for c in comps] == normalization_components(m)


def test_structure_map_examples():
    f, g = frozenset({0}), frozenset({1})
    assert apply_simplicial_map((f, g), face_map(1, 0)) == (g,)
    assert apply_simplicial_map((f,), degeneracy_map(0, 0)) == (f, f)
    assert compose(face_map(1, 1), degeneracy_map(0, 0)) == (0,)


def test_structure_map_errors():
    with pytest.raises(ValueError):
        apply_simplicial_map(("a", "b"), (1, 0))
    with pytest.raises(IndexError):
        apply_simplicial_map(("a",), (0, 1))


def test_identities_examples():
    assert check_simplicial_identities(models.xyz(), 2)
    assert check_simplicial_identities(validate(3, [[0, 1, 2]]), 3)


def test_log_canonical_degree_examples():
    assert log_canonical_degree(models.xyz()) == 0
    assert log_canonical_degree(models.cone(1)) == 0
    assert log_canonical_degree(models.cone(Fraction(1, 2))) == Fraction(-1, 2)


@pytest.mark.parametrize("b, ell", [(1, 0), (Fraction(1, 2), Fraction(-1, 2))])
def test_adjunction_examples(b, ell):
    m = models.cone(b)
    for n in range(3):
        assert check_level_adjunction(m, n)
        assert {component_degree(m, c) for c in level_components(m, n)} == {ell}
    assert all(check_level_adjunction(models.xyz(), n) for n in range(3))


def test_surjectivity_examples():
    assert check_lc_center_surjectivity(models.xyz(), 2)
    assert check_lc_center_surjectivity(models.cone(Fraction(1, 2)), 2)
    assert check_lc_center_surjectivity(validate(2, [[0, 1]]), 0)


@given(random_models(max_facets=5))
def test_degree_constancy_on_all_tuples(m):
    ell = log_canonical_degree(m)
    for n in range(3):
        for c in level_components(m, n, ALL_TUPLES):
            if c.intersection:
                assert component_degree(m, c) == ell


@given(random_models(max_facets=5))
def test_induced_boundary_is_conductor_plus_b(m):
    for c in level_components(m, 1, ALL_TUPLES):
        assert m.core <= c.intersection
        for i in c.intersection:
            expected = 1 if i not in m.core else m.coefficient(i)
            assert c.coefficient(i) == expected
            assert 0 <= c.coefficient(i) <= 1


@given(random_models())
def test_identities_and_surjectivity(m):
    assert check_simplicial_identities(m, 2)
    assert check_lc_center_surjectivity(m, len(m.facets) - 1)
