from math import comb

import pytest
from hypothesis import given, strategies as st

from gnc import models
from gnc.cohomology import ProjectiveModel, sheaf_cohomology
from gnc.complex_core import validate
from gnc.descent import UnsupportedTwist, descent_cohomology, descent_complex
from gnc.ratlinalg import cohomology_dim

from .conftest import models as random_models

TRI = ProjectiveModel(models.triangle())
CONE = ProjectiveModel(models.cone())


def test_triangle_shapes():
    assert [len(s) for s in descent_complex(TRI, 0).spaces] == [3, 3]
    assert [len(s) for s in descent_complex(TRI, 1).spaces] == [6, 3]


def test_triangle_differential_has_rank_two():
    c = descent_complex(TRI, 0)
    assert c.rank(0) == 2 and cohomology_dim(c, 1) == 1


def test_single_facet_has_one_space():
    p = ProjectiveModel(validate(3, [[0, 1, 2]]))
    for d in range(4):
        assert len(descent_complex(p, d).spaces) == 1


def test_examples():
    assert descent_cohomology(TRI, 0) == (1, 1)
    assert descent_cohomology(TRI, 1) == (3, 0)
    assert descent_cohomology(CONE, 1) == (4, 0, 0)


def test_negative_twist_unsupported():
    with pytest.raises(UnsupportedTwist):
        descent_complex(TRI, -1)


@given(random_models(), st.integers(0, 4))
def test_agrees_with_fine_graded_engine(m, d):
    p = ProjectiveModel(m)
    c = descent_complex(p, d)
    assert c.check()
    assert descent_cohomology(p, d) == sheaf_cohomology(p, d)
    if p.facets:
        assert len(c.spaces[0]) == sum(comb(d + len(f) - 1, len(f) - 1) for f in p.facets)
