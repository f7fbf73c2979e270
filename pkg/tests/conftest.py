import warnings

import pytest
from hypothesis import settings, strategies as st

from gnc.complex_core import generate_random_model, random_corpus

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def models(draw, max_ambient=6, max_facets=6):
    ambient = draw(st.integers(2, max_ambient))
    size = draw(st.integers(1, ambient))
    count = draw(st.integers(1, max_facets))
    seed = draw(st.integers(0, 10**6))
    return generate_random_model(seed, ambient, size, count)


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()


@pytest.fixture(autouse=True)
def _quiet_projective_warnings():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="dropping the empty facet")
        yield


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
