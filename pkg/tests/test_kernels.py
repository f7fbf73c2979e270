import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from gnc import _kernels_py, kernels



def _has_extension():
    try:
        from gnc import _kernels  # noqa: F401
    except ImportError:
        return False
    return True


needs_extension = pytest.mark.skipif(not _has_extension(), reason="compiled extension not built")

int_rows = st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c), min_size=0, max_size=7).map(
        lambda rows: (rows, c)))


@needs_extension
@given(int_rows)
def test_compiled_matches_python(data):
    from gnc import _kernels
    rows, c = data
    assert _kernels.rank_exact(rows, c) == _kernels_py.rank_exact(rows, c)
    assert _kernels.rank_mod_p(rows, c, kernels.PRIME) == _kernels_py.rank_mod_p(rows, c, kernels.PRIME)


@needs_extension
def test_compiled_overflow_is_reported():
    from gnc import _kernels
    big = 2**40
    rows = [[big, big + 1, 1], [big + 3, big - 7, 1], [5, 9, big]]
    with pytest.raises(OverflowError):
        _kernels.rank_exact(rows, 3)
    assert kernels.rank_exact(rows, 3) == _kernels_py.rank_exact(rows, 3) == 3


def test_mod_p_never_exceeds_exact_rank():
    rng = random.Random(5)
    for _ in range(50):
        rows = [[rng.choice([0, 0, 1, -1, kernels.PRIME]) for _ in range(5)] for _ in range(5)]
        assert kernels.rank_mod_p(rows, 5) <= kernels.rank_exact(rows, 5)


def test_empty_inputs():
    assert kernels.rank_exact([], 3) == 0 and kernels.rank_mod_p([[1, 2]], 0) == 0


def test_pure_python_switch():
    env = dict(os.environ, GNC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from gnc import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    if _has_extension() and not os.environ.get("GNC_PURE_PYTHON"):
        assert kernels.BACKEND == "cython"
