"""Named models used by the tests, the acceptance gate and the CLI report (0-based)."""

from __future__ import annotations

from fractions import Fraction

from .complex_core import GncModel, validate


def xyz() -> GncModel:
    """The normal crossings surface ``xyz = 0``; its projective realization is a triangle of lines in P^2."""
    return validate(3, [[0, 1], [1, 2], [0, 2]])


triangle = xyz


def plane_with_axes() -> GncModel:
    """``(A^2, H_1 + H_2)``."""
    return validate(2, [[0, 1]], {0: 1, 1: 1})


def cone(b=Fraction(1)) -> GncModel:
    """Cone over the triangle: three planes through the fourth axis, boundary ``b`` on it."""
    return validate(4, [[0, 1, 3], [1, 2, 3], [0, 2, 3]], {3: Fraction(b)})


def projective_plane() -> GncModel:
    return validate(3, [[0, 1, 2]])


NON_GNC = (4, [[0, 1], [1, 2], [2, 3]], {0: 1, 3: 1})
