"""Executable combinatorics of generalized normal crossings local models.

Submodules: ``complex_core`` (models, axioms, lc centers, LCS loci),
``simplicial`` (levels of the normalization resolution), ``cohomology``
(fine-graded Cech cohomology of O(d) on the projective realization),
``descent`` (an independent cohomology oracle), ``ideals`` (Hilbert
functions and the ideal sequence) and ``cli``.
"""

__version__ = "0.1.0"

from .complex_core import GncModel, ValidationError, lc_centers, lcs, lcs_chain, sing, validate  # noqa: E402

__all__ = ["GncModel", "ValidationError", "lc_centers", "lcs", "lcs_chain", "sing", "validate", "__version__"]
