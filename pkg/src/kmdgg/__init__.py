"""Exact combinatorics of labeled strong/weak orders on Kac-Moody Weyl groups.

Subpackages follow the pipeline: Cartan data (`cartan`), Weyl group balls
(`weyl`), graded graph pairs and duality checks (`dgg`), the growth-diagram
insertion engine (`growth`), affine type A / n-core combinatorics (`cores`),
folding and the type-C specialization (`folding`), and distributive parabolic
quotients (`distributive`).  `cli` exposes everything as subcommands.
"""

from .cartan import GCM, FoldingData, canonical_K, center_basis, fold, named_gcm, validate_gcm

__all__ = [
    "GCM",
    "FoldingData",
    "canonical_K",
    "center_basis",
    "fold",
    "named_gcm",
    "validate_gcm",
]
