"""Kernel selection: compiled extension when built, pure-Python twin otherwise."""

try:
    from blocklab._ckernels import (
        BACKEND,
        closure,
        commutators,
        centralizer_of,
        conjugacy_classes,
        dc_mult_table,
        inverse_map,
        normalizer_of,
        orbit_partition,
        structure_constants,
    )
except ImportError:
    from blocklab._kernels_py import (
        BACKEND,
        closure,
        commutators,
        centralizer_of,
        conjugacy_classes,
        dc_mult_table,
        inverse_map,
        normalizer_of,
        orbit_partition,
        structure_constants,
    )

__all__ = [
    "BACKEND",
    "closure",
    "commutators",
    "centralizer_of",
    "conjugacy_classes",
    "dc_mult_table",
    "inverse_map",
    "normalizer_of",
    "orbit_partition",
    "structure_constants",
]
