"""blocklab: exact-arithmetic laboratory for 2-blocks with defect group
D_{2^n} * C_{2^m}.

Constructs the group family, its fusion-system cases, subsections, character
tables and block invariants, and verifies every desk-checkable identity
(invariant formulas, conjecture bounds, weight sums, gluing cohomology),
including end-to-end reproductions on D(3,m) x| C_3 witness groups.
"""

from blocklab._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
__all__ = ["KERNEL_BACKEND", "__version__"]
