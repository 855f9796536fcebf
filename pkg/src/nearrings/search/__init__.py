"""Row-map enumeration of nearrings with identity.

The propagation hot loop has a compiled implementation and a pure-Python
reference with identical semantics.  Selection happens here at import time;
set NEARRINGS_KERNEL=pure or =compiled to force one (compiled falls back to
pure with a warning unless explicitly requested).
"""

import os
import warnings

from . import _kernels_pure

kernels = _kernels_pure
KERNEL = "pure"

_choice = os.environ.get("NEARRINGS_KERNEL", "auto")
if _choice not in ("auto", "pure", "compiled"):
    raise ImportError(f"NEARRINGS_KERNEL must be auto, pure or compiled, not {_choice!r}")
if _choice != "pure":
    try:
        from . import _speedups
        if not hasattr(_speedups, "closure_propagate"):
            raise ImportError("compiled kernel is missing closure_propagate")
        kernels = _speedups
        KERNEL = "compiled"
    except ImportError:
        if _choice == "compiled":
            raise
        warnings.warn("compiled search kernel unavailable; using the pure-Python one",
                      RuntimeWarning)

from ._engine import (
    ENDO_CAP,
    SEARCH_CAP,
    BudgetExhausted,
    EndoMap,
    SearchConfig,
    SearchReport,
    all_endomorphisms,
    additive_automorphism_arrays,
    canonical_form,
    conjecture1_check,
    enumerate_unital_nearrings,
    filter_local,
)

__all__ = [
    "ENDO_CAP",
    "SEARCH_CAP",
    "BudgetExhausted",
    "EndoMap",
    "KERNEL",
    "SearchConfig",
    "SearchReport",
    "all_endomorphisms",
    "additive_automorphism_arrays",
    "canonical_form",
    "conjecture1_check",
    "enumerate_unital_nearrings",
    "filter_local",
    "kernels",
]
