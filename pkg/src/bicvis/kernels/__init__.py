"""Hot kernels with a numba backend and a pure-numpy fallback.

Set ``BICVIS_PURE_NUMPY=1`` to force the numpy path; it is also used when
numba cannot be imported.
"""
import os

from . import _numpy
from .codes import AREA, DEMERIT, PROX, UNINT

_want_numba = os.environ.get("BICVIS_PURE_NUMPY", "").lower() not in ("1", "true", "yes")

_impl = _numpy
BACKEND = "numpy"
if _want_numba:
    try:
        from . import _numba

        _impl = _numba
        BACKEND = "numba"
    except ImportError:  # pragma: no cover
        pass

score_blocks = _impl.score_blocks
insertion_scores = _impl.insertion_scores
pair_weights = _impl.pair_weights
two_opt_pass = _impl.two_opt_pass


def backend(name):
    """Return the kernel module for ``"numba"`` or ``"numpy"``."""
    if name == "numba":
        from . import _numba

        return _numba
    if name == "numpy":
        return _numpy
    raise ValueError(f"unknown kernel backend {name!r}")


__all__ = [
    "AREA", "BACKEND", "DEMERIT", "PROX", "UNINT", "backend",
    "insertion_scores", "pair_weights", "score_blocks", "two_opt_pass",
]
