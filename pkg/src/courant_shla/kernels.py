"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` twin. Set ``COURANT_SHLA_PURE=1`` to force the
fallback.
"""

import os

from . import _pykernels

FIELD_BITS = _pykernels.FIELD_BITS
FIELD_MASK = _pykernels.FIELD_MASK

_impl = _pykernels
BACKEND = "python"
if not os.environ.get("COURANT_SHLA_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mul_terms = _impl.mul_terms
lincomb_terms = _impl.lincomb_terms
mul_acc = _impl.mul_acc
dot_terms = _impl.dot_terms
diff_terms = _impl.diff_terms
koszul_sign_raw = _impl.koszul_sign
shuffle_sign_raw = _impl.shuffle_sign
unshuffles_raw = _impl.unshuffles

__all__ = [
    "BACKEND",
    "FIELD_BITS",
    "FIELD_MASK",
    "mul_terms",
    "lincomb_terms",
    "mul_acc",
    "dot_terms",
    "diff_terms",
    "koszul_sign_raw",
    "shuffle_sign_raw",
    "unshuffles_raw",
]
