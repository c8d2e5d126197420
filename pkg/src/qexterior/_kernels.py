"""Select the term-kernel backend: compiled Cython if available, else pure.

Set ``QEXTERIOR_PURE=1`` to force the pure-Python kernels (useful for the
backend-agreement tests and the benchmark).
"""

import os

from . import _kernels_py

if os.environ.get("QEXTERIOR_PURE"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
wedge_sign = _impl.wedge_sign
front_sign = _impl.front_sign
back_sign = _impl.back_sign
wedge_terms = _impl.wedge_terms
contract_front_terms = _impl.contract_front_terms
contract_back_terms = _impl.contract_back_terms
qwedge_terms = _impl.qwedge_terms


def kernel_backend() -> str:
    """Name of the active kernel implementation ('cython' or 'python')."""
    return BACKEND
