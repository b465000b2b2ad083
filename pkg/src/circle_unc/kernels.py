"""Hot numerical kernels, compiled when available.

The Cython extension ``_ckernels`` is used if it imports; otherwise the
numpy versions in ``_pykernels`` are used. Setting ``CIRCLE_UNC_PURE=1``
forces the numpy versions. ``BACKEND`` names the active one.
"""
import os

from . import _pykernels

if os.environ.get("CIRCLE_UNC_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "numpy"

synthesize = _impl.synthesize
phi_moment_sums = _impl.phi_moment_sums
sawtooth_project = _impl.sawtooth_project

__all__ = ["BACKEND", "synthesize", "phi_moment_sums", "sawtooth_project"]
