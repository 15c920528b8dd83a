"""Hot-kernel backend selection.

Prefers the compiled Cython extension; falls back to the numpy
implementation when the extension is missing or when the environment
variable ``SUBRAYLEIGH_PURE`` is set to a non-empty value.
"""

from __future__ import annotations

import os

if os.environ.get("SUBRAYLEIGH_PURE"):
    from . import fallback as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import fallback as _impl

BACKEND_NAME: str = _impl.BACKEND_NAME
fresnel_sum = _impl.fresnel_sum
permanent_ryser = _impl.permanent_ryser

__all__ = ["BACKEND_NAME", "fresnel_sum", "permanent_ryser"]
