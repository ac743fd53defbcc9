"""Hot-kernel backend selection.

The compiled Cython core is preferred when it imported cleanly; the pure
numpy implementation is the fallback and the reference.  Set
BQLINE_BACKEND=python (or =compiled) to force a choice; forcing the
compiled backend when it is unavailable raises at import time.
"""

import os

from . import _numpy_impl

_requested = os.environ.get("BQLINE_BACKEND", "").strip().lower()

_compiled = None
if _requested != "python":
    try:
        from . import _core as _compiled
    except ImportError:
        _compiled = None
        if _requested == "compiled":
            raise

if _compiled is not None:
    BACKEND = "compiled"
    duhamel_convolve = _compiled.duhamel_convolve
    leapfrog_run = _compiled.leapfrog_run
else:
    BACKEND = "python"
    duhamel_convolve = _numpy_impl.duhamel_convolve
    leapfrog_run = _numpy_impl.leapfrog_run

quad_weights = _numpy_impl.quad_weights

__all__ = ["BACKEND", "duhamel_convolve", "leapfrog_run", "quad_weights"]
