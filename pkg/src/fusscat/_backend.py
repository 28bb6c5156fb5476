"""Select the root-refinement kernel: compiled extension when available,
pure Python otherwise.  FUSSCAT_PURE_PYTHON=1 forces the fallback."""

import os

if os.environ.get("FUSSCAT_PURE_PYTHON"):
    from . import _roots_py as _impl
else:
    try:
        from . import _roots_c as _impl
    except ImportError:
        from . import _roots_py as _impl

aberth_trinomial = _impl.aberth_trinomial
BACKEND_NAME = _impl.BACKEND_NAME
