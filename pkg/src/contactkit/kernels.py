"""Select the polynomial kernel implementation at import time.

The compiled ``_ckernels`` extension is preferred.  Set the environment
variable ``CONTACTKIT_PURE_PYTHON=1`` to force the pure-Python fallback.
"""
import os

if os.environ.get("CONTACTKIT_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import (padd, pcontent, pderiv, pdivint, pmul, pmulterm,
                             pneg, pscale, psub, psubmul)
    BACKEND = "python"
else:
    try:
        from ._ckernels import (padd, pcontent, pderiv, pdivint, pmul,
                                pmulterm, pneg, pscale, psub, psubmul)
        BACKEND = "cython"
    except ImportError:
        from ._pykernels import (padd, pcontent, pderiv, pdivint, pmul,
                                 pmulterm, pneg, pscale, psub, psubmul)
        BACKEND = "python"

__all__ = ["BACKEND", "padd", "psub", "pneg", "pscale", "pmul", "pmulterm",
           "psubmul", "pderiv", "pdivint", "pcontent"]
