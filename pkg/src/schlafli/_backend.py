"""Select the float64 kernel implementation at import time.

The compiled extension is used when it was built; setting the environment
variable ``SCHLAFLI_BACKEND=python`` forces the numpy fallback.
"""

import os

from . import _pykernels

if os.environ.get("SCHLAFLI_BACKEND", "").lower() == "python":
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        kernels = _pykernels

BACKEND = kernels.BACKEND
