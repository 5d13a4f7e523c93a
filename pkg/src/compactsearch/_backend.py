"""Select the squeeze kernel at import time.

The compiled extension is used when it was built; otherwise the pure-Python
fallback. Setting ``COMPACTSEARCH_PURE=1`` forces the fallback.
"""

import os
from types import ModuleType

from . import _squeeze_py

try:
    from . import _squeeze as _squeeze_ext
except ImportError:  # extension not built
    _squeeze_ext = None

BACKENDS: dict[str, ModuleType] = {"python": _squeeze_py}
if _squeeze_ext is not None:
    BACKENDS["cython"] = _squeeze_ext

if _squeeze_ext is not None and not os.environ.get("COMPACTSEARCH_PURE"):
    DEFAULT = "cython"
else:
    DEFAULT = "python"


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        name = DEFAULT
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"backend {name!r} unavailable; built backends: {sorted(BACKENDS)}"
        ) from None
