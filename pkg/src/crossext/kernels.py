"""Backend selection for the hot loops.

The compiled extension is used when importable; setting ``CROSSEXT_PURE=1``
forces the numpy implementation.
"""

import os

from . import _kernels_py as pure

BACKEND = "python"
_impl = pure
if not os.environ.get("CROSSEXT_PURE"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = pure

assoc_witness = _impl.assoc_witness
matched_witnesses = _impl.matched_witnesses
fusion_assoc_witness = _impl.fusion_assoc_witness
eliminate = _impl.eliminate
hopf_violation = _impl.hopf_violation
