"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback. Set ``CYCLIC_MODAL_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("CYCLIC_MODAL_PURE", "") not in ("", "0"):
    from ._pykernels import eval_plan, refine_partition
else:
    try:
        from ._ckernels import eval_plan, refine_partition

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernels import eval_plan, refine_partition

OP_TOP = _pykernels.OP_TOP
OP_BOT = _pykernels.OP_BOT
OP_VAR = _pykernels.OP_VAR
OP_NOT = _pykernels.OP_NOT
OP_BOX = _pykernels.OP_BOX
OP_AND = _pykernels.OP_AND
OP_OR = _pykernels.OP_OR
OP_IMP = _pykernels.OP_IMP

__all__ = ["BACKEND", "eval_plan", "refine_partition"]
