"""Tick-kernel backend selection.

The engine's inner loop lives in a small kernel with two interchangeable
implementations: a Cython extension (``_fast``) and a pure-Python twin
(``_ref``). The compiled one is used when available; set PURSUITRING_PURE=1
to force the pure-Python kernel. Both produce bit-identical trajectories;
``benchmarks/bench_kernels.py`` compares their speed.
"""

import os

from . import _ref

if os.environ.get("PURSUITRING_PURE") == "1":
    _impl = _ref
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

frame_eval = _impl.frame_eval
advance = _impl.advance
BACKEND = _impl.BACKEND_NAME

STATUS_OK = _ref.STATUS_OK
STATUS_DEGENERATE = _ref.STATUS_DEGENERATE
STATUS_OVERFLOW = _ref.STATUS_OVERFLOW

CTRL_ALPHA_RATE = _ref.CTRL_ALPHA_RATE
CTRL_BETA = _ref.CTRL_BETA
CTRL_DELTA = _ref.CTRL_DELTA
CTRL_GAMMA = _ref.CTRL_GAMMA
CTRL_K = _ref.CTRL_K
CTRL_H = _ref.CTRL_H
CTRL_VSX = _ref.CTRL_VSX
CTRL_VSY = _ref.CTRL_VSY
CTRL_VHX = _ref.CTRL_VHX
CTRL_VHY = _ref.CTRL_VHY
CTRL_VMX = _ref.CTRL_VMX
CTRL_VMY = _ref.CTRL_VMY
CTRL_VTX = _ref.CTRL_VTX
CTRL_VTY = _ref.CTRL_VTY
N_CTRL = _ref.N_CTRL

MET_THETA_G = _ref.MET_THETA_G
MET_SUM_R = _ref.MET_SUM_R
MET_MIN_R = _ref.MET_MIN_R
MET_OVERLAP = _ref.MET_OVERLAP
MET_ESCAPABLE = _ref.MET_ESCAPABLE
MET_INSIDE = _ref.MET_INSIDE
N_MET = _ref.N_MET
