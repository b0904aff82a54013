"""Hot loops, compiled when the extension is available.

Set ``FIMTOOL_PURE=1`` to force the pure-Python implementations.
"""

import os

from fimtool.kernels import _pure

BACKEND = "pure"
ball_sweep = _pure.ball_sweep
member_bfs = _pure.member_bfs

if not os.environ.get("FIMTOOL_PURE"):
    try:
        from fimtool.kernels import _ckernel
    except ImportError:
        pass
    else:
        BACKEND = "cython"
        ball_sweep = _ckernel.ball_sweep
        member_bfs = _ckernel.member_bfs

__all__ = ["BACKEND", "ball_sweep", "member_bfs"]
