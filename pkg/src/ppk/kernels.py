"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Importing this module selects the implementation once.  Set PPK_PURE=1 in
the environment to force the fallback (used by the benchmark and by tests
that exercise both paths).
"""

import os

if os.environ.get("PPK_PURE") == "1":
    from . import _purekernels as _impl

    HAVE_EXT = False
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        HAVE_EXT = True
    except ImportError:
        from . import _purekernels as _impl  # type: ignore[no-redef]

        HAVE_EXT = False

dp_accumulate = _impl.dp_accumulate
expsum_dot = _impl.expsum_dot
exp_dot = _impl.exp_dot
exp_dot2 = _impl.exp_dot2
