"""Select the recurrence-kernel implementation at import time.

The compiled extension is preferred. Setting ``CUBKIT_PURE_PYTHON=1`` forces
the numpy fallback (used by the benchmark and by the backend-parity tests).
"""

import os

BACKEND = "python"

if os.environ.get("CUBKIT_PURE_PYTHON", "") not in ("", "0"):
    from cubkit._pykernels import three_term_divdiff, three_term_table
else:
    try:
        from cubkit._ckernels import three_term_divdiff, three_term_table
        BACKEND = "cython"
    except ImportError:
        from cubkit._pykernels import three_term_divdiff, three_term_table

__all__ = ["BACKEND", "three_term_table", "three_term_divdiff"]
