"""Hot kernels: BFS closure under generators and batched group-action tables.

Two interchangeable backends: a Cython extension (built at install time)
and a pure numpy fallback.  The compiled backend is picked automatically
when present; set REIDEMEISTER_KERNEL=python to force the fallback.
Both produce bit-identical output (same BFS discovery order).
"""

import os

if os.environ.get("REIDEMEISTER_KERNEL") == "python":
    from . import py_fallback as _impl

    BACKEND = "python"
else:
    try:
        from . import _closure as _impl

        BACKEND = "cython"
    except ImportError:
        from . import py_fallback as _impl

        BACKEND = "python"

closure = _impl.closure
action_table = _impl.action_table
