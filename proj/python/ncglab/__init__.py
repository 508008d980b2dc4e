"""Finite-rank Toeplitz models, cyclic cochains, and index formulas."""

try:
    from ._ncglab import *  # noqa: F401,F403
    from ._ncglab import __doc__  # noqa: F401
except ImportError:  # pragma: no cover - source-tree fallback
    import os
    import sys

    _module_dir = os.environ.get("NCGLAB_MODULE_DIR")
    if not _module_dir:
        raise
    sys.path.insert(0, _module_dir)
    from _ncglab import *  # noqa: F401,F403
