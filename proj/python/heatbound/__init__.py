"""Heat-kernel bounds and metric geometry on non-convex planar regions.

The compiled extension carries the numerics; this package re-exports it and,
during development, also looks for the module in the CMake build tree via the
HEATBOUND_MODULE_DIR environment variable.
"""

import os
import sys

try:
    from heatbound._core import *  # noqa: F401,F403
    from heatbound import _core as core  # noqa: F401
except ImportError:  # development layout: extension lives in the build tree
    _module_dir = os.environ.get("HEATBOUND_MODULE_DIR")
    if not _module_dir:
        raise
    sys.path.insert(0, _module_dir)
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401

__all__ = [name for name in dir(core) if not name.startswith("_")]
