"""Constrained discounted continuous-time MDPs.

Thin wrapper over the _ctmdp extension: occupation-measure LP solving,
policy extraction and mixture decomposition, Lyapunov drift bounds, and
Monte Carlo simulation of the controlled jump process.
"""

try:
    from ._ctmdp import *  # noqa: F401,F403
    from ._ctmdp import __version__  # noqa: F401
except ImportError:  # in-tree builds expose the extension at top level
    from _ctmdp import *  # noqa: F401,F403
    from _ctmdp import __version__  # noqa: F401
