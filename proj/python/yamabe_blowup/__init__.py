"""Sign-changing Yamabe profiles and blow-up obstruction functionals."""

try:
    from ._yamabe import *  # noqa: F401,F403  installed layout
except ImportError:
    from _yamabe import *  # noqa: F401,F403  build-tree layout (ctest)

__version__ = "0.1.0"
