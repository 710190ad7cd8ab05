"""Linear influence games: equilibrium computation, most-influential-node
selection, and coalition analysis on top of the C++ core."""

try:
    from ._liginf import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _liginf import *  # noqa: F401,F403  (in-tree build layout)
