"""Contest success function laboratory.

Catalog CSF evaluation, payoffs, brute-force epsilon-equilibrium
verification, closed-form equilibrium constructors, and extraction
diagnostics, backed by the C++ core.
"""

from contestlab._core import *  # noqa: F401,F403
from contestlab._core import __version__  # noqa: F401
