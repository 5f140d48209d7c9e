"""Best-worst scaling annotation toolkit: tuple designs, counting scores,
rating-scale aggregation, gold filtering and split-half reliability."""

from bwskit._core import *  # noqa: F401,F403
from bwskit._core import __version__  # noqa: F401
