from pprtopk._core import *  # noqa: F401,F403
from pprtopk._core import __version__  # noqa: F401
