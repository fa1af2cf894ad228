"""Chart-level exterior calculus, connections and Minkowski norms."""

from .chart import *  # noqa: F401,F403
from .chart import __all__ as _chart_all
from .connection import *  # noqa: F401,F403
from .connection import __all__ as _conn_all
from .finsler import *  # noqa: F401,F403
from .finsler import __all__ as _finsler_all
from .forms import *  # noqa: F401,F403
from .forms import __all__ as _forms_all
from .poly import *  # noqa: F401,F403
from .poly import __all__ as _poly_all

__all__ = _poly_all + _chart_all + _forms_all + _conn_all + _finsler_all
