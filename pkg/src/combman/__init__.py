"""Combinatorial manifold models: skeleton graphs, invariants, classification
and a chart-level differential geometry kernel."""

from .model import *  # noqa: F401,F403
from .model import __all__ as _model_all
from .skeleton import *  # noqa: F401,F403
from .skeleton import __all__ as _skeleton_all
from .invariants import *  # noqa: F401,F403
from .invariants import __all__ as _inv_all
from .classify import *  # noqa: F401,F403
from .classify import __all__ as _classify_all
from .series import *  # noqa: F401,F403
from .series import __all__ as _series_all
from .generators import seeded_random_model, random_labelled_graph
from . import diffgeo

__version__ = "0.1.0"

__all__ = (_model_all + _skeleton_all + _inv_all + _classify_all + _series_all
           + ["seeded_random_model", "random_labelled_graph", "diffgeo"])
