"""Semiclassical soliton ensembles of the focusing NLS hierarchy.

Thin re-export of the compiled module: potential families, WKB spectra,
extended-precision field evaluation, focusing predictions, dispersionless
solutions, convergence fits, and the acceptance suite.
"""

from ._sse import *  # noqa: F401,F403
from ._sse import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
