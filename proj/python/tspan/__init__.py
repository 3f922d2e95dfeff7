"""Exact tight spans of finite distance spaces, subtree representations,
dominating metrics and diversities.

All values are exact rationals; the bindings exchange them as
fractions.Fraction and reject floats.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
