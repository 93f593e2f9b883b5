"""Plane cubics and cubic pencils over finite fields."""

from .core import *  # noqa: F401,F403
from .core import __all__ as _core_all
from .forms import Form, PlanePoint, format_point, normalize_point, point_from_ints
from .gf import GF, field, is_prime

__all__ = [*_core_all, "Form", "GF", "PlanePoint", "field", "format_point", "is_prime", "normalize_point", "point_from_ints"]
