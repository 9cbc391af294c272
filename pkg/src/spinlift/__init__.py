"""
py-spinlift: spin lifting, canonical involutions, finite-group 2-cohomology
and pin lifts, computed in exact arithmetic.
"""

__version__ = "0.1.0"
__author__ = "evilerbender"
__email__ = "evilerbender@users.noreply.github.com"

from spinlift.config import Bounds

__all__ = ["Bounds", "__version__"]
