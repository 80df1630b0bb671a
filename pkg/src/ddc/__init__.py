"""Distinct difference configurations on the square and hexagonal grids."""

__version__ = "0.1.0"

from .configuration import (Configuration, DDCClass, PeriodicArray, Shape, density,  # noqa: E402
                            is_ddc_class, verify_ddc)
from .grid import GridKind, Metric  # noqa: E402

__all__ = ["Configuration", "DDCClass", "GridKind", "Metric", "PeriodicArray", "Shape",
           "density", "is_ddc_class", "verify_ddc", "__version__"]
