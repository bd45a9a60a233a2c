"""Spectral filling invariants of disk diagrams over group presentations."""

from .values import ExtendedValue
from .halfedge import DiskDiagram, Face, MovieBuilder, ValidationReport
from .presentations import Presentation, Word

__all__ = [
    "DiskDiagram",
    "ExtendedValue",
    "Face",
    "MovieBuilder",
    "Presentation",
    "ValidationReport",
    "Word",
]

__version__ = "0.1.0"
