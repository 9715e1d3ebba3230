"""Exact twisted and bulk-deformed A-infinity algebra, ribbon-tree combinatorics,
model Lefschetz sections and the A2 quasi-isomorphism pipeline."""
from . import ainfty, coeff, deform, errors, linalg, model, picard, pipeline, trees

__all__ = ["ainfty", "coeff", "deform", "errors", "linalg", "model", "picard", "pipeline", "trees"]
__version__ = "0.1.0"
