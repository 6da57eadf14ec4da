"""Weighted least squares approximation and quadrature on the 2-sphere."""

from ._mzls import *  # noqa: F401,F403
from ._mzls import (
    Approximant,
    DesignSystem,
    Layer,
    QuadratureRule,
    ZonalTestFunction,
    build_design,
    fit,
    lsq_weights,
)

__all__ = [
    "Approximant",
    "DesignSystem",
    "Layer",
    "QuadratureRule",
    "ZonalTestFunction",
    "build_design",
    "fit",
    "lsq_weights",
]
