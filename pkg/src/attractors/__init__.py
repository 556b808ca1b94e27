"""Attractors of trees of maps and staircase function systems, and their
links to binary subdivision schemes."""

from .geometry import Box, DimensionError, FlatSpec, distance, hausdorff, in_flat, sample_flat
from .maps import AffineMap, FunctionSystem, compose, lipschitz_bound
from .subdivision import (ControlPolygon, Mask, Scheme, bspline_scheme, chaikin_scheme,
                          refine, subdivide, up_function_scheme)
from .tree import MapTree, tree_attractor

__version__ = "0.1.0"
