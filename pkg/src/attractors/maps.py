"""Affine maps between real spaces and finite function systems."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import Box, DimensionError, as_pointset


@dataclass(frozen=True, eq=False)
class AffineMap:
    """``p -> matrix @ p + translation`` from R^in_dim to R^out_dim."""

    matrix: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        M = np.array(self.matrix, dtype=float, ndmin=2)
        t = np.array(self.translation, dtype=float).reshape(-1)
        if M.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        if t.size != M.shape[0]:
            raise DimensionError(
                f"translation of length {t.size} for a {M.shape[0]}x{M.shape[1]} matrix")
        if not (np.all(np.isfinite(M)) and np.all(np.isfinite(t))):
            raise ValueError("map entries must be finite")
        M.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "translation", t)

    @classmethod
    def linear(cls, matrix) -> "AffineMap":
        M = np.array(matrix, dtype=float, ndmin=2)
        return cls(M, np.zeros(M.shape[0]))

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(np.eye(dim), np.zeros(dim))

    @classmethod
    def scaling(cls, factor: float, offset=0.0, dim: int = 1) -> "AffineMap":
        """``x -> factor * x + offset`` on R^dim."""
        return cls(factor * np.eye(dim), np.broadcast_to(np.asarray(offset, float), (dim,)))

    @property
    def in_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def out_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, p) -> np.ndarray:
        return apply(self, p)

    def apply_set(self, points) -> np.ndarray:
        P = as_pointset(points)
        if P.shape[1] != self.in_dim:
            raise DimensionError(f"points of dimension {P.shape[1]} for a map from R^{self.in_dim}")
        return P @ self.matrix.T + self.translation

    @cached_property
    def lipschitz(self) -> float:
        return lipschitz_bound(self)

    def to_dict(self) -> dict:
        return {"matrix": self.matrix.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "AffineMap":
        return cls(d["matrix"], d["translation"])


def apply(f: AffineMap, p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size != f.in_dim:
        raise DimensionError(f"point of dimension {p.size} for a map from R^{f.in_dim}")
    return f.matrix @ p + f.translation


def lipschitz_bound(f: AffineMap) -> float:
    """Euclidean Lipschitz constant of ``f``: the largest singular value."""
    if f.matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(f.matrix, 2))


def flat_lipschitz_bound(f: AffineMap) -> float:
    """Lipschitz constant of ``f`` restricted to the flat ``sum(x) = 1``.

    Differences of points of the flat are exactly the sum-zero vectors, so
    this is the spectral norm of the matrix composed with the orthogonal
    projector onto that subspace.
    """
    M = f.matrix
    n = M.shape[1]
    if n <= 1:
        return 0.0
    projected = M - M.sum(axis=1, keepdims=True) / n
    return float(np.linalg.norm(projected, 2))


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f o g``, i.e. ``p -> f(g(p))``."""
    if f.in_dim != g.out_dim:
        raise DimensionError(f"cannot compose R^{f.in_dim} <- R^{g.out_dim}")
    return AffineMap(f.matrix @ g.matrix, f.matrix @ g.translation + f.translation)


def compose_all(maps) -> AffineMap:
    """``maps[0] o maps[1] o ... o maps[-1]``."""
    maps = list(maps)
    if not maps:
        raise ValueError("nothing to compose")
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    return out


@dataclass(frozen=True, eq=False)
class FunctionSystem:
    """A finite family of affine maps sharing domain and codomain."""

    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("a function system needs at least one map")
        if len({(f.in_dim, f.out_dim) for f in maps}) != 1:
            raise DimensionError("all maps of a function system must share dimensions")
        object.__setattr__(self, "maps", maps)

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    @property
    def in_dim(self) -> int:
        return self.maps[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.maps[0].out_dim

    @property
    def contraction_factor(self) -> float:
        return max(f.lipschitz for f in self.maps)

    def __call__(self, points) -> np.ndarray:
        return apply_system(self, points)

    def to_dict(self) -> dict:
        return {"maps": [f.to_dict() for f in self.maps]}

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSystem":
        return cls(tuple(AffineMap.from_dict(m) for m in d["maps"]))

    @classmethod
    def from_json(cls, text: str) -> "FunctionSystem":
        return cls.from_dict(json.loads(text))


def apply_system(F: FunctionSystem, points) -> np.ndarray:
    """Union of the images ``f(S)`` over the members, stacked in member order."""
    S = as_pointset(points)
    if S.shape[1] != F.in_dim:
        raise DimensionError(f"points of dimension {S.shape[1]} for a system on R^{F.in_dim}")
    return np.concatenate([f.apply_set(S) for f in F.maps], axis=0)


def invariant_box_check(F: FunctionSystem, C: Box, samples: int = 0, seed: int = 0,
                        tol: float = 1e-12) -> bool:
    """Whether every member maps the box ``C`` into itself.

    Checking the vertices is exact for affine maps since the image of a box
    is the convex hull of its vertex images; the random interior samples
    are a cross-check only.
    """
    if not (C.dim == F.in_dim == F.out_dim):
        raise DimensionError("box, domain and codomain dimensions must agree")
    pts = C.vertices()
    if samples > 0:
        rng = np.random.default_rng(seed)
        pts = np.concatenate([pts, rng.uniform(C.lower, C.upper, size=(samples, C.dim))])
    for f in F.maps:
        img = f.apply_set(pts)
        if np.any(img < C.lower - tol) or np.any(img > C.upper + tol):
            return False
    return True
