"""Points, point sets, boxes, the Hausdorff metric and the sum-one flats.

Points are 1-D float arrays and point sets are 2-D arrays of shape
``(count, dim)``.  Duplicated rows are allowed; set semantics only matter
to :func:`hausdorff`.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

# rows of A processed per block in hausdorff; bounds the distance matrix
_BLOCK = 2048
# pair count above which nearest neighbours come from a k-d tree
_BRUTE_LIMIT = 4_000_000


class DimensionError(ValueError):
    """Raised when two objects live in spaces of different dimension."""


def as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.size < 1:
        raise ValueError("a point needs at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    return arr


def as_pointset(points) -> np.ndarray:
    """Coerce ``points`` to a nonempty ``(count, dim)`` float array.

    A flat sequence of numbers is read as a set of 1-D points.
    """
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"expected a nonempty (count, dim) array, got shape {arr.shape}")
    return arr


def distance(a, b) -> float:
    """Euclidean distance between two points of equal dimension."""
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.size} vs {b.size}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def _sq_dist(block: np.ndarray, B: np.ndarray) -> np.ndarray:
    # coordinates accumulated in order, as a scalar loop would
    sq = np.zeros((block.shape[0], B.shape[0]))
    for d in range(block.shape[1]):
        diff = block[:, d, None] - B[None, :, d]
        sq += diff * diff
    return sq


def _directed_sq(A: np.ndarray, B: np.ndarray) -> float:
    # max over a in A of min over b in B of |a - b|^2
    if A.shape[0] * B.shape[0] > _BRUTE_LIMIT:
        return _directed_sq_tree(A, B)
    worst = 0.0
    for start in range(0, A.shape[0], _BLOCK):
        sq = _sq_dist(A[start:start + _BLOCK], B)
        worst = max(worst, float(sq.min(axis=1).max()))
    return worst


def _directed_sq_tree(A: np.ndarray, B: np.ndarray) -> float:
    # nearest neighbours from a k-d tree, distances recomputed as above;
    # only exact ties within rounding can pick a different neighbour;
    # repeated rows slow the tree down and do not change the set
    A = np.unique(A, axis=0)
    B = np.unique(B, axis=0)
    _, idx = cKDTree(B).query(A)
    diff = A - B[idx]
    sq = np.zeros(A.shape[0])
    for d in range(A.shape[1]):
        sq += diff[:, d] * diff[:, d]
    return float(sq.max())


def directed_hausdorff(A, B) -> float:
    """sup over a in A of the distance from a to B."""
    A = as_pointset(A)
    B = as_pointset(B)
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    return math.sqrt(_directed_sq(A, B))


def hausdorff(A, B) -> float:
    """Hausdorff distance between two finite point sets.

    Squared distances are minimised and maximised before the single square
    root, so the result is bit-identical to a double loop taking
    ``sqrt`` of the in-order sum of ``d * d`` per pair (sqrt is monotone and correctly
    rounded).
    """
    A = as_pointset(A)
    B = as_pointset(B)
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    return math.sqrt(max(_directed_sq(A, B), _directed_sq(B, A)))


@dataclass(frozen=True)
class Box:
    """Axis-aligned box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.asarray(self.upper, dtype=float).reshape(-1)
        if lo.shape != hi.shape:
            raise DimensionError("box bounds must have the same length")
        if np.any(lo > hi):
            raise ValueError("box lower bound exceeds upper bound")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ValueError("box bounds must be finite")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, dim: int, half_width: float, center=None) -> "Box":
        c = np.zeros(dim) if center is None else as_point(center)
        return cls(c - half_width, c + half_width)

    @classmethod
    def bounding(cls, points, inflate: float = 0.0) -> "Box":
        """Bounding box of ``points``, widened by ``inflate`` times its extent."""
        P = as_pointset(points)
        lo, hi = P.min(axis=0), P.max(axis=0)
        pad = inflate * (hi - lo)
        return cls(lo - pad, hi + pad)

    @property
    def dim(self) -> int:
        return self.lower.size

    def diameter(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    def contains(self, p, tol: float = 0.0) -> bool:
        p = np.asarray(p, dtype=float).reshape(-1)
        if p.size != self.dim:
            raise DimensionError(f"point of dimension {p.size} vs box of dimension {self.dim}")
        return bool(np.all(p >= self.lower - tol) and np.all(p <= self.upper + tol))

    def vertices(self) -> np.ndarray:
        """All 2**dim corners, shape ``(2**dim, dim)``."""
        bits = (np.arange(2 ** self.dim)[:, None] >> np.arange(self.dim)[None, :]) & 1
        return np.where(bits == 1, self.upper[None, :], self.lower[None, :])

    def union(self, other: "Box") -> "Box":
        return Box(np.minimum(self.lower, other.lower), np.maximum(self.upper, other.upper))


@dataclass(frozen=True)
class FlatSpec:
    """The flat of vectors in R^n whose entries sum to one, optionally with
    every entry bounded by ``bound`` in absolute value."""

    n: int
    bound: float = math.inf

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("flat dimension must be positive")
        if not self.bound > 0:
            raise ValueError("entry bound must be positive")

    def box(self) -> Box:
        """Box enclosing the bounded flat (requires a finite bound)."""
        if not math.isfinite(self.bound):
            raise ValueError("the unbounded flat has no enclosing box")
        return Box.cube(self.n, self.bound)


def in_flat(v, spec: FlatSpec, tol: float = 1e-12) -> bool:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != spec.n:
        raise DimensionError(f"vector of length {v.size} vs flat in R^{spec.n}")
    if abs(v.sum() - 1.0) > tol:
        return False
    if math.isfinite(spec.bound) and np.any(np.abs(v) > spec.bound + tol):
        return False
    return True


def sample_flat(spec: FlatSpec, count: int, seed: int) -> np.ndarray:
    """Deterministic pseudo-random points of the (bounded) flat.

    Each sample starts uniform in ``[-C, C]^n``, is shifted onto the flat
    along the all-ones direction, then pulled toward the barycenter
    ``(1/n, ..., 1/n)`` just enough to respect the entry bound.  With no
    finite bound, ``C = 1`` is used for the raw draw.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    n = spec.n
    C = spec.bound if math.isfinite(spec.bound) else 1.0
    if C < 1.0 / n:
        raise ValueError(f"K_C is empty for n={n}, C={C}")
    rng = np.random.default_rng(seed)
    raw = rng.uniform(-C, C, size=(count, n))
    raw += ((1.0 - raw.sum(axis=1)) / n)[:, None]
    center = np.full(n, 1.0 / n)
    dev = raw - center
    if math.isfinite(spec.bound):
        peak = np.abs(dev).max(axis=1)
        room = C - 1.0 / n
        scale = np.ones(count)
        over = peak > room
        scale[over] = room / peak[over]
        dev *= scale[:, None]
    out = center + dev
    # fold the rounding residual of the sum into the entry furthest from the bound
    out[np.arange(count), np.abs(out).argmin(axis=1)] += 1.0 - out.sum(axis=1)
    return out


def write_csv(points, path=None) -> str:
    """Serialize a point set: one point per row, no header, full precision."""
    P = as_pointset(points)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in P:
        w.writerow([repr(float(x)) for x in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def read_csv(source) -> np.ndarray:
    """Read a point set written by :func:`write_csv` (path or text).

    A non-numeric first row is taken as a header and skipped.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                   and Path(source).exists()):
        text = Path(source).read_text()
    else:
        text = str(source)
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if rows:
        try:
            [float(c) for c in rows[0]]
        except ValueError:
            rows = rows[1:]
    return as_pointset([[float(c) for c in r] for r in rows])
