"""Binary code space and trees of maps.

A code is a tuple over ``{1, 2}``.  A tree assigns a map to every nonempty
code; the point of a path ``eta`` at depth ``k`` is

    f_{eta_1} o f_{eta_1 eta_2} o ... o f_{eta_1 ... eta_k} (x),

the deepest map acting first.  Depth-``k`` enumerations list codes in
lexicographic order with ``1 < 2``, so the code of row ``r`` is the binary
expansion of ``r``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import Box, DimensionError, as_point, distance, hausdorff
from .maps import AffineMap, FunctionSystem, lipschitz_bound

Code = tuple

MAX_DEPTH = 24


class EnumerationBudgetError(ValueError):
    """Raised when a depth would enumerate more codes than allowed."""


def _check_symbol(j):
    if j not in (1, 2):
        raise ValueError(f"code symbols are 1 or 2, got {j!r}")


def prolong(c: Code, j: int) -> Code:
    _check_symbol(j)
    return tuple(c) + (j,)


def truncate(c: Code, ell: int) -> Code:
    if not 1 <= ell <= len(c):
        raise ValueError(f"truncation length {ell} outside 1..{len(c)}")
    return tuple(c[:ell])


def code_value(c: Code) -> float:
    """Binary parameter ``sum (i_j - 1) 2^-j`` of a code."""
    return sum((i - 1) * 2.0 ** -(j + 1) for j, i in enumerate(c))


def frechet(a: Code, b: Code) -> float:
    """``sum |i_n - j_n| / 3^n`` over two equal-length prefixes."""
    if len(a) != len(b):
        raise ValueError("codes must have equal length")
    return sum(abs(i - j) / 3.0 ** (n + 1) for n, (i, j) in enumerate(zip(a, b)))


def code_str(c: Code) -> str:
    return "".join(str(i) for i in c)


def parse_code(s: str) -> Code:
    c = tuple(int(ch) for ch in s)
    for j in c:
        _check_symbol(j)
    return c


def all_codes(k: int):
    """The ``2**k`` codes of length ``k`` in lexicographic order."""
    return itertools.product((1, 2), repeat=k)


@dataclass(eq=False)
class MapTree:
    """A lazily generated binary tree of affine maps.

    Maps at depth >= 2 are endomorphisms of R^dim; depth-1 maps go from
    R^dim to R^root_codomain (which defaults to ``dim``).
    """

    node_map: Callable[[Code], AffineMap]
    dim: int
    root_codomain: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.root_codomain is None:
            self.root_codomain = self.dim

    def map(self, c: Code) -> AffineMap:
        c = tuple(c)
        f = self._cache.get(c)
        if f is None:
            if not c:
                raise ValueError("the root has no map")
            f = self.node_map(c)
            out = self.root_codomain if len(c) == 1 else self.dim
            if f.in_dim != self.dim or f.out_dim != out:
                raise DimensionError(
                    f"map at {code_str(c)} is R^{f.in_dim} -> R^{f.out_dim}, "
                    f"expected R^{self.dim} -> R^{out}")
            self._cache[c] = f
        return f

    def level(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """Stacked matrices and translations of all depth-``k`` maps."""
        maps = [self.map(c) for c in all_codes(k)]
        return np.stack([f.matrix for f in maps]), np.stack([f.translation for f in maps])

    def lipschitz(self, c: Code) -> float:
        return lipschitz_bound(self.map(c))


def constant_tree(F: FunctionSystem) -> MapTree:
    """Tree whose sibling pairs all carry the two maps of ``F``."""
    if len(F) != 2:
        raise ValueError("binary trees need a two-map system")
    if F.in_dim != F.out_dim:
        raise DimensionError("a constant tree needs endomorphisms")
    return MapTree(lambda c: F[c[-1] - 1], F.in_dim)


def cantor_system() -> FunctionSystem:
    return FunctionSystem((AffineMap.scaling(1 / 3), AffineMap.scaling(1 / 3, 2 / 3)))


def cantor_tree() -> MapTree:
    return constant_tree(cantor_system())


_TFS_FIRST = AffineMap([[0.4, 0.4], [-0.5, 0.3]], [4.0, 4.0])


def tfs_second_map(theta: float) -> AffineMap:
    c, s = math.cos(theta), math.sin(theta)
    return AffineMap(0.8 * np.array([[c, s], [-s, c]]), [-2.0, 0.0])


def example_tfs_tree() -> MapTree:
    """Location-dependent tree on R^2: every first child carries a fixed map,
    every second child a scaled rotation by ``3 t(parent) + 1`` where ``t``
    is the binary value of the parent code (0 for the empty root code)."""

    def node(c: Code) -> AffineMap:
        if c[-1] == 1:
            return _TFS_FIRST
        return tfs_second_map(3.0 * code_value(c[:-1]) + 1.0)

    return MapTree(node, 2)


def subtree(tree: MapTree, j: int) -> MapTree:
    """The tree hanging below the depth-1 node ``j``."""
    _check_symbol(j)
    return MapTree(lambda c: tree.map((j,) + tuple(c)), tree.dim)


def path_point(tree: MapTree, c: Code, x) -> np.ndarray:
    c = tuple(c)
    if not c:
        raise ValueError("path needs at least one symbol")
    p = as_point(x)
    if p.size != tree.dim:
        raise DimensionError(f"point of dimension {p.size} for a tree on R^{tree.dim}")
    for k in range(len(c), 0, -1):
        p = tree.map(c[:k])(p)
    return p


def _check_budget(depth: int, max_depth: int):
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > max_depth:
        raise EnumerationBudgetError(
            f"enumeration budget exceeded: depth {depth} > {max_depth}")


def _apply_stacked(M: np.ndarray, t: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    # blocks[n] holds the points fed to the map (M[n], t[n])
    return np.einsum("nij,nrj->nri", M, blocks) + t[:, None, :]


def _backward_levels(tree: MapTree, x, depth: int, max_depth: int):
    # yields the partial path points level by level, deepest first
    _check_budget(depth, max_depth)
    p = as_point(x)
    if p.size != tree.dim:
        raise DimensionError(f"point of dimension {p.size} for a tree on R^{tree.dim}")
    M, t = tree.level(depth)
    P = M @ p + t
    yield depth, P
    for j in range(depth - 1, 0, -1):
        M, t = tree.level(j)
        blocks = P.reshape(2 ** j, 2 ** (depth - j), -1)
        P = _apply_stacked(M, t, blocks).reshape(2 ** depth, -1)
        yield j, P


def tree_attractor(tree: MapTree, x, depth: int, max_depth: int = MAX_DEPTH) -> np.ndarray:
    """Points of all depth-``depth`` paths from ``x``, one row per code."""
    for _, P in _backward_levels(tree, x, depth, max_depth):
        pass
    return P


def tree_bounding_box(tree: MapTree, x, depth: int, max_depth: int = MAX_DEPTH) -> Box:
    """Bounding box of ``x`` and of every partial path point
    ``f_{eta_j} o ... o f_{eta_depth}(x)`` lying in R^dim.

    This box contains every point the contraction estimates compare; its
    diameter is the empirical stand-in for the diameter of a common
    invariant domain.
    """
    p = as_point(x)
    lo, hi = p.copy(), p.copy()
    for j, P in _backward_levels(tree, x, depth, max_depth):
        if j == 1 and tree.root_codomain != tree.dim:
            continue
        lo = np.minimum(lo, P.min(axis=0))
        hi = np.maximum(hi, P.max(axis=0))
    return Box(lo, hi)


def path_products(tree: MapTree, depth: int, max_depth: int = MAX_DEPTH) -> list[np.ndarray]:
    """Per level ``k`` (index ``k - 1``) the products ``prod_{i<=k} s_{tau_i eta}``
    over all codes of length ``k`` in lexicographic order."""
    _check_budget(depth, max_depth)
    out = []
    prev = np.ones(1)
    for k in range(1, depth + 1):
        s = np.array([tree.lipschitz(c) for c in all_codes(k)])
        prev = np.repeat(prev, 2) * s
        out.append(prev)
    return out


def sup_path_products(tree: MapTree, depth: int) -> np.ndarray:
    """``delta_k = max over codes of prod_{i<=k} s_{tau_i eta}`` for k = 1..depth."""
    return np.array([p.max() for p in path_products(tree, depth)])


@dataclass(frozen=True)
class AttractorBound:
    """Hausdorff error bound ``E * e_m`` of a depth-``m`` approximation.

    ``e_m`` sums the exhaustively computed ``delta_k`` for ``m <= k <= depth``
    plus a geometric tail with ratio ``rate`` (largest node Lipschitz
    constant at the deepest level); ``E`` is an empirical diameter, so the
    bound is empirical as well.
    """

    depth: int
    diameter: float
    e_m: float
    rate: float

    @property
    def bound(self) -> float:
        return self.diameter * self.e_m


def attractor_error_bound(tree: MapTree, x, depth: int) -> AttractorBound:
    prods = path_products(tree, depth)
    deltas = np.array([p.max() for p in prods])
    rate = max(tree.lipschitz(c) for c in all_codes(depth))
    if rate < 1:
        e_m = float(deltas[-1] + deltas[-1] * rate / (1 - rate))
    else:
        e_m = math.inf
    E = tree_bounding_box(tree, x, depth).diameter()
    return AttractorBound(depth, E, e_m, rate)


def self_referential_check(tree: MapTree, x, depth: int) -> float:
    """Hausdorff gap between the depth-``depth`` attractor and
    ``f_1(U_1) u f_2(U_2)`` built from the two subtrees at ``depth - 1``."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    whole = tree_attractor(tree, x, depth)
    # same arithmetic as the enumeration, so the gap is exactly zero
    parts = []
    for j in (1, 2):
        f = tree.map((j,))
        U = tree_attractor(subtree(tree, j), x, depth - 1)
        parts.append(_apply_stacked(f.matrix[None], f.translation[None], U[None])[0])
    return hausdorff(whole, np.concatenate(parts))


def continuity_modulus_check(tree: MapTree, x, depth: int, pairs: int, seed: int,
                             slack: float = 1e-9) -> bool:
    """Random same-prefix code pairs obey ``d <= D * prod_{m<=l} s_{tau_m a}``.

    ``l`` is drawn uniformly from ``0 .. depth - 1`` and ``D`` is the
    diameter of :func:`tree_bounding_box`.
    """
    return continuity_margins(tree, x, depth, pairs, seed, slack).min() >= 0


def continuity_margins(tree: MapTree, x, depth: int, pairs: int, seed: int,
                       slack: float = 1e-9) -> np.ndarray:
    """Per pair, ``bound + slack - distance`` (nonnegative means the pair passes)."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    D = tree_bounding_box(tree, x, depth).diameter()
    rng = np.random.default_rng(seed)
    margins = np.empty(pairs)
    for n in range(pairs):
        ell = int(rng.integers(0, depth))
        prefix = tuple(int(i) for i in rng.integers(1, 3, size=ell))
        a = prefix + tuple(int(i) for i in rng.integers(1, 3, size=depth - ell))
        b = prefix + tuple(int(i) for i in rng.integers(1, 3, size=depth - ell))
        prod = math.prod(tree.lipschitz(a[:m]) for m in range(1, ell + 1))
        d = distance(path_point(tree, a, x), path_point(tree, b, x))
        margins[n] = D * prod + slack - d
    return margins
