"""Binary subdivision schemes and their bridges to staircase function
systems and trees of maps.

Indexing conventions
--------------------
Control points carry absolute indices: a polygon at ``level`` with
``offset`` o holds ``p_o, ..., p_{o+n-1}``.  One refinement step computes

    p'_i = sum_j a_{i - 2j} p_j

and keeps exactly the outputs ``i`` whose nonzero coefficients all hit
existing points (no boundary extension).  Every level therefore loses
``sigma - 2`` samples relative to ``2n``, where ``sigma`` is the support
span of the mask.

Slanted pairs take the first (lowest absolute index) and last ``n_k``
rows of the refinement matrix.  Maps built from them act on row vectors
by right multiplication, ``A -> A S``; as :class:`AffineMap` objects they
carry the transposed matrix.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import sparse

from .geometry import Box, FlatSpec, as_pointset, hausdorff, sample_flat
from .maps import AffineMap, FunctionSystem
from .staircase import StaircaseSFS
from .tree import MapTree


class SubdivisionError(ValueError):
    pass


class DataExhaustedError(SubdivisionError):
    """Interior-only refinement ran out of control points."""


class FlatInvarianceError(SubdivisionError):
    """A refinement matrix does not reproduce constants."""


class MaskGrowthError(SubdivisionError):
    """Mask supports grow faster than the declared polynomial degree."""


@dataclass(frozen=True, eq=False)
class Mask:
    """Coefficients ``a_j`` for ``j = first_index, first_index + 1, ...``.

    Zero coefficients at either end are trimmed so that ``first_index`` and
    ``last_index`` bound the support.
    """

    coefficients: np.ndarray
    first_index: int = 0

    def __post_init__(self):
        a = np.asarray(self.coefficients, dtype=float).reshape(-1)
        nz = np.flatnonzero(a)
        if nz.size == 0:
            raise ValueError("mask has no nonzero coefficient")
        a = a[nz[0]:nz[-1] + 1].copy()
        a.setflags(write=False)
        object.__setattr__(self, "coefficients", a)
        object.__setattr__(self, "first_index", int(self.first_index) + int(nz[0]))

    @property
    def last_index(self) -> int:
        return self.first_index + self.coefficients.size - 1

    @property
    def support_size(self) -> int:
        return self.coefficients.size

    @property
    def center(self) -> float:
        return (self.first_index + self.last_index) / 2

    def _parity_sum(self, parity: int) -> float:
        idx = self.first_index + np.arange(self.support_size)
        return float(self.coefficients[idx % 2 == parity].sum())

    @property
    def even_sum(self) -> float:
        return self._parity_sum(0)

    @property
    def odd_sum(self) -> float:
        return self._parity_sum(1)

    def reproduces_constants(self, tol: float = 1e-12) -> bool:
        return abs(self.even_sum - 1) <= tol and abs(self.odd_sum - 1) <= tol


@dataclass(eq=False)
class Scheme:
    """A binary subdivision scheme.

    ``mask_at(k)`` is the mask producing level ``k`` from level ``k - 1``
    (``k >= 1``).  Non-uniform schemes also give ``rule_at(k, i)``: the
    coefficients used for output ``i`` of level ``k``, aligned with the
    support of ``mask_at(k)``.  ``growth_degree`` declares how fast mask
    supports may grow (0 means fixed size).
    """

    kind: str
    mask_at: Callable[[int], Mask]
    rule_at: Callable[[int, int], np.ndarray] | None = None
    growth_degree: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("stationary", "non-stationary", "non-uniform"):
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "non-uniform" and self.rule_at is None:
            raise ValueError("non-uniform schemes need rule_at")

    @classmethod
    def stationary(cls, mask: Mask, name: str = "") -> "Scheme":
        return cls("stationary", lambda k: mask, name=name)

    @property
    def fixed_size(self) -> bool:
        return self.growth_degree == 0


def bspline_scheme(degree: int) -> Scheme:
    """Degree-d B-spline scheme, symbol ``2^-d (1 + z)^(d + 1)``."""
    if degree < 1:
        raise ValueError("degree must be at least 1")
    d = degree
    return Scheme.stationary(Mask(np.array([math.comb(d + 1, j) for j in range(d + 2)]) / 2.0 ** d), name=f"bspline:{d}")


def chaikin_scheme() -> Scheme:
    s = bspline_scheme(2)
    s.name = "chaikin"
    return s


def lazy_scheme() -> Scheme:
    return Scheme.stationary(Mask([1.0, 1.0]), name="lazy")


def up_function_mask(k: int) -> Mask:
    """Level-k mask ``2^(1-k) (1 + z)^k``: support size ``k + 1``."""
    if k < 1:
        raise ValueError("levels start at 1")
    return Mask(np.array([math.comb(k, j) for j in range(k + 1)]) * 2.0 ** (1 - k))


def up_function_scheme() -> Scheme:
    return Scheme("non-stationary", up_function_mask, growth_degree=1, name="upfn")


def default_tension(x: float) -> float:
    return 0.25 + 0.1 * math.sin(2 * math.pi * x)


def chaikin_variant_scheme(tension: Callable[[float], float] = default_tension) -> Scheme:
    """Location-dependent corner cutting.

    Output ``i`` of level ``k`` cuts its edge at ratio ``w = tension(i 2^-k)``
    (mask ``[w, 1-w, 1-w, w]``); ``w`` should stay inside ``(0, 1/2)``.
    """
    rep = Mask([0.25, 0.75, 0.75, 0.25])

    def rule(k: int, i: int) -> np.ndarray:
        w = tension(i * 2.0 ** -k)
        return np.array([w, 1 - w, 1 - w, w])

    return Scheme("non-uniform", lambda k: rep, rule, name="chaikin-nu")


def check_growth(scheme: Scheme, levels: int, coefficient: float = 1.0):
    """Support sizes must satisfy ``sigma_k <= sigma_1 + coefficient * k^degree``
    (``sigma_k <= sigma_1`` for fixed-size schemes)."""
    s1 = scheme.mask_at(1).support_size
    for k in range(1, levels + 1):
        sk = scheme.mask_at(k).support_size
        limit = s1 if scheme.growth_degree == 0 else s1 + coefficient * k ** scheme.growth_degree
        if sk > limit:
            raise MaskGrowthError(
                f"support {sk} at level {k} exceeds the declared bound {limit:g}")


@dataclass(frozen=True, eq=False)
class ControlPolygon:
    """Points ``p_offset .. p_{offset+n-1}`` at a subdivision level.

    ``shift`` accumulates mask centers so that :meth:`parameters` places each
    point at its location on the limit curve's parameter axis (exact for
    symmetric masks).
    """

    points: np.ndarray
    level: int = 0
    offset: int = 0
    shift: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "points", as_pointset(self.points))

    def __len__(self):
        return self.points.shape[0]

    @property
    def parameter_step(self) -> float:
        return 2.0 ** -self.level

    @property
    def indices(self) -> np.ndarray:
        return self.offset + np.arange(len(self))

    def dyadic(self) -> np.ndarray:
        """The raw dyadic values ``i 2^-level``."""
        return self.indices * self.parameter_step

    def parameters(self) -> np.ndarray:
        return (self.indices + self.shift) * self.parameter_step


@dataclass(frozen=True, eq=False)
class LevelOperator:
    """One refinement step restricted to a window of ``n_in`` points."""

    level: int
    in_offset: int
    n_in: int
    out_offset: int
    ells: np.ndarray
    weights: np.ndarray  # (m, len(ells)); zero where an index is not used
    center: float

    @property
    def m(self) -> int:
        return self.weights.shape[0]

    def apply(self, P: np.ndarray) -> np.ndarray:
        i = self.out_offset + np.arange(self.m)
        out = np.zeros((self.m, P.shape[1]))
        for q, ell in enumerate(self.ells):
            w = self.weights[:, q]
            rows = np.flatnonzero(w)
            if rows.size:
                j = (i[rows] - ell) // 2 - self.in_offset
                out[rows] += w[rows, None] * P[j]
        return out

    def matrix(self) -> np.ndarray:
        """Dense ``m x n_in`` refinement matrix."""
        S = np.zeros((self.m, self.n_in))
        i = self.out_offset + np.arange(self.m)
        for q, ell in enumerate(self.ells):
            w = self.weights[:, q]
            rows = np.flatnonzero(w)
            S[rows, (i[rows] - ell) // 2 - self.in_offset] += w[rows]
        return S


def level_operator(scheme: Scheme, level: int, n_in: int, in_offset: int = 0) -> LevelOperator:
    rep = scheme.mask_at(level)
    ells = np.arange(rep.first_index, rep.last_index + 1)
    nonzero = rep.coefficients != 0
    cand = np.arange(2 * in_offset + rep.first_index, 2 * (in_offset + n_in - 1) + rep.last_index + 1)
    diff = cand[:, None] - ells[None, :]
    used = nonzero[None, :] & (diff % 2 == 0)
    j = diff // 2
    inside = (j >= in_offset) & (j <= in_offset + n_in - 1)
    ok = np.where(used, inside, True).all(axis=1) & used.any(axis=1)
    idx = np.flatnonzero(ok)
    if idx.size < 2:
        raise DataExhaustedError(
            f"data consumed by mask growth: {n_in} points cannot feed the "
            f"level-{level} mask of support {rep.support_size}")
    if idx[-1] - idx[0] + 1 != idx.size:
        raise SubdivisionError("interior outputs are not contiguous for this mask")
    used = used[idx]
    out_offset = int(cand[idx[0]])
    if scheme.rule_at is None:
        coeffs = np.broadcast_to(rep.coefficients, used.shape)
    else:
        coeffs = np.array([np.asarray(scheme.rule_at(level, int(i)), dtype=float)
                           for i in cand[idx]])
        if coeffs.shape != used.shape:
            raise SubdivisionError("local rules must match the support of mask_at(level)")
    weights = np.where(used, coeffs, 0.0)
    return LevelOperator(level, in_offset, n_in, out_offset, ells, weights, rep.center)


def _step(scheme: Scheme, poly: ControlPolygon) -> ControlPolygon:
    op = level_operator(scheme, poly.level + 1, len(poly), poly.offset)
    return ControlPolygon(op.apply(poly.points), poly.level + 1, op.out_offset,
                          2 * poly.shift - op.center)


def refine(mask: Mask, poly: ControlPolygon) -> ControlPolygon:
    """One interior-only refinement of ``poly`` with a single mask."""
    return _step(Scheme.stationary(mask), poly)


def subdivide(scheme: Scheme, p0, levels: int, history: bool = False):
    """Refine ``levels`` times; level ``k`` uses ``mask_at(k)`` (or the
    local rules of a non-uniform scheme).  With ``history=True`` returns
    the list of polygons for levels ``0..levels``."""
    poly = p0 if isinstance(p0, ControlPolygon) else ControlPolygon(p0)
    check_growth(scheme, poly.level + levels)
    out = [poly]
    for _ in range(levels):
        poly = _step(scheme, poly)
        out.append(poly)
    return out if history else poly


@dataclass(frozen=True, eq=False)
class SlantedPair:
    """The ``n_k x n_{k-1}`` matrices giving the first and last ``n_k``
    refined points of a window."""

    S1: np.ndarray
    S2: np.ndarray
    level: int
    out_offsets: tuple = (0, 0)

    @property
    def n(self) -> int:
        return self.S1.shape[0]

    def __getitem__(self, r: int) -> np.ndarray:
        return (self.S1, self.S2)[r - 1]


def _pair_from_operator(scheme: Scheme, op: LevelOperator, n_prev: int) -> SlantedPair:
    R = op.matrix()
    m = op.m
    n = n_prev if scheme.fixed_size else math.ceil(m / 2)
    if m < n:
        raise DataExhaustedError(
            f"level {op.level} yields {m} points, fewer than the window size {n}")
    return SlantedPair(R[:n], R[m - n:], op.level, (op.out_offset, op.out_offset + m - n))


def slanted_pair(scheme: Scheme, level: int, n_prev: int, offset: int = 0) -> SlantedPair:
    """Slanted pair at ``level`` for a window of ``n_prev`` points.

    Fixed-size schemes keep ``n_k = n_prev``; growing masks use
    ``n_k = ceil(m_k / 2)``.
    """
    return _pair_from_operator(scheme, level_operator(scheme, level, n_prev, offset), n_prev)


class _PairChain:
    """Slanted pairs of a uniform scheme along the levels, built on demand."""

    def __init__(self, scheme: Scheme, n0: int):
        self.scheme = scheme
        self.dims = [n0]
        self.pairs = [None]
        self._lock = threading.Lock()

    def __call__(self, k: int) -> SlantedPair:
        with self._lock:
            while len(self.pairs) <= k:
                lvl = len(self.pairs)
                pair = slanted_pair(self.scheme, lvl, self.dims[-1])
                self.pairs.append(pair)
                self.dims.append(pair.n)
            return self.pairs[k]

    def dim(self, k: int) -> int:
        if k > 0:
            self(k)
        return self.dims[k]


def _check_reproduction(pair: SlantedPair, tol: float = 1e-10):
    for S in (pair.S1, pair.S2):
        if np.max(np.abs(S.sum(axis=1) - 1)) > tol:
            raise FlatInvarianceError(f"flat not invariant: level-{pair.level} rows do not sum to 1")


def scheme_to_staircase_sfs(scheme: Scheme, p0, C: float = 4.0) -> StaircaseSFS:
    """Staircase SFS whose backward trajectories reproduce the subdivision.

    Level 1 maps a row vector ``A`` in R^{n_1} to ``A S_r^[1] p0`` in R^m;
    level ``k > 1`` maps R^{n_k} to R^{n_{k-1}} by ``A -> A S_r^[k]``.
    Domains are the boxes ``[-C, C]^{n_k}`` around the bounded flats
    (level 0: a box holding every image of those flats).
    """
    if scheme.kind == "non-uniform":
        raise SubdivisionError("non-uniform schemes go through nonuniform_tree")
    P0 = as_pointset(p0.points if isinstance(p0, ControlPolygon) else p0)
    chain = _PairChain(scheme, P0.shape[0])

    def system(k: int) -> FunctionSystem:
        pair = chain(k)
        _check_reproduction(pair)
        if k == 1:
            return FunctionSystem(tuple(AffineMap.linear((S @ P0).T) for S in (pair.S1, pair.S2)))
        return FunctionSystem(tuple(AffineMap.linear(S.T) for S in (pair.S1, pair.S2)))

    def domain(k: int) -> Box:
        if k > 0:
            return Box.cube(chain.dim(k), C)
        pair = chain(1)
        reach = max(np.abs(S @ P0).sum(axis=0).max() for S in (pair.S1, pair.S2))
        return Box.cube(P0.shape[1], C * reach)

    sfs = StaircaseSFS(system, domain, flat=True)
    sfs.chain = chain
    return sfs


def flat_base(sfs: StaircaseSFS, C: float, count: int, seed: int):
    """Base sets: ``count`` samples of ``K_C`` in R^{n_k}, seeded per level."""
    return lambda k: sample_flat(FlatSpec(sfs.dim(k), C), count, seed + 7919 * k)


def unit_base(sfs: StaircaseSFS):
    """Base sequence ``A_k = (1, 0, ..., 0)``."""
    def base(k):
        e = np.zeros((1, sfs.dim(k)))
        e[0, 0] = 1.0
        return e
    return base


def code_window(scheme: Scheme, p0, code) -> np.ndarray:
    """``S_{i_k}^[k] ... S_{i_1}^[1] p0``: the window of points attached to ``code``."""
    P = as_pointset(p0.points if isinstance(p0, ControlPolygon) else p0)
    n = P.shape[0]
    offset = 0
    for k, r in enumerate(code, start=1):
        op = level_operator(scheme, k, n, offset)
        pair = _pair_from_operator(scheme, op, n)
        P = pair[r] @ P
        offset = pair.out_offsets[r - 1]
        n = pair.n
    return P


@dataclass(frozen=True)
class CodeLimit:
    point: np.ndarray
    spread: float
    depth: int


def code_limit_point(scheme: Scheme, p0, code, depth: int = 20) -> CodeLimit:
    """Approximate ``q_eta`` from the depth-``depth`` window of ``code``.

    The window rows should be nearly identical; ``spread`` is the largest
    distance of a row from their mean, reported rather than assumed.
    """
    code = tuple(code)[:depth]
    W = code_window(scheme, p0, code)
    q = W.mean(axis=0)
    return CodeLimit(q, float(np.max(np.linalg.norm(W - q, axis=1))), len(code))


class _WindowTree:
    # Memoized windows of a (possibly non-uniform) fixed-size scheme.

    def __init__(self, scheme: Scheme, n0: int):
        self.scheme = scheme
        self.n0 = n0
        self.offsets = {(): 0}
        self.pairs = {}
        self._lock = threading.Lock()

    def pair(self, parent: tuple) -> SlantedPair:
        with self._lock:
            pair = self.pairs.get(parent)
            if pair is None:
                level = len(parent) + 1
                op = level_operator(self.scheme, level, self.n0, self._offset(parent))
                pair = _pair_from_operator(self.scheme, op, self.n0)
                _check_reproduction(pair)
                self.pairs[parent] = pair
                for r in (1, 2):
                    self.offsets[parent + (r,)] = pair.out_offsets[r - 1]
            return pair

    def _offset(self, code: tuple) -> int:
        off = self.offsets.get(code)
        if off is None:
            self._lock.release()
            try:
                self.pair(code[:-1])
            finally:
                self._lock.acquire()
            off = self.offsets[code]
        return off


def nonuniform_tree(scheme: Scheme, p0) -> MapTree:
    """Tree of maps on R^{n_0} for a fixed-size (possibly non-uniform) scheme.

    Node ``(eta, j)`` carries the matrix producing the first (``j = 1``) or
    last (``j = 2``) ``n_0`` refined points of the window of ``eta``;
    depth-1 maps also multiply by ``p0`` and land in R^m.
    """
    if not scheme.fixed_size:
        raise SubdivisionError("tree bridge needs a fixed mask size")
    P0 = as_pointset(p0.points if isinstance(p0, ControlPolygon) else p0)
    windows = _WindowTree(scheme, P0.shape[0])

    def node(c: tuple) -> AffineMap:
        S = windows.pair(c[:-1])[c[-1]]
        return AffineMap.linear((S @ P0).T if len(c) == 1 else S.T)

    tree = MapTree(node, P0.shape[0], root_codomain=P0.shape[1])
    tree.windows = windows
    return tree


def base_matrix_valid(A, rho: int, C: float, tol: float = 1e-12) -> bool:
    """Rows are contiguous ``rho``-windows holding a vector of ``K_C`` and
    no column sum vanishes."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[1]
    if not n > rho:
        raise ValueError(f"need more columns ({n}) than the window length {rho}")
    for row in A:
        nz = np.flatnonzero(row)
        if nz.size == 0 or nz[-1] - nz[0] + 1 > rho:
            return False
        start = min(nz[0], n - rho)
        v = row[start:start + rho]
        if abs(v.sum() - 1) > tol or np.any(np.abs(v) > C + tol):
            return False
    return bool(np.all(A.sum(axis=0) != 0))


def sample_base_matrix(n: int, rho: int, C: float, seed: int, rows: int | None = None) -> np.ndarray:
    """A valid base matrix: row ``r`` holds a sampled window starting at
    column ``min(r, n - rho)`` (so with ``rows >= n - rho + 1`` every
    column is covered)."""
    rows = n if rows is None else rows
    if rows < n - rho + 1:
        raise ValueError("too few rows to cover every column")
    for attempt in range(100):
        V = sample_flat(FlatSpec(rho, C), rows, seed + 104729 * attempt)
        A = np.zeros((rows, n))
        for r in range(rows):
            s = min(r, n - rho)
            A[r, s:s + rho] = V[r]
        if base_matrix_valid(A, rho, C):
            return A
    raise RuntimeError("could not sample a valid base matrix")


def bridge_trajectory(scheme: Scheme, p0, k: int, A, associate: str = "forward") -> np.ndarray:
    """Rows of ``A S^[k] ... S^[1] p0`` using the full refinement matrices.

    The maps are linear, so ``associate="forward"`` evaluates the product
    right to left (refining ``p0`` first, then applying ``A``);
    ``"backward"`` applies ``A -> A S^[j]`` from ``j = k`` down, building
    dense matrices, and is meant for small ``k``.  ``A`` may be a scipy
    sparse matrix, which keeps identity bases cheap at deep levels.
    """
    polys = subdivide(scheme, p0, k, history=True)
    if not sparse.issparse(A):
        A = np.atleast_2d(np.asarray(A, dtype=float))
    if associate == "forward":
        return A @ polys[-1].points
    if associate != "backward":
        raise ValueError("associate must be 'forward' or 'backward'")
    B = A
    for j in range(k, 0, -1):
        prev = polys[j - 1]
        B = B @ level_operator(scheme, j, len(prev), prev.offset).matrix()
    return B @ polys[0].points


def staircase_bridge_check(scheme: Scheme, p0, k: int, seed: int, base: str = "random",
                           rho: int = 3, C: float = 2.0) -> float:
    """Hausdorff distance between the trajectory rows for a base matrix and
    the level-``k`` points."""
    pk = subdivide(scheme, p0, k).points
    n = pk.shape[0]
    if base == "identity":
        A = sparse.identity(n, format="csr")
    elif base == "random":
        A = sample_base_matrix(n, rho, C, seed)
        if not base_matrix_valid(A, rho, max(C, 1.0)):
            raise SubdivisionError("invalid base matrix")
    else:
        raise ValueError("base must be 'identity' or 'random'")
    return hausdorff(bridge_trajectory(scheme, p0, k, A), pk)


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-level Cauchy diagnostics.

    ``rows`` hold ``(k, h(p^k, p^{k+1}), max_i |p^{k+1}_{2i} - p^k_i|)``.
    """

    rows: tuple
    converging: bool

    @property
    def verdict(self) -> str:
        return "converging" if self.converging else "no convergence evidence"


def displacement(coarse: ControlPolygon, fine: ControlPolygon) -> float:
    """Largest ``|p^{k+1}_{2i} - p^k_i|`` over indices present at both levels."""
    i = coarse.indices
    keep = (2 * i >= fine.offset) & (2 * i < fine.offset + len(fine))
    if not keep.any():
        return math.nan
    d = fine.points[2 * i[keep] - fine.offset] - coarse.points[keep]
    return float(np.max(np.linalg.norm(d, axis=1)))


def convergence_report(scheme: Scheme, p0, levels: int) -> ConvergenceReport:
    if levels < 2:
        raise ValueError("need at least two levels")
    polys = subdivide(scheme, p0, levels, history=True)
    rows = []
    for k in range(levels):
        a, b = polys[k], polys[k + 1]
        rows.append((k, hausdorff(a.points, b.points), displacement(a, b)))
    h = np.array([r[1] for r in rows])
    d = np.array([r[2] for r in rows])
    # a column counts as shrinking if it vanishes or ends below its earlier
    # maximum without rising at the last step
    def shrinking(col):
        return col[-1] == 0 or (col[-1] < col[:-1].max() and col[-1] <= col[-2])
    return ConvergenceReport(tuple(rows), bool(shrinking(h) and shrinking(d)))


def scheme_from_dict(d: dict) -> Scheme:
    """Scheme from its JSON description.

    Accepts ``{"rule": name}`` for a builtin, ``{"degree": d}`` for a
    B-spline, ``{"mask": [...], "first_index": i}`` for a stationary scheme
    and ``{"kind": "non-stationary", "masks": {"1": [...], ...}}`` where the
    highest listed level repeats beyond the table.
    """
    if "rule" in d:
        return builtin_scheme(d["rule"])
    if "degree" in d:
        return bspline_scheme(int(d["degree"]))
    first = int(d.get("first_index", 0))
    if "mask" in d:
        return Scheme.stationary(Mask(d["mask"], first), name=d.get("name", "custom"))
    if "masks" in d:
        table = {int(k): Mask(v, first) for k, v in d["masks"].items()}
        top = max(table)
        sizes = {m.support_size for m in table.values()}
        kind = d.get("kind", "non-stationary")
        if kind == "stationary" and len(table) == 1:
            return Scheme.stationary(table[top], name=d.get("name", "custom"))
        return Scheme("non-stationary", lambda k: table[min(k, top)],
                      growth_degree=int(d.get("growth_degree", 0 if len(sizes) == 1 else 1)),
                      name=d.get("name", "custom"))
    raise ValueError("scheme description needs 'rule', 'degree', 'mask' or 'masks'")


def builtin_scheme(name: str) -> Scheme:
    if name == "chaikin":
        return chaikin_scheme()
    if name == "lazy":
        return lazy_scheme()
    if name == "upfn":
        return up_function_scheme()
    if name == "chaikin-nu":
        return chaikin_variant_scheme()
    if name == "divergent":
        return Scheme.stationary(Mask([2.0, 2.0]), name="divergent")
    if name.startswith("bspline:"):
        return bspline_scheme(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown scheme {name!r}")
