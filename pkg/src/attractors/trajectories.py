"""Forward and backward trajectories of a sequence of maps on one space,
with numerical convergence certificates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import Box, DimensionError, as_point, distance
from .maps import AffineMap, FunctionSystem, invariant_box_check, lipschitz_bound

# marginal tail term below which a truncated series counts as converged
NEGLIGIBLE = 1e-15


class NoCertificateError(RuntimeError):
    """No convergence certificate could be issued within the allowed depth."""


class InvariantDomainWarning(UserWarning):
    pass


@dataclass(eq=False)
class MapSequence:
    """The maps ``T_1, T_2, ...`` on R^dim, generated on demand.

    ``generator(i)`` must be pure; results are cached per index.
    """

    generator: Callable[[int], AffineMap]
    domain: Box
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.domain.dim

    def map(self, i: int) -> AffineMap:
        if i < 1:
            raise IndexError("maps are indexed from 1")
        f = self._cache.get(i)
        if f is None:
            f = self.generator(i)
            if f.in_dim != self.dim or f.out_dim != self.dim:
                raise DimensionError(f"T_{i} is not an endomorphism of R^{self.dim}")
            self._cache[i] = f
        return f

    def lipschitz(self, i: int) -> float:
        return lipschitz_bound(self.map(i))

    @classmethod
    def constant(cls, f: AffineMap, domain: Box) -> "MapSequence":
        return cls(lambda i: f, domain)


def forward(seq: MapSequence, x, k: int) -> np.ndarray:
    """``T_k o ... o T_1 (x)``."""
    p = as_point(x)
    if p.size != seq.dim:
        raise DimensionError(f"point of dimension {p.size} in R^{seq.dim}")
    for i in range(1, k + 1):
        p = seq.map(i)(p)
    return p


def backward(seq: MapSequence, x, k: int) -> np.ndarray:
    """``T_1 o ... o T_k (x)``: the deepest map acts first."""
    p = as_point(x)
    if p.size != seq.dim:
        raise DimensionError(f"point of dimension {p.size} in R^{seq.dim}")
    for i in range(k, 0, -1):
        p = seq.map(i)(p)
    return p


@dataclass(frozen=True)
class ConvergenceCertificate:
    """Cauchy-tail bound for backward trajectories at step ``k``.

    ``tail_bound = D * sum_{j=k}^{horizon} prod_{i<=j} s_i``; the certificate
    is ``conservative`` (not issued) when the last summed term is still
    above :data:`NEGLIGIBLE`.
    """

    k: int
    product_k: float
    tail_bound: float
    horizon: int
    conservative: bool

    @property
    def certified(self) -> bool:
        return not self.conservative


def _partial_products(lipschitz, horizon: int) -> np.ndarray:
    if callable(lipschitz):
        s = np.array([lipschitz(i) for i in range(1, horizon + 1)], dtype=float)
    else:
        s = np.asarray(lipschitz, dtype=float)[:horizon]
        if s.size < horizon:
            raise ValueError(f"need {horizon} Lipschitz constants, got {s.size}")
    if np.any(s < 0):
        raise ValueError("Lipschitz constants must be nonnegative")
    return np.cumprod(s)


def _tail_sums(products: np.ndarray) -> np.ndarray:
    # tails[j] = sum of products[j:], accumulated from the small end
    return np.cumsum(products[::-1])[::-1]


def certificate(lipschitz: Sequence[float] | Callable[[int], float], k: int, D: float,
                horizon: int) -> ConvergenceCertificate:
    """Certificate from the constants ``s_1 .. s_horizon`` (a sequence, or a
    callable on 1-based indices)."""
    if k < 1 or horizon < k:
        raise ValueError("need 1 <= k <= horizon")
    P = _partial_products(lipschitz, horizon)
    return _certificate_from_products(P, k, D)


def _certificate_from_products(P: np.ndarray, k: int, D: float,
                               tails: np.ndarray | None = None) -> ConvergenceCertificate:
    if tails is None:
        tails = _tail_sums(P)
    horizon = P.size
    marginal = P[-1] * max(D, 1.0)
    return ConvergenceCertificate(
        k=k,
        product_k=float(P[k - 1]),
        tail_bound=float(D * tails[k - 1]),
        horizon=horizon,
        conservative=bool(not marginal < NEGLIGIBLE),
    )


def first_certified(products: np.ndarray, D: float, tol: float,
                    max_k: int) -> ConvergenceCertificate:
    """Smallest-k certificate whose tail bound is within ``tol``."""
    tails = _tail_sums(products)
    cert = None
    for k in range(1, min(max_k, products.size) + 1):
        cert = _certificate_from_products(products, k, D, tails)
        if cert.conservative:
            break
        if cert.tail_bound <= tol:
            return cert
    detail = "series not negligible at the horizon" if cert is not None and cert.conservative \
        else f"tail bound above {tol:g} for every k <= {max_k}"
    raise NoCertificateError(f"no convergence certificate: {detail}")


def _check_domain(seq: MapSequence, k: int):
    for i in range(1, k + 1):
        if not invariant_box_check(FunctionSystem((seq.map(i),)), seq.domain):
            warnings.warn(f"declared domain is not invariant under T_{i}",
                          InvariantDomainWarning, stacklevel=3)
            return


def backward_limit(seq: MapSequence, x, tol: float, max_k: int,
                   horizon: int | None = None) -> tuple[np.ndarray, float]:
    """Backward trajectory point at the first certified step.

    Returns ``(Psi_k(x), tail_bound)``; raises :class:`NoCertificateError`
    when no ``k <= max_k`` is certified to ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    horizon = horizon or 2 * max_k
    P = np.cumprod([seq.lipschitz(i) for i in range(1, horizon + 1)])
    cert = first_certified(P, seq.domain.diameter(), tol, max_k)
    _check_domain(seq, cert.k)
    return backward(seq, x, cert.k), cert.tail_bound


def fixed_point(f: AffineMap) -> np.ndarray:
    """Exact fixed point ``(I - M)^{-1} b`` of a contractive affine map."""
    if f.in_dim != f.out_dim:
        raise DimensionError("fixed points need an endomorphism")
    if not lipschitz_bound(f) < 1:
        raise ValueError("map is not a contraction")
    return np.linalg.solve(np.eye(f.in_dim) - f.matrix, f.translation)


def forward_limit_check(seq: MapSequence, limit_map: AffineMap, x,
                        k: int) -> tuple[np.ndarray, float]:
    """``Phi_k(x)`` and its distance to the fixed point of ``limit_map``."""
    p = fixed_point(limit_map)
    phi = forward(seq, x, k)
    return phi, distance(phi, p)


def sup_gap_on_box(f: AffineMap, g: AffineMap, C: Box) -> float:
    """``sup_{x in C} |f(x) - g(x)|``, attained at a vertex for affine maps."""
    V = C.vertices()
    return float(np.max(np.linalg.norm(f.apply_set(V) - g.apply_set(V), axis=1)))


def geometric_horizon(s: float, D: float) -> int:
    """Steps until ``D * s**k`` falls below :data:`NEGLIGIBLE` (for ``s < 1``)."""
    if not 0 <= s < 1:
        raise ValueError("need 0 <= s < 1")
    if s == 0 or D <= 0:
        return 1
    return max(1, math.ceil(math.log(NEGLIGIBLE / max(D, 1.0)) / math.log(s)) + 1)
