"""Staircase sequences: maps ``T_i : R^{n_i} -> R^{n_{i-1}}`` between spaces
of varying dimension, their backward trajectories with base sequences, map
grouping, partial limits, and staircase sequences of function systems."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .geometry import Box, DimensionError, as_point, as_pointset, distance, hausdorff
from .maps import (AffineMap, FunctionSystem, apply_system, compose_all,
                   flat_lipschitz_bound, lipschitz_bound)
from .trajectories import (ConvergenceCertificate, NoCertificateError,
                           _certificate_from_products, first_certified)

AUTO_GROUPINGS = (1, 2, 4, 8)


def _lipschitz(f: AffineMap, flat: bool) -> float:
    return flat_lipschitz_bound(f) if flat else lipschitz_bound(f)


@dataclass(eq=False)
class StaircaseSequence:
    """Maps ``T_i`` (``i >= 1``) from R^{n_i} to R^{n_{i-1}}.

    ``domains(i)`` gives the box ``C_i`` in R^{n_i} (``i >= 0``), or is
    ``None`` when no invariant domains are known.  With ``flat=True`` the
    domains are taken to lie in the sum-one flats and Lipschitz constants
    are measured along them.
    """

    generator: Callable[[int], AffineMap]
    domains: Callable[[int], Box] | None = None
    flat: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def map(self, i: int) -> AffineMap:
        if i < 1:
            raise IndexError("maps are indexed from 1")
        f = self._cache.get(i)
        if f is None:
            f = self.generator(i)
            self._cache[i] = f
        return f

    def dim(self, i: int) -> int:
        """``n_i``: input dimension of ``T_i`` (``n_0`` is the output of ``T_1``)."""
        return self.map(1).out_dim if i == 0 else self.map(i).in_dim

    def lipschitz(self, i: int) -> float:
        return _lipschitz(self.map(i), self.flat)


def staircase_trajectory(seq: StaircaseSequence, base: Callable[[int], object],
                         k: int) -> np.ndarray:
    """``p_k = T_1 o ... o T_k (x_k)`` with ``x_k = base(k)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    p = as_point(base(k))
    for i in range(k, 0, -1):
        f = seq.map(i)
        if p.size != f.in_dim:
            raise DimensionError(
                f"dimension-chain mismatch at T_{i}: got R^{p.size}, expected R^{f.in_dim}")
        p = f(p)
    return p


def staircase_equivalence_gap(seq: StaircaseSequence, base_a, base_b, k: int) -> float:
    """Distance between the step-``k`` points of two base sequences."""
    return distance(staircase_trajectory(seq, base_a, k), staircase_trajectory(seq, base_b, k))


def group(seq: StaircaseSequence, ell: int) -> StaircaseSequence:
    """``G_j = T_{(j-1)l+1} o ... o T_{jl}``, with ``C'_j = C_{jl}``."""
    if ell < 1:
        raise ValueError("group size must be at least 1")
    if ell == 1:
        return seq
    domains = None
    if seq.domains is not None:
        domains = lambda j: seq.domains(j * ell)  # noqa: E731
    return StaircaseSequence(
        lambda j: compose_all(seq.map(i) for i in range((j - 1) * ell + 1, j * ell + 1)),
        domains, seq.flat)


def group_base(base, ell: int):
    """Base sequence of a grouped sequence: ``x'_j = x_{j l}``."""
    return lambda j: base(j * ell)


@dataclass(frozen=True)
class StaircaseLimit:
    """A certified step of a backward staircase trajectory.

    ``k`` counts grouped steps, so the original depth is ``k * grouping``.
    ``empirical`` marks a diameter taken from sampled points instead of
    declared domains.
    """

    point: np.ndarray
    bound: float
    k: int
    grouping: int
    empirical: bool
    certificate: ConvergenceCertificate


def _diameter(seq: StaircaseSequence, base, horizon: int) -> tuple[float, bool]:
    if seq.domains is not None:
        return max(seq.domains(i).diameter() for i in range(horizon + 1)), False
    # C_i: box of x_i and T_{i+1}(x_{i+1}), padded by 10% of its extent
    worst = 0.0
    for i in range(1, horizon):
        pair = np.stack([as_point(base(i)), seq.map(i + 1)(as_point(base(i + 1)))])
        worst = max(worst, Box.bounding(pair, inflate=0.1).diameter())
    return worst, True


def _limit_once(seq, base, tol, max_k, horizon, ell):
    P = np.cumprod([seq.lipschitz(i) for i in range(1, horizon + 1)])
    D, empirical = _diameter(seq, base, horizon)
    cert = first_certified(P, D, tol, max_k)
    return StaircaseLimit(staircase_trajectory(seq, base, cert.k), cert.tail_bound,
                          cert.k, ell, empirical, cert)


def staircase_limit(seq: StaircaseSequence, base, tol: float, max_k: int,
                    grouping: str | int = "auto", horizon: int | None = None) -> StaircaseLimit:
    """First certified point of the backward staircase trajectory.

    ``grouping="auto"`` tries the raw sequence and then groups of 2, 4 and 8
    maps; an integer forces one group size.  ``max_k`` and ``horizon`` count
    original (ungrouped) maps; the horizon defaults to ``2 * max_k``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    horizon = horizon or 2 * max_k
    sizes = AUTO_GROUPINGS if grouping == "auto" else (int(grouping),)
    failures = []
    for ell in sizes:
        if horizon // ell < 1:
            continue
        try:
            return _limit_once(group(seq, ell), group_base(base, ell), tol,
                               max(1, max_k // ell), horizon // ell, ell)
        except NoCertificateError as exc:
            failures.append(f"l={ell}: {exc}")
    raise NoCertificateError("; ".join(failures) or "no convergence certificate")


def shifted(seq: StaircaseSequence, m: int) -> StaircaseSequence:
    """The tail sequence ``T_m, T_{m+1}, ...`` re-indexed from 1."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if m == 1:
        return seq
    domains = None
    if seq.domains is not None:
        domains = lambda i: seq.domains(i + m - 1)  # noqa: E731
    return StaircaseSequence(lambda i: seq.map(i + m - 1), domains, seq.flat)


def partial_limit(seq: StaircaseSequence, base, m: int, tol: float, max_k: int,
                  grouping: str | int = "auto") -> np.ndarray:
    """Limit of ``T_m o ... o T_k (x_k)`` in R^{n_{m-1}}."""
    tail = shifted(seq, m)
    return staircase_limit(tail, lambda i: base(i + m - 1), tol, max_k, grouping).point


@dataclass(eq=False)
class StaircaseSFS:
    """Function systems ``F_i`` whose maps go from R^{n_i} to R^{n_{i-1}}."""

    generator: Callable[[int], FunctionSystem]
    domains: Callable[[int], Box] | None = None
    flat: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def system(self, i: int) -> FunctionSystem:
        if i < 1:
            raise IndexError("systems are indexed from 1")
        F = self._cache.get(i)
        if F is None:
            F = self.generator(i)
            self._cache[i] = F
        return F

    def dim(self, i: int) -> int:
        return self.system(1).out_dim if i == 0 else self.system(i).in_dim

    def lipschitz(self, i: int) -> float:
        """``s_i``: the largest member constant of ``F_i``."""
        return max(_lipschitz(f, self.flat) for f in self.system(i))


def staircase_sfs_trajectory(sfs: StaircaseSFS, base_sets, k: int, start: int = 1) -> np.ndarray:
    """``F_start o ... o F_k (A_k)`` as a point set.

    Rows are ordered by the codes ``(r_start, ..., r_k)`` lexicographically,
    then by the rows of ``A_k``.
    """
    if not 1 <= start <= k:
        raise ValueError("need 1 <= start <= k")
    S = as_pointset(base_sets(k))
    for i in range(k, start - 1, -1):
        F = sfs.system(i)
        if S.shape[1] != F.in_dim:
            raise DimensionError(
                f"dimension-chain mismatch at F_{i}: got R^{S.shape[1]}, expected R^{F.in_dim}")
        S = apply_system(F, S)
    return S


def sfs_self_referential_gap(sfs: StaircaseSFS, base_sets, m: int, k: int,
                             inner_k: int | None = None) -> float:
    """``h(P_{m-1}, F_m(P_m))`` with both sides truncated at depth ``k``
    (the inner side at ``inner_k`` when given)."""
    if not 1 <= m < k:
        raise ValueError("need 1 <= m < k")
    outer = staircase_sfs_trajectory(sfs, base_sets, k, start=m)
    inner = staircase_sfs_trajectory(sfs, base_sets, inner_k or k, start=m + 1)
    return hausdorff(outer, apply_system(sfs.system(m), inner))


def group_sfs(sfs: StaircaseSFS, ell: int) -> StaircaseSFS:
    """Grouped systems: all ``prod |F_i|`` compositions of ``ell`` consecutive levels."""
    if ell < 1:
        raise ValueError("group size must be at least 1")
    if ell == 1:
        return sfs

    def gen(j):
        levels = [sfs.system(i) for i in range((j - 1) * ell + 1, j * ell + 1)]
        return FunctionSystem(tuple(compose_all(fs) for fs in itertools.product(*levels)))

    domains = None
    if sfs.domains is not None:
        domains = lambda j: sfs.domains(j * ell)  # noqa: E731
    return StaircaseSFS(gen, domains, sfs.flat)


@dataclass(frozen=True)
class GroupingAttempt:
    """Grouped constants of one group size over the measured levels.

    ``extrapolated`` marks a tail bound that continues the series past the
    last measured group geometrically with that group's constant; it is
    only formed when the strict certificate is not available and that last
    constant is below 1.
    """

    grouping: int
    lipschitz: np.ndarray
    products: np.ndarray
    diameter: float
    certificate: ConvergenceCertificate
    tail_bound: float
    extrapolated: bool

    @property
    def certified(self) -> bool:
        return self.certificate.certified or math.isfinite(self.tail_bound)


@dataclass(frozen=True)
class SFSCertification:
    """Outcome of trying each group size on a staircase SFS.

    ``grouping`` is the first size that certifies (strictly or by
    extrapolation), or ``None`` when none does.
    """

    attempts: tuple
    grouping: int | None

    @property
    def certified(self) -> bool:
        return self.grouping is not None

    @property
    def extrapolated(self) -> bool:
        return self.certified and self.attempt(self.grouping).extrapolated

    def attempt(self, ell: int) -> GroupingAttempt:
        for a in self.attempts:
            if a.grouping == ell:
                return a
        raise KeyError(ell)

    def rows(self):
        """Table rows ``(grouping, k, s_k, prod s_i, tail_bound)``; the tail
        of each row sums the measured products from ``k`` on."""
        for a in self.attempts:
            for k in range(1, a.products.size + 1):
                cert = _certificate_from_products(a.products, k, a.diameter)
                yield a.grouping, k, float(a.lipschitz[k - 1]), float(a.products[k - 1]), \
                    cert.tail_bound


def certify_sfs(sfs: StaircaseSFS, levels: int, groupings=AUTO_GROUPINGS,
                stop_at_first: bool = False) -> SFSCertification:
    """Try each group size on the first ``levels`` systems.

    The diameter is the largest declared domain diameter; without declared
    domains it is 1 (the tail sums are then relative).
    """
    attempts, chosen = [], None
    for ell in groupings:
        count = levels // ell
        if count < 1:
            continue
        g = group_sfs(sfs, ell)
        s = np.array([g.lipschitz(j) for j in range(1, count + 1)])
        P = np.cumprod(s)
        D = 1.0 if sfs.domains is None else max(
            sfs.domains(i).diameter() for i in range(0, count * ell + 1))
        cert = _certificate_from_products(P, 1, D)
        extrapolated = False
        if cert.certified:
            tail = cert.tail_bound
        elif s[-1] < 1:
            tail = cert.tail_bound + D * P[-1] * s[-1] / (1 - s[-1])
            extrapolated = True
        else:
            tail = math.inf
        a = GroupingAttempt(ell, s, P, D, cert, tail, extrapolated)
        attempts.append(a)
        if a.certified and chosen is None:
            chosen = ell
            if stop_at_first:
                break
    return SFSCertification(tuple(attempts), chosen)
