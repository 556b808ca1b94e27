import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attractors.geometry import Box, DimensionError, FlatSpec, distance, hausdorff, sample_flat
from attractors.maps import AffineMap, FunctionSystem, apply_system
from attractors.staircase import (StaircaseSequence, StaircaseSFS, certify_sfs, group,
                                  group_base, group_sfs, partial_limit, sfs_self_referential_gap,
                                  staircase_equivalence_gap, staircase_limit,
                                  staircase_sfs_trajectory, staircase_trajectory)
from attractors.subdivision import scheme_to_staircase_sfs, up_function_scheme
from attractors.trajectories import MapSequence, NoCertificateError, backward_limit
from attractors.tree import cantor_system


def halving_chain():
    return StaircaseSequence(lambda i: AffineMap.scaling(0.5), lambda i: Box([-1.0], [1.0]))


def folding_map(i):
    # R^{i+1} -> R^i, v -> (v_1 + v_{i+1}, v_2, ..., v_i) / 2
    M = np.zeros((i, i + 1))
    M[:i, :i] = np.eye(i)
    M[0, i] = 1.0
    return AffineMap.linear(M / 2)


def growing_chain():
    """Random contractions R^{i+1} -> R^i with declared boxes [-3, 3]^n."""
    def gen(i):
        r = np.random.default_rng(500 + i)
        M = r.normal(size=(i, i + 1))
        M *= 0.6 / np.abs(M).sum(axis=1).max()
        return AffineMap(M, r.uniform(-1, 1, size=i))
    return StaircaseSequence(gen, lambda i: Box.cube(i + 1, 3.0))


def test_trajectory_examples():
    seq = halving_chain()
    for k in (1, 4, 9):
        assert staircase_trajectory(seq, lambda i: [1.0], k)[0] == 2.0 ** -k
    fold = StaircaseSequence(folding_map)
    assert np.array_equal(staircase_trajectory(fold, lambda i: np.ones(i + 1), 1), [1.0])
    x1 = np.array([0.3, -0.2])
    assert np.array_equal(staircase_trajectory(fold, lambda i: x1, 1), folding_map(1)(x1))


def test_trajectory_dimension_chain_mismatch():
    fold = StaircaseSequence(folding_map)
    with pytest.raises(DimensionError):
        staircase_trajectory(fold, lambda i: np.ones(i + 2), 3)


def test_equivalence_gap_examples():
    seq = halving_chain()
    assert staircase_equivalence_gap(seq, lambda i: [0.5], lambda i: [0.5], 5) == 0
    for k in range(1, 10):
        gap = staircase_equivalence_gap(seq, lambda i: [0.0], lambda i: [1.0], k)
        assert gap <= 2.0 ** -k
    ident = StaircaseSequence(lambda i: AffineMap.identity(1), lambda i: Box([-1.0], [1.0]))
    assert staircase_equivalence_gap(ident, lambda i: [-1.0], lambda i: [1.0], 3) <= 2.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 20), st.integers(1, 8))
def test_equivalence_bound(seed, k):
    seq = growing_chain()
    rng = np.random.default_rng(seed)
    a = {i: rng.uniform(-3, 3, size=i + 1) for i in range(1, k + 1)}
    b = {i: rng.uniform(-3, 3, size=i + 1) for i in range(1, k + 1)}
    D = max(seq.domains(i).diameter() for i in range(k + 1))
    prod = np.prod([seq.lipschitz(i) for i in range(1, k + 1)])
    assert staircase_equivalence_gap(seq, a.get, b.get, k) <= D * prod + 1e-9


def test_group_examples():
    seq = halving_chain()
    assert group(seq, 1) is seq
    G = group(StaircaseSequence(lambda i: AffineMap.scaling(0.5)), 2)
    assert G.map(1).matrix[0, 0] == 0.25


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 20))
def test_grouping_consistency(ell, j, seed):
    seq = growing_chain()
    rng = np.random.default_rng(seed)
    base = {i: rng.uniform(-3, 3, size=i + 1) for i in range(1, 17)}
    grouped = staircase_trajectory(group(seq, ell), group_base(base.get, ell), j)
    assert np.allclose(grouped, staircase_trajectory(seq, base.get, j * ell), atol=1e-10)
    assert group(seq, ell).lipschitz(j) <= np.prod(
        [seq.lipschitz(i) for i in range((j - 1) * ell + 1, j * ell + 1)]) * (1 + 1e-9)


def test_staircase_limit_matches_one_dimensional_backward_limit():
    f = AffineMap.scaling(0.5, 1.0)
    box = Box([-4.0], [4.0])
    seq = StaircaseSequence(lambda i: f, lambda i: box)
    r = staircase_limit(seq, lambda i: [0.0], 1e-9, 80)
    p, _ = backward_limit(MapSequence.constant(f, box), [0.0], 1e-9, 80)
    assert np.array_equal(r.point, p)
    assert r.grouping == 1 and not r.empirical


def test_staircase_limit_refuses_non_contractive():
    seq = StaircaseSequence(lambda i: AffineMap.identity(1), lambda i: Box([-1.0], [1.0]))
    with pytest.raises(NoCertificateError):
        staircase_limit(seq, lambda i: [0.0], 1e-6, 40)


def test_alternating_constants_limit():
    # 1.1 and 0.4 alternate; the raw series already converges
    seq = StaircaseSequence(lambda i: AffineMap.scaling(1.1 if i % 2 else 0.4, 1.0),
                            lambda i: Box([-10.0], [10.0]))
    r = staircase_limit(seq, lambda i: [0.0], 1e-8, 80)
    fixed = (1.1 * 1.0 + 1.0) / (1 - 0.44)  # fixed point of the pair map
    assert abs(r.point[0] - fixed) <= 1e-8


def test_grouping_is_needed_for_alternating_diagonals():
    D1 = AffineMap.linear(np.diag([2.0, 0.1]))
    D2 = AffineMap.linear(np.diag([0.1, 2.0]))
    seq = StaircaseSequence(lambda i: D1 if i % 2 else D2, lambda i: Box.cube(2, 1.0))
    with pytest.raises(NoCertificateError):
        staircase_limit(seq, lambda i: [1.0, 1.0], 1e-8, 60, grouping=1)
    r = staircase_limit(seq, lambda i: [1.0, 1.0], 1e-8, 60)
    assert r.grouping == 2
    assert np.abs(r.point).max() <= 1e-8


def test_empirical_domains_are_flagged():
    seq = StaircaseSequence(lambda i: AffineMap.scaling(0.5, 1.0))
    r = staircase_limit(seq, lambda i: [0.0], 1e-8, 80)
    assert r.empirical and abs(r.point[0] - 2.0) <= 1e-7


def test_partial_limit_examples():
    f = AffineMap.scaling(0.5, 1.0)
    box = Box([-4.0], [4.0])
    seq = StaircaseSequence(lambda i: f, lambda i: box)
    base = lambda i: [0.0]  # noqa: E731
    assert np.array_equal(partial_limit(seq, base, 1, 1e-9, 80),
                          staircase_limit(seq, base, 1e-9, 80).point)
    half = halving_chain()
    for m in (1, 2, 5):
        assert abs(partial_limit(half, lambda i: [1.0], m, 1e-9, 80)[0]) <= 1e-9


def test_partial_limit_chain_relation():
    seq = growing_chain()
    base = lambda i: np.zeros(i + 1)  # noqa: E731
    tol = 1e-8
    # partial_limit(m) is tau_{m-1}, which should equal T_m(tau_m)
    for m in range(1, 9):
        tau_prev = partial_limit(seq, base, m, tol, 60)
        tau = partial_limit(seq, base, m + 1, tol, 60)
        assert distance(tau_prev, seq.map(m)(tau)) <= 2 * tol


def test_sfs_trajectory_examples():
    fold = StaircaseSequence(folding_map)
    singleton = StaircaseSFS(lambda i: FunctionSystem((folding_map(i),)))
    base = lambda i: np.linspace(0, 1, i + 1)  # noqa: E731
    for k in (1, 3, 5):
        assert np.array_equal(staircase_sfs_trajectory(singleton, lambda i: base(i)[None], k)[0],
                              staircase_trajectory(fold, base, k))
    cantor = StaircaseSFS(lambda i: cantor_system())
    S = staircase_sfs_trajectory(cantor, lambda i: [[0.0]], 2)
    assert np.allclose(np.sort(S.ravel()), [0, 2 / 9, 2 / 3, 8 / 9], atol=1e-15)
    A1 = np.array([[0.1], [0.5]])
    assert np.array_equal(staircase_sfs_trajectory(cantor, lambda i: A1, 1),
                          apply_system(cantor_system(), A1))


def test_sfs_self_referential_gap():
    cantor = StaircaseSFS(lambda i: cantor_system())
    base = lambda i: [[0.0]]  # noqa: E731
    assert sfs_self_referential_gap(cantor, base, 1, 10) <= 1e-12
    # mismatched depth: bounded by the tail of the contraction
    gap = sfs_self_referential_gap(cantor, base, 1, 10, inner_k=9)
    assert gap <= 3.0 ** -9 + 1e-15
    p0 = np.zeros((44, 1))
    p0[22] = 1.0
    up = scheme_to_staircase_sfs(up_function_scheme(), p0, C=2.0)
    ubase = lambda k: sample_flat(FlatSpec(up.dim(k), 2.0), 2, k)  # noqa: E731
    assert sfs_self_referential_gap(up, ubase, 2, 12) <= 1e-12


def test_group_sfs_composes_every_branch():
    cantor = StaircaseSFS(lambda i: cantor_system())
    g = group_sfs(cantor, 3)
    assert len(g.system(1)) == 8
    S = staircase_sfs_trajectory(g, lambda i: [[0.0]], 1)
    assert hausdorff(S, staircase_sfs_trajectory(cantor, lambda i: [[0.0]], 3)) <= 1e-15


def test_certify_sfs_for_cantor():
    cantor = StaircaseSFS(lambda i: cantor_system(), lambda i: Box([0.0], [1.0]))
    cert = certify_sfs(cantor, 40)
    assert cert.grouping == 1 and not cert.extrapolated
    rows = list(cert.rows())
    assert rows[0][:2] == (1, 1) and rows[0][2] == pytest.approx(1 / 3)


def test_certify_sfs_reports_divergence():
    ident = StaircaseSFS(lambda i: FunctionSystem((AffineMap.identity(1),)))
    cert = certify_sfs(ident, 16)
    assert not cert.certified
    assert all(np.isinf(a.tail_bound) for a in cert.attempts)
