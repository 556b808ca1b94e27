import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from attractors.geometry import DimensionError, distance, hausdorff
from attractors.maps import AffineMap, FunctionSystem
from attractors.tree import (EnumerationBudgetError, MapTree, all_codes, attractor_error_bound,
                             cantor_system, cantor_tree, code_str, code_value,
                             constant_tree, continuity_modulus_check, example_tfs_tree, frechet,
                             parse_code, path_point, prolong, self_referential_check, subtree,
                             sup_path_products, tree_attractor, tree_bounding_box, truncate)

codes_st = st.lists(st.sampled_from([1, 2]), min_size=1, max_size=12).map(tuple)


def test_prolong_truncate():
    assert prolong((1, 2), 1) == (1, 2, 1)
    assert prolong((), 2) == (2,)
    with pytest.raises(ValueError):
        prolong((1,), 3)
    assert truncate((1, 2, 2, 1), 2) == (1, 2)
    with pytest.raises(ValueError):
        truncate((1, 2), 3)


@given(codes_st, st.sampled_from([1, 2]))
def test_prolong_then_truncate_is_identity(c, j):
    assert truncate(prolong(c, j), len(c)) == c
    assert truncate(c, len(c)) == c
    if len(c) >= 3:
        assert truncate(truncate(c, 3), 2) == truncate(c, 2)


def test_code_value_and_frechet():
    assert code_value((1, 1, 1)) == 0
    assert code_value((2,)) == 0.5
    assert code_value((2, 1, 2)) == 0.625
    assert frechet((1, 2), (1, 2)) == 0
    assert frechet((2, 1, 1), (1, 1, 1)) == pytest.approx(1 / 3)
    assert frechet((1, 2), (2, 1)) == pytest.approx(4 / 9)
    with pytest.raises(ValueError):
        frechet((1,), (1, 2))
    assert parse_code(code_str((1, 2, 2))) == (1, 2, 2)


def test_path_point_examples():
    t = example_tfs_tree()
    assert np.array_equal(path_point(t, (1,), (0, 0)), [4, 4])
    left = constant_tree(FunctionSystem((AffineMap.scaling(1 / 3), AffineMap.scaling(1 / 3))))
    assert path_point(left, (1, 1, 1), [1.0])[0] == pytest.approx(1 / 27, abs=1e-16)
    # f_22 rotates by 3 t((2)) + 1 = 2.5, f_2 by 3 t(()) + 1 = 1
    p = np.array([-2.0, 0.0])  # f_22(0)
    c, s = math.cos(1.0), math.sin(1.0)
    expected = 0.8 * np.array([c * p[0] + s * p[1], -s * p[0] + c * p[1]]) + [-2.0, 0.0]
    assert np.allclose(path_point(t, (2, 2), (0, 0)), expected, atol=1e-15)
    with pytest.raises(DimensionError):
        path_point(t, (1,), (0, 0, 0))


def test_example_tree_nodes():
    t = example_tfs_tree()
    assert np.array_equal(t.map((1,)).matrix, [[0.4, 0.4], [-0.5, 0.3]])
    assert np.array_equal(t.map((1,)).translation, [4, 4])
    rot1 = 0.8 * np.array([[math.cos(1), math.sin(1)], [-math.sin(1), math.cos(1)]])
    assert np.allclose(t.map((2,)).matrix, rot1)
    assert np.allclose(t.map((1, 2)).matrix, rot1)
    rot = 0.8 * np.array([[math.cos(2.5), math.sin(2.5)], [-math.sin(2.5), math.cos(2.5)]])
    assert np.allclose(t.map((2, 2)).matrix, rot)


def test_tree_attractor_examples():
    t = example_tfs_tree()
    U = tree_attractor(t, (0, 0), 1)
    assert np.allclose(U, [t.map((1,))((0, 0)), t.map((2,))((0, 0))])
    C = tree_attractor(cantor_tree(), [0.0], 2)
    assert np.allclose(C.ravel(), [0, 2 / 9, 2 / 3, 8 / 9], atol=1e-15)
    with pytest.raises(EnumerationBudgetError):
        tree_attractor(cantor_tree(), [0.0], 25)


def test_tree_attractor_rows_follow_lexicographic_codes():
    t = example_tfs_tree()
    U = tree_attractor(t, (0.5, -1.0), 5)
    for row, c in zip(U, all_codes(5)):
        assert np.allclose(row, path_point(t, c, (0.5, -1.0)), atol=1e-12)


def test_constant_tree_reduces_to_iterated_system():
    F = FunctionSystem((AffineMap([[0.5, 0.1], [0, 0.4]], [0, 1]),
                        AffineMap([[0.3, 0], [0.2, 0.3]], [1, 0])))
    S = np.zeros((1, 2))
    for _ in range(6):
        S = F(S)
    assert hausdorff(tree_attractor(constant_tree(F), (0, 0), 6), S) <= 1e-12


def test_subtree_examples():
    t = example_tfs_tree()
    st1 = subtree(t, 1)
    assert st1.map((2,)) is t.map((1, 2))
    ct = cantor_tree()
    assert np.array_equal(subtree(ct, 2).map((1, 1)).matrix, ct.map((1, 1)).matrix)
    assert self_referential_check(t, (0, 0), 5) == 0.0


@pytest.mark.parametrize("depth", [2, 3, 4, 5, 6, 8])
def test_self_referential_small_depths(depth):
    assert self_referential_check(cantor_tree(), [0.0], depth) <= 1e-12
    assert self_referential_check(example_tfs_tree(), (1.0, 2.0), depth) <= 1e-12


def test_base_point_independence():
    t = example_tfs_tree()
    rng = np.random.default_rng(3)
    box = tree_bounding_box(t, (0, 0), 8)
    delta = sup_path_products(t, 8)[-1]
    for _ in range(5):
        x, y = rng.uniform(box.lower, box.upper, size=(2, 2))
        gap = hausdorff(tree_attractor(t, x, 8), tree_attractor(t, y, 8))
        assert gap <= distance(x, y) * delta + 1e-9


def test_monotone_cauchy_property():
    t = example_tfs_tree()
    x = (0.0, 0.0)
    deltas = sup_path_products(t, 10)
    D = tree_bounding_box(t, x, 11).diameter()
    for k in range(1, 10):
        gap = hausdorff(tree_attractor(t, x, k), tree_attractor(t, x, k + 1))
        assert gap <= D * deltas[k - 1] + 1e-9


def test_continuity_modulus_examples():
    t = example_tfs_tree()
    assert continuity_modulus_check(t, (0, 0), 12, 200, seed=1)
    assert continuity_modulus_check(cantor_tree(), [0.0], 10, 100, seed=2)


def test_error_bound_for_cantor():
    b = attractor_error_bound(cantor_tree(), [0.0], 10)
    assert b.rate == pytest.approx(1 / 3)
    assert b.bound == pytest.approx(b.diameter * 1.5 * 3.0 ** -10)


def test_tree_dimension_checks():
    bad = MapTree(lambda c: AffineMap.identity(3), 2)
    with pytest.raises(DimensionError):
        bad.map((1,))
