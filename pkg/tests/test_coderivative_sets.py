import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cone_coderiv import (
    Box,
    BoxProduct,
    EmptySet,
    Equal,
    PreconditionViolated,
    TooManyBoxes,
    Zero,
    contains,
    extreme_points,
    is_empty,
    limiting_coderivative_pieces,
    mordukhovich_coderivative,
    partition,
    project,
    projection_self_member,
    regular_coderivative,
    scaled_excluded,
    special_cases,
)
from cone_coderiv.errors import DimensionMismatch

Y = (7.0, -5.0, 4.0)


def test_positive_point_gives_singleton_y():
    assert regular_coderivative([1, 2], [3, -4]) == BoxProduct([Equal(3.0), Equal(-4.0)])


def test_two_positive_one_zero():
    s = regular_coderivative([1, 2, 0], Y)
    assert s == BoxProduct([Equal(7.0), Equal(-5.0), Box(4.0)])


def test_mixed_signs_truncate_y():
    s = regular_coderivative([1, -2], [3, -4])
    assert s.same_set(BoxProduct([Equal(3.0), Zero()]))


def test_origin_gives_product_of_intervals():
    s = mordukhovich_coderivative([0, 0], [3, 4])
    assert s == BoxProduct([Box(3.0), Box(4.0)])
    assert s == regular_coderivative([0, 0], [3, 4])


def test_zero_zero_negative():
    s = mordukhovich_coderivative([0, 0, -1], [2, 3, 5])
    assert s == BoxProduct([Box(2.0), Box(3.0), Zero()])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        regular_coderivative([1, 2], [1])


def test_contains_examples():
    assert contains(regular_coderivative([1, 0], [1, 0]), [1, 0], 0)
    assert not contains(BoxProduct([Box(3.0), Box(4.0)]), [0, 5], 0)
    assert not contains(BoxProduct([Box(-1.0), Equal(1.0)]), [0, 1], 10.0)


def test_contains_tolerance():
    s = BoxProduct([Equal(1.0), Zero(), Box(2.0)])
    assert not s.contains([1.0 + 1e-9, 0, 2.0])
    assert s.contains([1.0 + 1e-9, -1e-9, 2.0 + 1e-9], tol=1e-8)
    assert not s.contains([1.0, 0.0, -1e-7], tol=1e-8)


def test_is_empty_examples():
    assert is_empty(regular_coderivative([1, 0], [1, -1]))
    assert not is_empty(regular_coderivative([1, -1], [1, -1]))
    s = regular_coderivative([0, 0], [0, 0])
    assert not is_empty(s) and s.contains([0, 0])


def test_extreme_points_box():
    pts = extreme_points(BoxProduct([Box(3.0), Box(4.0)]))
    assert sorted(map(tuple, pts)) == [(0, 0), (0, 4), (3, 0), (3, 4)]


def test_extreme_points_singleton_and_degenerate():
    assert [tuple(p) for p in extreme_points(BoxProduct([Equal(1.0), Equal(2.0)]))] == [(1, 2)]
    assert [tuple(p) for p in extreme_points(BoxProduct([Equal(1.0), Box(0.0)]))] == [(1, 0)]


def test_extreme_points_errors():
    with pytest.raises(EmptySet):
        extreme_points(BoxProduct([Box(-1.0)]))
    with pytest.raises(TooManyBoxes):
        extreme_points(BoxProduct([Box(1.0)] * 21))
    assert len(extreme_points(BoxProduct([Box(1.0)] * 10))) == 1024


def test_same_set_ignores_representation():
    assert BoxProduct([Equal(0.0), Box(0.0)]).same_set(BoxProduct([Zero(), Zero()]))
    assert BoxProduct([Box(-1.0), Zero()]).same_set(BoxProduct([Equal(3.0), Box(-2.0)]))
    assert not BoxProduct([Box(1.0)]).same_set(BoxProduct([Equal(1.0)]))


@pytest.mark.parametrize(
    "xbar, tag",
    [((1, 2, 3), "interior_K"), ((-1, -2, -3), "interior_negK"), ((1, 2, -3), "hat_K")],
)
def test_special_cases_off_zero_set(xbar, tag):
    [case] = special_cases(xbar, Y)
    assert case.tag == tag
    assert case.predicted.same_set(regular_coderivative(xbar, Y))


def test_hat_K_truncates():
    [case] = special_cases([1, 2, -3], Y)
    assert case.predicted == BoxProduct([Equal(7.0), Equal(-5.0), Equal(0.0)])


def test_overlapping_cases_agree():
    cases = special_cases([0, 0], [0, 0])
    assert {c.tag for c in cases} == {"zero_direction", "self_direction", "origin"}
    s = regular_coderivative([0, 0], [0, 0])
    assert all(c.predicted.same_set(s) for c in cases)


def test_negative_on_zero_set_excludes_scaled_y():
    xbar, y = [1, 0], [2, -1]
    assert "negative_on_zero_set" in {c.tag for c in special_cases(xbar, y)}
    for lam in (-3.0, 0.0, 0.5, 0.999):
        assert scaled_excluded(xbar, y, lam)


def test_projection_self_member():
    np.testing.assert_array_equal(projection_self_member([1, 0]), [1, 0])
    np.testing.assert_array_equal(projection_self_member([2, 0, -1]), [2, 0, 0])
    for bad in ([0, 0], [1, 2], [-1, 0]):
        with pytest.raises(PreconditionViolated):
            projection_self_member(bad)


def test_limiting_pieces_one_dimensional():
    pieces = limiting_coderivative_pieces([0.0], [-1.0])
    assert [p.constraints for p in pieces] == [(Equal(-1.0),), (Zero(),)]
    [piece] = limiting_coderivative_pieces([0.0], [2.0])
    assert piece == regular_coderivative([0.0], [2.0])


patterned = st.integers(1, 6).flatmap(
    lambda n: st.tuples(
        st.lists(st.sampled_from([-1.0, 0.0, 1.0]), min_size=n, max_size=n),
        st.lists(st.floats(0.1, 5.0), min_size=n, max_size=n),
        st.lists(st.floats(-5.0, 5.0), min_size=n, max_size=n),
    )
)


@given(patterned)
def test_emptiness_law(data):
    signs, scale, y = data
    xbar = np.multiply(signs, scale)
    expected = any(y[i] < 0 for i in partition(xbar).bullet)
    assert is_empty(regular_coderivative(xbar, y)) == expected


@given(patterned, st.integers(0, 2**32 - 1))
@settings(max_examples=100)
def test_convexity_and_vertices(data, seed):
    signs, scale, y = data
    s = regular_coderivative(np.multiply(signs, scale), y)
    if s.is_empty():
        return
    rng = np.random.default_rng(seed)
    pts = s.extreme_points()
    boxes = sum(isinstance(c, Box) and c.hi > 0 for c in s.constraints)
    assert len(pts) == 2**boxes == len({tuple(p) for p in pts})
    assert all(s.contains(p) for p in pts)
    for _ in range(5):
        a, b, lam = s.random_member(rng), s.random_member(rng), rng.random()
        assert s.contains(lam * a + (1 - lam) * b, tol=1e-12)


def test_mordukhovich_alias_everywhere():
    for signs in itertools.product([-1.0, 0.0, 1.0], repeat=3):
        assert mordukhovich_coderivative(signs, Y) == regular_coderivative(signs, Y)


def test_self_direction_is_projection():
    for signs in itertools.product([-2.0, 0.0, 3.0], repeat=3):
        if not any(s == 0 for s in signs):
            continue
        s = regular_coderivative(signs, signs)
        assert s.is_singleton() and s.contains(project(signs))
