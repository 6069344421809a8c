import numpy as np
import pytest
from hypothesis import given, strategies as st

from cone_coderiv import (
    Box,
    Equal,
    IndexSet,
    InputError,
    PreconditionViolated,
    SeqBoxProduct,
    SparseSeq,
    Zero,
    finite_embed,
    positive_support_check,
    regular_coderivative,
    seq_mordukhovich_coderivative,
    seq_project,
    seq_regular_coderivative,
)
from cone_coderiv.l2_model import in_boundary_KN, in_KN, in_RN, in_ZN, preceq_N, seq_partition


def test_sparse_normalizes_zeros():
    assert SparseSeq({0: 1.0, 3: 0.0}) == SparseSeq({0: 1.0})
    assert SparseSeq({0: 1.0, 3: 0.0}).support == (0,)
    assert SparseSeq()[7] == 0.0


@pytest.mark.parametrize("bad", [{-1: 1.0}, {"a": 1.0}, {0: float("nan")}, {True: 1.0}])
def test_sparse_rejects(bad):
    with pytest.raises(InputError):
        SparseSeq(bad)


def test_sparse_arithmetic():
    a, b = SparseSeq({0: 1.0, 2: 3.0}), SparseSeq({2: -3.0, 5: 4.0})
    assert a + b == SparseSeq({0: 1.0, 5: 4.0})
    assert (a - a).support == ()
    assert 2 * a == SparseSeq({0: 2.0, 2: 6.0})
    assert a.dot(b) == -9.0
    assert b.norm() == 5.0


@pytest.mark.parametrize(
    "x, expected",
    [({0: 1, 3: -2}, {0: 1}), ({}, {}), ({5: 2.5}, {5: 2.5})],
)
def test_seq_project(x, expected):
    assert seq_project(SparseSeq(x)) == SparseSeq(expected)


def test_seq_coderivative_examples():
    s = seq_regular_coderivative(SparseSeq({0: 1}), SparseSeq({0: 4, 1: 5}))
    assert dict(s.explicit) == {0: Equal(4.0), 1: Box(5.0)}
    assert s.constraint(99) == Box(0.0)

    theta = seq_regular_coderivative(SparseSeq(), SparseSeq())
    assert dict(theta.explicit) == {} and theta.contains(SparseSeq())
    assert not theta.contains(SparseSeq({3: 1e-3}))

    assert seq_regular_coderivative(SparseSeq({0: 1}), SparseSeq({1: -1})).is_empty()


def test_seq_mordukhovich_examples():
    s = seq_mordukhovich_coderivative(SparseSeq(), SparseSeq({0: 1}))
    assert dict(s.explicit) == {0: Box(1.0)}
    s = seq_mordukhovich_coderivative(SparseSeq({0: -1}), SparseSeq({0: 7}))
    assert dict(s.explicit) == {0: Zero()}
    x, y = SparseSeq({0: 2, 3: -1}), SparseSeq({1: 4, 3: 2})
    assert seq_mordukhovich_coderivative(x, y) == seq_regular_coderivative(x, y)


def test_zero_set_is_zero_not_negative():
    p = seq_partition(SparseSeq({0: 1.0, 1: -1.0}))
    assert p.in_bullet(2) and not p.in_bullet(1)


def test_index_set_relations():
    N = IndexSet(frozenset({0, 1}))
    assert in_ZN(SparseSeq({0: 1, 1: 2}), N)
    assert not in_ZN(SparseSeq({0: 1, 1: 2, 4: 1}), N)
    assert in_KN(SparseSeq({0: 1, 2: -1}), N)
    assert not in_KN(SparseSeq({0: -1}), N)
    assert preceq_N(SparseSeq({0: 1}), SparseSeq({0: 2}), N)
    assert not preceq_N(SparseSeq({0: 1, 4: 1}), SparseSeq({0: 2}), N)
    assert in_boundary_KN(SparseSeq({3: -1}), N)
    assert not in_boundary_KN(SparseSeq({1: 1}), N)
    assert in_RN(SparseSeq({1: 5}), N) and not in_RN(SparseSeq({2: 5}), N)
    assert not in_ZN(SparseSeq({0: 1}), N.complement())
    assert 7 in N.complement() and 0 not in N.complement()


def test_positive_support_examples():
    x, M = SparseSeq({0: 1}), IndexSet(frozenset({0}))
    rep = positive_support_check(x, SparseSeq({0: 4, 1: 5}), M)
    assert rep.y_is_member and rep.y_in_K_complement and rep.membership_equivalence
    assert rep.order_description_matches and not rep.printed_order_matches
    assert rep.singleton_holds is None

    rep = positive_support_check(x, SparseSeq({0: 4, 1: -5}), M)
    assert not rep.y_is_member and rep.membership_equivalence

    rep = positive_support_check(x, SparseSeq({0: 4}), M)
    assert rep.y_in_boundary and rep.singleton_holds


def test_positive_support_preconditions():
    with pytest.raises(PreconditionViolated):
        positive_support_check(SparseSeq({0: 1, 1: 1}), SparseSeq(), {0})
    with pytest.raises(PreconditionViolated):
        positive_support_check(SparseSeq(), SparseSeq(), set())


def test_finite_embed():
    xs, ys = finite_embed(SparseSeq({0: 1}), SparseSeq({1: 2}), 3)
    np.testing.assert_array_equal(xs, [1, 0, 0])
    np.testing.assert_array_equal(ys, [0, 2, 0])
    xs, ys = finite_embed(SparseSeq(), SparseSeq(), 1)
    assert xs.tolist() == [0.0] and ys.tolist() == [0.0]
    with pytest.raises(InputError):
        finite_embed(SparseSeq({4: 1}), SparseSeq(), 4)


sparse = st.dictionaries(st.integers(0, 9), st.floats(-5, 5, allow_nan=False).filter(bool), max_size=6).map(SparseSeq)


@given(sparse, sparse)
def test_embedding_agrees(x, y):
    n = 12
    dense = regular_coderivative(*finite_embed(x, y, n))
    s = seq_regular_coderivative(x, y)
    assert list(dense.constraints) == [s.constraint(i) for i in range(n)]
    assert s.constraint(n) == Box(0.0) and dense.is_empty() == s.is_empty()


@given(sparse, sparse, st.dictionaries(st.integers(0, 20), st.just(0.0), max_size=4))
def test_explicit_zeros_do_not_change_membership(x, z, zeros):
    s = seq_regular_coderivative(x, x)
    padded = SparseSeq({**zeros, **z.entries})
    assert s.contains(padded) == s.contains(z)


@given(sparse, st.floats(1e-3, 1e3))
def test_seq_project_homogeneous(x, lam):
    a, b = seq_project(x * lam), seq_project(x) * lam
    assert a.support == b.support
    assert all(a[i] == pytest.approx(b[i], rel=1e-12) for i in a.support)


def test_seq_box_product_same_set():
    a = SeqBoxProduct({0: Equal(0.0), 3: Box(0.0)})
    assert a.same_set(SeqBoxProduct({})) and a.is_singleton()
    assert SeqBoxProduct({1: Box(-1.0)}).same_set(SeqBoxProduct({2: Box(-3.0)}))
