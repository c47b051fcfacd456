import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from sct.partitions import SetPartition, bell_number, restricted_growth_strings


@st.composite
def partitions(draw, n=None):
    n = draw(st.integers(1, 9)) if n is None else n
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    return SetPartition.from_labels(labels)


@pytest.mark.parametrize("n", range(0, 10))
def test_rgs_count_is_bell(n):
    strings = list(restricted_growth_strings(n))
    assert len(strings) == bell_number(n) == sympy.bell(n)
    assert len(set(strings)) == len(strings)
    assert len({SetPartition.from_labels(s) for s in strings}) == len(strings)


def test_rgs_are_canonical():
    for s in restricted_growth_strings(6):
        assert SetPartition.from_labels(s).labels() == list(s)


def test_from_blocks_validation():
    with pytest.raises(ValueError):
        SetPartition.from_blocks([[0, 1], [1, 2]])
    with pytest.raises(ValueError):
        SetPartition.from_blocks([[0], [2]])


def test_canonical_equality():
    assert SetPartition.from_blocks([[2, 0], [1]]) == SetPartition.from_blocks([[1], [0, 2]])
    assert str(SetPartition.from_blocks([[2, 0], [1]])) == "0 2 | 1"


@given(st.data())
def test_join_and_meet_are_bounds(data):
    n = data.draw(st.integers(1, 9))
    P = data.draw(partitions(n))
    Q = data.draw(partitions(n))
    J, M = P.join(Q), P.meet(Q)
    assert P.refines(J) and Q.refines(J)
    assert M.refines(P) and M.refines(Q)
    assert P.join(P) == P and P.meet(P) == P
    assert P.join(Q) == Q.join(P) and P.meet(Q) == Q.meet(P)
    assert P.join(P.meet(Q)) == P and P.meet(P.join(Q)) == P


@given(st.data())
def test_join_is_least(data):
    n = data.draw(st.integers(1, 6))
    P = data.draw(partitions(n))
    Q = data.draw(partitions(n))
    uppers = [R for R in map(SetPartition.from_labels, restricted_growth_strings(n))
              if P.refines(R) and Q.refines(R)]
    J = P.join(Q)
    assert J in uppers and all(J.refines(R) for R in uppers)


def test_singletons_and_whole():
    assert len(SetPartition.singletons(4)) == 4
    assert len(SetPartition.whole(4)) == 1
    assert SetPartition.singletons(4).refines(SetPartition.whole(4))
