from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artinhom.exactfield import QQ, field
from artinhom.linalg import LinearMap, add_into, rank


def test_add_into_drops_zeros():
    acc = {0: QQ(1), 1: QQ(2)}
    add_into(acc, {0: QQ(-1), 2: QQ(3)})
    assert acc == {1: QQ(2), 2: QQ(3)}
    add_into(acc, {1: QQ(1)}, scale=QQ(-2))
    assert acc == {2: QQ(3)}


def test_zero_entries_are_not_stored():
    m = LinearMap(2, 2, {(0, 0): 0, (1, 0): 5}, QQ)
    assert m.entries == {(1, 0): QQ(5)}
    with pytest.raises(ValueError):
        LinearMap(2, 2, {(2, 0): 1}, QQ)


def test_inverse_and_compose():
    m = LinearMap.from_dense([[1, 2], [3, 4]], QQ)
    assert m @ m.inverse() == LinearMap.identity(2, QQ)
    assert m.inverse().to_dense() == [[-2, 1], [Fraction(3, 2), Fraction(-1, 2)]]
    assert m.transpose().to_dense() == [[1, 3], [2, 4]]
    with pytest.raises(ZeroDivisionError):
        LinearMap.from_dense([[1, 2], [2, 4]], QQ).inverse()


def test_cyclotomic_inverse():
    z = field(5).gen()
    ctx = z.ctx
    m = LinearMap(2, 2, {(0, 0): z, (0, 1): 1, (1, 1): 1 + z}, ctx)
    assert m.inverse() @ m == LinearMap.identity(2, ctx)


small = st.integers(-3, 3)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_rank_modes_agree(rows, cols, data):
    dense = data.draw(st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    columns = [{r: QQ(dense[r][c]) for r in range(rows) if dense[r][c]} for c in range(cols)]
    r1 = rank(columns)
    assert r1 == rank(columns, fraction_free=True)
    assert r1 <= min(rows, cols)
    # rank of the transpose is the same
    transposed = [{c: QQ(dense[r][c]) for c in range(cols) if dense[r][c]} for r in range(rows)]
    assert rank(transposed) == r1


def test_rank_examples():
    assert rank([]) == 0
    assert rank([{0: QQ(1)}, {0: QQ(2)}]) == 1
    assert rank([{0: QQ(1), 1: QQ(1)}, {0: QQ(1), 1: QQ(-1)}, {1: QQ(1)}]) == 2
