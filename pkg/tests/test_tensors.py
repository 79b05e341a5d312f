"""Dense tensors with variance tracking, and the metric slot machinery."""
from fractions import Fraction

import pytest

from swlie import Metric, Tensor, VarianceError


def vec(*vals):
    return Tensor.from_nested("u", [Fraction(v) for v in vals])


MINK = Metric.from_rows(
    [
        [Fraction(-1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
)


def test_construction_and_item():
    t = Tensor.from_function(3, "ll", lambda idx: Fraction(idx[0] * 3 + idx[1]))
    assert t.rank == 2
    assert t.item(1, 2) == 5
    assert list(t.indices()) == [(i, j) for i in range(3) for j in range(3)]
    nested = t.to_nested()
    assert nested[2][0] == 6
    assert Tensor.from_nested("ll", nested).equals(t)


def test_variance_mismatch_rejected():
    up = vec(1, 2, 3)
    down = Tensor.from_nested("l", [Fraction(1), Fraction(2), Fraction(3)])
    with pytest.raises(VarianceError):
        up.add(down)
    with pytest.raises(VarianceError):
        up.contract(0, 0)


def test_contract_needs_opposite_slots():
    t = Tensor.delta(3)  # variance 'ul'
    assert t.contract(0, 1).scalar() == 3
    outer = vec(1, 2, 3).tensor_product(vec(1, 1, 1))
    with pytest.raises(VarianceError):
        outer.contract(0, 1)  # both slots upper


def test_arithmetic():
    a, b = vec(1, 2, 3), vec(-1, 0, 5)
    assert a.add(b).to_nested() == [0, 2, 8]
    assert a.sub(b).to_nested() == [2, 2, -2]
    assert a.neg().to_nested() == [-1, -2, -3]
    assert a.scale(Fraction(1, 2)).to_nested() == [Fraction(1, 2), 1, Fraction(3, 2)]
    assert a.sub(a).is_zero()


def test_transpose():
    t = Tensor.from_function(3, "ull", lambda idx: Fraction(idx[0] * 9 + idx[1] * 3 + idx[2]))
    s = t.transpose((0, 2, 1))
    assert s.item(1, 0, 2) == t.item(1, 2, 0)
    assert s.variance == "ull"
    mixed = t.transpose((1, 0, 2))
    assert mixed.variance == "lul"


def test_sym_antisym_decomposition_rank2():
    t = Tensor.from_function(3, "ll", lambda idx: Fraction(idx[0] * 3 + 2 * idx[1]))
    s, a = t.sym_part(), t.antisym_part()
    assert s.add(a).equals(t)
    assert s.equals(s.transpose((1, 0)))
    assert a.equals(a.transpose((1, 0)).neg())


def test_sym_antisym_rank3():
    t = Tensor.from_function(3, "lll", lambda idx: Fraction(idx[0] + 2 * idx[1] + 4 * idx[2]))
    s = t.sym_part()
    for order in ((0, 2, 1), (1, 0, 2), (2, 1, 0)):
        assert s.equals(s.transpose(order))
    a = t.antisym_part()
    assert a.equals(a.transpose((1, 0, 2)).neg())
    # fully symmetric input has zero alternation
    assert s.antisym_part().is_zero()
    assert a.sym_part().is_zero()


def test_metric_inverse_and_signature():
    g = Metric.from_rows(
        [
            [Fraction(2), Fraction(1), Fraction(0)],
            [Fraction(1), Fraction(2), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(-1)],
        ]
    )
    prod = Fraction(0)
    for k in range(3):
        prod += g.g.item(0, k) * g.g_inv.item(k, 0)
    assert prod == 1
    assert g.signature() == (2, 1)
    assert MINK.signature() == (2, 1)


def test_raise_lower_round_trip():
    t = Tensor.from_function(3, "ll", lambda idx: Fraction(idx[0] - idx[1]))
    up = MINK.raise_slot(t, 0)
    assert up.variance == "ul"
    back = MINK.lower_slot(up, 0)
    assert back.equals(t)
    with pytest.raises(VarianceError):
        MINK.raise_slot(up, 0)  # slot already upper


def test_inner_products():
    v, w = vec(1, 0, 0), vec(1, 2, 0)
    assert MINK.vector_inner(v, w) == -1
    assert MINK.norm_squared(vec(0, 3, 4)) == 25
    assert MINK.norm_squared(vec(1, 1, 0)) == 0  # null direction
    t = Tensor.from_function(3, "ll", lambda idx: Fraction(1))
    assert MINK.full_inner(t, t) == 1  # (-1)^2 signs cancel pairwise except mixed
    # flip_all sends every slot to the opposite variance
    assert MINK.flip_all(t).variance == "uu"


def test_singular_metric_rejected():
    with pytest.raises(ValueError):
        Metric.from_rows(
            [
                [Fraction(1), Fraction(0), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(1)],
            ]
        )
    with pytest.raises(ValueError):
        Metric.from_rows(
            [
                [Fraction(1), Fraction(2), Fraction(0)],
                [Fraction(0), Fraction(1), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(1)],
            ]
        )  # not symmetric
