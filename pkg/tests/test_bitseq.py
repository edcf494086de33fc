import pytest

from salemlab.bitseq import (
    BitMatrix,
    BitSequence,
    p3_member,
    phi_transform,
    q2_member,
)


class TestBitSequence:
    def test_parsing(self):
        assert BitSequence.from_string("110").bits(5) == (1, 1, 0, 0, 0)
        assert BitSequence.from_string("(10)").bits(5) == (1, 0, 1, 0, 1)
        assert BitSequence.from_string("11(01)").bits(6) == (1, 1, 0, 1, 0, 1)
        assert BitSequence.from_string("0^w").is_zero
        with pytest.raises(ValueError):
            BitSequence.from_string("1x0")

    def test_canonical_equality(self):
        assert BitSequence.from_string("101(01)") == BitSequence.from_string("(10)")
        assert BitSequence.from_string("10") == BitSequence.from_string("1")
        assert BitSequence.from_string("1(11)") == BitSequence.from_string("(1)")
        assert BitSequence.from_string("0(10)") != BitSequence.from_string("(10)")

    def test_from_positions(self):
        s = BitSequence.from_positions([0, 1])
        assert s == BitSequence.from_string("110")
        assert s.last_one() == 1
        assert BitSequence.zero().last_one() is None

    def test_q2_membership(self):
        assert q2_member(BitSequence.from_string("110000"))
        assert not q2_member(BitSequence.from_string("(10)"))
        assert q2_member(BitSequence.zero())

    def test_or_closure(self):
        a = BitSequence.from_string("1(001)")
        b = BitSequence.from_string("(01)")
        c = a | b
        for n in range(24):
            assert c.bit(n) == max(a.bit(n), b.bit(n))

    def test_last_one_requires_eventual_zero(self):
        with pytest.raises(ValueError):
            BitSequence.from_string("(10)").last_one()


class TestPhiTransform:
    def test_zero_matrix_fixed(self):
        assert phi_transform(BitMatrix.zero()) == BitMatrix.zero()

    def test_single_one_propagates_down_rows(self):
        x = BitMatrix({0: BitSequence.from_positions([5])}, )
        y = phi_transform(x)
        for m in range(4):
            assert y.row(m).bit(5) == 1
        assert y.tail.bit(5) == 1

    def test_idempotent(self):
        alphabet = [
            BitSequence.zero(),
            BitSequence.from_string("(1)"),
            BitSequence.from_string("(10)"),
            BitSequence.from_string("11"),
        ]
        mats = []
        for r0 in alphabet:
            for r1 in alphabet:
                mats.append(BitMatrix.from_rows([r0, r1]))
        for m in mats:
            once = phi_transform(m)
            assert phi_transform(once) == once

    def test_rows_monotone(self):
        x = BitMatrix.from_rows(
            [BitSequence.from_string("100"), BitSequence.from_string("(01)")]
        )
        y = phi_transform(x)
        for m in range(3):
            lo, hi = y.row(m), y.row(m + 1)
            assert (lo | hi) == hi

    def test_p3_preserved(self):
        good = BitMatrix.from_rows([BitSequence.from_string("111"), BitSequence.zero()])
        bad = BitMatrix.from_rows([BitSequence.zero(), BitSequence.from_string("(10)")])
        assert p3_member(good) and p3_member(phi_transform(good))
        assert not p3_member(bad) and not p3_member(phi_transform(bad))

    def test_periodic_row_breaks_p3(self):
        m = BitMatrix({2: BitSequence.from_string("(1)")})
        assert not p3_member(m)


class TestBitMatrix:
    def test_default_rows_zero_below_tail_above(self):
        x = BitMatrix({1: BitSequence.from_string("1")}, tail=BitSequence.from_string("(1)"))
        assert x.row(0).is_zero
        assert x.row(1).bit(0) == 1
        assert x.row(5) == BitSequence.from_string("(1)")

    def test_equality_ignores_representation(self):
        a = BitMatrix.from_rows([BitSequence.zero(), BitSequence.from_string("1")])
        b = BitMatrix({1: BitSequence.from_string("1")})
        assert a == b
