import random
from fractions import Fraction

import pytest

from quiverhh.errors import EngineError
from quiverhh.fields import PrimeField, Rationals
from quiverhh.linalg import SparseMatrix, echelon, quotient_coords, rref, vec_add

FIELD = Rationals()


def _matrix(rows, field=FIELD):
    m = SparseMatrix(len(rows), len(rows[0]) if rows else 0, field)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v:
                m.add(i, j, field.from_int(v))
    return m


def test_echelon_identity():
    m = _matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    res = echelon(m)
    assert res.rank == 3
    assert res.kernel.dim == 0


def test_echelon_zero_matrix():
    m = SparseMatrix(2, 5, FIELD)
    res = echelon(m)
    assert res.rank == 0
    assert res.kernel.dim == 5


def test_echelon_rank_one():
    m = _matrix([[1, 1, 0, 0], [2, 2, 0, 0]])
    res = echelon(m)
    assert res.rank == 1
    assert res.kernel.dim == 3
    for v in res.kernel.rows:
        assert not m.apply(v)


def test_rank_nullity_random():
    rng = random.Random(4)
    for field in (FIELD, PrimeField(7)):
        for _ in range(25):
            rows, cols = rng.randint(1, 9), rng.randint(1, 9)
            m = SparseMatrix(rows, cols, field)
            for _ in range(rng.randint(0, rows * cols)):
                v = rng.randint(-4, 4)
                if v:
                    m.add(rng.randrange(rows), rng.randrange(cols), field.from_int(v))
            res = echelon(m)
            assert res.rank + res.kernel.dim == cols
            assert res.rank == echelon(m.transpose()).rank
            for v in res.kernel.rows:
                assert not m.apply(v)


def test_quotient_coords_examples():
    image = rref(FIELD, [{0: Fraction(1)}], 2)  # span of (1, 0)
    assert quotient_coords({0: Fraction(1), 1: Fraction(1)}, image) == {1: Fraction(1)}
    assert quotient_coords({0: Fraction(3)}, image) == {}
    empty = rref(FIELD, [], 2)
    v = {0: Fraction(2), 1: Fraction(-1)}
    assert quotient_coords(v, empty) == v


def test_quotient_coords_linear_idempotent():
    rng = random.Random(9)
    m = _matrix([[1, 2, 0, 1], [0, 1, 1, 0]])
    image = echelon(m).row_space
    for _ in range(30):
        v = {i: Fraction(rng.randint(-3, 3)) for i in range(4)}
        w = {i: Fraction(rng.randint(-3, 3)) for i in range(4)}
        rv, rw = image.reduce(v), image.reduce(w)
        assert image.reduce(rv) == rv
        assert image.reduce(vec_add(FIELD, v, w)) == vec_add(FIELD, rv, rw)


def test_dimension_mismatch_rejected():
    image = rref(FIELD, [{0: Fraction(1)}], 2)
    with pytest.raises(EngineError):
        quotient_coords({5: Fraction(1)}, image)


def test_echelon_canonical_for_subspace():
    # two generating sets of the same row space give identical echelon bases
    a = rref(FIELD, [{0: Fraction(1), 1: Fraction(2)}, {1: Fraction(1)}], 3)
    b = rref(FIELD, [{0: Fraction(2), 1: Fraction(5)}, {0: Fraction(1), 1: Fraction(3)}], 3)
    assert a == b


def test_fp_vs_rational_rank_agreement():
    rng = random.Random(12)
    big = PrimeField(1000003)
    for _ in range(30):
        rows, cols = rng.randint(2, 7), rng.randint(2, 7)
        mq = SparseMatrix(rows, cols, FIELD)
        mp = SparseMatrix(rows, cols, big)
        for _ in range(rng.randint(1, rows * cols)):
            r, c, v = rng.randrange(rows), rng.randrange(cols), rng.randint(-3, 3)
            if v:
                mq.add(r, c, Fraction(v))
                mp.add(r, c, v % big.p)
        assert echelon(mq).rank == echelon(mp).rank


def test_coordinate_dump_format():
    m = _matrix([[1, 0], [0, -2]])
    dump = m.dump_coordinates()
    assert dump.splitlines()[0] == "2 2"
    assert "1 1 -2" in dump
