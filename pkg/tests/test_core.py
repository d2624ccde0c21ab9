from fractions import Fraction

import numpy as np
import pytest

from orbitopes.core import (SCI, BinaryMatrix, DiagCoord, FractionalPoint, Shape, ShiftedColumn, bar_of,
                            cell_to_diag, column_segment, diag_to_cell, point_sum, triangle_size)
from orbitopes.errors import DomainError


def sym(p, q, mode="partitioning"):
    return Shape(p, q, "symmetric", mode)


def test_diag_examples():
    s = sym(9, 7)
    assert diag_to_cell(DiagCoord(1, 1), s) == (1, 1)
    assert diag_to_cell(DiagCoord(5, 5), s) == (9, 5)
    assert diag_to_cell(DiagCoord(2, 1), s) == (2, 1)
    assert cell_to_diag((9, 5), s) == (5, 5)
    assert cell_to_diag((1, 1), s) == (1, 1)
    assert cell_to_diag((4, 2), s) == (3, 2)


def test_diag_errors():
    s = sym(4, 3)
    with pytest.raises(DomainError):
        diag_to_cell(DiagCoord(4, 2), s)  # row 5 > p
    with pytest.raises(DomainError):
        diag_to_cell(DiagCoord(0, 1), s)
    with pytest.raises(DomainError):
        cell_to_diag((1, 2), s)


def test_diag_roundtrip_exhaustive():
    for p in range(2, 51):
        for q in range(2, p + 1):
            s = sym(p, q)
            n = 0
            for eta in range(1, p + 1):
                for j in range(1, q + 1):
                    if j + eta - 1 > p:
                        continue
                    d = DiagCoord(eta, j)
                    assert cell_to_diag(diag_to_cell(d, s), s) == d
                    n += 1
            assert n == s.n_cells


def test_triangle_count():
    for p in range(2, 51):
        for q in range(2, p + 1):
            count = sum(1 for i in range(1, p + 1) for j in range(1, q + 1) if i >= j)
            assert count == triangle_size(p, q) == sym(p, q).n_cells


def test_shape_canonicalization():
    s = Shape(3, 5, "symmetric", "packing")
    assert s.q == 3 and s.original_q == 5
    assert s == Shape(3, 3, "symmetric", "packing")
    with pytest.raises(DomainError):
        Shape(1, 4, "symmetric", "packing")  # clamps to q = 1
    with pytest.raises(DomainError):
        Shape(0, 2, "cyclic", "packing")
    c = Shape(2, 5, "cyclic", "packing")
    assert c.q == 5 and c.n_cells == 10


def test_bar_examples():
    s = sym(9, 7)
    assert bar_of((9, 5), s).cells == ((9, 5), (9, 6), (9, 7))
    assert bar_of((3, 3), s).cells == ((3, 3),)
    assert bar_of((3, 2), sym(4, 4)).cells == ((3, 2), (3, 3))
    for i, j in s.cells:
        b = bar_of((i, j), s)
        assert len(b.cells) == min(i, s.q) - j + 1
        assert all(s.contains(c) for c in b.cells)


def test_column_segment():
    s = sym(8, 5)
    assert column_segment(2, 2, s) == ((2, 2),)
    assert column_segment(3, 1, s) == ((1, 1), (2, 1), (3, 1))
    seg = column_segment(8, 4, s)
    assert seg == tuple((k, 4) for k in range(4, 9)) and len(seg) == 5
    assert ShiftedColumn.from_columns([4] * 5).cells == seg


def test_shifted_column_invariants():
    with pytest.raises(DomainError):
        ShiftedColumn.from_columns([2, 1])
    with pytest.raises(DomainError):
        ShiftedColumn(((2, 1),))
    sc = ShiftedColumn.from_columns([1, 2, 2])
    assert sc.cells == ((1, 1), (3, 2), (4, 2))
    for j in range(1, 6):
        assert sc.is_shifting_of(DiagCoord(3, j)) == (j >= 2)
    assert not sc.is_shifting_of(DiagCoord(2, 4))


def test_sci_validation():
    s = sym(5, 5)
    sci = SCI.make((4, 3), [1, 2], s)
    assert sci.eta == 2 and sci.leader == (4, 3)
    with pytest.raises(DomainError):
        SCI.make((4, 3), [1, 3], s)  # c_eta must be <= j - 1
    with pytest.raises(DomainError):
        SCI.make((3, 1), [1, 1, 1], s)
    with pytest.raises(DomainError):
        SCI.make((4, 3), [1], s)  # wrong length


def test_point_sum_examples():
    s = sym(3, 2)
    z = FractionalPoint.zeros(s)
    assert point_sum(z, s.cells) == 0
    x = FractionalPoint.from_mapping(s, {(1, 1): 1})
    assert point_sum(x, s.row(1)) == 1
    half = FractionalPoint.from_mapping(s, {c: Fraction(1, 2) for c in s.cells})
    assert point_sum(half, column_segment(3, 1, s)) == Fraction(3, 2)
    with pytest.raises(DomainError):
        point_sum(half, [(1, 2)])


def test_point_tags_and_triangle():
    s = sym(3, 3)
    f = FractionalPoint.from_rows(s, [[0.5], [0.25, 0.25], [0, 0, 1]])
    assert not f.exact and f.values.dtype == np.float64
    e = FractionalPoint.from_rows(s, [["1/2"], [0, 1], [0, 0, 1]])
    assert e.exact and e[(1, 1)] == Fraction(1, 2)
    with pytest.raises(DomainError):
        FractionalPoint(s, np.ones((3, 3)), exact=False)  # nonzero above the diagonal
    with pytest.raises(ValueError):
        e.values[0, 0] = 3  # immutable


def test_binary_matrix_invariants():
    s = sym(3, 3, "partitioning")
    with pytest.raises(DomainError):
        BinaryMatrix(s, ((1, 1), (2, 1)))  # row 3 empty
    with pytest.raises(DomainError):
        BinaryMatrix(s, ((1, 2), (2, 1), (3, 1)))  # above the diagonal
    with pytest.raises(DomainError):
        BinaryMatrix(Shape(2, 2, "cyclic", "packing"), ((1, 1), (1, 2)))
    m = BinaryMatrix.from_choices(s, [1, 1, 2])
    assert m.support == ((1, 1), (2, 1), (3, 2)) and m.choices() == (1, 1, 2)
    assert m.grid() == ((1, 0, 0), (1, 0, 0), (0, 1, 0))
