"""Fraction-free (Bareiss) elimination: exact rank and determinant.

Rational rows are scaled to integers first (by the lcm of their denominators),
which changes neither the rank nor, after dividing the scales back out, the
determinant.  Every intermediate entry is a minor of the input, so the
division in the update step is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .core import to_exact
from .errors import DomainError


def _integer_rows(rows: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    out, scale = [], 1
    for r in rows:
        fr = [to_exact(v) for v in r]
        m = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * m) for f in fr])
        scale *= m
    return out, scale


def _eliminate(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free echelon form; returns (rank, sign of row swaps)."""
    n = len(a)
    m = len(a[0]) if n else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((k for k in range(r, n) if a[k][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        pr = a[r]
        pv = pr[c]
        for k in range(r + 1, n):
            row = a[k]
            f = row[c]
            for t in range(c + 1, m):
                row[t] = (row[t] * pv - f * pr[t]) // prev
            row[c] = 0
        # rows above r are untouched; only the below-pivot block is updated
        prev = pv
        r += 1
    return r, sign


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise DomainError("ragged matrix")
    a, _ = _integer_rows(rows)
    return _eliminate(a)[0]


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(rows)
    r, sign = _eliminate(a)
    if r < n:
        return Fraction(0)
    return Fraction(sign * a[n - 1][n - 1], scale)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        ent = tuple(tuple(to_exact(v) for v in r) for r in self.entries)
        if len(ent) != self.rows or any(len(r) != self.cols for r in ent):
            raise DomainError(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ent)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(tuple(r) for r in rows))

    def submatrix(self, rs: Sequence[int], cs: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(len(rs), len(cs), tuple(tuple(self.entries[r][c] for c in cs) for r in rs))

    def rank(self) -> int:
        return rank(self.entries) if self.rows and self.cols else 0

    def det(self) -> Fraction:
        return det(self.entries)
