"""Lexicographic order, lex-max membership and vertex enumeration.

Matrices are compared in row-major position order (1,1) < (1,2) < ... < (p,q);
columns are compared top-down.  With at most one 1 per row, sorted columns
mean that column j's first 1 sits strictly above column j+1's first 1 (empty
columns last), which is what the enumerators below exploit.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .core import BinaryMatrix, RowMode, Shape
from .errors import CapacityError, DomainError

ENUMERATION_LIMIT = 2 ** 24


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class ActionKind(str, enum.Enum):
    CYCLIC_SHIFT = "cyclic_shift"
    FULL_SYMMETRIC = "full_symmetric"


@dataclass(frozen=True)
class GroupAction:
    kind: ActionKind
    q: int

    @classmethod
    def of(cls, shape: Shape) -> "GroupAction":
        kind = ActionKind.FULL_SYMMETRIC if shape.is_symmetric else ActionKind.CYCLIC_SHIFT
        return cls(kind, shape.q)

    def rotations(self) -> Iterator[tuple[int, ...]]:
        """All q cyclic shifts as maps ``perm[j-1] = image of column j``."""
        if self.kind is not ActionKind.CYCLIC_SHIFT:
            raise DomainError("only the cyclic group is enumerated element by element")
        q = self.q
        for r in range(q):
            yield tuple((j + r) % q + 1 for j in range(q))


def lex_compare(a: BinaryMatrix, b: BinaryMatrix) -> Order:
    if (a.shape.p, a.shape.q) != (b.shape.p, b.shape.q):
        raise DomainError(f"cannot compare {a.shape.p}x{a.shape.q} with {b.shape.p}x{b.shape.q}")
    # the first differing position in row-major order is the smallest differing cell
    diff = set(a.support) ^ set(b.support)
    if not diff:
        return Order.EQUAL
    return Order.GREATER if min(diff) in set(a.support) else Order.LESS


def permute_columns(m: BinaryMatrix, perm: Sequence[int]) -> BinaryMatrix:
    """Move column j to column ``perm[j-1]``; the result is a free matrix."""
    q = m.shape.q
    if sorted(perm) != list(range(1, q + 1)):
        raise DomainError(f"{perm} is not a permutation of 1..{q}")
    return BinaryMatrix(m.shape, tuple((i, perm[j - 1]) for i, j in m.support), free=True)


def is_lex_max(m: BinaryMatrix, g: GroupAction | None = None) -> bool:
    g = g or GroupAction.of(m.shape)
    if g.kind is ActionKind.FULL_SYMMETRIC:
        cols = [m.column(j) for j in range(1, m.shape.q + 1)]
        return all(cols[k] >= cols[k + 1] for k in range(len(cols) - 1))
    if m.shape.row_mode is RowMode.PARTITIONING:
        return (1, 1) in m.support
    cols = [m.column(j) for j in range(1, m.shape.q + 1)]
    return all(cols[0] >= c for c in cols[1:])


def canonicalize(m: BinaryMatrix, g: GroupAction | None = None) -> BinaryMatrix:
    """The lex-max member of the orbit of ``m``."""
    g = g or GroupAction.of(m.shape)
    q = m.shape.q
    if g.kind is ActionKind.FULL_SYMMETRIC:
        order = sorted(range(1, q + 1), key=m.column, reverse=True)
        perm = [0] * q
        for new, old in enumerate(order, start=1):
            perm[old - 1] = new
        out = permute_columns(m, perm)
        return BinaryMatrix(m.shape, out.support)
    best = None
    for perm in g.rotations():
        cand = permute_columns(m, perm)
        if best is None or lex_compare(cand, best) is Order.GREATER:
            best = cand
    return BinaryMatrix(m.shape, best.support, free=m.free)


def candidate_count(s: Shape) -> int:
    return (s.q + 1) ** s.p if s.is_packing else s.q ** s.p


def check_guard(s: Shape, unsafe: bool = False) -> None:
    n = candidate_count(s)
    if n > ENUMERATION_LIMIT and not unsafe:
        raise CapacityError(
            f"enumerating {s.label()} would scan {n} row-choice vectors; "
            f"the limit is 2^24 = {ENUMERATION_LIMIT}", bound=ENUMERATION_LIMIT)


def _choice_vectors(s: Shape) -> Iterator[list[int]]:
    """Row-choice vectors of lex-max matrices in lexicographic order (0 = empty row)."""
    p, q = s.p, s.q
    lo = 0 if s.is_packing else 1
    choice = [0] * p

    if s.is_symmetric:
        def rec(i, used):
            if i == p:
                yield list(choice)
                return
            for c in range(lo, min(used + 1, q) + 1):
                choice[i] = c
                yield from rec(i + 1, max(used, c))
    else:
        def rec(i, used):
            if i == p:
                yield list(choice)
                return
            # until column 1 holds a 1, every other column must stay empty
            top = q if used else 1
            for c in range(lo, top + 1):
                choice[i] = c
                yield from rec(i + 1, used or c == 1)

    yield from rec(0, 0)


def enumerate_vertices(s: Shape, unsafe: bool = False) -> Iterator[BinaryMatrix]:
    check_guard(s, unsafe)
    for ch in _choice_vectors(s):
        yield BinaryMatrix.from_choices(s, ch)


def enumerate_row_matrices(s: Shape, unsafe: bool = False) -> Iterator[BinaryMatrix]:
    """Every matrix of the packing/partitioning set (no lex condition), as free matrices."""
    check_guard(s, unsafe)
    lo = 0 if s.is_packing else 1
    for ch in itertools.product(range(lo, s.q + 1), repeat=s.p):
        yield BinaryMatrix.from_choices(s, ch, free=True)
