"""Index arithmetic and the basic containers shared by every other module.

Positions are 1-based ``(i, j)`` tuples (row, column).  For the symmetric group
only the lower triangle ``I(p, q) = {(i, j) : i >= j}`` carries variables; cells
above the diagonal are identically zero and are not part of the index set.
Diagonal coordinates ``<eta, j>`` address the cell ``(j + eta - 1, j)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DomainError

Cell = tuple[int, int]


class Group(str, enum.Enum):
    CYCLIC = "cyclic"
    SYMMETRIC = "symmetric"


class RowMode(str, enum.Enum):
    PACKING = "packing"
    PARTITIONING = "partitioning"


@dataclass(frozen=True)
class Shape:
    """Problem dimensions plus group and row-mode tags.

    Symmetric shapes with ``q > p`` are clamped to ``q = p`` (every cell right
    of the diagonal is forced to zero anyway); ``original_q`` keeps the value
    the caller asked for.  ``q = 1`` symmetric shapes carry no symmetry and are
    rejected unless ``degenerate=True`` (used for projection targets such as
    the packing orbitope with a single column).
    """

    p: int
    q: int
    group: Group
    row_mode: RowMode
    original_q: int | None = field(default=None, compare=False)
    degenerate: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "group", Group(self.group))
        object.__setattr__(self, "row_mode", RowMode(self.row_mode))
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise DomainError(f"p and q must be integers, got {self.p!r}, {self.q!r}")
        if self.p < 1 or self.q < 1:
            raise DomainError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if self.original_q is None:
            object.__setattr__(self, "original_q", self.q)
        if self.group is Group.SYMMETRIC:
            if self.q > self.p:
                object.__setattr__(self, "q", self.p)
            if self.q == 1 and not self.degenerate:
                raise DomainError("symmetric shapes need q >= 2 after clamping q to min(p, q)")

    @property
    def is_symmetric(self) -> bool:
        return self.group is Group.SYMMETRIC

    @property
    def is_packing(self) -> bool:
        return self.row_mode is RowMode.PACKING

    def replace(self, **changes) -> "Shape":
        kw = dict(p=self.p, q=self.q, group=self.group, row_mode=self.row_mode,
                  degenerate=self.degenerate)
        kw.update(changes)
        return Shape(**kw)

    def row_end(self, i: int) -> int:
        """Last column of row ``i`` inside the index set."""
        return min(i, self.q) if self.is_symmetric else self.q

    def contains(self, cell: Cell) -> bool:
        i, j = cell
        return 1 <= i <= self.p and 1 <= j <= self.row_end(i)

    def check_cell(self, cell: Cell) -> Cell:
        if not self.contains(cell):
            raise DomainError(f"cell {tuple(cell)} is outside the index set of {self}")
        return (int(cell[0]), int(cell[1]))

    @cached_property
    def cells(self) -> tuple[Cell, ...]:
        """The index set in row-major order."""
        return tuple((i, j) for i in range(1, self.p + 1) for j in range(1, self.row_end(i) + 1))

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @cached_property
    def _index(self) -> dict[Cell, int]:
        return {c: k for k, c in enumerate(self.cells)}

    def index_of(self, cell: Cell) -> int:
        try:
            return self._index[tuple(cell)]
        except KeyError:
            raise DomainError(f"cell {tuple(cell)} is outside the index set of {self}") from None

    def row(self, i: int) -> tuple[Cell, ...]:
        if not 1 <= i <= self.p:
            raise DomainError(f"row {i} out of range 1..{self.p}")
        return tuple((i, j) for j in range(1, self.row_end(i) + 1))

    def label(self) -> str:
        return f"{self.group.value} {self.row_mode.value} p={self.p} q={self.q}"


def triangle_size(p: int, q: int) -> int:
    """|I(p, q)| for ``q <= p``."""
    return p * q - q * (q - 1) // 2


class DiagCoord(NamedTuple):
    eta: int
    j: int


def _require_triangle(s: Shape, cell: Cell):
    i, j = cell
    if not (1 <= j <= s.q and j <= i <= s.p):
        raise DomainError(f"cell {(i, j)} is not in I({s.p},{s.q})")


def diag_to_cell(d: DiagCoord, s: Shape) -> Cell:
    eta, j = d
    if eta < 1 or not 1 <= j <= s.q or j + eta - 1 > s.p:
        raise DomainError(f"diagonal coordinate <{eta},{j}> is out of range for p={s.p}, q={s.q}")
    return (j + eta - 1, j)


def cell_to_diag(c: Cell, s: Shape) -> DiagCoord:
    _require_triangle(s, c)
    i, j = c
    return DiagCoord(i - j + 1, j)


def column_segment(i: int, j: int, s: Shape) -> tuple[Cell, ...]:
    """col(i, j): cells (j, j), (j+1, j), ..., (i, j)."""
    _require_triangle(s, (i, j))
    return tuple((k, j) for k in range(j, i + 1))


@dataclass(frozen=True)
class ShiftedColumn:
    """One cell per diagonal 1..eta with non-decreasing column indices."""

    entries: tuple[DiagCoord, ...]

    def __post_init__(self):
        entries = tuple(DiagCoord(int(e), int(c)) for e, c in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise DomainError("a shifted column needs at least one entry")
        prev = 1
        for k, (eta, c) in enumerate(entries, start=1):
            if eta != k:
                raise DomainError(f"diagonal indices must run 1..eta in order, got {entries}")
            if c < prev:
                raise DomainError(f"column indices must be non-decreasing and >= 1, got {entries}")
            prev = c

    @classmethod
    def from_columns(cls, cs: Sequence[int]) -> "ShiftedColumn":
        return cls(tuple(DiagCoord(k, c) for k, c in enumerate(cs, start=1)))

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> "ShiftedColumn":
        ds = sorted(DiagCoord(i - j + 1, j) for i, j in cells)
        return cls(tuple(ds))

    @property
    def eta(self) -> int:
        return len(self.entries)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.entries)

    @property
    def cells(self) -> tuple[Cell, ...]:
        return tuple((c + eta - 1, c) for eta, c in self.entries)

    def is_shifting_of(self, d: DiagCoord) -> bool:
        eta, j = d
        return eta == self.eta and self.entries[-1].j <= j

    def check(self, s: Shape) -> "ShiftedColumn":
        for cell in self.cells:
            _require_triangle(s, cell)
        return self


@dataclass(frozen=True)
class Bar:
    leader: Cell
    cells: tuple[Cell, ...]

    @property
    def row(self) -> int:
        return self.leader[0]


def bar_of(leader: Cell, s: Shape) -> Bar:
    _require_triangle(s, leader)
    i, j = leader
    return Bar((i, j), tuple((i, k) for k in range(j, min(i, s.q) + 1)))


@dataclass(frozen=True)
class SCI:
    """Shifted column inequality x(bar) - x(shifted_column) <= 0."""

    bar: Bar
    shifted_column: ShiftedColumn

    def __post_init__(self):
        i, j = self.bar.leader
        if j < 2:
            raise DomainError(f"an SCI leader needs column >= 2, got {(i, j)}")
        if not self.shifted_column.is_shifting_of(DiagCoord(i - j + 1, j - 1)):
            raise DomainError(
                f"{self.shifted_column.columns} is not a shifting of col<{i - j + 1},{j - 1}>")

    @classmethod
    def make(cls, leader: Cell, columns: Sequence[int], s: Shape) -> "SCI":
        sc = ShiftedColumn.from_columns(columns).check(s)
        return cls(bar_of(leader, s), sc)

    @property
    def leader(self) -> Cell:
        return self.bar.leader

    @property
    def eta(self) -> int:
        return self.shifted_column.eta


# -- numbers ---------------------------------------------------------------

def to_exact(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, Rational):
        return Fraction(v.numerator, v.denominator)
    if isinstance(v, (float, np.floating)):
        return Fraction(float(v))
    raise DomainError(f"cannot interpret {v!r} as an exact rational")


def _looks_exact(v) -> bool:
    return isinstance(v, (int, np.integer, Fraction, str, Rational)) and not isinstance(v, bool)


class FractionalPoint:
    """A vector over the index set of a shape, stored densely as a p x q grid.

    ``exact=True`` stores :class:`fractions.Fraction` entries (object array);
    ``exact=False`` stores binary64 floats.  Cells outside the index set are
    held at zero and are not addressable.
    """

    __slots__ = ("shape", "values", "exact")

    def __init__(self, shape: Shape, values: np.ndarray, exact: bool):
        values = np.asarray(values)
        if values.shape != (shape.p, shape.q):
            raise DomainError(f"value grid has shape {values.shape}, expected {(shape.p, shape.q)}")
        if exact:
            grid = np.empty((shape.p, shape.q), dtype=object)
            for idx, v in np.ndenumerate(values):
                grid[idx] = to_exact(v)
        else:
            grid = values.astype(np.float64, copy=True)
        if shape.is_symmetric:
            mask = np.triu(np.ones((shape.p, shape.q), dtype=bool), k=1)
            if np.any(grid[mask] != 0):
                raise DomainError("symmetric points must vanish above the diagonal (i < j)")
            grid[mask] = Fraction(0) if exact else 0.0
        grid.flags.writeable = False
        self.shape = shape
        self.values = grid
        self.exact = bool(exact)

    @classmethod
    def zeros(cls, shape: Shape, exact: bool = True) -> "FractionalPoint":
        return cls(shape, np.zeros((shape.p, shape.q), dtype=object if exact else float), exact)

    @classmethod
    def from_rows(cls, shape: Shape, rows: Sequence[Sequence], exact: bool | None = None):
        """Build from row lists; a row may have full width q or stop at the end of the index set."""
        if len(rows) != shape.p:
            raise DomainError(f"expected {shape.p} rows, got {len(rows)}")
        flat = [v for r in rows for v in r]
        if exact is None:
            exact = all(_looks_exact(v) for v in flat)
        grid = np.zeros((shape.p, shape.q), dtype=object if exact else float)
        for i, r in enumerate(rows, start=1):
            if len(r) not in (shape.q, shape.row_end(i)):
                raise DomainError(f"row {i} has length {len(r)}, expected {shape.row_end(i)} or {shape.q}")
            for j, v in enumerate(r, start=1):
                grid[i - 1, j - 1] = to_exact(v) if exact else float(v)
        return cls(shape, grid, exact)

    @classmethod
    def from_mapping(cls, shape: Shape, mapping: Mapping[Cell, object], exact: bool | None = None):
        if exact is None:
            exact = all(_looks_exact(v) for v in mapping.values())
        grid = np.zeros((shape.p, shape.q), dtype=object if exact else float)
        if exact:
            grid[:] = Fraction(0)
        for cell, v in mapping.items():
            i, j = shape.check_cell(cell)
            grid[i - 1, j - 1] = to_exact(v) if exact else float(v)
        return cls(shape, grid, exact)

    @classmethod
    def from_cells(cls, shape: Shape, cells: Iterable[Cell]) -> "FractionalPoint":
        """The exact 0/1 incidence point of a cell set."""
        return cls.from_mapping(shape, {c: 1 for c in cells}, exact=True)

    def __getitem__(self, cell: Cell):
        i, j = self.shape.check_cell(cell)
        return self.values[i - 1, j - 1]

    def items(self):
        for i, j in self.shape.cells:
            yield (i, j), self.values[i - 1, j - 1]

    def vector(self) -> list:
        """Entries in row-major index-set order."""
        return [self.values[i - 1, j - 1] for i, j in self.shape.cells]

    def rows(self) -> list[list]:
        return [[self.values[i - 1, j - 1] for j in range(1, self.shape.row_end(i) + 1)]
                for i in range(1, self.shape.p + 1)]

    def __eq__(self, other):
        if not isinstance(other, FractionalPoint):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self.values == other.values))

    def __hash__(self):
        return hash((self.shape, tuple(self.vector())))

    def __repr__(self):
        tag = "exact" if self.exact else "float"
        return f"FractionalPoint({self.shape.label()}, {tag}, rows={self.rows()})"


CostVector = FractionalPoint


def point_sum(x: FractionalPoint, cells: Iterable[Cell]):
    total = Fraction(0) if x.exact else 0.0
    for cell in cells:
        total += x[cell]
    return total


@dataclass(frozen=True)
class BinaryMatrix:
    """A 0/1 matrix given by its support, with at most / exactly one 1 per row.

    For symmetric shapes the support must lie in the lower triangle unless
    ``free=True``; free matrices are arbitrary members of a column-permutation
    orbit and are what :func:`orbitopes.orbits.canonicalize` accepts.
    """

    shape: Shape
    support: tuple[Cell, ...]
    free: bool = False

    def __post_init__(self):
        sup = tuple(sorted({(int(i), int(j)) for i, j in self.support}))
        object.__setattr__(self, "support", sup)
        s = self.shape
        rows = [0] * (s.p + 1)
        for i, j in sup:
            if not (1 <= i <= s.p and 1 <= j <= s.q):
                raise DomainError(f"support cell {(i, j)} outside the {s.p}x{s.q} grid")
            if s.is_symmetric and not self.free and j > i:
                raise DomainError(f"support cell {(i, j)} lies above the diagonal")
            rows[i] += 1
        for i in range(1, s.p + 1):
            if rows[i] > 1:
                raise DomainError(f"row {i} has {rows[i]} one-entries")
            if rows[i] == 0 and s.row_mode is RowMode.PARTITIONING:
                raise DomainError(f"row {i} has no one-entry in partitioning mode")

    @classmethod
    def from_choices(cls, shape: Shape, choices: Sequence[int], free: bool = False) -> "BinaryMatrix":
        """``choices[i-1]`` is the column of the 1 in row i, or 0 for an empty row."""
        return cls(shape, tuple((i, c) for i, c in enumerate(choices, start=1) if c), free)

    def choices(self) -> tuple[int, ...]:
        out = [0] * self.shape.p
        for i, j in self.support:
            out[i - 1] = j
        return tuple(out)

    def grid(self) -> tuple[tuple[int, ...], ...]:
        """Zero-padded full p x q matrix."""
        sup = set(self.support)
        return tuple(tuple(int((i, j) in sup) for j in range(1, self.shape.q + 1))
                     for i in range(1, self.shape.p + 1))

    def column(self, j: int) -> tuple[int, ...]:
        sup = set(self.support)
        return tuple(int((i, j) in sup) for i in range(1, self.shape.p + 1))

    def to_point(self) -> FractionalPoint:
        return FractionalPoint.from_cells(self.shape, self.support)
