"""Sparse linear constraints and the constructors for the orbitope families."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .core import SCI, Cell, FractionalPoint, Shape, bar_of, column_segment, point_sum, to_exact
from .errors import DomainError

Var = Union[Cell, str]

_XNAME = re.compile(r"^x_(\d+)_(\d+)$")


class ConstraintClass(str, enum.Enum):
    NONNEG = "nonneg"
    UPPER_BOUND = "upperbound"
    FIXING = "fixing"
    ROW_SUM = "rowsum"
    CYCLIC_LEX = "cycliclex"
    COLUMN_INEQ = "columnineq"
    SCI = "sci"
    MD_ZABALA = "mdzabala"
    CLIQUE_SCI = "cliquesci"
    # coloring model rows
    EDGE = "edge"
    ASSIGN = "assign"
    LINK = "link"


class Sense(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="


def var_name(v: Var) -> str:
    if isinstance(v, str):
        return v
    return f"x_{v[0]}_{v[1]}"


def parse_var(name: str) -> Var:
    m = _XNAME.match(name)
    return (int(m.group(1)), int(m.group(2))) if m else name


def _var_key(v: Var):
    return (1, v, 0) if isinstance(v, str) else (0, "", v)


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coef * var) <sense> rhs``; variables are cells (x) or names such as ``y_3``."""

    coeffs: tuple[tuple[Var, Fraction], ...]
    sense: Sense
    rhs: Fraction
    cls: ConstraintClass
    anchor: tuple[int, ...] = ()
    meta: Mapping | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        merged: dict = {}
        for v, c in (self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs):
            v = v if isinstance(v, str) else (int(v[0]), int(v[1]))
            merged[v] = merged.get(v, Fraction(0)) + to_exact(c)
        items = tuple(sorted(((v, c) for v, c in merged.items() if c != 0), key=lambda t: _var_key(t[0])))
        if not items:
            raise DomainError("a constraint needs at least one nonzero coefficient")
        object.__setattr__(self, "coeffs", items)
        object.__setattr__(self, "sense", Sense(self.sense))
        object.__setattr__(self, "rhs", to_exact(self.rhs))
        object.__setattr__(self, "cls", ConstraintClass(self.cls))
        object.__setattr__(self, "anchor", tuple(int(a) for a in self.anchor))

    @property
    def variables(self) -> tuple[Var, ...]:
        return tuple(v for v, _ in self.coeffs)

    def coefficient(self, v: Var) -> Fraction:
        for w, c in self.coeffs:
            if w == v:
                return c
        return Fraction(0)

    def key(self):
        """Canonical form used for deduplication."""
        return (self.coeffs, self.sense, self.rhs)

    def evaluate(self, x):
        """Left-hand side at ``x`` (a FractionalPoint, or a mapping var -> value)."""
        if isinstance(x, FractionalPoint):
            total = Fraction(0) if x.exact else 0.0
            for v, c in self.coeffs:
                if isinstance(v, str):
                    raise DomainError(f"point has no variable {v}")
                xv = x[v]
                total += (c if x.exact else float(c)) * xv
            return total
        total = Fraction(0)
        for v, c in self.coeffs:
            total += c * x.get(v, 0)
        return total

    def violation(self, x):
        """Amount by which ``x`` violates the constraint (<= 0 when satisfied)."""
        lhs = self.evaluate(x)
        rhs = self.rhs if not isinstance(lhs, float) else float(self.rhs)
        if self.sense is Sense.LE:
            return lhs - rhs
        if self.sense is Sense.GE:
            return rhs - lhs
        return abs(lhs - rhs)

    def satisfied(self, x, tol=0) -> bool:
        return self.violation(x) <= tol

    def reindexed(self, f) -> "LinearConstraint":
        """Apply ``f`` to every cell variable."""
        return LinearConstraint(tuple((f(v) if not isinstance(v, str) else v, c) for v, c in self.coeffs),
                                self.sense, self.rhs, self.cls, self.anchor, self.meta)

    def __str__(self):
        terms = []
        for v, c in self.coeffs:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            terms.append(f"{sign} {'' if mag == 1 else str(mag) + ' '}{var_name(v)}")
        lhs = " ".join(terms).lstrip("+ ")
        return f"{lhs} {self.sense.value} {self.rhs}"


def nonneg(cell: Cell) -> LinearConstraint:
    return LinearConstraint(((cell, 1),), Sense.GE, 0, ConstraintClass.NONNEG, cell)


def row_sum(s: Shape, i: int, cells: Iterable[Cell] | None = None) -> LinearConstraint:
    cells = s.row(i) if cells is None else cells
    sense = Sense.LE if s.is_packing else Sense.EQ
    return LinearConstraint(tuple((c, 1) for c in cells), sense, 1, ConstraintClass.ROW_SUM, (i,))


def _sci_meta(leader, bar, sc_cells):
    return {"leader": list(leader), "bar": [list(c) for c in bar],
            "shifted_column": [list(c) for c in sc_cells]}


def sci_constraint(sci: SCI, cls: ConstraintClass = ConstraintClass.SCI) -> LinearConstraint:
    coeffs = [(c, 1) for c in sci.bar.cells] + [(c, -1) for c in sci.shifted_column.cells]
    return LinearConstraint(tuple(coeffs), Sense.LE, 0, cls, sci.leader,
                            _sci_meta(sci.leader, sci.bar.cells, sci.shifted_column.cells))


def column_inequality(leader: Cell, s: Shape) -> LinearConstraint:
    """x(B) - x(col(i-1, j-1)) <= 0 for the bar B led by (i, j)."""
    i, j = leader
    if j < 2:
        raise DomainError(f"column inequalities need j >= 2, got {leader}")
    eta = i - j + 1
    sci = SCI.make(leader, [j - 1] * eta, s)
    return sci_constraint(sci, ConstraintClass.COLUMN_INEQ)


def md_zabala(i: int, j: int, s: Shape) -> LinearConstraint:
    """x_ij - sum_{k < i} x_{k, j-1} <= 0, restricted to the shape's index set."""
    if j < 2:
        raise DomainError(f"this inequality needs j >= 2, got j={j}")
    s.check_cell((i, j))
    coeffs = [((i, j), 1)] + [((k, j - 1), -1) for k in range(1, i) if s.contains((k, j - 1))]
    return LinearConstraint(tuple(coeffs), Sense.LE, 0, ConstraintClass.MD_ZABALA, (i, j))


def sci_column_cells(leader: Cell, s: Shape) -> tuple[Cell, ...]:
    i, j = leader
    return column_segment(i - 1, j - 1, s)


def evaluate_sci(x: FractionalPoint, sci: SCI):
    return point_sum(x, sci.bar.cells) - point_sum(x, sci.shifted_column.cells)


def bar_sum(x: FractionalPoint, leader: Cell):
    return point_sum(x, bar_of(leader, x.shape).cells)


def upper_bound(cell: Cell, ub=1) -> LinearConstraint:
    return LinearConstraint(((cell, 1),), Sense.LE, ub, ConstraintClass.UPPER_BOUND, cell)


def fixing(cell: Cell, value) -> LinearConstraint:
    return LinearConstraint(((cell, 1),), Sense.EQ, value, ConstraintClass.FIXING, cell)


def cyclic_lex(i: int, s: Shape) -> LinearConstraint:
    """sum_{j >= 2} x_ij - sum_{k < i} x_k1 <= 0 (cyclic packing, i >= 2)."""
    if not 2 <= i <= s.p:
        raise DomainError(f"row {i} out of range 2..{s.p}")
    coeffs = [((i, j), 1) for j in range(2, s.q + 1)] + [((k, 1), -1) for k in range(1, i)]
    return LinearConstraint(tuple(coeffs), Sense.LE, 0, ConstraintClass.CYCLIC_LEX, (i,))
