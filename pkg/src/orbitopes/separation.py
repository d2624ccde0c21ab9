"""Exact separation of shifted column inequalities and of the cyclic families.

For a weight vector w on the triangle, omega<eta, j> is the weight of a
w-minimal shifting of col<eta, j>.  Along a fixed diagonal the recursion
omega<eta, j> = min(omega<eta, j-1>, omega<eta-1, j> + w<eta, j>) is a prefix
minimum, so each diagonal is one vectorized pass and the whole table costs
O(pq).  The bar sums beta(i, j) = x(B(i, j)) are reversed row cumsums; an SCI
with leader <eta, j> is violated iff omega<eta, j-1> < beta(i, j).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import constraints as cons
from .constraints import LinearConstraint
from .core import SCI, DiagCoord, FractionalPoint, Shape, ShiftedColumn, bar_of, diag_to_cell
from .errors import DomainError

FLOAT_TOL = 1e-6


@dataclass
class ShiftingTables:
    """Per-diagonal arrays; index ``j - 1`` of ``omega[eta - 1]`` is omega<eta, j>.

    ``tau_choice`` is 1 (drop to column j-1) or 2 (take <eta, j>, recurse on
    <eta-1, j>); ``pick`` is the column of the cell a minimal shifting of
    col<eta, j> uses on diagonal eta, so reconstruction needs O(eta) steps.
    """

    shape: Shape
    omega: list
    tau_choice: list
    pick: list

    def value(self, d: DiagCoord):
        eta, j = d
        diag_to_cell(d, self.shape)
        return self.omega[eta - 1][j - 1]

    def choice(self, d: DiagCoord) -> int:
        eta, j = d
        diag_to_cell(d, self.shape)
        return int(self.tau_choice[eta - 1][j - 1])


@dataclass(frozen=True)
class Violation:
    constraint: LinearConstraint
    amount: object
    sci: SCI | None = None


def _require_symmetric(x: FractionalPoint):
    if not x.shape.is_symmetric:
        raise DomainError(f"SCI separation needs a symmetric shape, got {x.shape.label()}")


def _default_tol(x: FractionalPoint, tol):
    if tol is not None:
        return tol
    return Fraction(0) if x.exact else FLOAT_TOL


def _diagonals(grid: np.ndarray, p: int):
    # diagonal eta holds <eta, 1>, <eta, 2>, ... = (eta, 1), (eta + 1, 2), ...
    return [np.diagonal(grid, offset=-(eta - 1)) for eta in range(1, p + 1)]


def build_shifting_tables(w: FractionalPoint) -> ShiftingTables:
    _require_symmetric(w)
    s = w.shape
    zero = Fraction(0) if w.exact else 0.0
    prev = np.full(s.q, zero, dtype=w.values.dtype)  # omega<0, j> = 0
    omega, choice, pick = [], [], []
    for wd in _diagonals(w.values, s.p):
        n = wd.shape[0]
        cand = prev[:n] + wd
        om = np.minimum.accumulate(cand)
        take = np.empty(n, dtype=bool)
        take[0] = True
        # ties go left, i.e. to the smallest column
        take[1:] = cand[1:] < om[:-1]
        cols = np.maximum.accumulate(np.where(take, np.arange(1, n + 1), 0))
        omega.append(om)
        choice.append(np.where(take, 2, 1).astype(np.int8))
        pick.append(cols)
        prev = om
    return ShiftingTables(s, omega, choice, pick)


def reconstruct_shifting(t: ShiftingTables, target: DiagCoord) -> ShiftedColumn:
    eta, j = target
    diag_to_cell(target, t.shape)
    cols = []
    while eta >= 1:
        j = int(t.pick[eta - 1][j - 1])
        cols.append(j)
        eta -= 1
    return ShiftedColumn.from_columns(cols[::-1])


def bar_sums(x: FractionalPoint) -> np.ndarray:
    """beta(i, j) = x(B(i, j)) as a p x q grid (0-based)."""
    g = x.values
    return np.cumsum(g[:, ::-1], axis=1)[:, ::-1]


def most_violated_sci(x: FractionalPoint):
    """``(amount, SCI)`` maximizing beta(i, j) - omega<eta, j-1>, ties to smallest j then eta."""
    _require_symmetric(x)
    s = x.shape
    t = build_shifting_tables(x)
    beta = _diagonals(bar_sums(x), s.p)
    best = None
    for eta in range(1, s.p + 1):
        n = beta[eta - 1].shape[0]
        if n < 2:
            continue
        amounts = beta[eta - 1][1:] - t.omega[eta - 1][:-1]
        k = int(np.argmax(amounts))
        key = (amounts[k], -(k + 2), -eta)
        if best is None or key > best[0]:
            best = (key, eta, k + 2)
    if best is None:
        return None
    (amount, _, _), eta, j = best
    sc = reconstruct_shifting(t, DiagCoord(eta, j - 1))
    sci = SCI(bar_of(diag_to_cell(DiagCoord(eta, j), s), s), sc)
    return amount, sci


def separate_sci(x: FractionalPoint, tol=None) -> Violation | None:
    tol = _default_tol(x, tol)
    found = most_violated_sci(x)
    if found is None:
        return None
    amount, sci = found
    if not amount > tol:
        return None
    return Violation(cons.sci_constraint(sci), amount, sci)


def bound_diagnostics(x: FractionalPoint, tol=None) -> list[dict]:
    """Cells outside [0, 1] and rows whose sum breaks the row-mode constraint."""
    tol = _default_tol(x, tol)
    out = []
    for cell, v in x.items():
        if v < -tol or v > 1 + tol:
            out.append({"kind": "bound", "cell": list(cell), "value": v})
    for i in range(1, x.shape.p + 1):
        r = sum((x.values[i - 1, j] for j in range(x.shape.row_end(i))), Fraction(0) if x.exact else 0.0)
        bad = r > 1 + tol if x.shape.is_packing else abs(r - 1) > tol
        if bad:
            out.append({"kind": "rowsum", "row": i, "value": r})
    return out


def separate_cyclic(x: FractionalPoint, s: Shape, tol=None) -> Violation | None:
    """Most violated member of the cyclic description (first one in emission order on ties)."""
    if s.is_symmetric or x.shape != s:
        raise DomainError(f"point of shape {x.shape.label()} does not match cyclic shape {s.label()}")
    tol = _default_tol(x, tol)
    g = x.values
    p, q = s.p, s.q
    one = Fraction(1) if x.exact else 1.0

    # (amounts, builder) per family, in the order the descriptions emit them
    fams = []
    if s.is_packing:
        fams.append((np.array([-g[0, 0]]), lambda k: cons.nonneg((1, 1))))
        fams.append((np.array([g[0, 0] - one]), lambda k: cons.upper_bound((1, 1))))
    else:
        fams.append((np.array([abs(g[0, 0] - one)]), lambda k: cons.fixing((1, 1), 1)))
    fams.append((np.abs(g[0, 1:]), lambda k: cons.fixing((1, k + 2), 0)))
    fams.append(((-g[1:, :]).reshape(-1), lambda k: cons.nonneg((k // q + 2, k % q + 1))))
    rows = g[1:, :].sum(axis=1)
    if s.is_packing:
        fams.append((rows - one, lambda k: cons.row_sum(s, k + 2)))
        colpref = np.cumsum(g[:, 0])
        lex = g[1:, 1:].sum(axis=1) - colpref[:-1]
        fams.append((lex, lambda k: cons.cyclic_lex(k + 2, s)))
    else:
        fams.append((np.abs(rows - one), lambda k: cons.row_sum(s, k + 2)))

    best = None
    for amounts, build in fams:
        if amounts.shape[0] == 0:
            continue
        k = int(np.argmax(amounts))
        if best is None or amounts[k] > best[0]:
            best = (amounts[k], build, k)
    if best is None or not best[0] > tol:
        return None
    amount, build, k = best
    return Violation(build(k), amount)
