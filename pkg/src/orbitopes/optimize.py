"""Linear optimization over the vertex sets of the four orbitope families.

Cyclic group: a linear scan (per-row maxima, suffix sums, best pivot row).
Symmetric group: dynamic programming over tau(i, j), the best value of rows
i..p with one 1 per row and columns j..q sorted, split at the first row k
holding a 1 in column j.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .core import BinaryMatrix, CostVector, Shape
from .errors import DomainError

NEG = float("-inf")


def _zero(c: CostVector):
    return Fraction(0) if c.exact else 0.0


def _check(s: Shape, c: CostVector, symmetric: bool):
    if s.is_symmetric != symmetric:
        raise DomainError(f"shape {s.label()} does not match this optimizer")
    if c.shape != s:
        raise DomainError(f"cost vector shape {c.shape.label()} differs from {s.label()}")


def optimize_cyclic(s: Shape, c: CostVector):
    """Return ``(value, argmax)`` over the cyclic packing/partitioning vertices."""
    _check(s, c, symmetric=False)
    p, q = s.p, s.q
    cv = c.values
    zero = _zero(c)

    best_col = []
    sigma = []
    for i in range(p):
        row = cv[i]
        j = max(range(q), key=lambda t: (row[t], -t))
        best_col.append(j + 1)
        sigma.append(row[j])

    if not s.is_packing:
        value = cv[0][0] + sum(sigma[1:], zero)
        support = [(1, 1)] + [(i + 1, best_col[i]) for i in range(1, p)]
        return value, BinaryMatrix(s, tuple(support))

    # packing: rows with no positive entry stay empty
    for i in range(p):
        if sigma[i] <= 0:
            sigma[i] = zero
            best_col[i] = 0
    suffix = [zero] * (p + 1)
    for i in range(p - 1, -1, -1):
        suffix[i] = sigma[i] + suffix[i + 1]
    star, top = 0, cv[0][0] + suffix[1]
    for i in range(1, p):
        v = cv[i][0] + suffix[i + 1]
        if v > top:
            star, top = i, v
    if top <= 0:
        return zero, BinaryMatrix(s, ())
    support = [(star + 1, 1)] + [(i + 1, best_col[i]) for i in range(star + 1, p) if best_col[i]]
    return top, BinaryMatrix(s, tuple(support))


@dataclass
class SymDpTables:
    """Tables of the symmetric-group dynamic program (1-based, padded).

    ``lam[i][j]`` is the best single entry of row i within columns 1..j
    (clamped at 0 for packing; column 0 means "no column": 0 for packing,
    -inf for partitioning) and ``lam_col[i][j]`` its smallest maximizing
    column (0 = leave the row empty).  ``tau[i][j]`` is defined for
    1 <= i <= p+2, 1 <= j <= q+1 and ``argmax_k[i][j]`` is the smallest
    maximizing k of the recursion.
    """

    shape: Shape
    lam: list
    lam_col: list
    tau: list
    argmax_k: list
    _prefix: list

    def mu(self, i1: int, i2: int, j: int):
        """Best value of rows i1..i2 restricted to columns 1..j."""
        zero = self._prefix[0][0]
        if i2 < i1:
            return zero
        if j == 0:
            return zero if self.shape.is_packing else NEG
        return self._prefix[i2][j] - self._prefix[i1 - 1][j]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "i", "j", "value"])
        p, q = self.shape.p, self.shape.q
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                w.writerow(["lambda", i, j, str(self.lam[i][j])])
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                w.writerow(["tau", i, j, str(self.tau[i][j])])
        for i in range(1, p + 1):
            for j in range(1, q + 1):
                w.writerow(["k", i, j, self.argmax_k[i][j]])
        return buf.getvalue()


def build_sym_tables(s: Shape, c: CostVector) -> SymDpTables:
    _check(s, c, symmetric=True)
    p, q = s.p, s.q
    pack = s.is_packing
    cv = c.values
    zero = _zero(c)
    empty = zero if pack else NEG

    lam = [[empty] * (q + 1) for _ in range(p + 2)]
    lam_col = [[0] * (q + 1) for _ in range(p + 2)]
    for i in range(1, p + 1):
        best, col = empty, 0
        for j in range(1, q + 1):
            v = cv[i - 1][j - 1]
            if j <= i and v > best:
                best, col = v, j
            lam[i][j], lam_col[i][j] = best, col

    prefix = [[zero] * (q + 1) for _ in range(p + 1)]
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            prefix[i][j] = prefix[i - 1][j] + lam[i][j]

    tau = [[zero] * (q + 2) for _ in range(p + 3)]
    kk = [[0] * (q + 2) for _ in range(p + 3)]
    # rows k..p once all columns are sorted: no lex condition is left
    for k in range(1, p + 1):
        tau[k][q + 1] = prefix[p][q] - prefix[k - 1][q]

    for i in range(p, 0, -1):
        for j in range(q, 0, -1):
            run = zero  # mu(i, k-1, j-1)
            best, bk = None, 0
            for k in range(i, p + 2):
                if k > i:
                    run = run + lam[k - 1][j - 1]
                ck = cv[k - 1][j - 1] if k <= p else zero
                val = run + ck + tau[k + 1][j + 1]
                if best is None or val > best:
                    best, bk = val, k
            tau[i][j], kk[i][j] = best, bk
    return SymDpTables(s, lam, lam_col, tau, kk, prefix)


def reconstruct_symmetric(t: SymDpTables) -> BinaryMatrix:
    s = t.shape
    p, q = s.p, s.q
    support = []

    def fill(r1, r2, j):
        for r in range(r1, r2 + 1):
            col = t.lam_col[r][j] if j >= 1 else 0
            if col:
                support.append((r, col))
            elif not s.is_packing:
                raise AssertionError(f"row {r} left empty in partitioning reconstruction")

    i, j = 1, 1
    while i <= p:
        if j == q + 1:
            fill(i, p, q)
            break
        k = t.argmax_k[i][j]
        fill(i, k - 1, j - 1)
        if k > p:
            break
        support.append((k, j))
        i, j = k + 1, j + 1
    return BinaryMatrix(s, tuple(support))


def optimize_symmetric(s: Shape, c: CostVector):
    """Return ``(value, argmax)`` over the symmetric packing/partitioning vertices."""
    t = build_sym_tables(s, c)
    value = t.tau[1][1]
    if s.is_packing and value == 0:
        # as in the cyclic fallback: when 0 is optimal, return the zero matrix
        return value, BinaryMatrix(s, ())
    return value, reconstruct_symmetric(t)


def optimize(s: Shape, c: CostVector):
    if s.is_symmetric:
        return optimize_symmetric(s, c)
    return optimize_cyclic(s, c)


def objective(c: CostVector, m: BinaryMatrix):
    total = _zero(c)
    for i, j in m.support:
        total += c.values[i - 1][j - 1]
    return total
