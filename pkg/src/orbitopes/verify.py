"""Exact brute-force oracles used to check the descriptions and the optimizers."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .constraints import LinearConstraint, Sense
from .core import BinaryMatrix, CostVector, FractionalPoint, Shape
from .errors import CapacityError, DomainError
from .orbits import ENUMERATION_LIMIT, Order, check_guard, enumerate_vertices, lex_compare

NODE_LIMIT = ENUMERATION_LIMIT


# -- integer points of a constraint system ------------------------------------

def _compile(index: dict, cs: Sequence[LinearConstraint]):
    rows = []
    for c in cs:
        terms = []
        for v, a in c.coeffs:
            if v not in index:
                raise DomainError(f"constraint mentions unknown variable {v}")
            terms.append((index[v], a))
        rows.append((terms, c.sense, c.rhs))
    return rows


def solutions(variables: Sequence, cs: Iterable[LinearConstraint], values: Sequence[int] = (0, 1),
              node_limit: int | None = NODE_LIMIT) -> list[tuple]:
    """All assignments ``values^variables`` satisfying every constraint.

    Depth-first in the given variable order; a branch is cut once some
    constraint cannot be met whatever the unassigned variables take.  Results
    are value tuples, sorted lexicographically by the order of ``values``.
    """
    cs = list(cs)
    n = len(variables)
    rows = _compile({v: k for k, v in enumerate(variables)}, cs)
    lo, hi = min(values), max(values)
    touching = [[] for _ in range(n)]
    for r, (terms, _, _) in enumerate(rows):
        for idx, a in terms:
            touching[idx].append((r, a, min(a * lo, a * hi), max(a * lo, a * hi)))

    # partial lhs and the remaining min/max contribution of unassigned variables
    part = [Fraction(0)] * len(rows)
    rmin = [Fraction(0)] * len(rows)
    rmax = [Fraction(0)] * len(rows)
    for k in range(n):
        for r, _, mn, mx in touching[k]:
            rmin[r] += mn
            rmax[r] += mx
    senses = [(sense, rhs) for _, sense, rhs in rows]

    def ok(r):
        sense, rhs = senses[r]
        if sense is not Sense.GE and part[r] + rmin[r] > rhs:
            return False
        if sense is not Sense.LE and part[r] + rmax[r] < rhs:
            return False
        return True

    out = []
    point = [0] * n
    nodes = 0

    def rec(k):
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise CapacityError(f"0/1 search visited more than {node_limit} nodes", bound=node_limit)
        if k == n:
            out.append(tuple(point))
            return
        tk = touching[k]
        for v in values:
            point[k] = v
            for r, a, mn, mx in tk:
                part[r] += a * v
                rmin[r] -= mn
                rmax[r] -= mx
            if all(ok(r) for r, _, _, _ in tk):
                rec(k + 1)
            for r, a, mn, mx in tk:
                part[r] -= a * v
                rmin[r] += mn
                rmax[r] += mx

    if all(ok(r) for r in range(len(rows))):
        rec(0)
    return out


def integer_points(s: Shape, cs: Iterable[LinearConstraint], values: Sequence[int] = (0, 1),
                   node_limit: int | None = NODE_LIMIT) -> list[tuple]:
    """Points of ``values^I`` (I the index set of ``s``, row-major) satisfying ``cs``."""
    return solutions(s.cells, cs, values, node_limit)


def support_of(s: Shape, point: Sequence[int]) -> tuple:
    return tuple(c for c, v in zip(s.cells, point) if v)


@dataclass
class IntegralityReport:
    shape: Shape
    equal: bool
    n_points: int
    n_vertices: int
    extra: list = field(default_factory=list)    # 0/1 solutions that are not vertices
    missing: list = field(default_factory=list)  # vertices cut off by the description

    def to_dict(self):
        return {"check": "integrality", "shape": self.shape, "pass": self.equal,
                "n_points": self.n_points, "n_vertices": self.n_vertices,
                "extra": [list(map(list, e)) for e in self.extra],
                "missing": [list(map(list, m)) for m in self.missing]}


def check_integrality(s: Shape, d: Iterable[LinearConstraint], unsafe: bool = False) -> IntegralityReport:
    check_guard(s, unsafe)
    pts = {support_of(s, p) for p in integer_points(s, d, node_limit=None if unsafe else NODE_LIMIT)}
    verts = {m.support for m in enumerate_vertices(s, unsafe)}
    return IntegralityReport(s, pts == verts, len(pts), len(verts),
                             sorted(pts - verts), sorted(verts - pts))


# -- affine rank ---------------------------------------------------------------

def _coords(points) -> list[list]:
    pts = list(points)
    if not pts:
        return []
    shape = pts[0].shape
    out = []
    for x in pts:
        if x.shape != shape:
            raise DomainError(f"mixed shapes {shape.label()} and {x.shape.label()}")
        if isinstance(x, BinaryMatrix):
            sup = set(x.support)
            out.append([int(c in sup) for c in shape.cells])
        else:
            if not x.exact:
                raise DomainError("rank computations need exact (rational) points")
            out.append(x.vector())
    return out


def affine_rank(points) -> int:
    """Dimension of the affine hull; -1 for an empty list."""
    rows = _coords(points)
    if not rows:
        return -1
    base = rows[0]
    diffs = [[a - b for a, b in zip(r, base)] for r in rows[1:]]
    return linalg.rank(diffs) if diffs else 0


class FaceKind(str, enum.Enum):
    FACET = "facet"
    LOWER_DIM = "lowerdim"
    INVALID = "invalid"
    IMPROPER = "improper"  # every vertex is tight: an implicit equation


@dataclass
class FaceCertificate:
    kind: FaceKind
    rank: int
    dim: int
    tight: list
    witness: BinaryMatrix | None = None

    def to_dict(self):
        return {"kind": self.kind.value, "rank": self.rank, "dim": self.dim,
                "n_tight": len(self.tight),
                "witness": list(map(list, self.witness.support)) if self.witness else None}


def _lhs(c: LinearConstraint, m: BinaryMatrix):
    sup = set(m.support)
    return sum((a for v, a in c.coeffs if v in sup), Fraction(0))


def tight_vertices(c: LinearConstraint, vertices: Sequence[BinaryMatrix]) -> list[BinaryMatrix]:
    return [m for m in vertices if _lhs(c, m) == c.rhs]


def certify_face(s: Shape, c: LinearConstraint, vertices: Sequence[BinaryMatrix] | None = None,
                 dim: int | None = None, unsafe: bool = False) -> FaceCertificate:
    if vertices is None:
        vertices = list(enumerate_vertices(s, unsafe))
    if dim is None:
        dim = affine_rank(vertices)
    for v in c.variables:
        if isinstance(v, str) or not s.contains(v):
            raise DomainError(f"constraint variable {v} is outside the index set of {s.label()}")
    tight = []
    for m in vertices:
        lhs = _lhs(c, m)
        bad = (lhs > c.rhs if c.sense is Sense.LE else lhs < c.rhs if c.sense is Sense.GE else lhs != c.rhs)
        if bad:
            return FaceCertificate(FaceKind.INVALID, -1, dim, [], m)
        if lhs == c.rhs:
            tight.append(m)
    r = affine_rank(tight)
    if len(tight) == len(vertices):
        kind = FaceKind.IMPROPER
    elif r == dim - 1:
        kind = FaceKind.FACET
    else:
        kind = FaceKind.LOWER_DIM
    return FaceCertificate(kind, r, dim, tight)


# -- total unimodularity -----------------------------------------------------

@dataclass
class TUReport:
    seed: int
    trials: int
    max_order: int
    checked: int
    bad: list  # (row indices, column indices, determinant)

    @property
    def ok(self) -> bool:
        return not self.bad

    def to_dict(self):
        return {"check": "tu", "seed": self.seed, "trials": self.trials, "max_order": self.max_order,
                "checked": self.checked, "pass": self.ok,
                "bad": [{"rows": list(r), "cols": list(c), "det": str(d)} for r, c, d in self.bad]}


def tu_spot_check(m: linalg.RationalMatrix, trials: int = 10 ** 4, max_order: int = 8,
                  seed: int = 0) -> TUReport:
    for row in m.entries:
        for v in row:
            if v not in (-1, 0, 1):
                raise DomainError("TU sampling expects a 0/+-1 matrix")
    rng = random.Random(seed)
    top = min(max_order, m.rows, m.cols)
    bad = []
    for _ in range(trials if top > 0 else 0):
        k = rng.randint(1, top)
        rs = sorted(rng.sample(range(m.rows), k))
        cs = sorted(rng.sample(range(m.cols), k))
        d = m.submatrix(rs, cs).det()
        if d not in (-1, 0, 1):
            bad.append((tuple(rs), tuple(cs), d))
    return TUReport(seed, trials, max_order, trials if top > 0 else 0, bad)


def coefficient_matrix(cs: Iterable[LinearConstraint], s: Shape) -> linalg.RationalMatrix:
    rows = []
    for c in cs:
        r = [Fraction(0)] * s.n_cells
        for v, a in c.coeffs:
            r[s.index_of(v)] = a
        rows.append(r)
    return linalg.RationalMatrix.from_rows(rows)


# -- optimization oracle -------------------------------------------------------

@dataclass
class VertexTable:
    """Enumerated vertices plus their incidence matrix (vertices x index set)."""

    shape: Shape
    vertices: list
    incidence: np.ndarray

    @classmethod
    def of(cls, s: Shape, unsafe: bool = False) -> "VertexTable":
        vs = list(enumerate_vertices(s, unsafe))
        inc = np.zeros((len(vs), s.n_cells), dtype=np.int64)
        for r, m in enumerate(vs):
            for c in m.support:
                inc[r, s.index_of(c)] = 1
        return cls(s, vs, inc)


def oracle_optimize(s: Shape, c: CostVector, table: VertexTable | None = None, unsafe: bool = False):
    """Max of <c, v> over the enumerated vertices; ties go to the lex-largest vertex."""
    if c.shape != s:
        raise DomainError(f"cost vector shape {c.shape.label()} differs from {s.label()}")
    table = table or VertexTable.of(s, unsafe)
    vec = c.vector()
    if c.exact and all(v.denominator == 1 for v in vec):
        vals = table.incidence @ np.array([int(v) for v in vec], dtype=np.int64)
        vals = [Fraction(int(v)) for v in vals]
    elif c.exact:
        vals = list(table.incidence.astype(object) @ np.array(vec, dtype=object))
    else:
        vals = list(table.incidence @ np.array(vec, dtype=float))
    best = max(vals)
    arg = None
    for v, m in zip(vals, table.vertices):
        if v == best and (arg is None or lex_compare(m, arg) is Order.GREATER):
            arg = m
    return best, arg
