"""Graph-coloring IP models with orbitope-based symmetry breaking.

x_ij = 1 iff node i gets color j, y_j = 1 iff color j is used.  The base
model has, for every edge {i,k} and color j, x_ij + x_kj <= y_j, and one
color per node.  Symmetry breaking families live on the triangle I(n, C)
and fix x_ij = 0 for i < j.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import constraints as cons
from .constraints import ConstraintClass, LinearConstraint, Sense, var_name
from .core import Group, RowMode, Shape, ShiftedColumn
from .descriptions import enumerate_scis, sci_leaders
from .errors import DomainError
from .verify import solutions


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        es = set()
        for e in self.edges:
            u, v = sorted(int(a) for a in e)
            if u == v:
                raise DomainError(f"loop at node {u}")
            if not (1 <= u and v <= self.n):
                raise DomainError(f"edge {(u, v)} has an endpoint outside 1..{self.n}")
            es.add((u, v))
        object.__setattr__(self, "edges", frozenset(es))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbors(self, u: int) -> set[int]:
        return {b if a == u else a for a, b in self.edges if u in (a, b)}

    def isolated(self) -> list[int]:
        touched = {a for e in self.edges for a in e}
        return [v for v in range(1, self.n + 1) if v not in touched]

    def is_clique(self, w: Iterable[int]) -> bool:
        w = sorted(set(w))
        return all(self.adjacent(a, b) for k, a in enumerate(w) for b in w[k + 1:])


def parse_dimacs(text: str) -> Graph:
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None or len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DomainError(f"line {lineno}: malformed problem line {raw!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise DomainError(f"line {lineno}: malformed problem line {raw!r}") from None
            if n < 1:
                raise DomainError(f"line {lineno}: graph needs at least one node")
        elif parts[0] == "e":
            if n is None:
                raise DomainError(f"line {lineno}: edge before the problem line")
            if len(parts) != 3:
                raise DomainError(f"line {lineno}: malformed edge line {raw!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DomainError(f"line {lineno}: malformed edge line {raw!r}") from None
            if u == v:
                raise DomainError(f"line {lineno}: loop edge at node {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise DomainError(f"line {lineno}: node index out of range 1..{n}")
            edges.add((min(u, v), max(u, v)))
        else:
            raise DomainError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise DomainError("no problem line ('p edge n m') found")
    return Graph(n, frozenset(edges))


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {len(g.edges)}"] + [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


class SymmetryBreaking(str, enum.Enum):
    NONE = "none"
    MD_ZABALA = "mdzabala"
    COLUMN_INEQ = "columnineq"
    SCI_NONREDUNDANT = "sci"


def y(j: int) -> str:
    return f"y_{j}"


@dataclass
class ColoringModel:
    graph: Graph
    C: int
    sb: SymmetryBreaking
    x_vars: list
    y_vars: list
    constraints: list
    cuts: list = field(default_factory=list)  # metadata of generated clique-SCI cuts

    @property
    def variables(self) -> list:
        return self.x_vars + self.y_vars

    @property
    def objective(self) -> dict:
        return {v: 1 for v in self.y_vars}

    def sidecar(self, names: Sequence[str] | None = None) -> dict:
        out = {"n": self.graph.n, "C": self.C, "symmetry_breaking": self.sb.value,
               "variables": {var_name(v): k for k, v in enumerate(self.variables)},
               "n_constraints": len(self.constraints), "cuts": self.cuts}
        if names is not None:
            out["constraint_names"] = list(names)
        return out


def _triangle(n: int, C: int) -> Shape:
    q = min(n, C)
    return Shape(n, q, Group.SYMMETRIC, RowMode.PARTITIONING, degenerate=(q == 1))


def symmetry_rows(n: int, C: int, sb: SymmetryBreaking) -> list[LinearConstraint]:
    if sb is SymmetryBreaking.NONE:
        return []
    rows = [cons.fixing((i, j), 0) for i in range(1, n + 1) for j in range(i + 1, C + 1)]
    s = _triangle(n, C)
    if sb is SymmetryBreaking.MD_ZABALA:
        rows += [cons.md_zabala(i, j, s) for i, j in s.cells if j >= 2]
    elif sb is SymmetryBreaking.COLUMN_INEQ:
        rows += [cons.column_inequality(leader, s) for leader in sci_leaders(s)]
    elif s.q >= 2:
        rows += [cons.sci_constraint(sci) for sci in enumerate_scis(s, nonredundant=True)]
    return rows


def build_model(g: Graph, C: int, sb: SymmetryBreaking | str | None = None, link_xy: bool = False,
                clique_cuts: bool = False, clique_cap: int = 1000) -> ColoringModel:
    sb = SymmetryBreaking(sb or SymmetryBreaking.NONE)
    if C < 2:
        raise DomainError(f"need at least two colors, got C={C}")
    if C > g.n:
        warnings.warn(f"C={C} exceeds the node count {g.n}; colors above {g.n} stay unused", stacklevel=2)
    n = g.n
    xs = [(i, j) for i in range(1, n + 1) for j in range(1, C + 1)]
    ys = [y(j) for j in range(1, C + 1)]
    rows = []
    for u, v in sorted(g.edges):
        for j in range(1, C + 1):
            rows.append(LinearConstraint((((u, j), 1), ((v, j), 1), (y(j), -1)), Sense.LE, 0,
                                         ConstraintClass.EDGE, (u, v, j)))
    for i in range(1, n + 1):
        rows.append(LinearConstraint(tuple(((i, j), 1) for j in range(1, C + 1)), Sense.EQ, 1,
                                     ConstraintClass.ASSIGN, (i,)))
    isolated = g.isolated()
    if isolated:
        warnings.warn(f"isolated nodes {isolated}: adding x_ij <= y_j rows for them", stacklevel=2)
    link = range(1, n + 1) if link_xy else isolated
    for i in link:
        for j in range(1, C + 1):
            rows.append(LinearConstraint((((i, j), 1), (y(j), -1)), Sense.LE, 0, ConstraintClass.LINK, (i, j)))
    rows += symmetry_rows(n, C, sb)
    model = ColoringModel(g, C, sb, xs, ys, list(dedupe(rows)))
    if clique_cuts:
        for w in greedy_cliques(g, clique_cap):
            for j in range(2, min(n, C) + 1):
                members = [i for i in w if i >= j]
                if len(members) < 2:
                    continue
                eta = max(members) - j + 1
                sc = ShiftedColumn.from_columns([j - 1] * eta)
                cut = clique_sci_cut(g, members, j, sc, C)
                model.constraints.append(cut)
                model.cuts.append(dict(cut.meta))
    return model


def dedupe(rows: Iterable[LinearConstraint]):
    seen = set()
    for r in rows:
        k = r.key()
        if k not in seen:
            seen.add(k)
            yield r


def clique_sci_cut(g: Graph, W: Iterable[int], j: int, S: ShiftedColumn, C: int | None = None) -> LinearConstraint:
    """sum_{i in W} x_ij - x(S) <= 0 for a clique W and a shifted column S."""
    W = sorted(set(W))
    if not W:
        raise DomainError("empty clique")
    if not g.is_clique(W):
        raise DomainError(f"{W} is not a clique")
    if j < 2:
        raise DomainError(f"clique-SCI cuts need j >= 2, got {j}")
    if C is not None and j > C:
        raise DomainError(f"color {j} exceeds C={C}")
    for i in W:
        if i < j or i - j + 1 > S.eta:
            raise DomainError(f"node {i} breaks the side condition (i >= j and i - j + 1 <= |S| = {S.eta})")
    if S.columns[-1] > j - 1:
        raise DomainError(f"shifted column must use columns <= {j - 1}, got {S.columns}")
    for cell in S.cells:
        if not (cell[1] <= cell[0] <= g.n):
            raise DomainError(f"shifted-column cell {cell} is outside I({g.n}, C)")
    coeffs = [((i, j), 1) for i in W] + [(c, -1) for c in S.cells]
    meta = {"clique": W, "color": j, "shifted_column": [list(c) for c in S.cells]}
    return LinearConstraint(tuple(coeffs), Sense.LE, 0, ConstraintClass.CLIQUE_SCI, (min(W), j), meta)


def greedy_cliques(g: Graph, cap: int) -> list[list[int]]:
    out, seen = [], set()
    for v in range(1, g.n + 1):
        if len(out) >= cap:
            break
        w = [v]
        for u in range(1, g.n + 1):
            if u != v and all(g.adjacent(u, a) for a in w):
                w.append(u)
        key = frozenset(w)
        if key not in seen:
            seen.add(key)
            out.append(sorted(w))
    return out


# -- brute-force helpers (used by tests and the CLI's self-checks) ----------------

def proper_colorings(g: Graph, C: int):
    """All proper colorings as tuples (color of node 1, ..., color of node n)."""
    col = [0] * g.n
    nbrs = [sorted(u for u in g.neighbors(i + 1) if u < i + 1) for i in range(g.n)]

    def rec(i):
        if i == g.n:
            yield tuple(col)
            return
        for c in range(1, C + 1):
            if all(col[u - 1] != c for u in nbrs[i]):
                col[i] = c
                yield from rec(i + 1)

    yield from rec(0)


def model_solutions(m: ColoringModel, node_limit: int | None = None) -> set[tuple]:
    """Distinct x-parts of the 0/1 solutions, as color vectors."""
    sols = solutions(m.variables, m.constraints, (0, 1), node_limit=node_limit)
    out = set()
    nx = len(m.x_vars)
    for s in sols:
        colors = [0] * m.graph.n
        for (i, j), v in zip(m.x_vars, s[:nx]):
            if v:
                colors[i - 1] = j
        out.add(tuple(colors))
    return out


def evaluate_point(c: LinearConstraint, values: dict):
    return sum((a * Fraction(values.get(v, 0)) for v, a in c.coeffs), Fraction(0))
