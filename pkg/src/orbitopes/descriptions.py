"""Linear descriptions of the four orbitope families, SCI facet classes, and the
projection between partitioning and packing orbitopes of the symmetric group."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator

from . import constraints as cons
from .constraints import LinearConstraint
from .core import SCI, BinaryMatrix, Bar, Group, RowMode, Shape, ShiftedColumn, bar_of
from .errors import CapacityError, DomainError

COLLECT_CAP = 10 ** 6


class Redundancy(str, enum.Enum):
    FULL = "full"
    NON_REDUNDANT = "nonredundant"


@dataclass(frozen=True)
class Description:
    """A restartable lazy stream of constraints: every ``iter()`` starts over."""

    shape: Shape
    redundancy: Redundancy
    _factory: Callable[[], Iterator[LinearConstraint]]

    def __iter__(self):
        return iter(self._factory())

    def collect(self, cap: int = COLLECT_CAP) -> list[LinearConstraint]:
        out = []
        for c in self:
            if len(out) >= cap:
                raise CapacityError(f"description of {self.shape.label()} has more than {cap} constraints; "
                                    "stream it instead", bound=cap)
            out.append(c)
        return out

    def without(self, k: int) -> "Description":
        """The same stream with its k-th constraint (0-based) dropped."""
        def gen():
            for n, c in enumerate(self):
                if n != k:
                    yield c
        return Description(self.shape, Redundancy.FULL, gen)


def _need(s: Shape, group: Group, mode: RowMode | None = None):
    if s.group is not group or (mode is not None and s.row_mode is not mode):
        want = f"{group.value}" + (f" {mode.value}" if mode else "")
        raise DomainError(f"expected a {want} shape, got {s.label()}")


def describe_cyclic_partitioning(s: Shape) -> Description:
    _need(s, Group.CYCLIC, RowMode.PARTITIONING)

    def gen():
        yield cons.fixing((1, 1), 1)
        for j in range(2, s.q + 1):
            yield cons.fixing((1, j), 0)
        for i in range(2, s.p + 1):
            for j in range(1, s.q + 1):
                yield cons.nonneg((i, j))
        for i in range(2, s.p + 1):
            yield cons.row_sum(s, i)

    return Description(s, Redundancy.NON_REDUNDANT, gen)


def describe_cyclic_packing(s: Shape) -> Description:
    _need(s, Group.CYCLIC, RowMode.PACKING)

    def gen():
        yield cons.nonneg((1, 1))
        yield cons.upper_bound((1, 1))
        for j in range(2, s.q + 1):
            yield cons.fixing((1, j), 0)
        for i in range(2, s.p + 1):
            for j in range(1, s.q + 1):
                yield cons.nonneg((i, j))
        for i in range(2, s.p + 1):
            yield cons.row_sum(s, i)
        for i in range(2, s.p + 1):
            yield cons.cyclic_lex(i, s)

    return Description(s, Redundancy.FULL, gen)


def _nondecreasing(length: int, lo: int, hi: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for c in range(lo, hi + 1):
        for rest in _nondecreasing(length - 1, c, hi):
            yield (c,) + rest


def sci_leaders(s: Shape) -> Iterator[tuple[int, int]]:
    for i in range(2, s.p + 1):
        for j in range(2, min(i, s.q) + 1):
            yield (i, j)


def enumerate_scis(s: Shape, nonredundant: bool = False) -> Iterator[SCI]:
    """All SCIs of the shape (leaders row-major, shifted columns lexicographic).

    With ``nonredundant`` only the facet family is produced: c1 = c2 and, for
    eta = 1, j = c1 + 1; partitioning shapes additionally require c1 >= 2.
    """
    _need(s, Group.SYMMETRIC)
    part = not s.is_packing
    for i, j in sci_leaders(s):
        eta = i - j + 1
        bar = bar_of((i, j), s)
        if not nonredundant:
            for cs in _nondecreasing(eta, 1, j - 1):
                yield SCI(bar, ShiftedColumn.from_columns(cs))
            continue
        if eta == 1:
            c1 = j - 1
            if part and c1 < 2:
                continue
            yield SCI(bar, ShiftedColumn.from_columns((c1,)))
            continue
        for c1 in range(2 if part else 1, j):
            for rest in _nondecreasing(eta - 2, c1, j - 1):
                yield SCI(bar, ShiftedColumn.from_columns((c1, c1) + rest))


def describe_symmetric(s: Shape, redundancy: Redundancy | str = Redundancy.FULL) -> Description:
    _need(s, Group.SYMMETRIC)
    redundancy = Redundancy(redundancy)
    nr = redundancy is Redundancy.NON_REDUNDANT

    def gen():
        for i in range(1, s.p + 1):
            yield cons.row_sum(s, i)
        for cell in s.cells:
            if nr and cell[0] == cell[1] < s.q:
                continue
            yield cons.nonneg(cell)
        for sci in enumerate_scis(s, nonredundant=nr):
            yield cons.sci_constraint(sci)

    return Description(s, redundancy, gen)


def describe(s: Shape, redundancy: Redundancy | str = Redundancy.FULL) -> Description:
    if s.is_symmetric:
        return describe_symmetric(s, redundancy)
    if s.is_packing:
        return describe_cyclic_packing(s)
    return describe_cyclic_partitioning(s)


# -- facet classes -----------------------------------------------------------

@dataclass(frozen=True)
class SciClass:
    """Facet status of an SCI.

    ``exception`` names the rule that makes the SCI dominated ("I", "II",
    "III" as in the mode's exception list) and ``dominating`` is the facet
    containing its face.  A dominated SCI can still be a facet when its face
    coincides with the dominating one (the partitioning SCI with bar {(2,2)}
    and S = {(1,1)} equals the facet x_21 >= 0); ``facet`` reflects that.
    """

    facet: bool
    exception: str | None = None
    dominating: LinearConstraint | None = None


def classify_sci(sci: SCI, mode: RowMode | str) -> SciClass:
    mode = RowMode(mode)
    cs = sci.shifted_column.columns
    eta = sci.eta
    i, j = sci.leader
    rules = []
    if mode is RowMode.PARTITIONING:
        rules.append("c1")
    rules += ["c1<c2", "bar"]
    labels = iter(["I", "II", "III"])
    for rule in rules:
        label = next(labels)
        if rule == "c1" and cs[0] == 1:
            dom = cons.nonneg((i, 1))
            # x_11 = 1 on the partitioning orbitope, so this face is {x_21 = 0} for leader (2,2)
            same = (i, j) == (2, 2)
            return SciClass(same, label, dom)
        if rule == "c1<c2" and eta >= 2 and cs[0] < cs[1]:
            dom = SCI(sci.bar, ShiftedColumn.from_columns((cs[1],) + cs[1:]))
            return SciClass(False, label, cons.sci_constraint(dom))
        if rule == "bar" and eta == 1 and j != cs[0] + 1:
            c = cs[0] + 1
            dom = SCI(Bar((c, c), ((c, c),)), ShiftedColumn.from_columns((cs[0],)))
            return SciClass(False, label, cons.sci_constraint(dom))
    return SciClass(True)


def nonneg_is_facet(cell, s: Shape) -> bool:
    """x_ij >= 0 on the symmetric orbitopes: a facet unless i = j < q."""
    i, j = cell
    return not (i == j < s.q)


# -- projection --------------------------------------------------------------

def _pack_shape_of(s: Shape) -> Shape:
    if not (s.is_symmetric and not s.is_packing):
        raise DomainError(f"projection starts from a symmetric partitioning shape, got {s.label()}")
    return Shape(s.p - 1, s.q - 1, Group.SYMMETRIC, RowMode.PACKING, degenerate=(s.q - 1 == 1))


def _part_shape_of(s: Shape) -> Shape:
    if not (s.is_symmetric and s.is_packing):
        raise DomainError(f"lifting starts from a symmetric packing shape, got {s.label()}")
    return Shape(s.p + 1, s.q + 1, Group.SYMMETRIC, RowMode.PARTITIONING)


def project_part_to_pack(v, shape: Shape | None = None):
    """Drop row 1 and column 1: (i, j) -> (i-1, j-1).

    Constraints carry no shape, so the partitioning ``shape`` must be given
    for them; column-1 coefficients make a constraint non-projectable.
    """
    if isinstance(v, BinaryMatrix):
        t = _pack_shape_of(v.shape)
        return BinaryMatrix(t, tuple((i - 1, j - 1) for i, j in v.support if j >= 2))
    if isinstance(v, LinearConstraint):
        if shape is not None:
            _pack_shape_of(shape)
        bad = [c for c in v.variables if isinstance(c, str) or c[1] == 1]
        if bad:
            raise DomainError(f"constraint has coefficients on column 1 or non-cell variables: {bad}")
        return v.reindexed(lambda c: (c[0] - 1, c[1] - 1))
    raise DomainError(f"cannot project {type(v).__name__}")


def lift_pack_to_part(v, shape: Shape | None = None):
    """Inverse of the projection: phi(y)_ij = y_{i-1,j-1} for j >= 2 and
    phi(y)_i1 = 1 - y(row i-1)."""
    if isinstance(v, BinaryMatrix):
        t = _part_shape_of(v.shape)
        full = {i for i, _ in v.support}
        sup = [(i + 1, j + 1) for i, j in v.support]
        sup += [(i, 1) for i in range(1, t.p + 1) if (i - 1) not in full]
        return BinaryMatrix(t, tuple(sup))
    if isinstance(v, LinearConstraint):
        if shape is not None:
            _part_shape_of(shape)
        if any(isinstance(c, str) for c in v.variables):
            raise DomainError("only x-variables can be lifted")
        return v.reindexed(lambda c: (c[0] + 1, c[1] + 1))
    raise DomainError(f"cannot lift {type(v).__name__}")
