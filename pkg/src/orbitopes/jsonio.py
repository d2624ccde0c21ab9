"""JSON encoding of the package's objects; see docs/schema.md for the layout."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .constraints import LinearConstraint, parse_var, var_name
from .core import SCI, Bar, BinaryMatrix, DiagCoord, FractionalPoint, Shape, ShiftedColumn, bar_of
from .errors import DomainError


def number(v) -> Any:
    """Rationals as strings ("1/2", "3"), floats as JSON numbers."""
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return float(v)
    raise DomainError(f"not a number: {v!r}")


def parse_number(v, exact: bool):
    if exact:
        if isinstance(v, float):
            raise DomainError(f"exact point holds a float entry {v!r}; write it as a string")
        return Fraction(str(v)) if not isinstance(v, int) else Fraction(v)
    return float(Fraction(v)) if isinstance(v, str) else float(v)


def shape_to(s: Shape) -> dict:
    return {"p": s.p, "q": s.q, "group": s.group.value, "row_mode": s.row_mode.value,
            "original_q": s.original_q}


def shape_from(d: dict) -> Shape:
    try:
        return Shape(int(d["p"]), int(d.get("original_q") or d["q"]), d["group"], d["row_mode"])
    except KeyError as e:
        raise DomainError(f"shape is missing field {e}") from None


def matrix_to(m: BinaryMatrix) -> dict:
    return {"shape": shape_to(m.shape), "support": [list(c) for c in m.support]}


def matrix_from(d: dict, shape: Shape | None = None) -> BinaryMatrix:
    s = shape or shape_from(d["shape"])
    return BinaryMatrix(s, tuple(tuple(c) for c in d["support"]))


def point_to(x: FractionalPoint) -> dict:
    return {"shape": shape_to(x.shape), "exact": x.exact,
            "values": [[number(v) for v in r] for r in x.rows()]}


def point_from(d: dict, shape: Shape | None = None) -> FractionalPoint:
    s = shape or shape_from(d["shape"])
    rows = d["values"]
    exact = d.get("exact")
    if exact is None:
        exact = not any(isinstance(v, float) for r in rows for v in r)
    return FractionalPoint.from_rows(s, [[parse_number(v, exact) for v in r] for r in rows], exact)


def diag_to(d: DiagCoord) -> list:
    return [d.eta, d.j]


def shifted_column_to(sc: ShiftedColumn) -> dict:
    return {"entries": [diag_to(e) for e in sc.entries], "cells": [list(c) for c in sc.cells]}


def bar_to(b: Bar) -> dict:
    return {"leader": list(b.leader), "cells": [list(c) for c in b.cells]}


def sci_to(sci: SCI) -> dict:
    return {"bar": bar_to(sci.bar), "shifted_column": shifted_column_to(sci.shifted_column)}


def sci_from(d: dict, s: Shape) -> SCI:
    sc = ShiftedColumn(tuple(DiagCoord(*e) for e in d["shifted_column"]["entries"])).check(s)
    return SCI(bar_of(tuple(d["bar"]["leader"]), s), sc)


def constraint_to(c: LinearConstraint, name: str | None = None) -> dict:
    out = {"coeffs": [{"var": var_name(v), "coef": number(a)} for v, a in c.coeffs],
           "sense": c.sense.value, "rhs": number(c.rhs), "class": c.cls.value,
           "anchor": list(c.anchor)}
    if name is not None:
        out["name"] = name
    if c.meta:
        out["meta"] = c.meta
    return out


def constraint_from(d: dict) -> LinearConstraint:
    coeffs = tuple((parse_var(t["var"]), Fraction(str(t["coef"]))) for t in d["coeffs"])
    return LinearConstraint(coeffs, d["sense"], Fraction(str(d["rhs"])), d["class"],
                            tuple(d.get("anchor", ())), d.get("meta"))


def violation_to(v) -> dict:
    out = {"constraint": constraint_to(v.constraint), "amount": number(v.amount)}
    if v.sci is not None:
        out["sci"] = sci_to(v.sci)
    return out


def _default(o):
    if isinstance(o, Shape):
        return shape_to(o)
    if isinstance(o, (Fraction, np.integer, np.floating)):
        return number(o)
    if isinstance(o, BinaryMatrix):
        return [list(c) for c in o.support]
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(obj, default=_default, indent=indent, sort_keys=False)
