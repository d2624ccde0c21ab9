"""CPLEX LP text output.

Exact rationals are printed as decimals when the expansion terminates.  A row
holding any other rational is multiplied by the lcm of its denominators and
preceded by a ``\\ scaled`` comment giving that factor, so no coefficient is
ever rounded.
"""
from __future__ import annotations

import io
from decimal import Decimal, localcontext
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, TextIO

from .constraints import LinearConstraint, Var, var_name

LINE_WIDTH = 200


def terminates(f: Fraction) -> bool:
    d = f.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def fmt_number(f) -> str:
    f = Fraction(f)
    if f.denominator == 1:
        return str(f.numerator)
    if not terminates(f):
        raise ValueError(f"{f} has no finite decimal expansion")
    with localcontext() as ctx:
        ctx.prec = 4 * (len(str(f.numerator)) + len(str(f.denominator))) + 8
        s = format(Decimal(f.numerator) / Decimal(f.denominator), "f")
    return s.rstrip("0").rstrip(".") if "." in s else s


def _scale_of(values: Iterable[Fraction]) -> int:
    vals = [Fraction(v) for v in values]
    if all(terminates(v) for v in vals):
        return 1
    return lcm(*(v.denominator for v in vals))


def _expr(terms: Sequence[tuple[Var, Fraction]]) -> list[str]:
    out = []
    for k, (v, a) in enumerate(terms):
        sign = "-" if a < 0 else "+"
        mag = fmt_number(abs(a))
        tok = f"{mag} {var_name(v)}"
        out.append(tok if (k == 0 and sign == "+") else f"{sign} {tok}")
    return out


def _wrap(head: str, tokens: list[str], tail: str) -> list[str]:
    lines, cur = [], head
    for tok in tokens + ([tail] if tail else []):
        if len(cur) + 1 + len(tok) > LINE_WIDTH and cur.strip():
            lines.append(cur)
            cur = "   " + tok
        else:
            cur = f"{cur} {tok}" if cur else tok
    lines.append(cur)
    return lines


class ConstraintNamer:
    """``<class>_<anchor...>``, with ``_k`` (k = 2, 3, ...) on repeated names."""

    def __init__(self):
        self.seen: dict[str, int] = {}

    def __call__(self, c: LinearConstraint) -> str:
        base = "_".join([c.cls.value] + [str(a) for a in c.anchor])
        n = self.seen.get(base, 0) + 1
        self.seen[base] = n
        return base if n == 1 else f"{base}_{n}"


def write_lp(out: TextIO, constraints: Iterable[LinearConstraint], *,
             objective: Mapping[Var, object] | None = None, sense: str = "min",
             variables: Sequence[Var] = (), binaries: Sequence[Var] = (),
             free: Sequence[Var] = (), comments: Sequence[str] = (), namer=None) -> list[str]:
    """Stream an LP file; returns the constraint names in emission order."""
    namer = namer or ConstraintNamer()
    for line in comments:
        out.write(f"\\ {line}\n")
    out.write("Minimize\n" if sense == "min" else "Maximize\n")
    obj = [(v, Fraction(a)) for v, a in (objective or {}).items() if Fraction(a) != 0]
    if obj:
        k = _scale_of(a for _, a in obj)
        if k != 1:
            out.write(f"\\ objective scaled by {k}\n")
        for line in _wrap(" obj:", _expr([(v, a * k) for v, a in obj]), ""):
            out.write(line + "\n")
    else:
        first = variables[0] if variables else (1, 1)
        out.write(f" obj: 0 {var_name(first)}\n")
    out.write("Subject To\n")
    names = []
    for c in constraints:
        name = namer(c)
        names.append(name)
        k = _scale_of([a for _, a in c.coeffs] + [c.rhs])
        if k != 1:
            out.write(f"\\ row {name} scaled by {k}\n")
        terms = [(v, a * k) for v, a in c.coeffs]
        for line in _wrap(f" {name}:", _expr(terms), f"{c.sense.value} {fmt_number(c.rhs * k)}"):
            out.write(line + "\n")
    if free:
        out.write("Bounds\n")
        for v in free:
            out.write(f" {var_name(v)} free\n")
    if binaries:
        out.write("Binaries\n")
        for line in _wrap("", [var_name(v) for v in binaries], ""):
            out.write(" " + line.strip() + "\n")
    out.write("End\n")
    return names


def lp_string(constraints: Iterable[LinearConstraint], **kw) -> str:
    buf = io.StringIO()
    write_lp(buf, constraints, **kw)
    return buf.getvalue()
