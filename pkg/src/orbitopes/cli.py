"""Command line front end: ``orbitopes <command> [options]``.

Exit codes: 0 success, 1 a cut/violation/failed check was found (separate,
verify), 2 usage or input error, 3 a capacity guard refused the work.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import coloring, descriptions, jsonio, optimize, orbits, separation, verify
from .constraints import ConstraintClass, sci_constraint
from .core import CostVector, FractionalPoint, Shape
from .errors import CapacityError, DomainError, OrbitopeError
from .lpfile import ConstraintNamer, write_lp

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

POINT_FORMAT = """\
Point / cost files are JSON objects
  {"shape": {"p": 3, "q": 3, "group": "symmetric", "row_mode": "partitioning"},
   "exact": true,
   "values": [["1"], ["1/2", "1/2"], ["0", "0", "1"]]}
"values" lists the rows; symmetric rows may stop at the diagonal.  Exact
entries are integers or strings "a/b"; with "exact": false they are JSON
numbers.  "shape" may be omitted when --p/--q/--group/--mode are given."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _shape_flags(p, required=True):
    p.add_argument("--p", type=int, required=required, help="number of rows")
    p.add_argument("--q", type=int, required=required, help="number of columns")
    p.add_argument("--group", choices=["cyclic", "symmetric"], required=required)
    p.add_argument("--mode", choices=["packing", "partitioning"], required=required)


def _io_flags(p, formats, default="json"):
    p.add_argument("--in", dest="inp", help="input file ('-' for stdin)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=formats, default=default)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="orbitopes", description="Packing and partitioning orbitopes for cyclic and "
                 "symmetric column groups.", formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    raw = argparse.RawDescriptionHelpFormatter

    d = sub.add_parser("describe", formatter_class=raw, help="emit a linear description",
                       description="Emit the linear description of an orbitope.\n\n"
                       "json: one array of constraint objects; jsonl: one object per line; "
                       "lp: CPLEX LP text with every variable free.\nConstraint objects: "
                       '{"coeffs": [{"var": "x_i_j", "coef": "1"}], "sense": "<=", "rhs": "0", '
                       '"class": "sci", "anchor": [i, j], "name": ..., "meta": {...}}')
    _shape_flags(d)
    _io_flags(d, ["json", "jsonl", "lp"])
    d.add_argument("--redundancy", choices=["full", "nonredundant"], default="full",
                   help="symmetric group only: all SCIs or the facet family")
    d.add_argument("--cap", type=int, default=descriptions.COLLECT_CAP,
                   help="maximum number of constraints held in memory for --format json")

    o = sub.add_parser("optimize", formatter_class=raw, help="maximize a linear objective",
                       description="Maximize <c, x> over the orbitope vertices.\n\n" + POINT_FORMAT +
                       '\n\nOutput: {"value": "8", "support": [[1, 1], [2, 2]]}.  --format csv or '
                       "--tables FILE dumps the symmetric DP tables as CSV rows table,i,j,value.")
    _shape_flags(o, required=False)
    _io_flags(o, ["json", "csv"])
    o.add_argument("--tables", help="write the symmetric DP tables to this CSV file")

    s = sub.add_parser("separate", formatter_class=raw, help="find a most violated inequality",
                       description="Separate a point: SCIs for the symmetric group, the cyclic "
                       "description otherwise.\n\n" + POINT_FORMAT +
                       '\n\nOutput: {"separated": true, "violation": {"constraint": ..., "amount": "1/2", '
                       '"sci": {"bar": ..., "shifted_column": ...}}}; exit 1 when separated.')
    _shape_flags(s, required=False)
    _io_flags(s, ["json"])
    s.add_argument("--tol", help="violation tolerance (default 0 exact, 1e-6 float)")
    s.add_argument("--diagnostics", action="store_true", help="also report bound and row-sum violations")

    e = sub.add_parser("enumerate", formatter_class=raw, help="list the vertices",
                       description="List the vertices in lexicographic order of row choices.\n\n"
                       "jsonl: one support list per line, e.g. [[1, 1], [2, 1]].  json: one array.")
    _shape_flags(e)
    _io_flags(e, ["jsonl", "json"], default="jsonl")
    e.add_argument("--unsafe-no-guard", action="store_true", help="lift the 2^24 enumeration guard")

    v = sub.add_parser("verify", formatter_class=raw, help="run the brute-force checks",
                       description="Run exact checks on one shape and print a JSON report\n"
                       '{"shape": ..., "seed": 0, "pass": true, "checks": [{"check": ..., "pass": ...}]}.\n'
                       "Exit 1 if any check fails.")
    _shape_flags(v)
    _io_flags(v, ["json"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=20, help="random cost vectors / points per check")
    v.add_argument("--tu-trials", type=int, default=1000)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--timings", action="store_true", help="add wall times (output is then not reproducible)")
    v.add_argument("--unsafe-no-guard", action="store_true")

    f = sub.add_parser("facets", formatter_class=raw, help="classify SCIs and certify facets",
                       description="For each SCI of a symmetric shape print one JSON line\n"
                       '{"leader": [i, j], "columns": [c1, ...], "facet": true, "exception": null, '
                       '"certificate": "facet", "agree": true}.')
    _shape_flags(f)
    _io_flags(f, ["jsonl", "json"], default="jsonl")
    f.add_argument("--redundancy", choices=["full", "nonredundant"], default="full")
    f.add_argument("--unsafe-no-guard", action="store_true")

    c = sub.add_parser("coloring-model", formatter_class=raw, help="graph coloring LP model",
                       description="Read a DIMACS .col graph ('p edge n m', 'e u v', 'c ...') and "
                       "write the coloring IP as an LP file plus a JSON sidecar\n"
                       '{"n":..., "C":..., "variables": {"x_1_1": 0, ...}, "cuts": [...]} '
                       "next to it (<out>.json).")
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--out", help="LP file (default stdout; the sidecar then needs --sidecar)")
    c.add_argument("--sidecar", help="sidecar path (default <out>.json)")
    c.add_argument("--format", choices=["lp"], default="lp")
    c.add_argument("--colors", "-C", type=int, required=True)
    c.add_argument("--sb", choices=[m.value for m in coloring.SymmetryBreaking], default="sci")
    c.add_argument("--link-xy", action="store_true", help="add x_ij <= y_j for every node")
    c.add_argument("--clique-cuts", action="store_true", help="append clique-SCI cuts from greedy cliques")
    c.add_argument("--cap", type=int, default=1000, help="maximum number of greedy cliques")
    return ap


# -- helpers -------------------------------------------------------------------

def _shape(a) -> Shape | None:
    if a.p is None and a.q is None and a.group is None and a.mode is None:
        return None
    if None in (a.p, a.q, a.group, a.mode):
        raise UsageError("give all of --p, --q, --group, --mode or none of them")
    return Shape(a.p, a.q, a.group, a.mode)


def _read(path):
    if path is None:
        raise UsageError("--in is required")
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_point(a) -> FractionalPoint:
    data = json.loads(_read(a.inp))
    s = _shape(a)
    if s is None and "shape" not in data:
        raise UsageError("the input has no shape; pass --p/--q/--group/--mode")
    return jsonio.point_from(data, s)


class _Out:
    def __init__(self, path):
        self.fh = open(path, "w") if path else sys.stdout

    def __enter__(self):
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not sys.stdout:
            self.fh.close()
        else:
            self.fh.flush()


# -- commands ------------------------------------------------------------------

def cmd_describe(a) -> int:
    s = _shape(a)
    desc = descriptions.describe(s, a.redundancy)
    with _Out(a.out) as out:
        if a.format == "lp":
            write_lp(out, desc, variables=s.cells, free=s.cells,
                     comments=[f"{s.label()} ({desc.redundancy.value})"])
        elif a.format == "jsonl":
            namer = ConstraintNamer()
            for c in desc:
                out.write(jsonio.dumps(jsonio.constraint_to(c, namer(c))) + "\n")
        else:
            namer = ConstraintNamer()
            rows = [jsonio.constraint_to(c, namer(c)) for c in desc.collect(a.cap)]
            out.write(jsonio.dumps({"shape": s, "redundancy": desc.redundancy.value,
                                    "constraints": rows}, indent=1) + "\n")
    return EXIT_OK


def cmd_optimize(a) -> int:
    c = _load_point(a)
    s = c.shape
    value, arg = optimize.optimize(s, c)
    tables = optimize.build_sym_tables(s, c) if s.is_symmetric and (a.tables or a.format == "csv") else None
    if a.tables:
        with open(a.tables, "w") as fh:
            fh.write(tables.to_csv())
    with _Out(a.out) as out:
        if a.format == "csv":
            if tables is None:
                raise UsageError("--format csv dumps the symmetric DP tables; the shape is cyclic")
            out.write(tables.to_csv())
        else:
            out.write(jsonio.dumps({"shape": s, "value": jsonio.number(value),
                                    "support": [list(x) for x in arg.support]}) + "\n")
    return EXIT_OK


def cmd_separate(a) -> int:
    x = _load_point(a)
    tol = None
    if a.tol is not None:
        tol = Fraction(a.tol) if x.exact else float(Fraction(a.tol))
    if x.shape.is_symmetric:
        v = separation.separate_sci(x, tol)
    else:
        v = separation.separate_cyclic(x, x.shape, tol)
    res = {"separated": v is not None}
    if v is not None:
        res["violation"] = jsonio.violation_to(v)
    if a.diagnostics:
        res["diagnostics"] = [{k: (jsonio.number(w) if k == "value" else w) for k, w in d.items()}
                              for d in separation.bound_diagnostics(x, tol)]
    with _Out(a.out) as out:
        out.write(jsonio.dumps(res) + "\n")
    return EXIT_FOUND if v is not None else EXIT_OK


def cmd_enumerate(a) -> int:
    s = _shape(a)
    it = orbits.enumerate_vertices(s, unsafe=a.unsafe_no_guard)
    with _Out(a.out) as out:
        if a.format == "jsonl":
            for m in it:
                out.write(json.dumps([list(c) for c in m.support]) + "\n")
        else:
            out.write(json.dumps([[list(c) for c in m.support] for m in it]) + "\n")
    return EXIT_OK


def _random_cost(s: Shape, rng: random.Random) -> CostVector:
    return FractionalPoint.from_mapping(s, {c: rng.randint(-10, 10) for c in s.cells}, exact=True)


def _check(job):
    """One verify check; runs in a worker when --jobs > 1."""
    name, s, seed, trials, tu_trials, unsafe = job
    rng = random.Random(f"{seed}:{name}")
    t0 = time.perf_counter()
    if name.startswith("integrality"):
        red = name.split(":")[1]
        rep = verify.check_integrality(s, descriptions.describe(s, red), unsafe).to_dict()
        rep["check"] = name
    elif name == "dimension":
        verts = list(orbits.enumerate_vertices(s, unsafe))
        r = verify.affine_rank(verts)
        if s.is_packing:
            want = s.p * s.q - s.q * (s.q - 1) // 2 if s.is_symmetric else None
        else:
            want = Fraction(2 * s.p - s.q, 2) * (s.q - 1) if s.is_symmetric else None
        rep = {"check": name, "rank": r, "expected": None if want is None else int(want),
               "pass": want is None or r == want}
    elif name == "optimize":
        table = verify.VertexTable.of(s, unsafe)
        fails = []
        for _ in range(trials):
            c = _random_cost(s, rng)
            got, arg = optimize.optimize(s, c)
            want, _ = verify.oracle_optimize(s, c, table)
            if got != want or optimize.objective(c, arg) != got or not orbits.is_lex_max(arg):
                fails.append({"cost": [[str(v) for v in r] for r in c.rows()], "got": str(got), "want": str(want)})
        rep = {"check": name, "trials": trials, "pass": not fails, "counterexamples": fails}
    elif name == "separation":
        scis = [sci_constraint(x) for x in descriptions.enumerate_scis(s)]
        fails = []
        for _ in range(trials):
            x = FractionalPoint.from_mapping(s, {c: Fraction(rng.randint(0, 64), 64) for c in s.cells})
            found = separation.most_violated_sci(x)
            best = max((c.violation(x) for c in scis), default=None)
            amount = found[0] if found else None
            if amount != best or (found and sci_constraint(found[1]).violation(x) != amount):
                fails.append({"point": [[str(v) for v in r] for r in x.rows()]})
        rep = {"check": name, "trials": trials, "pass": not fails, "counterexamples": fails}
    elif name == "tu":
        cs = [c for c in descriptions.describe_cyclic_packing(s)
              if c.cls in (ConstraintClass.ROW_SUM, ConstraintClass.CYCLIC_LEX)]
        rep = verify.tu_spot_check(verify.coefficient_matrix(cs, s), tu_trials, 8, seed).to_dict()
    else:  # pragma: no cover
        raise ValueError(name)
    rep["seconds"] = round(time.perf_counter() - t0, 4)
    return rep


def cmd_verify(a) -> int:
    s = _shape(a)
    orbits.check_guard(s, a.unsafe_no_guard)
    names = ["integrality:full"]
    if s.is_symmetric:
        names.append("integrality:nonredundant")
    names += ["dimension", "optimize"]
    if s.is_symmetric:
        names.append("separation")
    elif s.is_packing:
        names.append("tu")
    jobs = [(n, s, a.seed, a.trials, a.tu_trials, a.unsafe_no_guard) for n in names]
    if a.jobs > 1:
        with ProcessPoolExecutor(max_workers=a.jobs) as ex:
            reports = list(ex.map(_check, jobs))  # map keeps the submission order
    else:
        reports = [_check(j) for j in jobs]
    if not a.timings:
        for r in reports:
            r.pop("seconds", None)
    ok = all(r["pass"] for r in reports)
    with _Out(a.out) as out:
        out.write(jsonio.dumps({"shape": s, "seed": a.seed, "pass": ok, "checks": reports}, indent=1) + "\n")
    return EXIT_OK if ok else EXIT_FOUND


def cmd_facets(a) -> int:
    s = _shape(a)
    if not s.is_symmetric:
        raise UsageError("facets classifies SCIs, which exist for the symmetric group only")
    verts = list(orbits.enumerate_vertices(s, a.unsafe_no_guard))
    dim = verify.affine_rank(verts)
    rows = []
    for sci in descriptions.enumerate_scis(s, nonredundant=(a.redundancy == "nonredundant")):
        cl = descriptions.classify_sci(sci, s.row_mode)
        cert = verify.certify_face(s, sci_constraint(sci), verts, dim)
        rows.append({"leader": list(sci.leader), "columns": list(sci.shifted_column.columns),
                     "facet": cl.facet, "exception": cl.exception,
                     "dominating": jsonio.constraint_to(cl.dominating) if cl.dominating else None,
                     "certificate": cert.kind.value, "rank": cert.rank, "dim": dim,
                     "agree": cl.facet == (cert.kind is verify.FaceKind.FACET)})
    with _Out(a.out) as out:
        if a.format == "jsonl":
            for r in rows:
                out.write(jsonio.dumps(r) + "\n")
        else:
            out.write(jsonio.dumps(rows) + "\n")
    return EXIT_OK


def cmd_coloring(a) -> int:
    g = coloring.parse_dimacs(_read(a.inp))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        m = coloring.build_model(g, a.colors, a.sb, link_xy=a.link_xy, clique_cuts=a.clique_cuts,
                                 clique_cap=a.cap)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    with _Out(a.out) as out:
        names = write_lp(out, m.constraints, objective=m.objective, variables=m.variables,
                         binaries=m.variables,
                         comments=[f"coloring n={g.n} m={len(g.edges)} C={a.colors} sb={m.sb.value}"])
    side = a.sidecar or (a.out + ".json" if a.out else None)
    if side:
        with open(side, "w") as fh:
            fh.write(jsonio.dumps(m.sidecar(names), indent=1) + "\n")
    return EXIT_OK


COMMANDS = {"describe": cmd_describe, "optimize": cmd_optimize, "separate": cmd_separate,
            "enumerate": cmd_enumerate, "verify": cmd_verify, "facets": cmd_facets,
            "coloring-model": cmd_coloring}


def run(argv=None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
        if a.command is None:
            ap.print_help(sys.stderr)
            return EXIT_USAGE
        return COMMANDS[a.command](a)
    except UsageError as e:
        print(f"orbitopes: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"orbitopes: refused: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (DomainError, OrbitopeError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"orbitopes: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
