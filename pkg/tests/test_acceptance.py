"""Acceptance criteria 1-9, one pass/fail line each (see the terminal summary)."""
import itertools
import random
import time
from fractions import Fraction

import numpy as np

import oracles
from orbitopes.coloring import Graph, build_model, model_solutions
from orbitopes.constraints import ConstraintClass, column_inequality, sci_constraint
from orbitopes.core import CostVector, FractionalPoint, Shape
from orbitopes.descriptions import classify_sci, describe, enumerate_scis, lift_pack_to_part, project_part_to_pack
from orbitopes.linalg import RationalMatrix
from orbitopes.optimize import optimize
from orbitopes.orbits import enumerate_vertices
from orbitopes.separation import most_violated_sci, separate_sci
from orbitopes.verify import (FaceKind, VertexTable, affine_rank, certify_face, check_integrality,
                              coefficient_matrix, oracle_optimize, tight_vertices, tu_spot_check)

GROUPS = ("cyclic", "symmetric")
MODES = ("packing", "partitioning")


def shapes(top, low=2):
    return [(p, q) for p in range(low, top + 1) for q in range(low, p + 1)]


def test_1_optimization_matches_oracle(report):
    t0 = time.perf_counter()
    rng = random.Random(0)
    bad, n = [], 0
    for p, q in shapes(6):
        for g in GROUPS:
            for mode in MODES:
                s = Shape(p, q, g, mode)
                table = VertexTable.of(s)
                for _ in range(100):
                    c = CostVector.from_mapping(s, {k: Fraction(rng.randint(-20, 20)) for k in s.cells})
                    got, _ = optimize(s, c)
                    want, _ = oracle_optimize(s, c, table)
                    n += 1
                    if got != want:
                        bad.append((s.label(), got, want))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    report(1, ok, f"{n} cost vectors, {len(bad)} mismatches, {dt:.1f}s")
    assert ok, bad[:5]


def test_2_descriptions_complete(report):
    t0 = time.perf_counter()
    bad = []
    for p, q in shapes(5):
        for g in GROUPS:
            for mode in MODES:
                s = Shape(p, q, g, mode)
                verts = {m.support for m in enumerate_vertices(s)}
                if verts != oracles.vertex_supports(p, q, g, mode):
                    bad.append((s.label(), "enumeration"))
                reds = ("full", "nonredundant") if g == "symmetric" else ("full",)
                for red in reds:
                    if not check_integrality(s, describe(s, red)).equal:
                        bad.append((s.label(), red))
                if mode == "partitioning":
                    want = oracles.stirling_prefix(p, q) if g == "symmetric" else q ** (p - 1)
                    if len(verts) != want:
                        bad.append((s.label(), "count", len(verts), want))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    report(2, ok, f"{len(shapes(5)) * 4} shapes, {len(bad)} failures, {dt:.1f}s")
    assert ok, bad


def test_3_separation_exact(report):
    t0 = time.perf_counter()
    rng = random.Random(0)
    bad, n = [], 0
    for p, q in shapes(5):
        s = Shape(p, q, "symmetric", "packing")
        scis = oracles.all_scis_brute(p, q)
        for _ in range(200):
            num = {c: rng.randint(0, 64) for c in s.cells}
            x = FractionalPoint.from_mapping(s, {c: Fraction(v, 64) for c, v in num.items()})
            best = max(oracles.sci_value(num, p, q, *sc) for sc in scis) / 64
            found = most_violated_sci(x)
            v = separate_sci(x)
            n += 1
            if found is None or found[0] != best:
                bad.append((s.label(), "max", found and found[0], best))
                continue
            if sci_constraint(found[1]).violation(x) != best:
                bad.append((s.label(), "re-evaluation"))
            if (v is None) != (best <= 0) or (v is not None and v.constraint.violation(x) != v.amount):
                bad.append((s.label(), "cut"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    report(3, ok, f"{n} points, {len(bad)} failures, {dt:.1f}s")
    assert ok, bad[:5]


def _time_separation(p, q, rng):
    s = Shape(p, q, "symmetric", "packing")
    x = FractionalPoint(s, np.tril(rng.random((p, q))), exact=False)
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        separate_sci(x)
        best = min(best, time.perf_counter() - t0)
    return best


def test_4_separation_performance(report):
    rng = np.random.default_rng(0)
    small = _time_separation(2000, 1000, rng)
    big = _time_separation(4000, 1000, rng)
    ok = big < 2 and big <= 3 * small
    report(4, ok, f"(2000,1000) {small:.3f}s, (4000,1000) {big:.3f}s, ratio {big / small:.2f}")
    assert ok


def test_5_dimensions(report):
    bad = []
    for p, q in ((2, 2), (3, 2), (3, 3), (4, 3), (4, 4)):
        pack = affine_rank(list(enumerate_vertices(Shape(p, q, "symmetric", "packing"))))
        part = affine_rank(list(enumerate_vertices(Shape(p, q, "symmetric", "partitioning"))))
        if pack != p * q - q * (q - 1) // 2 or Fraction(part) != (p - Fraction(q, 2)) * (q - 1):
            bad.append(((p, q), pack, part))
    report(5, not bad, f"5 shapes, {len(bad)} mismatches")
    assert not bad


def test_6_classification(report):
    t0 = time.perf_counter()
    bad, n = [], 0
    for p, q in shapes(4):
        for mode in MODES:
            s = Shape(p, q, "symmetric", mode)
            verts = list(enumerate_vertices(s))
            dim = affine_rank(verts)
            for sci in enumerate_scis(s):
                n += 1
                cl = classify_sci(sci, mode)
                cert = certify_face(s, sci_constraint(sci), verts, dim)
                if cl.facet != (cert.kind is FaceKind.FACET):
                    bad.append((s.label(), sci.leader, sci.shifted_column.columns))
                if not cl.facet:
                    mine = {m.support for m in cert.tight}
                    dom = certify_face(s, cl.dominating, verts, dim)
                    if dom.kind is not FaceKind.FACET or not mine <= {m.support for m in dom.tight}:
                        bad.append((s.label(), sci.leader, "dominating"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 180
    report(6, ok, f"{n} SCIs, {len(bad)} disagreements, {dt:.1f}s")
    assert ok, bad


def test_7_total_unimodularity(report):
    t0 = time.perf_counter()
    bad = []
    for p, q in shapes(6):
        s = Shape(p, q, "cyclic", "packing")
        cs = [c for c in describe(s) if c.cls in (ConstraintClass.ROW_SUM, ConstraintClass.CYCLIC_LEX)]
        rep = tu_spot_check(coefficient_matrix(cs, s), trials=10 ** 4, max_order=8, seed=0)
        if not rep.ok:
            bad.append((s.label(), rep.bad[:3]))
    s = Shape(5, 5, "symmetric", "packing")
    rows = [column_inequality(ld, s) for ld in ((3, 3), (4, 3), (5, 4))]
    cols = [s.index_of(c) for c in ((2, 2), (3, 3), (4, 3))]
    sub = coefficient_matrix(rows, s).submatrix(range(3), cols)
    det = sub.det()
    expected = RationalMatrix.from_rows([[-1, 1, 0], [-1, 0, 1], [0, -1, -1]])
    dt = time.perf_counter() - t0
    ok = not bad and det == -2 and sub.entries == expected.entries and dt < 60
    report(7, ok, f"{len(shapes(6))} matrices x 10^4 samples, {len(bad)} bad; symmetric minor det {det}; {dt:.1f}s")
    assert ok, bad


def test_8_projection(report):
    t0 = time.perf_counter()
    bad = []
    for p in range(2, 7):
        for q in range(2, p + 1):
            part = list(enumerate_vertices(Shape(p, q, "symmetric", "partitioning")))
            pack = Shape(p - 1, q - 1, "symmetric", "packing", degenerate=(q == 2))
            image = [project_part_to_pack(v) for v in part]
            supports = [w.support for w in image]
            if len(set(supports)) != len(part):
                bad.append(((p, q), "not injective"))
            if set(supports) != {w.support for w in enumerate_vertices(pack)}:
                bad.append(((p, q), "image"))
            if set(supports) != oracles.vertex_supports(p - 1, q - 1, "symmetric", "packing"):
                bad.append(((p, q), "image vs brute force"))
            if any(lift_pack_to_part(w) != v for v, w in zip(part, image)):
                bad.append(((p, q), "lift"))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    report(8, ok, f"p <= 6, {len(bad)} failures, {dt:.1f}s")
    assert ok, bad


def _graphs():
    rng = random.Random(0)
    out = []
    for _ in range(50):
        n = rng.randint(2, 6)
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        m = rng.randint(1, min(8, len(pairs)))
        out.append(Graph(n, frozenset(rng.sample(pairs, m))))
    return out


def _orbit_count(g, C):
    # brute force over all C^n color vectors, relabelled by first appearance
    seen = set()
    for col in itertools.product(range(1, C + 1), repeat=g.n):
        if all(col[u - 1] != col[v - 1] for u, v in g.edges):
            relabel = {}
            seen.add(tuple(relabel.setdefault(c, len(relabel)) for c in col))
    return len(seen)


def _models():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for g in _graphs():
            for C in (2, 3, 4):
                yield g, C, build_model(g, C, "sci")


def test_9a_coloring_one_solution_per_orbit(report):
    t0 = time.perf_counter()
    bad, n = [], 0
    for g, C, m in _models():
        n += 1
        got, want = len(model_solutions(m)), _orbit_count(g, C)
        if got != want:
            bad.append((g.n, sorted(g.edges), C, got, want))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 180
    report("9a", ok, f"{n} models, {len(bad)} orbit-count mismatches, {dt:.1f}s")
    assert ok, bad[:5]


def test_9b_uniform_point_cut_by_sci(report):
    # x = 1/C, y = 2/C must violate some generated SCI whenever the orbit count is positive
    missed, n, by_fixing = [], 0, 0
    for g, C, m in _models():
        if _orbit_count(g, C) == 0:
            continue
        n += 1
        pt = {v: Fraction(1, C) for v in m.x_vars} | {v: Fraction(2, C) for v in m.y_vars}
        scis = [c for c in m.constraints if c.cls is ConstraintClass.SCI]
        if not any(c.violation(pt) > 0 for c in scis):
            missed.append((g.n, C))
        # diagnostic only: the x_ij = 0 (i < j) fixings of the same model
        fix = [c for c in m.constraints if c.cls is ConstraintClass.FIXING]
        by_fixing += any(c.violation(pt) != 0 for c in fix)
    ok = not missed
    report("9b", ok, f"{n} models with colorings, uniform point survives every SCI in {len(missed)} "
           f"(the fixing rows cut it in {by_fixing})")
    assert ok, f"uniform point not cut in {len(missed)} of {n} models"
