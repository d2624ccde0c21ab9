import random

import pytest

import oracles
from orbitopes.core import BinaryMatrix, Shape
from orbitopes.descriptions import project_part_to_pack
from orbitopes.errors import CapacityError, DomainError
from orbitopes.orbits import (GroupAction, Order, canonicalize, check_guard, enumerate_vertices, is_lex_max,
                              lex_compare, permute_columns)


def test_lex_compare_examples():
    s = Shape(2, 2, "symmetric", "partitioning")
    a = BinaryMatrix(s, ((1, 1), (2, 2)))
    b = BinaryMatrix(s, ((1, 1), (2, 1)))
    assert lex_compare(a, a) is Order.EQUAL
    assert lex_compare(a, b) is Order.LESS
    assert lex_compare(b, a) is Order.GREATER
    c = Shape(2, 2, "cyclic", "packing")
    assert lex_compare(BinaryMatrix(c, ((1, 1),)), BinaryMatrix(c, ((2, 1),))) is Order.GREATER
    with pytest.raises(DomainError):
        lex_compare(a, BinaryMatrix(Shape(3, 2, "cyclic", "packing"), ()))


def test_is_lex_max_examples():
    for g in ("cyclic", "symmetric"):
        assert is_lex_max(BinaryMatrix(Shape(3, 2, g, "packing"), ()))
    s = Shape(3, 2, "cyclic", "partitioning")
    assert not is_lex_max(BinaryMatrix(s, ((1, 2), (2, 1), (3, 1))))
    m = BinaryMatrix(Shape(2, 2, "symmetric", "packing"), ((2, 2),))
    assert not is_lex_max(m)
    # cross-check the last example over every 2x2 packing matrix
    good = oracles.vertex_supports(2, 2, "symmetric", "packing")
    assert ((2, 2),) not in good and len(good) == 5


def test_canonicalize_examples():
    s = Shape(3, 2, "cyclic", "partitioning")
    m = BinaryMatrix(s, ((1, 2), (2, 1), (3, 2)))
    assert canonicalize(m).support == ((1, 1), (2, 2), (3, 1))
    v = BinaryMatrix(s, ((1, 1), (2, 2), (3, 2)))
    assert canonicalize(v) == v


def _random_matrix(rng, p, q, packing):
    lo = 0 if packing else 1
    return [rng.randint(lo, q) for _ in range(p)]


@pytest.mark.parametrize("group", ["cyclic", "symmetric"])
@pytest.mark.parametrize("mode", ["packing", "partitioning"])
def test_canonicalize_orbit_invariance(group, mode):
    rng = random.Random(7)
    for p in range(2, 9):
        for q in range(2, 9):
            if p * q > 16 or (group == "symmetric" and q > p):
                continue
            s = Shape(p, q, group, mode)
            g = GroupAction.of(s)
            for _ in range(1000):
                ch = _random_matrix(rng, p, s.q, mode == "packing")
                m = BinaryMatrix.from_choices(s, ch, free=True)
                canon = canonicalize(m)
                assert is_lex_max(canon)
                assert canonicalize(canon) == canon
                if group == "cyclic":
                    perms = list(g.rotations())
                else:
                    perms = []
                    for _ in range(50):
                        pm = list(range(1, s.q + 1))
                        rng.shuffle(pm)
                        perms.append(pm)
                for pm in perms:
                    assert canonicalize(permute_columns(m, pm)) == canon
                # the canonical form is in the orbit: same multiset of columns
                assert sorted(map(m.column, range(1, s.q + 1))) == sorted(map(canon.column, range(1, s.q + 1)))


def test_lex_max_iff_canonical_symmetric():
    for p in range(2, 6):
        for q in range(2, p + 1):
            for mode in ("packing", "partitioning"):
                s = Shape(p, q, "symmetric", mode)
                for ch in oracles.all_matrices(p, q, mode == "packing", triangle=False):
                    m = BinaryMatrix.from_choices(s, ch, free=True)
                    assert is_lex_max(m) == (canonicalize(m).support == m.support)


def test_enumeration_examples():
    assert len(list(enumerate_vertices(Shape(3, 2, "symmetric", "partitioning")))) == 4
    assert len(list(enumerate_vertices(Shape(3, 3, "symmetric", "partitioning")))) == 5
    assert len(list(enumerate_vertices(Shape(3, 2, "cyclic", "partitioning")))) == 4
    assert len(list(enumerate_vertices(Shape(2, 2, "symmetric", "packing")))) == 5


def test_enumeration_matches_brute_force():
    for p in range(1, 6):
        for q in range(1, 5):
            for g in ("cyclic", "symmetric"):
                if g == "symmetric" and (q < 2 or q > p):
                    continue
                for mode in ("packing", "partitioning"):
                    s = Shape(p, q, g, mode)
                    got = [m.support for m in enumerate_vertices(s)]
                    assert len(got) == len(set(got))
                    assert set(got) == oracles.vertex_supports(p, q, g, mode)
                    # emitted in lexicographic order of the row-choice vectors
                    chs = [m.choices() for m in enumerate_vertices(s)]
                    assert chs == sorted(chs)


def test_symmetric_partitioning_counts_stirling():
    for p in range(2, 8):
        for q in range(2, p + 1):
            n = sum(1 for _ in enumerate_vertices(Shape(p, q, "symmetric", "partitioning")))
            assert n == oracles.stirling_prefix(p, q)


def test_projection_vertex_counts():
    for p in range(2, 7):
        for q in range(2, p + 1):
            part = Shape(p + 1, q + 1, "symmetric", "partitioning")
            pack = Shape(p, q, "symmetric", "packing")
            assert sum(1 for _ in enumerate_vertices(part)) == sum(1 for _ in enumerate_vertices(pack))
            images = {project_part_to_pack(v).support for v in enumerate_vertices(part)}
            assert images == {v.support for v in enumerate_vertices(pack)}


def test_guard():
    with pytest.raises(CapacityError) as e:
        check_guard(Shape(25, 2, "cyclic", "packing"))  # 3^25 > 2^24
    assert e.value.bound == 2 ** 24
    check_guard(Shape(24, 2, "cyclic", "partitioning"))  # exactly 2^24 is allowed
    check_guard(Shape(25, 2, "cyclic", "packing"), unsafe=True)
