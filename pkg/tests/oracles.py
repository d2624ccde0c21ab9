"""Independent brute-force references, written without the package's enumerators."""
import itertools
from fractions import Fraction

from sympy.functions.combinatorial.numbers import stirling


def stirling_prefix(p, q):
    return sum(int(stirling(p, k)) for k in range(1, q + 1))


def all_matrices(p, q, packing, triangle):
    """Every 0/1 p x q matrix with <= 1 (packing) or == 1 one per row, as column-choice tuples."""
    choices = []
    for i in range(1, p + 1):
        top = min(i, q) if triangle else q
        opts = list(range(1, top + 1))
        if packing:
            opts = [0] + opts
        choices.append(opts)
    return itertools.product(*choices)


def columns_of(ch, p, q):
    return [tuple(int(ch[i] == j) for i in range(p)) for j in range(1, q + 1)]


def lexmax_brute(ch, p, q, cyclic):
    """Is the matrix maximal in its orbit?  Compares against every group element."""
    def key(cols):
        # row-major reading of the matrix
        return tuple(cols[j][i] for i in range(p) for j in range(q))
    cols = columns_of(ch, p, q)
    me = key(cols)
    if cyclic:
        perms = [[cols[(j + r) % q] for j in range(q)] for r in range(q)]
    else:
        perms = [list(pm) for pm in itertools.permutations(cols)]
    return all(key(c) <= me for c in perms)


def vertex_supports(p, q, group, mode):
    """Vertex supports of an orbitope by comparing against all group elements."""
    cyclic = group == "cyclic"
    out = set()
    for ch in all_matrices(p, q, mode == "packing", triangle=False):
        if lexmax_brute(ch, p, q, cyclic):
            out.add(tuple((i + 1, c) for i, c in enumerate(ch) if c))
    return out


def nondecreasing(length, hi):
    return [c for c in itertools.product(range(1, hi + 1), repeat=length)
            if all(c[k] <= c[k + 1] for k in range(length - 1))]


def all_scis_brute(p, q):
    """(leader, columns) pairs for every SCI of I(p, q)."""
    out = []
    for i in range(1, p + 1):
        for j in range(2, min(i, q) + 1):
            eta = i - j + 1
            for cs in nondecreasing(eta, j - 1):
                out.append(((i, j), cs))
    return out


def sci_value(x, p, q, leader, cs):
    """x(B) - x(S) for a point given as a dict cell -> value."""
    i, j = leader
    bar = sum((x[(i, k)] for k in range(j, min(i, q) + 1)), Fraction(0))
    col = sum((x[(c + e, c)] for e, c in enumerate(cs)), Fraction(0))
    return bar - col
