"""Independent reference computations used by the tests.

Nothing here calls the library's composition or Gram code: half diagrams
are enumerated by filtering all partial matchings, and bilinear forms are
evaluated by walking the glued strands directly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def partial_matchings(n):
    """All partial matchings of ``range(n)`` as partner tuples (-1 = unmatched)."""

    def rec(free, acc):
        if not free:
            yield tuple(acc)
            return
        j, rest = free[0], free[1:]
        acc[j] = -1
        yield from rec(rest, acc)
        for k in rest:
            acc[j], acc[k] = k, j
            yield from rec([x for x in rest if x != k], acc)
            acc[k] = -1
        acc[j] = -1

    yield from rec(list(range(n)), [-1] * n)


def is_planar_half(pairing):
    arcs = [(a, b) for a, b in enumerate(pairing) if b > a]
    for (a, b), (c, d) in combinations(arcs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    for a, b in arcs:
        if any(pairing[j] < 0 for j in range(a + 1, b)):
            return False
    return True


def tl_halves(n, p):
    return sorted(
        h for h in partial_matchings(n) if is_planar_half(h) and sum(1 for x in h if x < 0) == p
    )


def pairing_form(s, t, delta):
    """Glue half diagrams ``s`` and ``t`` along their nodes.

    Every strand component is a cycle (a closed loop) or a path whose two
    ends are defects.  Returns ``delta ** loops`` if each path joins one
    defect of ``s`` to one defect of ``t``, zero otherwise.
    """
    n = len(s)
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for half in (s, t):
        for a, b in enumerate(half):
            if b > a:
                comp[find(a)] = find(b)
    groups = {}
    for j in range(n):
        g = groups.setdefault(find(j), [0, 0])
        g[0] += s[j] < 0
        g[1] += t[j] < 0
    loops = 0
    for ds, dt in groups.values():
        if ds == dt == 0:
            loops += 1
        elif (ds, dt) != (1, 1):
            return Fraction(0)
    return Fraction(delta) ** loops


def tl_gram(n, p, delta):
    hs = tl_halves(n, p)
    return hs, [[pairing_form(s, t, delta) for t in hs] for s in hs]


def bubble_form(s, t, deltas):
    """Form on coloured half diagrams: zero unless colourings agree, else per-colour product."""
    (ps, cs), (pt, ct) = s, t
    if cs != ct:
        return Fraction(0)
    val = Fraction(1)
    for c, dl in enumerate(deltas):
        nodes = [j for j, x in enumerate(cs) if x == c]
        pos = {j: k for k, j in enumerate(nodes)}
        ls = tuple(-1 if ps[j] < 0 else pos[ps[j]] for j in nodes)
        lt = tuple(-1 if pt[j] < 0 else pos[pt[j]] for j in nodes)
        val *= pairing_form(ls, lt, dl)
    return val


def det(rows):
    """Fraction determinant by cofactor-free elimination (small sizes only)."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return d


def rank(rows):
    import sympy

    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


def set_partition_compose(a, b, n_top, k, n_bot):
    """Compose partitions given as lists of frozensets of node names.

    Node names: ('t', j), ('m', j), ('b', j).  Returns (set of blocks, removed).
    """
    blocks = [set(x) for x in a] + [set(x) for x in b]
    merged = True
    while merged:
        merged = False
        for x, y in combinations(range(len(blocks)), 2):
            if blocks[x] & blocks[y]:
                blocks[x] |= blocks[y]
                del blocks[y]
                merged = True
                break
    out, removed = set(), 0
    for blk in blocks:
        outer = frozenset(v for v in blk if v[0] != "m")
        if outer:
            out.add(outer)
        else:
            removed += 1
    return out, removed


def rgs_to_named(labels, n_top, n_bot, top="t", bot="b"):
    """Restricted growth string to named blocks (``top`` nodes first)."""
    blocks = {}
    for node, b in enumerate(labels):
        name = (top, node) if node < n_top else (bot, node - n_top)
        blocks.setdefault(b, set()).add(name)
    return [frozenset(x) for x in blocks.values()]


def bell(k):
    from sympy import bell as _bell

    return int(_bell(k))


def multicolour_partition_dim(n, m):
    total = 0
    for colours in product(range(m), repeat=2 * n):
        term = 1
        for c in range(m):
            term *= bell(colours.count(c))
        total += term
    return total
