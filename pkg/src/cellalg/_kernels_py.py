"""Pure-Python hot kernels.

These mirror ``_kernels.pyx`` exactly and are used whenever the compiled
extension is unavailable (or ``CELLALG_PURE=1`` is set).
"""

from __future__ import annotations


def compose_partitions(a, b, n_top, k, n_bot, mid_colours, m):
    """Stack partition ``a`` (``n_top`` top, ``k`` bottom nodes) over ``b``.

    Both partitions are restricted growth strings over their node lists,
    top nodes first.  Returns ``(labels, removed)`` where ``labels`` is the
    canonical restricted growth string of the composite on ``n_top + n_bot``
    nodes and ``removed[c]`` counts middle components of colour ``c`` that
    touch no outer node.
    """
    size = n_top + k + n_bot
    parent = list(range(size))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    first = {}
    for idx, lab in enumerate(a):
        if lab in first:
            ra, rb = find(first[lab]), find(idx)
            if ra != rb:
                parent[rb] = ra
        else:
            first[lab] = idx
    first = {}
    for idx, lab in enumerate(b):
        node = n_top + idx
        if lab in first:
            ra, rb = find(first[lab]), find(node)
            if ra != rb:
                parent[rb] = ra
        else:
            first[lab] = node

    relabel = {}
    labels = []
    outer = list(range(n_top)) + list(range(n_top + k, size))
    for node in outer:
        r = find(node)
        if r not in relabel:
            relabel[r] = len(relabel)
        labels.append(relabel[r])

    removed = [0] * m
    seen = set()
    for j in range(k):
        r = find(n_top + j)
        if r in relabel or r in seen:
            continue
        seen.add(r)
        removed[mid_colours[j]] += 1
    return tuple(labels), tuple(removed)


def rref_modp(rows, ncols, p):
    """In-place reduced row echelon form of an integer matrix mod prime ``p``.

    ``rows`` is a list of lists of ints already reduced into ``[0, p)``.
    Returns the pivot column list; ``rows`` holds the echelon form after the
    call (zero rows at the bottom).
    """
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r]
        inv = pow(piv[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                piv[j] = piv[j] * inv % p
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                for j in range(c, ncols):
                    if piv[j]:
                        row[j] = (row[j] - f * piv[j]) % p
        pivots.append(c)
        r += 1
    return pivots
