# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    static inline unsigned long long cellalg_mulmod(unsigned long long a,
                                                    unsigned long long b,
                                                    unsigned long long p) {
        return (unsigned long long)(((unsigned __int128)a * b) % p);
    }
    """
    unsigned long long cellalg_mulmod(unsigned long long a, unsigned long long b,
                                      unsigned long long p) nogil


cdef inline int _find(int* parent, int x) noexcept nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def compose_partitions(tuple a, tuple b, int n_top, int k, int n_bot,
                       tuple mid_colours, int m):
    cdef int size = n_top + k + n_bot
    cdef int na = n_top + k
    cdef int nb = k + n_bot
    cdef int* parent = <int*>malloc(4 * size * sizeof(int))
    if parent == NULL:
        raise MemoryError()
    cdef int* first = parent + size
    cdef int* relabel = parent + 2 * size
    cdef int* seen = parent + 3 * size
    cdef int i, lab, r, ra, rb, nxt_label
    cdef list labels
    cdef list removed
    try:
        for i in range(size):
            parent[i] = i
            first[i] = -1
            relabel[i] = -1
            seen[i] = 0
        for i in range(na):
            lab = a[i]
            if first[lab] >= 0:
                ra = _find(parent, first[lab])
                rb = _find(parent, i)
                if ra != rb:
                    parent[rb] = ra
            else:
                first[lab] = i
        for i in range(size):
            first[i] = -1
        for i in range(nb):
            lab = b[i]
            if first[lab] >= 0:
                ra = _find(parent, first[lab])
                rb = _find(parent, n_top + i)
                if ra != rb:
                    parent[rb] = ra
            else:
                first[lab] = n_top + i
        labels = []
        nxt_label = 0
        for i in range(n_top):
            r = _find(parent, i)
            if relabel[r] < 0:
                relabel[r] = nxt_label
                nxt_label += 1
            labels.append(relabel[r])
        for i in range(na, size):
            r = _find(parent, i)
            if relabel[r] < 0:
                relabel[r] = nxt_label
                nxt_label += 1
            labels.append(relabel[r])
        removed = [0] * m
        for i in range(k):
            r = _find(parent, n_top + i)
            if relabel[r] >= 0 or seen[r]:
                continue
            seen[r] = 1
            removed[mid_colours[i]] += 1
        return tuple(labels), tuple(removed)
    finally:
        free(parent)


def rref_modp(list rows, int ncols, object p):
    cdef Py_ssize_t nrows = len(rows)
    cdef unsigned long long P = p
    cdef unsigned long long* buf
    cdef unsigned long long* piv
    cdef unsigned long long* row
    cdef unsigned long long f, inv, t
    cdef Py_ssize_t i, j, c, r, pr
    cdef list pivots = []
    if nrows == 0 or ncols == 0:
        return pivots
    buf = <unsigned long long*>malloc(nrows * ncols * sizeof(unsigned long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            for j in range(ncols):
                buf[i * ncols + j] = rows[i][j]
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            pr = -1
            for i in range(r, nrows):
                if buf[i * ncols + c]:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for j in range(ncols):
                    t = buf[r * ncols + j]
                    buf[r * ncols + j] = buf[pr * ncols + j]
                    buf[pr * ncols + j] = t
            piv = buf + r * ncols
            inv = pow(int(piv[c]), int(P - 2), int(P))
            if inv != 1:
                for j in range(c, ncols):
                    piv[j] = cellalg_mulmod(piv[j], inv, P)
            for i in range(nrows):
                if i == r:
                    continue
                row = buf + i * ncols
                f = row[c]
                if f:
                    f = P - f
                    for j in range(c, ncols):
                        if piv[j]:
                            row[j] = (row[j] + cellalg_mulmod(f, piv[j], P)) % P
            pivots.append(c)
            r += 1
        for i in range(nrows):
            rows[i] = [buf[i * ncols + j] for j in range(ncols)]
        return pivots
    finally:
        free(buf)
