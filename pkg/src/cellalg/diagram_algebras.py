"""Diagram calculus and the concrete algebra families.

Nodes of an ``n``-diagram are numbered ``0..n-1`` along the top and
``n..2n-1`` along the bottom; rendered as ``1..n`` and ``1'..n'``.  A
diagram is stored as the restricted growth string of its blocks over that
node order, so structural equality is diagram equivalence.  The product
``a * b`` stacks ``a`` on top of ``b``.
"""

from __future__ import annotations

import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import NamedTuple

from . import kernels
from .algebra import Algebra, AlgebraElement, corner_algebra, structure_isomorphic, tensor_algebras
from .cellular_core import CellDatum, CellPoset, basis_triples, tensor_cell_data
from .errors import InputError, ResourceLimitError, UnsupportedOperation
from .exact_linalg import QQ
from .idempotent_split import IdempotentDecomposition
from .report import Report

PALETTE = "rbgyopcmkw"


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Relabel block ids in order of first appearance."""
    seen: dict = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def set_partitions(k: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``k``."""
    if k == 0:
        yield ()
        return
    rgs = [0] * k
    maxes = [0] * k

    def rec(pos):
        if pos == k:
            yield tuple(rgs)
            return
        for v in range(maxes[pos - 1] + 2):
            rgs[pos] = v
            maxes[pos] = max(maxes[pos - 1], v)
            yield from rec(pos + 1)

    yield from rec(1)


def bell(k: int) -> int:
    row = [1]
    for _ in range(k):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def _node_name(j: int, n_top: int) -> str:
    return str(j + 1) if j < n_top else f"{j - n_top + 1}'"


def _parse_node(tok: str, n_top: int | None) -> tuple[int, bool]:
    tok = tok.strip()
    bottom = tok.endswith("'")
    num = tok[:-1] if bottom else tok
    if not num.isdigit() or int(num) < 1:
        raise InputError(f"bad node {tok!r}")
    return int(num) - 1, bottom


# ---------------------------------------------------------------------------
# set partitions


@dataclass(frozen=True)
class SetPartition:
    """Partition of ``n_top`` top and ``n_bot`` bottom nodes."""

    n_top: int
    n_bot: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.n_top + self.n_bot:
            raise InputError("label count does not match node count")
        if canonical_labels(self.labels) != tuple(self.labels):
            object.__setattr__(self, "labels", canonical_labels(self.labels))

    @classmethod
    def from_blocks(cls, n_top: int, n_bot: int, blocks: Sequence[Sequence[int]]) -> "SetPartition":
        lab = [-1] * (n_top + n_bot)
        for b, block in enumerate(blocks):
            if not block:
                raise InputError("empty block")
            for node in block:
                if not 0 <= node < n_top + n_bot or lab[node] != -1:
                    raise InputError(f"node {node} is out of range or repeated")
                lab[node] = b
        if -1 in lab:
            raise InputError("blocks do not cover all nodes")
        return cls(n_top, n_bot, canonical_labels(lab))

    @classmethod
    def identity(cls, n: int) -> "SetPartition":
        return cls(n, n, tuple(range(n)) * 2)

    @property
    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = []
        for node, b in enumerate(self.labels):
            if b == len(out):
                out.append([])
            out[b].append(node)
        return out

    def render(self) -> str:
        return ",".join(
            "{" + ",".join(_node_name(j, self.n_top) for j in b) + "}" for b in self.blocks
        )

    @classmethod
    def parse(cls, text: str, n_top: int, n_bot: int) -> "SetPartition":
        blocks = []
        for body in re.findall(r"\{([^}]*)\}", text):
            block = []
            for tok in body.split(","):
                j, bottom = _parse_node(tok, n_top)
                block.append(n_top + j if bottom else j)
            blocks.append(block)
        return cls.from_blocks(n_top, n_bot, blocks)

    def __str__(self):
        return self.render()


def compose_set_partitions(a: SetPartition, b: SetPartition) -> tuple[SetPartition, int]:
    """``a`` stacked on ``b``; also returns the number of closed middle components."""
    if a.n_bot != b.n_top:
        raise InputError(f"cannot stack {a.n_bot} bottom nodes on {b.n_top} top nodes")
    labels, removed = kernels.compose_partitions(
        a.labels, b.labels, a.n_top, a.n_bot, b.n_bot, (0,) * a.n_bot, 1
    )
    return SetPartition(a.n_top, b.n_bot, tuple(labels)), removed[0]


# ---------------------------------------------------------------------------
# coloured diagrams


def _colour_tag(c: int, m: int) -> str:
    return PALETTE[c] if m <= len(PALETTE) else str(c)


@dataclass(frozen=True)
class ColouredDiagram:
    """An ``n``-diagram whose blocks each carry one of ``m`` colours."""

    n: int
    m: int
    labels: tuple[int, ...]
    colours: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != 2 * self.n or len(self.colours) != 2 * self.n:
            raise InputError("labels and colours must cover 2n nodes")
        if canonical_labels(self.labels) != tuple(self.labels):
            raise InputError("labels are not in canonical form")
        owner: dict = {}
        for b, c in zip(self.labels, self.colours):
            if not 0 <= c < self.m:
                raise InputError(f"colour {c} out of range")
            if owner.setdefault(b, c) != c:
                raise InputError("a block mixes colours")

    @property
    def key(self) -> tuple:
        return (self.labels, self.colours)

    @property
    def colour_top(self) -> tuple[int, ...]:
        return self.colours[: self.n]

    @property
    def colour_bot(self) -> tuple[int, ...]:
        return self.colours[self.n:]

    def colour_sets(self) -> tuple[frozenset, ...]:
        """``A_c`` as node sets for each colour ``c``."""
        return tuple(
            frozenset(j for j, x in enumerate(self.colours) if x == c) for c in range(self.m)
        )

    def top_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(j for j in A if j < self.n) for A in self.colour_sets())

    def bot_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(j - self.n for j in A if j >= self.n) for A in self.colour_sets())

    def restrict(self, c: int) -> SetPartition:
        """The colour-``c`` part, relabelled onto consecutive top and bottom nodes."""
        top = [j for j in range(self.n) if self.colours[j] == c]
        bot = [j for j in range(self.n, 2 * self.n) if self.colours[j] == c]
        return SetPartition(len(top), len(bot), canonical_labels([self.labels[j] for j in top + bot]))

    @property
    def parts(self) -> tuple[SetPartition, ...]:
        return tuple(self.restrict(c) for c in range(self.m))

    def flip(self) -> "ColouredDiagram":
        order = list(range(self.n, 2 * self.n)) + list(range(self.n))
        return ColouredDiagram(
            self.n,
            self.m,
            canonical_labels([self.labels[j] for j in order]),
            tuple(self.colours[j] for j in order),
        )

    @classmethod
    def identity(cls, colouring: Sequence[int], m: int) -> "ColouredDiagram":
        n = len(colouring)
        return cls(n, m, tuple(range(n)) * 2, tuple(colouring) * 2)

    def render(self) -> str:
        blocks: list[list[int]] = []
        for node, b in enumerate(self.labels):
            if b == len(blocks):
                blocks.append([])
            blocks[b].append(node)
        return "|".join(
            _colour_tag(self.colours[b[0]], self.m)
            + ":{"
            + ",".join(_node_name(j, self.n) for j in b)
            + "}"
            for b in blocks
        )

    @classmethod
    def parse(cls, text: str, n: int, m: int) -> "ColouredDiagram":
        lab = [-1] * (2 * n)
        col = [-1] * (2 * n)
        pieces = [p for p in text.split("|") if p.strip()]
        for b, piece in enumerate(pieces):
            mt = re.fullmatch(r"\s*(\w+)\s*:\s*\{([^}]*)\}\s*", piece)
            if not mt:
                raise InputError(f"bad block {piece!r}")
            tag, body = mt.groups()
            if tag.isdigit():
                c = int(tag)
            elif m <= len(PALETTE) and tag in PALETTE[:m]:
                c = PALETTE.index(tag)
            else:
                raise InputError(f"unknown colour tag {tag!r}")
            for tok in body.split(","):
                j, bottom = _parse_node(tok, n)
                node = n + j if bottom else j
                if j >= n or lab[node] != -1:
                    raise InputError(f"node {tok!r} out of range or repeated")
                lab[node] = b
                col[node] = c
        if -1 in lab:
            raise InputError("blocks do not cover all nodes")
        return cls(n, m, canonical_labels(lab), tuple(col))

    def __str__(self):
        return self.render()


def _check_deltas(m: int, deltas) -> tuple:
    deltas = tuple(deltas)
    if len(deltas) != m:
        raise InputError(f"expected {m} loop parameters, got {len(deltas)}")
    return deltas


def compose_coloured(a: ColouredDiagram, b: ColouredDiagram, deltas, field=QQ):
    """``a`` stacked on ``b``: ``(coefficient, diagram)`` or ``None`` when the product is zero."""
    if a.n != b.n or a.m != b.m:
        raise InputError("diagrams of different shapes")
    deltas = _check_deltas(a.m, [field(x) for x in deltas])
    if a.colour_bot != b.colour_top:
        return None
    labels, removed = kernels.compose_partitions(
        a.labels, b.labels, a.n, a.n, a.n, b.colour_top, a.m
    )
    coeff = field.one
    for dl, r in zip(deltas, removed):
        if r:
            coeff = coeff * dl**r
    if not coeff:
        return None
    return coeff, ColouredDiagram(a.n, a.m, tuple(labels), a.colour_top + b.colour_bot)


def _diagram_product(basis_keys, index, n, m, deltas, field):
    """Structure-constant callable shared by the diagram families."""
    powers = [[field.one] for _ in range(m)]

    def power(c, r):
        row = powers[c]
        while len(row) <= r:
            row.append(row[-1] * deltas[c])
        return row[r]

    def product(i, j):
        la, ca = basis_keys[i]
        lb, cb = basis_keys[j]
        if ca[n:] != cb[:n]:
            return ()
        labels, removed = kernels.compose_partitions(la, lb, n, n, n, cb[:n], m)
        coeff = field.one
        for c, r in enumerate(removed):
            if r:
                coeff = coeff * power(c, r)
        if not coeff:
            return ()
        key = (tuple(labels), ca[:n] + cb[n:])
        try:
            return ((index[key], coeff),)
        except KeyError:
            raise ArithmeticError("diagram product left the basis") from None

    return product


# ---------------------------------------------------------------------------
# matrix algebra and quiver example


def build_matrix_algebra(n: int, field=QQ) -> tuple[CellDatum, IdempotentDecomposition]:
    """Full matrix algebra with ``c[n, i, j] = E_ij``; idempotents ``E_ii``."""
    if not isinstance(n, int) or n < 1:
        raise InputError("matrix size must be a positive integer")
    poset = CellPoset([n])
    ts = list(range(1, n + 1))
    index = {tr: k for k, tr in enumerate(basis_triples([n], {n: ts}))}

    def product(a, b):
        _, i, j = d.basis[a]
        _, k, l = d.basis[b]
        return [(index[(n, i, l)], field.one)] if j == k else []

    unit = [(index[(n, i, i)], field.one) for i in ts]
    d = CellDatum(field, poset, {n: ts}, product, unit=unit, name=f"M{n}")
    dec = IdempotentDecomposition(d, {i: d.c(n, i, i) for i in ts})
    return d, dec


QUIVER_LABELS = ("l0", "l1", "l2")

# path (left vertex, right vertex, length) of each cellular basis element
_QUIVER_PATHS = {
    ("l0", 1, 1): (1, 1, 2),
    ("l1", 1, 1): (1, 1, 0),
    ("l1", 1, 2): (1, 2, 1),
    ("l1", 2, 1): (2, 1, 1),
    ("l1", 2, 2): (2, 2, 2),
    ("l2", 2, 2): (2, 2, 0),
}

QUIVER_NAMES = {
    (1, 1, 0): "e1",
    (2, 2, 0): "e2",
    (1, 2, 1): "a12",
    (2, 1, 1): "a21",
    (1, 1, 2): "a12a21",
    (2, 2, 2): "a21a12",
}


def build_quiver_example(field=QQ) -> tuple[CellDatum, IdempotentDecomposition]:
    """Two-vertex quiver with arrows both ways and paths of length 3 killed.

    Labels ``l0 > l1 > l2``; ``e1 * a12 = a12 = a12 * e2``.
    """
    poset = CellPoset(QUIVER_LABELS, [("l2", "l1"), ("l1", "l0")])
    t_sets = {"l0": [1], "l1": [1, 2], "l2": [2]}
    triples = basis_triples(QUIVER_LABELS, t_sets)
    path_index = {_QUIVER_PATHS[tr]: k for k, tr in enumerate(triples)}

    def product(a, b):
        la, ra, na = _QUIVER_PATHS[triples[a]]
        lb, rb, nb = _QUIVER_PATHS[triples[b]]
        if ra != lb or na + nb > 2:
            return []
        return [(path_index[(la, rb, na + nb)], field.one)]

    unit = [(path_index[(1, 1, 0)], field.one), (path_index[(2, 2, 0)], field.one)]
    d = CellDatum(field, poset, t_sets, product, unit=unit, name="quiver")
    dec = IdempotentDecomposition(
        d, {1: d.basis_element(path_index[(1, 1, 0)]), 2: d.basis_element(path_index[(2, 2, 0)])}
    )
    return d, dec


def quiver_element(d: CellDatum, name: str) -> AlgebraElement:
    """Basis element of the quiver datum by path name (``e1``, ``a12``, ...)."""
    for tr, path in _QUIVER_PATHS.items():
        if QUIVER_NAMES[path] == name:
            return d.basis_element(d.idx(*tr))
    raise InputError(f"unknown path {name!r}")


# ---------------------------------------------------------------------------
# half diagrams, Temperley-Lieb and bubble algebras


class BubbleHalfDiagram(NamedTuple):
    """Partner of each node (``-1`` for a defect) and the colour of each node."""

    pairing: tuple
    colouring: tuple

    @property
    def n(self) -> int:
        return len(self.pairing)

    def through(self, m: int) -> tuple[int, ...]:
        k = [0] * m
        for p, c in zip(self.pairing, self.colouring):
            if p < 0:
                k[c] += 1
        return tuple(k)

    def defects(self, c: int) -> list[int]:
        return [j for j, (p, x) in enumerate(zip(self.pairing, self.colouring)) if p < 0 and x == c]


def planar_half_diagrams(n: int) -> list[tuple[int, ...]]:
    """Non-crossing partial pairings of ``n`` points with no arc enclosing a defect."""
    out = []

    def rec(pos, pairing, stack):
        if pos == n:
            if not stack:
                out.append(tuple(pairing))
            return
        # open an arc
        pairing.append(None)
        stack.append(pos)
        rec(pos + 1, pairing, stack)
        stack.pop()
        pairing.pop()
        # close the innermost open arc
        if stack:
            j = stack.pop()
            pairing[j] = pos
            pairing.append(j)
            rec(pos + 1, pairing, stack)
            pairing.pop()
            pairing[j] = None
            stack.append(j)
        # defect: only when no arc is open around it
        if not stack:
            pairing.append(-1)
            rec(pos + 1, pairing, stack)
            pairing.pop()

    rec(0, [], [])
    return sorted(out)


def _through_count(pairing) -> int:
    return sum(1 for p in pairing if p < 0)


def _full_labels(n: int, top_pairs, bot_pairs, through) -> tuple[int, ...]:
    """Canonical labels of the diagram with given top arcs, bottom arcs and through pairs."""
    lab = [-1] * (2 * n)
    b = 0
    for x, y in top_pairs:
        lab[x] = lab[y] = b
        b += 1
    for x, y in bot_pairs:
        lab[n + x] = lab[n + y] = b
        b += 1
    for x, y in through:
        lab[x] = lab[n + y] = b
        b += 1
    return canonical_labels(lab)


def _arcs(pairing) -> list[tuple[int, int]]:
    return [(j, p) for j, p in enumerate(pairing) if p > j]


def build_tl(n: int, delta, field=QQ) -> CellDatum:
    """Temperley-Lieb algebra; cells are through-line counts, more lines lower."""
    if not isinstance(n, int) or n < 0:
        raise InputError("n must be a non-negative integer")
    delta = field(delta)
    halves = planar_half_diagrams(n)
    labels = sorted({_through_count(h) for h in halves}, reverse=True)
    t_sets = {p: [h for h in halves if _through_count(h) == p] for p in labels}
    poset = CellPoset(labels, [(p, q) for p in labels for q in labels if q < p])
    keys = []
    for p in labels:
        for s in t_sets[p]:
            for t in t_sets[p]:
                through = list(zip([j for j, x in enumerate(s) if x < 0], [j for j, x in enumerate(t) if x < 0]))
                keys.append((_full_labels(n, _arcs(s), _arcs(t), through), (0,) * (2 * n)))
    index = {k: i for i, k in enumerate(keys)}
    product = _diagram_product(keys, index, n, 1, (delta,), field)
    ident = (tuple(range(n)) * 2, (0,) * (2 * n))
    d = CellDatum(field, poset, t_sets, product, unit=[(index[ident], field.one)], name=f"TL{n}")
    d.diagram_keys = keys
    d.diagram_index = index
    d.diagram_shape = (n, 1)
    return d


def bubble_half_diagrams(n: int, m: int) -> list[BubbleHalfDiagram]:
    """Coloured half diagrams: planar per colour, crossings between colours allowed."""
    by_size = {k: planar_half_diagrams(k) for k in range(n + 1)}
    out = []
    for colouring in iproduct(range(m), repeat=n):
        groups = [[j for j in range(n) if colouring[j] == c] for c in range(m)]
        for choice in iproduct(*[by_size[len(g)] for g in groups]):
            pairing = [-1] * n
            for g, local in zip(groups, choice):
                for a, p in enumerate(local):
                    pairing[g[a]] = -1 if p < 0 else g[p]
            out.append(BubbleHalfDiagram(tuple(pairing), tuple(colouring)))
    return out


def _bubble_order_key(lam):
    return (-sum(lam), tuple(-x for x in lam))


def build_bubble(n: int, m: int, deltas, field=QQ) -> tuple[CellDatum, IdempotentDecomposition]:
    """Bubble algebra on ``m`` colours; idempotents are the coloured identity diagrams."""
    if not isinstance(n, int) or n < 0:
        raise InputError("n must be a non-negative integer")
    if not isinstance(m, int) or m < 1:
        raise InputError("m must be a positive integer")
    deltas = _check_deltas(m, [field(x) for x in deltas])
    halves = bubble_half_diagrams(n, m)
    t_by: dict = {}
    for h in halves:
        t_by.setdefault(h.through(m), []).append(h)
    labels = sorted(t_by, key=_bubble_order_key)
    t_sets = {lam: sorted(t_by[lam], key=lambda h: (h.colouring, h.pairing)) for lam in labels}
    # fewer through lines (componentwise) is higher
    relations = [
        (mu, lam)
        for lam in labels
        for mu in labels
        if lam != mu and all(a <= b for a, b in zip(lam, mu))
    ]
    poset = CellPoset(labels, relations)
    keys = []
    for lam in labels:
        for s in t_sets[lam]:
            for t in t_sets[lam]:
                through = []
                for c in range(m):
                    through.extend(zip(s.defects(c), t.defects(c)))
                keys.append(
                    (_full_labels(n, _arcs(s.pairing), _arcs(t.pairing), through), s.colouring + t.colouring)
                )
    index = {k: i for i, k in enumerate(keys)}
    product = _diagram_product(keys, index, n, m, deltas, field)
    colourings = list(iproduct(range(m), repeat=n))
    unit = [(index[(tuple(range(n)) * 2, col * 2)], field.one) for col in colourings]
    d = CellDatum(field, poset, t_sets, product, unit=unit, name=f"T{n},{m}")
    d.diagram_keys = keys
    d.diagram_index = index
    d.diagram_shape = (n, m)
    es = {col: d.basis_element(index[(tuple(range(n)) * 2, col * 2)]) for col in colourings}
    return d, IdempotentDecomposition(d, es)


def diagram_of(d: Algebra, k: int) -> ColouredDiagram:
    """Coloured diagram of basis element ``k`` of a diagram-family algebra."""
    n, m = d.diagram_shape
    labels, colours = d.diagram_keys[k]
    return ColouredDiagram(n, m, labels, colours)


def _restrict_key(key, n: int, c: int) -> tuple:
    labels, colours = key
    top = [j for j in range(n) if colours[j] == c]
    bot = [j for j in range(n, 2 * n) if colours[j] == c]
    k = len(top)
    return canonical_labels([labels[j] for j in top + bot]), (0,) * (2 * k)


def check_bubble_localization(
    n: int, m: int, deltas, colouring: Sequence[int], field=QQ
) -> Report:
    """Corner algebra at a colouring versus the tensor product of Temperley-Lieb factors.

    The basis map restricts each diagram to the nodes of one colour; cell
    labels must correspond (local label ``(k_0, ..)`` to the tuple of factor
    labels) and structure constants must agree exactly.
    """
    from .idempotent_split import localize

    colouring = tuple(colouring)
    rep = Report(f"bubble_localization[{colouring}]")
    d, dec = build_bubble(n, m, deltas, field)
    loc = localize(dec, colouring)
    sizes = [colouring.count(c) for c in range(m)]
    factors = [build_tl(k, dl, field) for k, dl in zip(sizes, deltas)]
    tens = tensor_cell_data(*factors)
    rep.data.update(local_dim=loc.datum.dim, tensor_dim=tens.dim, factor_sizes=sizes)
    if loc.datum.dim != tens.dim:
        rep.fail(f"dimension {loc.datum.dim} != tensor dimension {tens.dim}")
        return rep
    mapping = []
    for k, g in enumerate(loc.embedding):
        key = d.diagram_keys[g]
        parts = [f.diagram_index[_restrict_key(key, n, c)] for c, f in enumerate(factors)]
        lam = tuple(f.basis[p][0] for f, p in zip(factors, parts))
        s = tuple(f.basis[p][1] for f, p in zip(factors, parts))
        t = tuple(f.basis[p][2] for f, p in zip(factors, parts))
        if lam != loc.datum.basis[k][0]:
            rep.fail(f"cell label {loc.datum.basis[k][0]!r} maps to {lam!r}")
        mapping.append(tens.idx(lam, s, t))
    for msg in structure_isomorphic(loc.datum, tens, mapping):
        rep.fail(msg)
    return rep


# ---------------------------------------------------------------------------
# multi-colour partition algebras


def coloured_diagrams(n: int, m: int) -> list[ColouredDiagram]:
    """All ``m``-coloured set partitions of ``2n`` nodes, colour classes closed under blocks."""
    out = []
    size = 2 * n
    parts_cache = {k: list(set_partitions(k)) for k in range(size + 1)}
    for colours in iproduct(range(m), repeat=size):
        groups = [[j for j in range(size) if colours[j] == c] for c in range(m)]
        for choice in iproduct(*[parts_cache[len(g)] for g in groups]):
            lab = [0] * size
            offset = 0
            for g, rgs in zip(groups, choice):
                for node, b in zip(g, rgs):
                    lab[node] = offset + b
                offset += (max(rgs) + 1) if rgs else 0
            out.append(ColouredDiagram(n, m, canonical_labels(lab), tuple(colours)))
    return out


def build_multicolour_partition(n: int, m: int, deltas, field=QQ) -> tuple[Algebra, dict]:
    """Multi-colour partition algebra with its identity-diagram idempotents.

    Returns the algebra (not a cellular datum) and ``{top colouring: 1_A}``.
    """
    if not isinstance(n, int) or n < 0:
        raise InputError("n must be a non-negative integer")
    if not isinstance(m, int) or m < 1:
        raise InputError("m must be a positive integer")
    deltas = _check_deltas(m, [field(x) for x in deltas])
    diagrams = coloured_diagrams(n, m)
    keys = [dg.key for dg in diagrams]
    index = {k: i for i, k in enumerate(keys)}
    product = _diagram_product(keys, index, n, m, deltas, field)
    star = [index[dg.flip().key] for dg in diagrams]
    colourings = list(iproduct(range(m), repeat=n))
    ids = {col: index[ColouredDiagram.identity(col, m).key] for col in colourings}
    alg = Algebra(
        field,
        diagrams,
        product,
        unit=[(k, field.one) for k in ids.values()],
        star=star,
        name=f"P{n},{m}",
    )
    alg.diagram_keys = keys
    alg.diagram_index = index
    alg.diagram_shape = (n, m)
    alg.deltas = deltas
    return alg, {col: alg.basis_element(k) for col, k in ids.items()}


def build_partition_algebra(n: int, delta, field=QQ) -> Algebra:
    return build_multicolour_partition(n, 1, [delta], field)[0]


def check_partition_idempotents(alg: Algebra, es: dict) -> Report:
    """Orthogonality, unit decomposition, star-invariance and one fixing idempotent per diagram."""
    rep = Report("partition_idempotents")
    total = alg.zero()
    for e in es.values():
        total = total + e
    if total != alg.unit:
        rep.fail("idempotents do not sum to the unit")
    for a, ea in es.items():
        if not ea:
            rep.fail(f"1_{a} is zero")
        if alg.apply_star(ea) != ea:
            rep.fail(f"1_{a} is not star-fixed")
        for b, eb in es.items():
            expect = ea if a == b else alg.zero()
            if ea * eb != expect:
                rep.fail(f"1_{a} * 1_{b} != {'1_' + str(a) if a == b else '0'}")
    n = alg.diagram_shape[0]
    for k in range(alg.dim):
        x = alg.basis_element(k)
        top = alg.diagram_keys[k][1][:n]
        fixing = [a for a, e in es.items() if e * x == x]
        killing = [a for a, e in es.items() if not e * x]
        if fixing != [top] or len(killing) != len(es) - 1:
            rep.fail(f"diagram {alg.basis[k]} is fixed by {fixing} and killed by {len(killing)} idempotents")
    rep.data.update(idempotents=len(es), pairs_checked=len(es) ** 2)
    return rep


def check_localization_iso(n: int, m: int, deltas, split: Sequence, field=QQ) -> Report:
    """Corner of the multi-colour partition algebra versus a tensor of partition algebras.

    ``split`` is either a colouring of the ``n`` top nodes or the tuple of
    node sets ``(A_0, ..)`` (1-based nodes).
    """
    colouring = _colouring_from_split(n, m, split)
    rep = Report(f"localization_iso[{colouring}]")
    alg, es = build_multicolour_partition(n, m, deltas, field)
    indices = [
        k for k, (labels, colours) in enumerate(alg.diagram_keys)
        if colours[:n] == colouring and colours[n:] == colouring
    ]
    corner = corner_algebra(alg, indices, es[colouring])
    sizes = [colouring.count(c) for c in range(m)]
    factors = [build_partition_algebra(k, dl, field) for k, dl in zip(sizes, alg.deltas)]
    tens = tensor_algebras(*factors)
    rep.data.update(corner_dim=corner.dim, tensor_dim=tens.dim, factor_sizes=sizes)
    if corner.dim != tens.dim:
        rep.fail(f"corner dimension {corner.dim} != tensor dimension {tens.dim}")
        return rep
    tindex = {lab: k for k, lab in enumerate(tens.basis)}
    mapping = []
    for g in indices:
        key = alg.diagram_keys[g]
        parts = tuple(
            f.basis[f.diagram_index[_restrict_key(key, n, c)]] for c, f in enumerate(factors)
        )
        mapping.append(tindex[parts])
    for msg in structure_isomorphic(corner, tens, mapping):
        rep.fail(msg)
    return rep


def _colouring_from_split(n: int, m: int, split) -> tuple[int, ...]:
    split = tuple(split)
    if len(split) == n and all(isinstance(x, int) for x in split):
        if any(not 0 <= x < m for x in split):
            raise InputError("colour out of range")
        return split
    if len(split) != m:
        raise InputError(f"expected {m} node sets")
    col = [-1] * n
    for c, nodes in enumerate(split):
        for j in nodes:
            if not 1 <= j <= n or col[j - 1] != -1:
                raise InputError(f"node {j} out of range or in two sets")
            col[j - 1] = c
    if -1 in col:
        raise InputError("node sets do not cover 1..n")
    return tuple(col)


@dataclass
class OracleVerdict:
    semisimple: bool
    radical_dim: int
    dim: int
    sufficient_condition: bool
    consistent: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def sufficient_condition(n: int, deltas) -> bool:
    """No loop parameter is an integer in ``[0, 2n - 1]``."""
    for dl in deltas:
        x = Fraction(dl)
        if x.denominator == 1 and 0 <= x < 2 * n:
            return False
    return True


def oracle_semisimple_partition(n: int, m: int, deltas, *, cap: int = 200, field=QQ) -> OracleVerdict:
    """Trace-form radical of the multi-colour partition algebra.

    Only the sufficiency direction is checked for consistency: when no
    parameter is a small integer the algebra must come out semisimple.
    """
    if field.characteristic != 0:
        raise UnsupportedOperation("the trace-form oracle needs characteristic 0")
    deltas = _check_deltas(m, [field(x) for x in deltas])
    dim = _partition_dim(n, m)
    if dim > cap:
        raise ResourceLimitError(f"dimension {dim} exceeds the cap {cap}")
    alg, _ = build_multicolour_partition(n, m, deltas, field)
    rad = alg.jacobson_radical().dim
    cond = sufficient_condition(n, deltas)
    ss = rad == 0
    return OracleVerdict(ss, rad, alg.dim, cond, ss or not cond)


def _partition_dim(n: int, m: int) -> int:
    from math import comb

    # sum over colour-class sizes of multinomial * product of Bell numbers
    size = 2 * n
    total = 0
    for sizes in iproduct(range(size + 1), repeat=m):
        if sum(sizes) != size:
            continue
        ways = 1
        left = size
        for k in sizes:
            ways *= comb(left, k) * bell(k)
            left -= k
        total += ways
    return total


partition_algebra_dim = _partition_dim


__all__ = [
    "BubbleHalfDiagram",
    "ColouredDiagram",
    "OracleVerdict",
    "SetPartition",
    "bell",
    "bubble_half_diagrams",
    "build_bubble",
    "build_matrix_algebra",
    "build_multicolour_partition",
    "build_partition_algebra",
    "build_quiver_example",
    "build_tl",
    "canonical_labels",
    "check_bubble_localization",
    "check_localization_iso",
    "check_partition_idempotents",
    "coloured_diagrams",
    "compose_coloured",
    "compose_set_partitions",
    "diagram_of",
    "oracle_semisimple_partition",
    "partition_algebra_dim",
    "planar_half_diagrams",
    "quiver_element",
    "set_partitions",
    "sufficient_condition",
]
