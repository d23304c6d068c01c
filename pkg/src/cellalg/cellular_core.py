"""Cellular algebras given by explicit data: cell modules, Gram forms,
radicals, simple modules, Loewy layers, decomposition matrices and blocks.

Conventions: ``c[lam, s, t]`` denotes the cellular basis element with cell
label ``lam`` and indices ``s, t`` in ``T(lam)``.  A product ``a * c[lam, s, t]``
keeps the right index ``t``; terms in cells strictly above ``lam`` are
discarded when reading module actions and Gram entries.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import product as iproduct

from .algebra import (
    Algebra,
    AlgebraElement,
    HomSpace,
    ModuleRep,
    decompose_character,
    element_from_vector,
    hom_space as _hom_space,
    radical_filtration,
    zero_module,
)
from .errors import DomainError, InputError, UnsupportedOperation
from .exact_linalg import ExactMatrix, Subspace
from .report import Report


class CellPoset:
    """Finite strict partial order; ``(a, b)`` in ``pairs`` means ``a < b``."""

    def __init__(self, labels: Iterable[Hashable], relations: Iterable[tuple] = ()):
        self.labels = tuple(labels)
        self._pos = {lab: k for k, lab in enumerate(self.labels)}
        if len(self._pos) != len(self.labels):
            raise InputError("duplicate cell labels")
        above: dict = {lab: set() for lab in self.labels}
        for lo, hi in relations:
            if lo not in self._pos or hi not in self._pos:
                raise InputError(f"order relation mentions unknown label: {(lo, hi)!r}")
            above[lo].add(hi)
        # transitive closure by DFS from each label
        closed: dict = {}
        for lab in self.labels:
            seen = set()
            stack = list(above[lab])
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(above[x])
            closed[lab] = frozenset(seen)
        for lab in self.labels:
            if lab in closed[lab]:
                raise InputError(f"order relation is not antisymmetric (cycle through {lab!r})")
        self._above = closed
        self.pairs = frozenset((lo, hi) for lo in self.labels for hi in closed[lo])

    def less(self, a, b) -> bool:
        return b in self._above[a]

    def greater(self, a, b) -> bool:
        return a in self._above[b]

    def comparable(self, a, b) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def position(self, lab) -> int:
        return self._pos[lab]

    def __contains__(self, lab) -> bool:
        return lab in self._pos

    def restrict(self, labels: Iterable) -> "CellPoset":
        keep = set(labels)
        labels = [lab for lab in self.labels if lab in keep]
        return CellPoset(labels, [(a, b) for a, b in self.pairs if a in keep and b in keep])

    def covering_pairs(self) -> list[tuple]:
        out = []
        for lo, hi in sorted(self.pairs, key=lambda p: (self._pos[p[0]], self._pos[p[1]])):
            if not any(self.less(lo, mid) and self.less(mid, hi) for mid in self.labels):
                out.append((lo, hi))
        return out


def basis_triples(labels: Sequence, t_sets: Mapping) -> list[tuple]:
    """Canonical basis order: labels in declared order, then ``s``, then ``t``."""
    return [(lam, s, t) for lam in labels for s in t_sets[lam] for t in t_sets[lam]]


class CellDatum(Algebra):
    """A cellular algebra presented by its cellular basis and structure constants."""

    def __init__(
        self,
        field,
        poset: CellPoset,
        t_sets: Mapping,
        product: Mapping | Callable,
        *,
        star: Sequence[int] | None = None,
        unit: Iterable | None = None,
        name: str = "",
    ):
        self.poset = poset
        self.labels = poset.labels
        self.t_sets = {lam: tuple(t_sets[lam]) for lam in self.labels}
        for lam, ts in self.t_sets.items():
            if not ts:
                raise InputError(f"T({lam!r}) is empty")
            if len(set(ts)) != len(ts):
                raise InputError(f"T({lam!r}) has repeated indices")
        triples = basis_triples(self.labels, self.t_sets)
        self.t_pos = {lam: {t: k for k, t in enumerate(ts)} for lam, ts in self.t_sets.items()}
        self.cell_of = tuple(tr[0] for tr in triples)
        if star is None:
            index = {tr: k for k, tr in enumerate(triples)}
            star = [index[(lam, t, s)] for lam, s, t in triples]
        super().__init__(field, triples, product, unit=unit, star=star, name=name)
        self._offset = {}
        k = 0
        for lam in self.labels:
            self._offset[lam] = k
            k += len(self.t_sets[lam]) ** 2
        self._gram: dict = {}
        self._modules: dict = {}
        self._simples: dict = {}
        self._simple_chars: dict | None = None

    def idx(self, lam, s, t) -> int:
        n = len(self.t_sets[lam])
        return self._offset[lam] + self.t_pos[lam][s] * n + self.t_pos[lam][t]

    def triple(self, i: int) -> tuple:
        return self.basis[i]

    def cell_indices(self, lam) -> range:
        n = len(self.t_sets[lam])
        return range(self._offset[lam], self._offset[lam] + n * n)

    def check_label(self, lam) -> None:
        if lam not in self.poset:
            raise InputError(f"unknown cell label {lam!r}")

    def c(self, lam, s, t) -> AlgebraElement:
        return self.basis_element(self.idx(lam, s, t))


# ---------------------------------------------------------------------------
# validation


def validate_cell_datum(
    d: CellDatum,
    *,
    exhaustive_limit: int = 30,
    samples: int = 3000,
    seed: int = 0,
) -> Report:
    """Check the cellular axioms; violations are collected, never raised."""
    rep = Report("validate_cell_datum")
    po = d.poset
    for lo, hi in po.pairs:
        if lo == hi:
            rep.fail(f"order is not irreflexive at {lo!r}")
        if (hi, lo) in po.pairs:
            rep.fail(f"order is not antisymmetric on {lo!r}, {hi!r}")
    for a, b in po.pairs:
        for b2, c in po.pairs:
            if b2 == b and (a, c) not in po.pairs:
                rep.fail(f"order is not transitive on {a!r} < {b!r} < {c!r}")
    expected = sum(len(ts) ** 2 for ts in d.t_sets.values())
    if d.dim != expected:
        rep.fail(f"dim A = {d.dim} but sum |T(lam)|^2 = {expected}")

    n = d.dim
    star = d.star
    if star is None or len(star) != n:
        rep.fail("involution table missing or of wrong length")
    else:
        for i, (lam, s, t) in enumerate(d.basis):
            if star[i] != d.idx(lam, t, s):
                rep.fail(f"involution: star(c[{lam!r},{s!r},{t!r}]) is not c[{lam!r},{t!r},{s!r}]")
            if star[star[i]] != i:
                rep.fail(f"involution: star is not an involution at {d.basis[i]!r}")

    pairs = _pairs(n, exhaustive_limit**2, samples, seed)
    if star is not None and len(star) == n:
        for i, j in pairs:
            lhs = {star[k]: c for k, c in d.product(i, j)}
            rhs = dict(d.product(star[j], star[i]))
            if lhs != rhs:
                rep.fail(
                    f"involution: star(ab) != star(b) star(a) for a={d.basis[i]!r}, b={d.basis[j]!r}"
                )
                break

    for i in range(n):
        for lam in d.labels:
            ts = d.t_sets[lam]
            for s in ts:
                ref = None
                for t in ts:
                    coeffs = {}
                    for k, c in d.product(i, d.idx(lam, s, t)):
                        mu, u, v = d.basis[k]
                        if mu == lam:
                            if v != t:
                                rep.fail(
                                    f"triangularity: {d.basis[i]!r} * c[{lam!r},{s!r},{t!r}] has term "
                                    f"{d.basis[k]!r} with changed right index"
                                )
                            coeffs[u] = c
                        elif not po.less(lam, mu):
                            rep.fail(
                                f"triangularity: {d.basis[i]!r} * c[{lam!r},{s!r},{t!r}] has term "
                                f"{d.basis[k]!r} outside cell {lam!r} and A^>{lam!r}"
                            )
                    if ref is None:
                        ref = coeffs
                    elif coeffs != ref:
                        rep.fail(
                            f"t-independence: {d.basis[i]!r} * c[{lam!r},{s!r},t] depends on t={t!r}"
                        )

    triples = _triples(n, exhaustive_limit, samples, seed)
    for i, j, k in triples:
        a, b, c = d.basis_element(i), d.basis_element(j), d.basis_element(k)
        if (a * b) * c != a * (b * c):
            rep.fail(f"associativity fails on {d.basis[i]!r}, {d.basis[j]!r}, {d.basis[k]!r}")
            break

    one = d.unit
    for i in range(n):
        b = d.basis_element(i)
        if one * b != b or b * one != b:
            rep.fail(f"unit does not act as identity on {d.basis[i]!r}")
            break
    rep.data.update(dim=n, associativity_checks=len(triples), involution_checks=len(pairs))
    return rep


def _pairs(n: int, limit: int, samples: int, seed: int) -> list[tuple[int, int]]:
    if n * n <= max(limit, samples):
        return [(i, j) for i in range(n) for j in range(n)]
    rng = random.Random(seed)
    return [(rng.randrange(n), rng.randrange(n)) for _ in range(samples)]


def _triples(n: int, limit: int, samples: int, seed: int) -> list[tuple[int, int, int]]:
    if n <= limit:
        return list(iproduct(range(n), repeat=3))
    rng = random.Random(seed + 1)
    return [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples)]


def multiply(d: Algebra, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return d.multiply(a, b)


# ---------------------------------------------------------------------------
# cell modules and Gram data


def cell_module(d: CellDatum, lam) -> ModuleRep:
    """``Delta(lam)`` in the basis ``T(lam)``, read off with ``t = first(T(lam))``."""
    d.check_label(lam)
    mod = d._modules.get(lam)
    if mod is not None:
        return mod
    ts = d.t_sets[lam]
    t0 = ts[0]
    pos = d.t_pos[lam]

    def image(i, s):
        out = []
        for k, c in d.product(i, d.idx(lam, ts[s], t0)):
            mu, u, v = d.basis[k]
            if mu == lam and v == t0:
                out.append((pos[u], c))
        return out

    mod = ModuleRep(d, len(ts), image, label=lam, basis_labels=ts)
    d._modules[lam] = mod
    return mod


CellModuleRep = ModuleRep


def action_matrix(d: CellDatum, lam, a: AlgebraElement) -> ExactMatrix:
    return cell_module(d, lam).matrix(a)


@dataclass
class GramData:
    lambda_: Hashable
    matrix: ExactMatrix
    rank: int
    radical: Subspace

    @property
    def det(self):
        return self.matrix.det()

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero()


def gram_entry(d: CellDatum, lam, s, t, u=None, b=None):
    """``<c_s, c_t>`` read from ``c[lam,u,s] c[lam,t,b]`` modulo higher cells."""
    ts = d.t_sets[lam]
    u = ts[0] if u is None else u
    b = ts[0] if b is None else b
    target = d.idx(lam, u, b)
    for k, c in d.product(d.idx(lam, u, s), d.idx(lam, t, b)):
        if k == target:
            return c
    return d.field.zero


def gram_matrix(d: CellDatum, lam) -> GramData:
    d.check_label(lam)
    g = d._gram.get(lam)
    if g is None:
        ts = d.t_sets[lam]
        m = ExactMatrix._raw([[gram_entry(d, lam, s, t) for t in ts] for s in ts], d.field, len(ts))
        null = m.nullspace()
        g = GramData(lam, m, len(ts) - null.dim, null)
        d._gram[lam] = g
    return g


def lambda_zero(d: CellDatum) -> list:
    """Cell labels with a nonzero form, in declared order."""
    return [lam for lam in d.labels if not gram_matrix(d, lam).is_zero]


def simple_dim(d: CellDatum, lam) -> int:
    g = gram_matrix(d, lam)
    if g.is_zero:
        raise DomainError(f"{lam!r} is not in Lambda^0; L({lam!r}) is undefined")
    return g.rank


def simple_module(d: CellDatum, lam) -> ModuleRep:
    """``L(lam) = Delta(lam) / Rad`` on the non-pivot coordinates of the radical."""
    simple_dim(d, lam)
    mod = d._simples.get(lam)
    if mod is None:
        mod = cell_module(d, lam).quotient(gram_matrix(d, lam).radical, label=lam)
        d._simples[lam] = mod
    return mod


@dataclass
class SemisimplicityResult:
    semisimple: bool
    determinants: dict

    def __bool__(self):
        return self.semisimple


def is_semisimple(d: CellDatum) -> SemisimplicityResult:
    dets = {lam: gram_matrix(d, lam).det for lam in d.labels}
    return SemisimplicityResult(all(bool(v) for v in dets.values()), dets)


def jacobson_radical(d: Algebra) -> Subspace:
    return d.jacobson_radical()


def radical_elements(d: Algebra) -> list[AlgebraElement]:
    return [element_from_vector(d, v) for v in d.jacobson_radical().basis]


# ---------------------------------------------------------------------------
# composition factors, Loewy layers, decomposition matrix


def _require_char0(d: Algebra, what: str) -> None:
    if d.field.characteristic != 0:
        raise UnsupportedOperation(f"{what} is only supported in characteristic 0")


def simple_characters(d: CellDatum) -> dict:
    if d._simple_chars is None:
        d._simple_chars = {mu: simple_module(d, mu).character() for mu in lambda_zero(d)}
    return d._simple_chars


def composition_factors(d: CellDatum, m: ModuleRep) -> dict:
    """Multiplicities ``[m : L(mu)]`` from the module character (char 0)."""
    _require_char0(d, "composition factors")
    return decompose_character(m.character(), simple_characters(d), d.field)


def loewy_series(d: CellDatum, m: ModuleRep, method: str = "character") -> list[dict]:
    """Radical layers ``J^k m / J^(k+1) m``, each as ``{mu: multiplicity}``.

    ``method="character"`` decomposes layer characters; ``method="hom"``
    divides ``dim Hom(layer, L(mu))`` by ``dim End(L(mu))``.  Both agree in
    characteristic 0; the character route is much cheaper on large modules.
    """
    _require_char0(d, "Loewy series")
    if method not in ("character", "hom"):
        raise InputError(f"unknown method {method!r}")
    filt = radical_filtration(m, radical_elements(d))
    if method == "hom":
        return [
            {mu: k for mu in lambda_zero(d) if (k := multiplicity_via_hom(d, layer, mu))}
            for layer in loewy_layers(m, filt)
        ]
    chars = simple_characters(d)
    layer_chars = [m.submodule(w).character() for w in filt]
    layers = []
    for upper, lower in zip(layer_chars, layer_chars[1:]):
        chi = [x - y for x, y in zip(upper, lower)]
        layers.append(decompose_character(chi, chars, d.field))
    return layers


def loewy_layers(m: ModuleRep, filt: Sequence[Subspace]) -> list[ModuleRep]:
    """Subquotient modules ``filt[k] / filt[k+1]``."""
    out = []
    for upper, lower in zip(filt, filt[1:]):
        sub = m.submodule(upper)
        inner = Subspace.from_vectors(
            [upper.coordinates(v) for v in lower.basis], upper.dim, m.field
        )
        out.append(sub.quotient(inner))
    return out


def multiplicity_via_hom(d: CellDatum, semisimple: ModuleRep, mu) -> int:
    """``dim Hom(M, L(mu)) / dim End(L(mu))`` for a semisimple module ``M``."""
    L = simple_module(d, mu)
    h = _hom_space(semisimple, L).dim
    e = _hom_space(L, L).dim
    if h % e:
        raise ArithmeticError("Hom dimension not divisible by End dimension; module not semisimple?")
    return h // e


def hom_space(d: Algebra, m: ModuleRep, n: ModuleRep) -> HomSpace:
    if m.algebra is not d or n.algebra is not d:
        raise InputError("modules are not over this datum")
    return _hom_space(m, n)


@dataclass
class DecompositionData:
    rows: list
    cols: list
    matrix: ExactMatrix
    cartan: ExactMatrix
    triangularity: dict = field(default_factory=dict)

    def entry(self, lam, mu) -> int:
        return int(self.matrix[self.rows.index(lam), self.cols.index(mu)])


def decomposition_matrix(d: CellDatum) -> DecompositionData:
    _require_char0(d, "decomposition matrix")
    cols = lambda_zero(d)
    rows = list(d.labels)
    data = []
    for lam in rows:
        mult = composition_factors(d, cell_module(d, lam))
        data.append([mult.get(mu, 0) for mu in cols])
    D = ExactMatrix(data, d.field, cols=len(cols))
    C = D.transpose() @ D
    po = d.poset
    nonzero = [(lam, mu) for lam, row in zip(rows, data) for mu, x in zip(cols, row) if x]
    tri = {
        "nonzero_implies_lam_le_mu": all(lam == mu or po.less(lam, mu) for lam, mu in nonzero),
        "nonzero_implies_lam_ge_mu": all(lam == mu or po.less(mu, lam) for lam, mu in nonzero),
        "unit_diagonal": all(data[rows.index(mu)][cols.index(mu)] == 1 for mu in cols),
        "offending_as_stated": [
            [lam, mu] for lam, mu in nonzero if not (lam == mu or po.less(lam, mu))
        ],
    }
    return DecompositionData(rows, cols, D, C, tri)


class UnionFind:
    """Union-find over a fixed label order; representatives are order-minimal."""

    def __init__(self, labels: Sequence):
        self.order = {lab: k for k, lab in enumerate(labels)}
        self.parent = {lab: lab for lab in labels}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.order[rb] < self.order[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra

    def classes(self) -> list[list]:
        groups: dict = {}
        for lab in sorted(self.parent, key=self.order.__getitem__):
            groups.setdefault(self.find(lab), []).append(lab)
        return sorted(groups.values(), key=lambda g: self.order[g[0]])


@dataclass
class BlockPartition:
    cell_blocks: list[list]
    blocks: list[list]

    def block_of(self, lam) -> list:
        for b in self.cell_blocks:
            if lam in b:
                return b
        raise DomainError(f"unknown label {lam!r}")


def blocks(d: CellDatum) -> BlockPartition:
    """Cell-blocks (linkage classes of ``d_{lam,mu} != 0``) and their Lambda^0 parts."""
    D = decomposition_matrix(d)
    uf = UnionFind(d.labels)
    for i, lam in enumerate(D.rows):
        for j, mu in enumerate(D.cols):
            if D.matrix[i, j]:
                uf.union(lam, mu)
    cells = uf.classes()
    lz = set(D.cols)
    return BlockPartition(cells, [[x for x in c if x in lz] for c in cells if any(x in lz for x in c)])


# ---------------------------------------------------------------------------


def tensor_cell_data(*data: CellDatum, name: str = "") -> CellDatum:
    """Tensor product of cellular data with the product order on labels.

    Labels, and entries of the index sets, are tuples with one component
    per factor.
    """
    if not data:
        raise InputError("need at least one factor")
    f = data[0].field
    labels = list(iproduct(*[dd.labels for dd in data]))

    def le(x, y):
        return all(a == b or dd.poset.less(a, b) for dd, a, b in zip(data, x, y))

    relations = [(x, y) for x in labels for y in labels if x != y and le(x, y)]
    poset = CellPoset(labels, relations)
    t_sets = {lam: list(iproduct(*[dd.t_sets[l] for dd, l in zip(data, lam)])) for lam in labels}
    triples = basis_triples(labels, t_sets)
    index = {tr: k for k, tr in enumerate(triples)}
    factor_idx = [
        tuple(dd.idx(lam[q], s[q], t[q]) for q, dd in enumerate(data)) for lam, s, t in triples
    ]

    def product(i, j):
        terms = [((), f.one)]
        for q, dd in enumerate(data):
            pr = dd.product(factor_idx[i][q], factor_idx[j][q])
            if not pr:
                return ()
            terms = [(key + (k,), c * x) for key, c in terms for k, x in pr]
        out = []
        for key, c in terms:
            parts = [dd.basis[k] for dd, k in zip(data, key)]
            tr = (
                tuple(p[0] for p in parts),
                tuple(p[1] for p in parts),
                tuple(p[2] for p in parts),
            )
            out.append((index[tr], c))
        return out

    unit = [((), f.one)]
    for dd in data:
        unit = [(key + (k,), c * x) for key, c in unit for k, x in dd.unit.coeffs.items()]
    unit_terms = []
    for key, c in unit:
        parts = [dd.basis[k] for dd, k in zip(data, key)]
        tr = (tuple(p[0] for p in parts), tuple(p[1] for p in parts), tuple(p[2] for p in parts))
        unit_terms.append((index[tr], c))
    return CellDatum(f, poset, t_sets, product, unit=unit_terms, name=name)


def zero_cell_module(d: Algebra, lam) -> ModuleRep:
    return zero_module(d, label=lam)
