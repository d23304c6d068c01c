"""Splitting a cellular algebra along a family of orthogonal idempotents.

Every cell index ``t`` of ``T(lam)`` carries a unique colour ``i`` with
``e_i c[lam, t, s] = c[lam, t, s]``.  The corner algebras ``e_i A e_i`` are
cellular on the colour-``i`` indices, and Gram matrices, radicals, simple
modules and homomorphisms of the parent split colour by colour.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass, field

from .algebra import AlgebraElement, ModuleRep, hom_space, intertwines, zero_module
from .cellular_core import (
    BlockPartition,
    CellDatum,
    UnionFind,
    blocks,
    cell_module,
    gram_matrix,
    is_semisimple,
    lambda_zero,
    simple_module,
)
from .errors import AssumptionViolation, DomainError, InputError, UnsupportedOperation
from .exact_linalg import ExactMatrix, Subspace
from .report import Report


def _as_mapping(es) -> dict:
    if isinstance(es, Mapping):
        return dict(es)
    return {k + 1: e for k, e in enumerate(es)}


def check_assumptions(d: CellDatum, es) -> Report:
    """Orthogonal decomposition of 1, star-fixed idempotents, unique colours."""
    rep = Report("check_assumptions")
    es = _as_mapping(es)
    if not es:
        rep.fail("A1: empty idempotent family")
        return rep
    for i, e in es.items():
        if not isinstance(e, AlgebraElement) or e.algebra is not d:
            raise InputError(f"idempotent {i!r} is not an element of this algebra")
    total = d.zero()
    for e in es.values():
        total = total + e
    if total != d.unit:
        rep.fail("A2: idempotents do not sum to the unit")
    keys = list(es)
    for i in keys:
        e = es[i]
        if not e:
            rep.fail(f"A2: e_{i!r} is zero")
        if e * e != e:
            rep.fail(f"A2: e_{i!r} is not idempotent")
        for j in keys:
            if j != i and e * es[j]:
                rep.fail(f"A2: e_{i!r} e_{j!r} is nonzero")
        if d.star is None:
            rep.fail("A4: algebra has no involution")
        elif d.apply_star(e) != e:
            rep.fail(f"A4: e_{i!r} is not fixed by the involution")
    counts = {i: 0 for i in keys}
    for lam in d.labels:
        ts = d.t_sets[lam]
        for t in ts:
            fixing, other = [], []
            for i in keys:
                e = es[i]
                imgs = [e * d.c(lam, t, s) for s in ts]
                if all(img == d.c(lam, t, s) for img, s in zip(imgs, ts)):
                    fixing.append(i)
                elif any(imgs):
                    other.append(i)
            if len(fixing) != 1:
                rep.fail(f"A3: index {t!r} of {lam!r} is fixed by {len(fixing)} idempotents")
            else:
                counts[fixing[0]] += 1
                if other:
                    rep.fail(
                        f"A3: index {t!r} of {lam!r} has colour {fixing[0]!r} but "
                        f"e_{other[0]!r} acts nonzero on its row"
                    )
    for i, k in counts.items():
        if k == 0 and not rep.violations:
            rep.fail(f"colour {i!r} owns no cell index")
    rep.data["idempotents"] = len(keys)
    return rep


@dataclass
class LocalizedAlgebra:
    colour: Hashable
    datum: CellDatum
    embedding: list[int]
    """Parent basis index of each local basis element."""

    def parent_triple(self, k: int) -> tuple:
        return self.datum.basis[k]


class IdempotentDecomposition:
    """Admissible idempotent family of a cellular datum with its colour data."""

    def __init__(self, parent: CellDatum, idempotents, *, verify: bool = False):
        self.parent = parent
        self.idempotents = _as_mapping(idempotents)
        self.colours = list(self.idempotents)
        if verify:
            rep = check_assumptions(parent, self.idempotents)
            if not rep.ok:
                raise AssumptionViolation("; ".join(rep.violations))
        d = parent
        self.colour_of_index: dict = {}
        for lam in d.labels:
            ts = d.t_sets[lam]
            for t in ts:
                target = d.c(lam, t, ts[0])
                hits = [i for i, e in self.idempotents.items() if e * target == target]
                if len(hits) != 1:
                    raise AssumptionViolation(
                        f"index {t!r} of cell {lam!r} is fixed by {len(hits)} idempotents"
                    )
                self.colour_of_index[(lam, t)] = hits[0]
        self.t_split = {
            (lam, i): [t for t in d.t_sets[lam] if self.colour_of_index[(lam, t)] == i]
            for lam in d.labels
            for i in self.colours
        }
        self.lambda_sets = {
            i: [lam for lam in d.labels if self.t_split[(lam, i)]] for i in self.colours
        }
        self.i_sets = {
            lam: [i for i in self.colours if self.t_split[(lam, i)]] for lam in d.labels
        }
        for i, labs in self.lambda_sets.items():
            if not labs:
                raise AssumptionViolation(f"colour {i!r} owns no cell index")
        self._local: dict = {}

    def T(self, lam, i) -> list:
        return self.t_split[(lam, i)]

    def positions(self, lam, i) -> list[int]:
        """Coordinates of ``T(lam, i)`` inside ``T(lam)``."""
        pos = self.parent.t_pos[lam]
        return [pos[t] for t in self.t_split[(lam, i)]]

    def check_colour(self, i) -> None:
        if i not in self.idempotents:
            raise InputError(f"unknown colour {i!r}")


def colour_of(dec: IdempotentDecomposition, lam, t):
    try:
        return dec.colour_of_index[(lam, t)]
    except KeyError:
        raise InputError(f"{t!r} is not an index of cell {lam!r}") from None


def localize(dec: IdempotentDecomposition, i) -> LocalizedAlgebra:
    """The corner algebra ``e_i A e_i`` with its inherited cellular basis."""
    dec.check_colour(i)
    loc = dec._local.get(i)
    if loc is not None:
        return loc
    d = dec.parent
    labels = dec.lambda_sets[i]
    assert labels, "A2 guarantees a nonempty local poset"
    poset = d.poset.restrict(labels)
    t_sets = {lam: dec.T(lam, i) for lam in labels}
    embedding = [d.idx(lam, s, t) for lam in labels for s in t_sets[lam] for t in t_sets[lam]]
    pos = {g: k for k, g in enumerate(embedding)}

    def product(a, b):
        out = []
        for k, c in d.product(embedding[a], embedding[b]):
            if k not in pos:
                raise ArithmeticError(
                    f"product {d.basis[embedding[a]]!r} * {d.basis[embedding[b]]!r} leaves e_i A e_i"
                )
            out.append((pos[k], c))
        return out

    unit = []
    for k, c in dec.idempotents[i].coeffs.items():
        if k not in pos:
            raise AssumptionViolation(f"e_{i!r} is not supported on the colour-{i!r} basis")
        unit.append((pos[k], c))
    name = f"{d.name}[e_{i}]" if d.name else f"e_{i}"
    datum = CellDatum(d.field, poset, t_sets, product, unit=unit, name=name)
    loc = LocalizedAlgebra(i, datum, embedding)
    dec._local[i] = loc
    return loc


def v_module(dec: IdempotentDecomposition, lam, i) -> ModuleRep:
    """``V(lam, i) = e_i Delta(lam)`` over the corner algebra; zero if ``lam`` misses colour ``i``."""
    dec.parent.check_label(lam)
    loc = localize(dec, i)
    if lam not in dec.lambda_sets[i]:
        return zero_module(loc.datum, label=lam)
    return cell_module(loc.datum, lam)


def gram_block(dec: IdempotentDecomposition, lam, i) -> ExactMatrix:
    dec.parent.check_label(lam)
    dec.check_colour(i)
    if lam not in dec.lambda_sets[i]:
        raise DomainError(f"{lam!r} is not in Lambda_{i!r}")
    return gram_matrix(localize(dec, i).datum, lam).matrix


def colour_permutation(dec: IdempotentDecomposition, lam) -> list[int]:
    """Positions of ``T(lam)`` listed colour by colour."""
    return [p for i in dec.i_sets[lam] for p in dec.positions(lam, i)]


def check_gram_direct_sum(dec: IdempotentDecomposition, lam) -> Report:
    rep = Report(f"gram_direct_sum[{lam!r}]")
    g = gram_matrix(dec.parent, lam).matrix
    perm = colour_permutation(dec, lam)
    colour_at = {}
    for i in dec.i_sets[lam]:
        for p in dec.positions(lam, i):
            colour_at[p] = i
    for a in range(g.rows):
        for b in range(g.cols):
            if colour_at[a] != colour_at[b] and g[a, b]:
                rep.fail(f"cross-colour Gram entry ({a}, {b}) = {g[a, b]}")
    blocks_ = [gram_block(dec, lam, i) for i in dec.i_sets[lam]]
    expected = ExactMatrix.block_diagonal(blocks_, g.field)
    if g.submatrix(perm, perm) != expected:
        rep.fail("colour-sorted Gram matrix differs from the direct sum of local Gram blocks")
    rep.data.update(permutation=perm, block_sizes=[b.rows for b in blocks_])
    return rep


def check_semisimple_equivalence(dec: IdempotentDecomposition) -> Report:
    rep = Report("semisimple_equivalence")
    f = dec.parent.field
    parent = is_semisimple(dec.parent)
    local = {i: is_semisimple(localize(dec, i).datum) for i in dec.colours}
    if parent.semisimple != all(v.semisimple for v in local.values()):
        rep.fail(
            f"parent semisimple={parent.semisimple} but locals "
            f"{ {i: v.semisimple for i, v in local.items()} }"
        )
    rep.data.update(
        parent_semisimple=parent.semisimple,
        parent_determinants={repr(k): f.format(v) for k, v in parent.determinants.items()},
        local_semisimple={repr(i): v.semisimple for i, v in local.items()},
        local_determinants={
            repr(i): {repr(k): f.format(x) for k, x in v.determinants.items()}
            for i, v in local.items()
        },
    )
    return rep


def _embed(dec: IdempotentDecomposition, lam, i, v: Sequence) -> list:
    f = dec.parent.field
    out = [f.zero] * len(dec.parent.t_sets[lam])
    for p, x in zip(dec.positions(lam, i), v):
        out[p] = x
    return out


def check_radical_decomposition(dec: IdempotentDecomposition, lam) -> Report:
    rep = Report(f"radical_decomposition[{lam!r}]")
    rad = gram_matrix(dec.parent, lam).radical
    local_dims = {}
    for i in dec.i_sets[lam]:
        lrad = gram_matrix(localize(dec, i).datum, lam).radical
        local_dims[i] = lrad.dim
        for v in lrad.basis:
            if _embed(dec, lam, i, v) not in rad:
                rep.fail(f"local radical vector of colour {i!r} is not in Rad Delta({lam!r})")
    if rad.dim != sum(local_dims.values()):
        rep.fail(f"dim Rad = {rad.dim} but local radicals sum to {sum(local_dims.values())}")
    rep.data.update(radical_dim=rad.dim, local_radical_dims={repr(k): v for k, v in local_dims.items()})
    return rep


def check_simple_dim_sum(dec: IdempotentDecomposition, lam) -> Report:
    d = dec.parent
    if lam not in lambda_zero(d):
        raise DomainError(f"{lam!r} is not in Lambda^0")
    rep = Report(f"simple_dim_sum[{lam!r}]")
    total = gram_matrix(d, lam).rank
    L = simple_module(d, lam)
    local = {}
    for i in dec.colours:
        r = gram_matrix(localize(dec, i).datum, lam).rank if lam in dec.lambda_sets[i] else 0
        proj = L.matrix(dec.idempotents[i]).rank()
        local[i] = r
        if proj != r:
            rep.fail(f"dim e_{i!r} L({lam!r}) = {proj} but rank M({lam!r},{i!r}) = {r}")
    if total != sum(local.values()):
        rep.fail(f"rank G = {total} but local ranks sum to {sum(local.values())}")
    rep.data.update(simple_dim=total, local_ranks={repr(k): v for k, v in local.items()})
    return rep


def check_cell_module_splitting(dec: IdempotentDecomposition, lam) -> Report:
    """Each corner algebra acts on ``Delta(lam)`` through its own colour block."""
    rep = Report(f"cell_module_splitting[{lam!r}]")
    d = dec.parent
    mod = cell_module(d, lam)
    for i in dec.colours:
        loc = localize(dec, i)
        mine = set(dec.positions(lam, i))
        vmod = v_module(dec, lam, i)
        own = dec.positions(lam, i)
        for k, g in enumerate(loc.embedding):
            cols = mod.columns(g)
            for s, col in enumerate(cols):
                for u, c in col:
                    if s not in mine or u not in mine:
                        rep.fail(f"{d.basis[g]!r} moves Delta({lam!r}) across colours")
            if vmod.dim and mod.matrix(g).submatrix(own, own) != vmod.matrix(k):
                rep.fail(f"local action of {d.basis[g]!r} on V({lam!r},{i!r}) differs from parent")
    return rep


def check_local_cellularity(dec: IdempotentDecomposition, **kwargs) -> Report:
    from .cellular_core import validate_cell_datum

    rep = Report("local_cellularity")
    for i in dec.colours:
        rep.extend(validate_cell_datum(localize(dec, i).datum, **kwargs), prefix=f"[e_{i}] ")
    return rep


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class TransportedHom:
    matrix: ExactMatrix
    report: Report


def restrict_hom(dec: IdempotentDecomposition, theta: ExactMatrix, lam, mu, i) -> TransportedHom:
    """Colour-``i`` block of ``theta: Delta(lam) -> Delta(mu)``."""
    d = dec.parent
    dec.check_colour(i)
    if (theta.rows, theta.cols) != (len(d.t_sets[mu]), len(d.t_sets[lam])):
        raise InputError("matrix shape does not match Delta(lam) -> Delta(mu)")
    local = theta.submatrix(dec.positions(mu, i), dec.positions(lam, i))
    rep = Report(f"restrict_hom[{lam!r}->{mu!r}, {i!r}]")
    if not intertwines(v_module(dec, lam, i), v_module(dec, mu, i), local):
        rep.fail("restriction does not intertwine the local actions")
    return TransportedHom(local, rep)


def extend_hom(dec: IdempotentDecomposition, tau: ExactMatrix, lam, mu, i) -> TransportedHom:
    """Zero extension of ``tau: V(lam, i) -> V(mu, i)`` to ``Delta(lam) -> Delta(mu)``.

    The report records whether the extension intertwines the full action;
    this is not automatic (a local endomorphism need not commute with
    elements that move between colours).
    """
    d = dec.parent
    rows_, cols_ = dec.positions(mu, i), dec.positions(lam, i)
    if (tau.rows, tau.cols) != (len(rows_), len(cols_)):
        raise InputError("matrix shape does not match V(lam,i) -> V(mu,i)")
    f = d.field
    out = [[f.zero] * len(d.t_sets[lam]) for _ in d.t_sets[mu]]
    for a, r in enumerate(rows_):
        for b, c in enumerate(cols_):
            out[r][c] = tau[a, b]
    big = ExactMatrix._raw(out, f, len(d.t_sets[lam]))
    rep = Report(f"extend_hom[{lam!r}->{mu!r}, {i!r}]")
    if not intertwines(cell_module(d, lam), cell_module(d, mu), big):
        rep.fail("zero extension does not intertwine the action of A")
    return TransportedHom(big, rep)


def check_hom_transport(dec: IdempotentDecomposition, lam, mu) -> Report:
    """Restriction/extension identities on Hom spaces between cell modules."""
    d = dec.parent
    rep = Report(f"hom_transport[{lam!r}->{mu!r}]")
    glob = hom_space(cell_module(d, lam), cell_module(d, mu))
    for theta in glob.basis:
        acc = ExactMatrix.zeros(theta.rows, theta.cols, d.field)
        for i in dec.colours:
            r = restrict_hom(dec, theta, lam, mu, i)
            rep.extend(r.report)
            acc = acc + extend_hom(dec, r.matrix, lam, mu, i).matrix
        if acc != theta:
            rep.fail("sum of extended restrictions differs from the global map")
    non_intertwining = 0
    for i in dec.colours:
        loc = hom_space(v_module(dec, lam, i), v_module(dec, mu, i))
        for tau in loc.basis:
            ext = extend_hom(dec, tau, lam, mu, i)
            if not ext.report.ok:
                non_intertwining += 1
                rep.warnings.append(
                    f"zero extension of a colour-{i!r} local map is not an A-module map"
                )
            if restrict_hom(dec, ext.matrix, lam, mu, i).matrix != tau:
                rep.fail(f"restrict(extend(tau)) != tau for colour {i!r}")
    rep.data.update(global_hom_dim=glob.dim, non_intertwining_extensions=non_intertwining)
    return rep


def check_hom_vanishing(dec: IdempotentDecomposition, lam, mu) -> Report:
    """Compare ``dim Hom_A(Delta(lam), Delta(mu))`` with the local Hom dimensions.

    A nonzero global map restricts to a nonzero local map for some colour;
    that direction is a violation when it fails.  The converse can fail
    (local cell modules may be isomorphic while the global ones are not
    linked by a map), so it is recorded in ``data`` only.
    """
    d = dec.parent
    rep = Report(f"hom_vanishing[{lam!r}->{mu!r}]")
    g = hom_space(cell_module(d, lam), cell_module(d, mu)).dim
    local = {i: hom_space(v_module(dec, lam, i), v_module(dec, mu, i)).dim for i in dec.colours}
    some_local = any(local.values())
    if g and not some_local:
        rep.fail("nonzero global Hom but every local Hom vanishes")
    rep.data.update(
        global_dim=g,
        local_dims={repr(i): v for i, v in local.items()},
        equivalence_holds=(g == 0) == (not some_local),
    )
    if (g == 0) != (not some_local):
        rep.warnings.append(
            f"global Hom vanishes but local Hom is nonzero for colours "
            f"{[i for i, v in local.items() if v]!r}"
        )
    return rep


# ---------------------------------------------------------------------------
# blocks


@dataclass
class LocalizedBlocks:
    partition: BlockPartition
    advisory: bool
    warnings: list[str] = field(default_factory=list)


def blocks_via_localization(dec: IdempotentDecomposition) -> LocalizedBlocks:
    """Merge the cell-blocks of every corner algebra into classes on ``Lambda``."""
    d = dec.parent
    if d.field.characteristic != 0:
        raise UnsupportedOperation("blocks are only computed in characteristic 0")
    warnings = []
    lz = lambda_zero(d)
    advisory = len(lz) != len(d.labels)
    if advisory:
        missing = [lam for lam in d.labels if lam not in lz]
        warnings.append(
            f"Lambda != Lambda^0 (missing {missing!r}); localized blocks are advisory only"
        )
    uf = UnionFind(d.labels)
    for i in dec.colours:
        for cls in blocks(localize(dec, i).datum).cell_blocks:
            for lab in cls[1:]:
                uf.union(cls[0], lab)
    cells = uf.classes()
    lzs = set(lz)
    part = BlockPartition(
        cells, [[x for x in c if x in lzs] for c in cells if any(x in lzs for x in c)]
    )
    return LocalizedBlocks(part, advisory, warnings)


def decompose(d: CellDatum, es, *, verify: bool = True) -> IdempotentDecomposition:
    return IdempotentDecomposition(d, es, verify=verify)


__all__ = [
    "IdempotentDecomposition",
    "LocalizedAlgebra",
    "LocalizedBlocks",
    "TransportedHom",
    "blocks_via_localization",
    "check_assumptions",
    "check_cell_module_splitting",
    "check_gram_direct_sum",
    "check_hom_transport",
    "check_hom_vanishing",
    "check_local_cellularity",
    "check_radical_decomposition",
    "check_semisimple_equivalence",
    "check_simple_dim_sum",
    "colour_of",
    "colour_permutation",
    "decompose",
    "extend_hom",
    "gram_block",
    "localize",
    "restrict_hom",
    "v_module",
]
