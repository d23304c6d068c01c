"""Finite-dimensional associative algebras given by structure constants,
their elements, and matrix-free module representations.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct

from .errors import InputError, UnsupportedOperation
from .exact_linalg import QQ, EchelonBuilder, ExactMatrix, Subspace, solve

Terms = tuple  # tuple of (basis index, nonzero scalar)


class Algebra:
    """Associative algebra with a distinguished basis.

    ``product`` is either a mapping ``(i, j) -> [(k, c), ...]`` or a callable
    with the same signature; products are cached on first use.  ``unit`` is
    an iterable of ``(k, c)`` terms and is solved for when omitted.
    ``star`` is an optional basis permutation giving an anti-involution.
    """

    def __init__(
        self,
        field,
        basis: Sequence,
        product: Mapping | Callable,
        *,
        unit: Iterable | None = None,
        star: Sequence[int] | None = None,
        name: str = "",
    ):
        self.field = field
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self._index = {b: i for i, b in enumerate(self.basis)}
        if len(self._index) != self.dim:
            raise InputError("duplicate basis labels")
        self._table: dict[tuple[int, int], Terms] = {}
        if callable(product):
            self._product_fn = product
        else:
            table = product

            def _lookup(i, j):
                return table.get((i, j), ())

            self._product_fn = _lookup
        self.star = tuple(star) if star is not None else None
        self.name = name
        self._unit_terms = None if unit is None else self._clean(unit)
        self._traces = None
        self._radical = None

    # -- basic structure -------------------------------------------------

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown basis label {label!r}") from None

    def _clean(self, terms) -> Terms:
        acc: dict[int, object] = {}
        f = self.field
        for k, c in terms:
            c = f(c)
            acc[k] = acc.get(k, f.zero) + c
        return tuple((k, c) for k, c in sorted(acc.items()) if c)

    def product(self, i: int, j: int) -> Terms:
        key = (i, j)
        try:
            return self._table[key]
        except KeyError:
            pass
        res = self._clean(self._product_fn(i, j))
        self._table[key] = res
        return res

    def table(self) -> dict[tuple[int, int], Terms]:
        """Materialize and return the full structure-constant table."""
        for i in range(self.dim):
            for j in range(self.dim):
                self.product(i, j)
        return self._table

    def element(self, terms: Mapping | Iterable = ()) -> "AlgebraElement":
        if isinstance(terms, Mapping):
            terms = terms.items()
        return AlgebraElement(self, dict(self._clean(terms)))

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, {i: self.field.one})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    @property
    def unit(self) -> "AlgebraElement":
        if self._unit_terms is None:
            self._unit_terms = self._solve_unit()
        return AlgebraElement(self, dict(self._unit_terms))

    def _solve_unit(self) -> Terms:
        n = self.dim
        f = self.field
        rows, rhs = [], []
        for j in range(n):
            left = [dict(self.product(k, j)) for k in range(n)]
            right = [dict(self.product(j, k)) for k in range(n)]
            for l in range(n):
                target = f.one if l == j else f.zero
                rows.append([left[k].get(l, f.zero) for k in range(n)])
                rhs.append(target)
                rows.append([right[k].get(l, f.zero) for k in range(n)])
                rhs.append(target)
        x = solve(ExactMatrix(rows, f, cols=n), rhs) if n else []
        if x is None:
            raise InputError("algebra has no unit")
        return tuple((k, c) for k, c in enumerate(x) if c)

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        if a.algebra is not self or b.algebra is not self:
            raise InputError("elements belong to a different algebra")
        acc: dict[int, object] = {}
        for i, x in a.coeffs.items():
            for j, y in b.coeffs.items():
                xy = x * y
                for k, c in self.product(i, j):
                    v = acc.get(k)
                    acc[k] = xy * c if v is None else v + xy * c
        return AlgebraElement(self, {k: v for k, v in acc.items() if v})

    def apply_star(self, a: "AlgebraElement") -> "AlgebraElement":
        if self.star is None:
            raise UnsupportedOperation("algebra has no involution")
        return AlgebraElement(self, {self.star[i]: c for i, c in a.coeffs.items()})

    # -- trace form ------------------------------------------------------

    def left_traces(self) -> list:
        """``tr(L_b)`` for every basis element ``b``."""
        if self._traces is None:
            f = self.field
            out = []
            for k in range(self.dim):
                t = f.zero
                for l in range(self.dim):
                    for kk, c in self.product(k, l):
                        if kk == l:
                            t = t + c
                out.append(t)
            self._traces = out
        return self._traces

    def trace_form(self) -> ExactMatrix:
        tr = self.left_traces()
        f = self.field
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                v = f.zero
                for k, c in self.product(i, j):
                    if tr[k]:
                        v = v + c * tr[k]
                row.append(v)
            rows.append(row)
        return ExactMatrix._raw(rows, f, self.dim)

    def jacobson_radical(self) -> Subspace:
        """Radical of the trace form; equals the Jacobson radical in char 0."""
        if self.field.characteristic != 0:
            raise UnsupportedOperation(
                "trace-form radical is only the Jacobson radical in characteristic 0"
            )
        if self._radical is None:
            self._radical = self.trace_form().nullspace()
        return self._radical

    def regular_module(self) -> "ModuleRep":
        return ModuleRep(self, self.dim, self.product, label="regular", basis_labels=self.basis)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} dim={self.dim} over {self.field!r}>"


class AlgebraElement:
    """Sparse linear combination of basis elements; zeros are never stored."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs: dict):
        self.algebra = algebra
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise InputError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = acc.get(k)
            acc[k] = c if v is None else v + c
        return AlgebraElement(self.algebra, {k: v for k, v in acc.items() if v})

    def __neg__(self):
        return AlgebraElement(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, {k: v * c for k, v in self.coeffs.items() if v * c})

    def __rmul__(self, other):
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.coeffs.items() if c * v})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, i: int):
        return self.coeffs.get(i, self.algebra.field.zero)

    def terms(self) -> list[tuple]:
        """``(basis label, coefficient)`` pairs in basis order."""
        return [(self.algebra.basis[k], self.coeffs[k]) for k in sorted(self.coeffs)]

    def to_vector(self) -> list:
        f = self.algebra.field
        v = [f.zero] * self.algebra.dim
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{lab!r}" for lab, c in self.terms())


def element_from_vector(algebra: Algebra, v: Sequence) -> AlgebraElement:
    return AlgebraElement(algebra, {k: c for k, c in enumerate(v) if c})


class ModuleRep:
    """Left module over ``algebra`` on ``field**dim``.

    ``image(i, s)`` returns the sparse column ``[(u, c), ...]``: the image of
    the ``s``-th basis vector under the ``i``-th algebra basis element.
    """

    def __init__(
        self,
        algebra: Algebra,
        dim: int,
        image: Callable[[int, int], Iterable],
        *,
        label=None,
        basis_labels: Sequence | None = None,
    ):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self._image = image
        self._cols: dict[int, list] = {}
        self.label = label
        self.basis_labels = tuple(basis_labels) if basis_labels is not None else tuple(range(dim))

    def columns(self, i: int) -> list:
        cols = self._cols.get(i)
        if cols is None:
            cols = [tuple(self._image(i, s)) for s in range(self.dim)]
            self._cols[i] = cols
        return cols

    def act_basis(self, i: int, v: Sequence) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for s, col in enumerate(self.columns(i)):
            x = v[s]
            if x:
                for u, c in col:
                    out[u] = out[u] + x * c
        return out

    def act(self, a: AlgebraElement | int, v: Sequence) -> list:
        if isinstance(a, int):
            return self.act_basis(a, v)
        f = self.field
        out = [f.zero] * self.dim
        for i, x in a.coeffs.items():
            w = self.act_basis(i, v)
            for u, y in enumerate(w):
                if y:
                    out[u] = out[u] + x * y
        return out

    def matrix(self, a: AlgebraElement | int) -> ExactMatrix:
        f = self.field
        rows = [[f.zero] * self.dim for _ in range(self.dim)]
        items = [(a, f.one)] if isinstance(a, int) else list(a.coeffs.items())
        for i, x in items:
            for s, col in enumerate(self.columns(i)):
                for u, c in col:
                    rows[u][s] = rows[u][s] + x * c
        return ExactMatrix._raw(rows, f, self.dim)

    def trace(self, i: int):
        t = self.field.zero
        for s, col in enumerate(self.columns(i)):
            for u, c in col:
                if u == s:
                    t = t + c
        return t

    def character(self) -> list:
        return [self.trace(i) for i in range(self.algebra.dim)]

    # -- sub and quotient modules ---------------------------------------

    def generated_submodule(self, vectors: Iterable[Sequence]) -> Subspace:
        """The submodule ``A . span(vectors)``."""
        span = EchelonBuilder(self.dim, self.field)
        for v in vectors:
            if v in span:
                continue
            for i in range(self.algebra.dim):
                span.add(self.act_basis(i, v))
        return span.freeze()

    def generators(self, sub: Subspace | None = None) -> list[list]:
        """Greedy module generators of ``sub`` (default: the whole module)."""
        if sub is None:
            sub = Subspace.full(self.dim, self.field)
        span = EchelonBuilder(self.dim, self.field)
        gens = []
        for w in sub.basis:
            if w in span:
                continue
            gens.append(list(w))
            for i in range(self.algebra.dim):
                span.add(self.act_basis(i, w))
        return gens

    def is_submodule(self, sub: Subspace) -> bool:
        return all(
            self.act_basis(i, w) in sub for w in sub.basis for i in range(self.algebra.dim)
        )

    def submodule(self, sub: Subspace, label=None) -> "ModuleRep":
        """Restriction to an invariant subspace, in the echelon basis of ``sub``."""
        basis = sub.basis
        piv = sub.pivots

        def image(i, s):
            w = self.act_basis(i, basis[s])
            return [(k, w[pc]) for k, pc in enumerate(piv) if w[pc]]

        return ModuleRep(self.algebra, sub.dim, image, label=label)

    def quotient(self, sub: Subspace, label=None) -> "ModuleRep":
        """``M / sub`` on the coordinates complementary to the pivots of ``sub``."""
        keep = sub.complement_indices()
        pos = {j: k for k, j in enumerate(keep)}
        f = self.field

        def image(i, s):
            v = [f.zero] * self.dim
            v[keep[s]] = f.one
            w = sub.reduce(self.act_basis(i, v))
            return [(pos[j], x) for j, x in enumerate(w) if x and j in pos]

        labels = [self.basis_labels[j] for j in keep]
        return ModuleRep(self.algebra, len(keep), image, label=label, basis_labels=labels)

    def __repr__(self):
        return f"<ModuleRep {self.label!r} dim={self.dim}>"


def zero_module(algebra: Algebra, label=None) -> ModuleRep:
    return ModuleRep(algebra, 0, lambda i, s: (), label=label, basis_labels=())


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class HomSpace:
    source: ModuleRep
    target: ModuleRep
    basis: list[ExactMatrix] = dc_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)


def _flat(rows: list[list]) -> list:
    return [x for row in rows for x in row]


def intertwines(m: ModuleRep, n: ModuleRep, x: ExactMatrix) -> bool:
    """Whether ``x`` (``n.dim`` by ``m.dim``) satisfies ``rho_n(a) x = x rho_m(a)``."""
    if (x.rows, x.cols) != (n.dim, m.dim):
        return False
    rows = x.tolist()
    for i in range(m.algebra.dim):
        if any(_flat(_commutator(m, n, i, rows))):
            return False
    return True


def _commutator(m: ModuleRep, n: ModuleRep, i: int, x: list[list]) -> list[list]:
    f = m.field
    out = [[f.zero] * m.dim for _ in range(n.dim)]
    ncols = n.columns(i)
    # rho_n(a) x
    for q in range(m.dim):
        for r in range(n.dim):
            v = x[r][q]
            if v:
                for p, c in ncols[r]:
                    out[p][q] = out[p][q] + c * v
    # - x rho_m(a)
    for q, col in enumerate(m.columns(i)):
        for r, c in col:
            for p in range(n.dim):
                v = x[p][r]
                if v:
                    out[p][q] = out[p][q] - v * c
    return out


def hom_space(m: ModuleRep, n: ModuleRep, generators: Sequence[int] | None = None) -> HomSpace:
    """Basis of ``Hom_A(m, n)`` as ``n.dim x m.dim`` matrices.

    The solution space is narrowed one algebra element at a time, so the
    cost is dominated by the first few constraints.  ``generators`` may be a
    list of basis indices generating the algebra; all basis elements are
    used otherwise.
    """
    if m.algebra is not n.algebra:
        raise InputError("modules over different algebras")
    f = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return HomSpace(m, n, [])
    size = dm * dn
    sol: list[list] = []
    for j in range(size):
        v = [f.zero] * size
        v[j] = f.one
        sol.append(v)
    gens = range(m.algebra.dim) if generators is None else generators
    for i in gens:
        if not sol:
            break
        cols = []
        for v in sol:
            x = [v[p * dm:(p + 1) * dm] for p in range(dn)]
            cols.append(_flat(_commutator(m, n, i, x)))
        if not any(any(c) for c in cols):
            continue
        constraint = ExactMatrix._raw(
            [[cols[k][r] for k in range(len(sol))] for r in range(size)], f, len(sol)
        )
        null = constraint.nullspace()
        new = []
        for y in null.basis:
            w = [f.zero] * size
            for k, coef in enumerate(y):
                if coef:
                    for t, val in enumerate(sol[k]):
                        if val:
                            w[t] = w[t] + coef * val
            new.append(w)
        sol = Subspace.from_vectors(new, size, f).basis if new else []
        sol = [list(v) for v in sol]
    basis = [
        ExactMatrix._raw([v[p * dm:(p + 1) * dm] for p in range(dn)], f, dm) for v in sol
    ]
    return HomSpace(m, n, basis)


# ---------------------------------------------------------------------------
# composition factors


def decompose_character(chi: Sequence, simple_chars: Mapping, field) -> dict:
    """Write ``chi`` as a non-negative integer combination of simple characters.

    Valid in characteristic 0, where characters of pairwise non-isomorphic
    simple modules are linearly independent.
    """
    if field.characteristic != 0:
        raise UnsupportedOperation("character decomposition needs characteristic 0")
    labels = list(simple_chars)
    if not labels:
        if any(chi):
            raise ArithmeticError("nonzero character but no simple modules")
        return {}
    a = ExactMatrix._raw(
        [[simple_chars[mu][k] for mu in labels] for k in range(len(chi))], field, len(labels)
    )
    if a.rank() != len(labels):
        raise ArithmeticError("simple characters are linearly dependent")
    x = solve(a, chi)
    if x is None:
        raise ArithmeticError("character is not a combination of the simple characters")
    out = {}
    for mu, c in zip(labels, x):
        if c.denominator != 1 or c < 0:
            raise ArithmeticError(f"non-integral multiplicity {c} for {mu!r}")
        if c:
            out[mu] = int(c)
    return out


def radical_filtration(m: ModuleRep, radical: Sequence[AlgebraElement]) -> list[Subspace]:
    """``[M, J M, J^2 M, ..., 0]`` for ``J`` spanned by ``radical``."""
    f = m.field
    current = Subspace.full(m.dim, f)
    out = [current]
    while current.dim:
        gens = m.generators(current)
        span = EchelonBuilder(m.dim, f)
        for j in radical:
            for g in gens:
                span.add(m.act(j, g))
        nxt = span.freeze()
        if nxt.dim >= current.dim:
            raise ArithmeticError("radical series failed to descend")
        out.append(nxt)
        current = nxt
    return out


# ---------------------------------------------------------------------------
# constructions


def tensor_algebras(*algs: Algebra, name: str = "") -> Algebra:
    """Tensor product; basis labels are tuples of factor labels."""
    if not algs:
        raise InputError("need at least one factor")
    f = algs[0].field
    idx = list(iproduct(*[range(a.dim) for a in algs]))
    pos = {t: k for k, t in enumerate(idx)}
    labels = [tuple(a.basis[i] for a, i in zip(algs, t)) for t in idx]

    def product(i, j):
        terms = [((), f.one)]
        for a, x, y in zip(algs, idx[i], idx[j]):
            pr = a.product(x, y)
            if not pr:
                return ()
            terms = [(key + (k,), c * d) for key, c in terms for k, d in pr]
        return [(pos[key], c) for key, c in terms]

    unit = [((), f.one)]
    for a in algs:
        unit = [(key + (k,), c * d) for key, c in unit for k, d in a.unit.coeffs.items()]
    star = None
    if all(a.star is not None for a in algs):
        star = [pos[tuple(a.star[x] for a, x in zip(algs, t))] for t in idx]
    return Algebra(
        f, labels, product, unit=[(pos[k], c) for k, c in unit], star=star, name=name
    )


def corner_algebra(alg: Algebra, indices: Sequence[int], unit: AlgebraElement, name: str = "") -> Algebra:
    """Subalgebra spanned by the basis elements ``indices`` (e.g. ``eAe``)."""
    indices = list(indices)
    pos = {g: k for k, g in enumerate(indices)}

    def product(i, j):
        out = []
        for k, c in alg.product(indices[i], indices[j]):
            if k not in pos:
                raise ArithmeticError(
                    f"product of {alg.basis[indices[i]]!r} and {alg.basis[indices[j]]!r} leaves the corner"
                )
            out.append((pos[k], c))
        return out

    unit_terms = []
    for k, c in unit.coeffs.items():
        if k not in pos:
            raise InputError("unit does not lie in the corner")
        unit_terms.append((pos[k], c))
    star = None
    if alg.star is not None:
        star = [pos[alg.star[g]] for g in indices]
    return Algebra(
        alg.field, [alg.basis[g] for g in indices], product, unit=unit_terms, star=star, name=name
    )


def structure_isomorphic(a: Algebra, b: Algebra, mapping: Sequence[int]) -> list[str]:
    """Compare structure constants under the basis bijection ``a[i] -> b[mapping[i]]``.

    Returns a list of mismatch descriptions (empty when the map is an
    algebra isomorphism).
    """
    problems = []
    if a.dim != b.dim:
        return [f"dimension mismatch {a.dim} != {b.dim}"]
    if sorted(mapping) != list(range(b.dim)):
        return ["basis map is not a bijection"]
    for i in range(a.dim):
        for j in range(a.dim):
            lhs = {mapping[k]: c for k, c in a.product(i, j)}
            rhs = dict(b.product(mapping[i], mapping[j]))
            if lhs != rhs:
                problems.append(f"{a.basis[i]!r} * {a.basis[j]!r}: {lhs} != {rhs}")
                if len(problems) > 10:
                    return problems
    return problems
