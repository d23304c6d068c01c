"""Exact scalar fields and dense matrix kernels.

Two fields are supported: the rationals (``QQ``, elements are
:class:`fractions.Fraction`) and prime fields ``GF(p)`` for primes below
2**61 (elements are :class:`Mod`).  Every algorithm here is exact; there is
no floating point anywhere in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from .errors import InputError

MAX_MODULUS = 2**61


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Mod:
    """Residue class modulo a prime ``p``; always stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Mod):
            if other.p != self.p:
                raise InputError(f"mixed moduli {self.p} and {other.p}")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image mod {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The field of rational numbers with exact :class:`Fraction` elements."""

    characteristic = 0
    descriptor = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Mod):
            raise InputError("cannot lift a residue class to the rationals")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def parse(self, s: str) -> Fraction:
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {s!r}: {exc}") from None

    @staticmethod
    def format(x: Fraction) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """``GF(p)`` for a prime ``p < 2**61``."""

    def __init__(self, p: int):
        if not isinstance(p, int) or p >= MAX_MODULUS or not is_prime(p):
            raise InputError(f"modulus must be a prime below 2**61, got {p!r}")
        self.p = p
        self.characteristic = p
        self.descriptor = f"gf({p})"
        self.zero = Mod(0, p)
        self.one = Mod(1, p)

    def __call__(self, x) -> Mod:
        if isinstance(x, Mod):
            if x.p != self.p:
                raise InputError(f"element of GF({x.p}) used in GF({self.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int):
            return Mod(x, self.p)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
        return Mod(x.numerator * pow(x.denominator, -1, self.p), self.p)

    def parse(self, s: str) -> Mod:
        try:
            return self(Fraction(s.strip()))
        except ValueError as exc:
            raise InputError(f"bad scalar literal {s!r}: {exc}") from None

    @staticmethod
    def format(x: Mod) -> str:
        return str(x.v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("gf", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc: str):
    """Parse ``"rational"`` or ``"gf(p)"``."""
    d = desc.strip().lower()
    if d in ("rational", "q", "qq"):
        return QQ
    if d.startswith("gf(") and d.endswith(")"):
        try:
            p = int(d[3:-1])
        except ValueError:
            raise InputError(f"bad field descriptor {desc!r}") from None
        return GF(p)
    raise InputError(f"bad field descriptor {desc!r}")


# ---------------------------------------------------------------------------
# row-reduction kernels on plain lists


def _rref_rational(rows: list[list[Fraction]], ncols: int):
    # Gauss-Jordan on integer rows with content removal; far cheaper than
    # Fraction arithmetic for the mostly-integral matrices met here.
    irows = []
    for row in rows:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        irows.append([int(x * den) for x in row])
    nrows = len(irows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        best = None
        for i in range(r, nrows):
            v = irows[i][c]
            if v and (best is None or abs(v) < best):
                pr, best = i, abs(v)
                if best == 1:
                    break
        if pr < 0:
            continue
        irows[r], irows[pr] = irows[pr], irows[r]
        piv = irows[r]
        pv = piv[c]
        nz = [j for j in range(c, ncols) if piv[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = irows[i]
            f = row[c]
            if not f:
                continue
            g = math.gcd(pv, f)
            a, b = pv // g, f // g
            if a != 1:
                for j in range(ncols):
                    if row[j]:
                        row[j] *= a
            for j in nz:
                row[j] -= b * piv[j]
            g = math.gcd(*row)
            if g > 1:
                for j in range(ncols):
                    if row[j]:
                        row[j] //= g
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(irows):
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([Fraction(0)] * ncols)
    return out, pivots


def rref_rows(rows: Sequence[Sequence], ncols: int, field):
    """Reduced row echelon form of ``rows`` over ``field``; returns new rows."""
    if not rows or ncols == 0:
        return [list(r) for r in rows], []
    if field.characteristic == 0:
        return _rref_rational([list(r) for r in rows], ncols)
    p = field.p
    work = [[x.v for x in r] for r in rows]
    pivots = kernels.rref_modp(work, ncols, p)
    return [[Mod(x, p) for x in r] for r in work], pivots


def det_rows(rows: Sequence[Sequence], field):
    n = len(rows)
    a = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return field.zero
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            det = -det
        pv = a[c][c]
        det = det * pv
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                q = f / pv
                row, prow = a[i], a[c]
                for j in range(c, n):
                    if prow[j]:
                        row[j] = row[j] - q * prow[j]
    return det


# ---------------------------------------------------------------------------


class ExactMatrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, data: Iterable[Iterable], field=QQ, cols: int | None = None):
        entries = tuple(tuple(field(x) for x in row) for row in data)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != cols:
                raise InputError("ragged matrix rows")
        self.rows = len(entries)
        self.cols = cols
        self.entries = entries
        self.field = field

    @classmethod
    def _raw(cls, entries, field, cols):
        m = object.__new__(cls)
        m.entries = tuple(tuple(r) for r in entries)
        m.rows = len(m.entries)
        m.cols = cols
        m.field = field
        return m

    @classmethod
    def identity(cls, n: int, field=QQ) -> "ExactMatrix":
        return cls._raw(
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
            field,
            n,
        )

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "ExactMatrix":
        return cls._raw([[field.zero] * cols for _ in range(rows)], field, cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["ExactMatrix"], field=QQ) -> "ExactMatrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[field.zero] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls._raw(out, field, m)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.entries]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.field,
            self.rows,
        )

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.field,
            self.cols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
            self.field,
            self.cols,
        )

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shape mismatch")

    def scale(self, c) -> "ExactMatrix":
        c = self.field(c)
        return ExactMatrix._raw([[c * x for x in r] for r in self.entries], self.field, self.cols)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = self.field.zero
        ocols = other.cols
        out = []
        for row in self.entries:
            acc = [zero] * ocols
            for k, a in enumerate(row):
                if a:
                    orow = other.entries[k]
                    for j in range(ocols):
                        b = orow[j]
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix._raw(out, self.field, ocols)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise InputError("vector length mismatch")
        zero = self.field.zero
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._raw(
            [[self.entries[i][j] for j in cols] for i in rows], self.field, len(cols)
        )

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def rref(self) -> tuple["ExactMatrix", list[int]]:
        rows, pivots = rref_rows(self.entries, self.cols, self.field)
        return ExactMatrix._raw(rows, self.field, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        return det_rows(self.entries, self.field)

    def nullspace(self) -> "Subspace":
        red, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [self.field.zero] * self.cols
            v[free] = self.field.one
            for i, pc in enumerate(pivots):
                v[pc] = -red.entries[i][free]
            basis.append(v)
        return Subspace.from_vectors(basis, self.cols, self.field)


class Subspace:
    """A subspace of ``field**ambient_dim`` held by its reduced echelon basis.

    The echelon basis is unique, so two subspaces are equal exactly when
    their bases are equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "field")

    def __init__(self, ambient_dim: int, basis, pivots, field):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(v) for v in basis)
        self.pivots = tuple(pivots)
        self.field = field

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence], ambient_dim: int, field=QQ) -> "Subspace":
        vecs = [[field(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise InputError("vector length does not match ambient dimension")
        rows, pivots = rref_rows(vecs, ambient_dim, field)
        return cls(ambient_dim, rows[: len(pivots)], pivots, field)

    @classmethod
    def zero(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls(ambient_dim, [], [], field)

    @classmethod
    def full(cls, ambient_dim: int, field=QQ) -> "Subspace":
        return cls.from_vectors(ExactMatrix.identity(ambient_dim, field).entries, ambient_dim, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence) -> list:
        """Residual of ``v`` after clearing every pivot coordinate."""
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                for j, x in enumerate(row):
                    if x:
                        w[j] = w[j] - f * x
        return w

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def contains(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def coordinates(self, v: Sequence) -> list:
        """Coordinates of ``v`` (assumed to lie in the subspace) in ``basis``."""
        return [v[pc] for pc in self.pivots]

    def complement_indices(self) -> list[int]:
        pivset = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in pivset]

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_vectors(self.basis + other.basis, self.ambient_dim, self.field)


class EchelonBuilder:
    """Mutable reduced-echelon span used for incremental closure computations."""

    def __init__(self, ambient_dim: int, field=QQ):
        self.ambient_dim = ambient_dim
        self.field = field
        self.rows: dict[int, list] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        w = list(v)
        for pc, row in self.rows.items():
            f = w[pc]
            if f:
                for j, x in enumerate(row):
                    if x:
                        w[j] = w[j] - f * x
        return w

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; returns False when it already lies in the span."""
        w = self.reduce(v)
        pc = next((j for j, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = self.field.one / w[pc]
        w = [x * inv if x else x for x in w]
        for row in self.rows.values():
            f = row[pc]
            if f:
                for j, x in enumerate(w):
                    if x:
                        row[j] = row[j] - f * x
        self.rows[pc] = w
        return True

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def freeze(self) -> Subspace:
        order = sorted(self.rows)
        return Subspace(self.ambient_dim, [self.rows[c] for c in order], order, self.field)


# ---------------------------------------------------------------------------
# functional surface


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    return m.rref()


def rank(m: ExactMatrix) -> int:
    return m.rank()


def nullspace(m: ExactMatrix) -> Subspace:
    return m.nullspace()


def solve(a: ExactMatrix, b: Sequence) -> list | None:
    """One solution of ``a x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != a.rows:
        raise InputError(f"right-hand side has length {len(b)}, expected {a.rows}")
    field = a.field
    aug = [list(row) + [field(x)] for row, x in zip(a.entries, b)]
    red, pivots = rref_rows(aug, a.cols + 1, field)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [field.zero] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = red[i][a.cols]
    if a.apply(x) != [field(v) for v in b]:
        raise ArithmeticError("solution failed substitution check")
    return x
