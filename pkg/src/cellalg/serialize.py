"""Versioned JSON documents for algebras, idempotent families and reports.

Scalars are exact strings (``"p/q"`` over the rationals, the least
non-negative residue over ``GF(p)``).  Lists inside labels and index sets
are frozen back to tuples on load.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .algebra import Algebra
from .cellular_core import CellDatum, CellPoset
from .errors import InputError
from .exact_linalg import field_from_descriptor
from .idempotent_split import IdempotentDecomposition

FORMAT_VERSION = 1
VOLATILE_KEYS = ("content_hash", "generated_at")


def freeze(x):
    if isinstance(x, list):
        return tuple(freeze(v) for v in x)
    return x


def thaw(x):
    if isinstance(x, tuple):
        return [thaw(v) for v in x]
    return x


def canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def content_hash(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k not in VOLATILE_KEYS}
    return hashlib.sha256(canonical_dumps(body).encode()).hexdigest()


def dumps(doc: dict) -> str:
    """Pretty, deterministic text with a trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


def _terms(field, terms) -> list:
    return [[k, field.format(c)] for k, c in terms]


def algebra_to_json(alg: Algebra, idempotents: dict | None = None, spec: dict | None = None) -> dict:
    """Document for a cellular datum or a plain algebra (``kind`` tells which)."""
    f = alg.field
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "name": alg.name,
        "field": f.descriptor,
        "dim": alg.dim,
        "structure_constants": [
            [i, j, k, f.format(c)]
            for i in range(alg.dim)
            for j in range(alg.dim)
            for k, c in alg.product(i, j)
        ],
        "star": list(alg.star) if alg.star is not None else None,
        "unit": _terms(f, sorted(alg.unit.coeffs.items())),
    }
    if isinstance(alg, CellDatum):
        doc["kind"] = "cell_datum"
        doc["labels"] = [thaw(lam) for lam in alg.labels]
        doc["order"] = [
            [thaw(lo), thaw(hi)]
            for lo, hi in sorted(
                alg.poset.pairs, key=lambda p: (alg.poset.position(p[0]), alg.poset.position(p[1]))
            )
        ]
        doc["t_sets"] = [[thaw(lam), [thaw(t) for t in alg.t_sets[lam]]] for lam in alg.labels]
    else:
        doc["kind"] = "algebra"
        doc["basis"] = [str(b) for b in alg.basis]
    if idempotents is not None:
        doc["idempotents"] = [
            [thaw(i), _terms(f, sorted(e.coeffs.items()))] for i, e in idempotents.items()
        ]
    if spec is not None:
        doc["spec"] = spec
    doc["content_hash"] = content_hash(doc)
    return doc


def algebra_from_json(doc: dict, *, check_hash: bool = True):
    """Inverse of :func:`algebra_to_json`: ``(algebra, idempotents or None)``."""
    if not isinstance(doc, dict):
        raise InputError("algebra document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise InputError(f"unsupported format_version {doc.get('format_version')!r}")
    if check_hash and "content_hash" in doc and doc["content_hash"] != content_hash(doc):
        raise InputError("content hash mismatch")
    try:
        f = field_from_descriptor(doc["field"])
        table: dict = {}
        for i, j, k, c in doc["structure_constants"]:
            table.setdefault((i, j), []).append((k, f.parse(c)))
        unit = [(k, f.parse(c)) for k, c in doc["unit"]]
        star = doc.get("star")
        kind = doc.get("kind")
        name = doc.get("name", "")
        if kind == "cell_datum":
            labels = [freeze(x) for x in doc["labels"]]
            order = [(freeze(a), freeze(b)) for a, b in doc["order"]]
            t_sets = {freeze(lam): [freeze(t) for t in ts] for lam, ts in doc["t_sets"]}
            alg = CellDatum(f, CellPoset(labels, order), t_sets, table, star=star, unit=unit, name=name)
        elif kind == "algebra":
            alg = Algebra(f, doc["basis"], table, star=star, unit=unit, name=name)
        else:
            raise InputError(f"unknown document kind {kind!r}")
        if alg.dim != doc.get("dim", alg.dim):
            raise InputError("dimension field disagrees with the basis")
        es = None
        if doc.get("idempotents") is not None:
            es = {
                freeze(i): alg.element([(k, f.parse(c)) for k, c in terms])
                for i, terms in doc["idempotents"]
            }
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed algebra document: {exc!r}") from None
    return alg, es


def decomposition_from(alg: CellDatum, es: dict | None) -> IdempotentDecomposition:
    """The given family, or the one-colour family ``{0: 1}`` when none is stored."""
    if es is None:
        es = {0: alg.unit}
    return IdempotentDecomposition(alg, es)


def load(path) -> tuple:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON ({exc})") from None
    return algebra_from_json(doc)
