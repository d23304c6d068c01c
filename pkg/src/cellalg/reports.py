"""Build algebras from a family spec and assemble machine-readable reports."""

from __future__ import annotations

import datetime as _dt
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import diagram_algebras as dg
from .algebra import Algebra, hom_space
from .cellular_core import (
    CellDatum,
    blocks,
    cell_module,
    decomposition_matrix,
    gram_matrix,
    is_semisimple,
    jacobson_radical,
    lambda_zero,
    loewy_series,
    validate_cell_datum,
)
from .errors import InputError, ResourceLimitError, UnsupportedOperation
from .exact_linalg import Subspace, field_from_descriptor
from .idempotent_split import (
    IdempotentDecomposition,
    blocks_via_localization,
    check_assumptions,
    check_cell_module_splitting,
    check_gram_direct_sum,
    check_hom_transport,
    check_hom_vanishing,
    check_local_cellularity,
    check_radical_decomposition,
    check_semisimple_equivalence,
    check_simple_dim_sum,
)
from .serialize import FORMAT_VERSION, content_hash, decomposition_from, thaw

FAMILIES = ("matrix", "quiver", "tl", "bubble", "pnm", "custom-json")
SECTIONS = ("gram", "simples", "blocks", "loewy", "verify-assumptions", "verify-theorems", "oracle")
LOEWY_DIM_CAP = 200
ORACLE_DIM_CAP = 200
HOM_DIM_CAP = 200


@dataclass
class AlgebraSpec:
    family: str
    n: int | None = None
    m: int | None = None
    delta: list[str] = field(default_factory=list)
    field: str = "rational"
    path: str | None = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        fld = field_from_descriptor(self.field)
        for x in self.delta:
            fld.parse(x)
        if self.family == "custom-json":
            if not self.path:
                raise InputError("custom-json needs a path")
            return
        if self.family in ("matrix", "tl", "bubble", "pnm"):
            if self.n is None:
                raise InputError(f"--n is required for {self.family}")
            if self.n < (1 if self.family == "matrix" else 0):
                raise InputError(f"--n out of range for {self.family}")
        if self.family == "tl" and len(self.delta) != 1:
            raise InputError("tl needs exactly one --delta")
        if self.family in ("bubble", "pnm"):
            m = self.m if self.m is not None else len(self.delta)
            if m < 1:
                raise InputError("--m must be positive")
            if len(self.delta) != m:
                raise InputError(f"expected {m} --delta values, got {len(self.delta)}")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"family": self.family, "field": self.field}
        if self.family in ("matrix", "tl", "bubble", "pnm"):
            out["n"] = self.n
        if self.family in ("bubble", "pnm"):
            out["m"] = self.m if self.m is not None else len(self.delta)
        if self.delta:
            out["delta"] = [str(Fraction(x)) for x in self.delta]
        if self.path:
            out["path"] = self.path
        return out


def build_from_spec(spec: AlgebraSpec):
    """``(algebra, idempotents or None)`` for a validated spec."""
    spec.validate()
    f = field_from_descriptor(spec.field)
    deltas = [f.parse(x) for x in spec.delta]
    fam = spec.family
    if fam == "matrix":
        d, dec = dg.build_matrix_algebra(spec.n, f)
        return d, dec.idempotents
    if fam == "quiver":
        d, dec = dg.build_quiver_example(f)
        return d, dec.idempotents
    if fam == "tl":
        return dg.build_tl(spec.n, deltas[0], f), None
    if fam == "bubble":
        d, dec = dg.build_bubble(spec.n, len(deltas), deltas, f)
        return d, dec.idempotents
    if fam == "pnm":
        return dg.build_multicolour_partition(spec.n, len(deltas), deltas, f)
    from .serialize import load

    return load(spec.path)


# ---------------------------------------------------------------------------


def _fmt(f, x) -> str:
    return f.format(x)


def _label(lam) -> Any:
    return thaw(lam)


def _matrix(m) -> list[list[str]]:
    return m.to_strings()


class ReportBuilder:
    def __init__(self, alg: Algebra, idempotents: dict | None, spec: dict | None = None):
        self.alg = alg
        self.spec = spec
        self.es = idempotents
        self.failed = False
        self.warnings: list[str] = []
        self.dec: IdempotentDecomposition | None = None
        if isinstance(alg, CellDatum):
            self.dec = decomposition_from(alg, idempotents)

    @property
    def char0(self) -> bool:
        return self.alg.field.characteristic == 0

    def run(self, sections) -> dict:
        doc: dict[str, Any] = {
            "format_version": FORMAT_VERSION,
            "kind": "report",
            "algebra": {"name": self.alg.name, "dim": self.alg.dim, "field": self.alg.field.descriptor},
            "spec": self.spec,
            "sections": {},
        }
        for sec in sections:
            if sec not in SECTIONS:
                raise InputError(f"unknown section {sec!r}")
            fn = getattr(self, "sec_" + sec.replace("-", "_"))
            try:
                doc["sections"][sec] = fn()
            except UnsupportedOperation as exc:
                doc["sections"][sec] = {"status": "unsupported", "reason": str(exc)}
            except ResourceLimitError as exc:
                doc["sections"][sec] = {"status": "skipped", "reason": str(exc)}
        doc["warnings"] = list(dict.fromkeys(self.warnings))
        doc["status"] = "fail" if self.failed else "pass"
        doc["content_hash"] = content_hash(doc)
        doc["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        return doc

    def _cellular(self) -> CellDatum:
        if not isinstance(self.alg, CellDatum):
            raise UnsupportedOperation("section needs a cellular datum")
        return self.alg

    def _record(self, rep) -> dict:
        if not rep.ok:
            self.failed = True
        self.warnings.extend(rep.warnings)
        return rep.to_dict()

    # -- sections --------------------------------------------------------

    def sec_gram(self) -> dict:
        d = self._cellular()
        f = d.field
        out = []
        for lam in d.labels:
            g = gram_matrix(d, lam)
            out.append(
                {
                    "label": _label(lam),
                    "size": g.matrix.rows,
                    "matrix": _matrix(g.matrix),
                    "rank": g.rank,
                    "det": _fmt(f, g.det),
                    "radical_dim": g.radical.dim,
                }
            )
        return {"status": "ok", "cells": out}

    def sec_simples(self) -> dict:
        d = self._cellular()
        ss = is_semisimple(d)
        lz = lambda_zero(d)
        return {
            "status": "ok",
            "lambda_zero": [_label(x) for x in lz],
            "simple_dims": [[_label(x), gram_matrix(d, x).rank] for x in lz],
            "semisimple": ss.semisimple,
            "determinants": [[_label(k), _fmt(d.field, v)] for k, v in ss.determinants.items()],
        }

    def sec_blocks(self) -> dict:
        d = self._cellular()
        if not self.char0:
            raise UnsupportedOperation("blocks need characteristic 0")
        D = decomposition_matrix(d)
        direct = blocks(d)
        local = blocks_via_localization(self.dec)
        self.warnings.extend(local.warnings)
        agree = direct.cell_blocks == local.partition.cell_blocks
        out = {
            "status": "ok",
            "decomposition_matrix": {
                "rows": [_label(x) for x in D.rows],
                "cols": [_label(x) for x in D.cols],
                "matrix": _matrix(D.matrix),
            },
            "cartan_matrix": _matrix(D.cartan),
            "triangularity": {
                k: (thaw(v) if isinstance(v, list) else v) for k, v in D.triangularity.items()
            },
            "cell_blocks": thaw(direct.cell_blocks),
            "blocks": thaw(direct.blocks),
            "via_localization": {
                "cell_blocks": thaw(local.partition.cell_blocks),
                "advisory": local.advisory,
                "agrees_with_direct": agree,
            },
        }
        if not local.advisory and not agree:
            self.failed = True
            out["status"] = "fail"
        return out

    def sec_loewy(self) -> dict:
        d = self._cellular()
        if not self.char0:
            raise UnsupportedOperation("Loewy layers need characteristic 0")
        if d.dim > LOEWY_DIM_CAP:
            raise ResourceLimitError(f"dimension {d.dim} exceeds the Loewy cap {LOEWY_DIM_CAP}")
        out = []
        for lam in d.labels:
            layers = loewy_series(d, cell_module(d, lam))
            out.append(
                {
                    "label": _label(lam),
                    "layers": [[[_label(mu), k] for mu, k in layer.items()] for layer in layers],
                }
            )
        return {"status": "ok", "cell_modules": out}

    def sec_verify_assumptions(self) -> dict:
        if not isinstance(self.alg, CellDatum):
            if self.es is None or not hasattr(self.alg, "diagram_keys"):
                raise UnsupportedOperation("no idempotent family to check")
            return {"partition_idempotents": self._record(dg.check_partition_idempotents(self.alg, self.es))}
        d = self.alg
        return {
            "cell_datum": self._record(validate_cell_datum(d)),
            "assumptions": self._record(check_assumptions(d, self.dec.idempotents)),
            "local_cellularity": self._record(check_local_cellularity(self.dec)),
        }

    def sec_verify_theorems(self) -> dict:
        if not isinstance(self.alg, CellDatum):
            return self._partition_theorems()
        d, dec = self.alg, self.dec
        out: dict[str, Any] = {}
        per: dict[str, list] = {
            "gram_direct_sum": [],
            "radical_decomposition": [],
            "simple_dim_sum": [],
            "cell_module_splitting": [],
        }
        lz = lambda_zero(d)
        for lam in d.labels:
            per["gram_direct_sum"].append(self._record(check_gram_direct_sum(dec, lam)))
            per["radical_decomposition"].append(self._record(check_radical_decomposition(dec, lam)))
            per["cell_module_splitting"].append(self._record(check_cell_module_splitting(dec, lam)))
            if lam in lz:
                per["simple_dim_sum"].append(self._record(check_simple_dim_sum(dec, lam)))
        out.update(per)
        out["semisimple_equivalence"] = self._record(check_semisimple_equivalence(dec))
        if d.dim <= HOM_DIM_CAP:
            out["hom_transport"] = [
                self._record(check_hom_transport(dec, a, b)) for a in d.labels for b in d.labels
            ]
            vanish = [check_hom_vanishing(dec, a, b) for a in d.labels for b in d.labels]
            out["hom_vanishing"] = [self._record(r) for r in vanish]
            out["radical_isomorphisms"] = self._radical_isos(d)
        else:
            self.warnings.append(f"Hom checks skipped: dimension {d.dim} exceeds {HOM_DIM_CAP}")
        if self.char0:
            local = blocks_via_localization(dec)
            direct = blocks(d)
            entry = {
                "advisory": local.advisory,
                "direct": thaw(direct.cell_blocks),
                "via_localization": thaw(local.partition.cell_blocks),
                "agree": direct.cell_blocks == local.partition.cell_blocks,
            }
            if not local.advisory and not entry["agree"]:
                self.failed = True
            out["block_agreement"] = entry
        return out

    def _radical_isos(self, d: CellDatum) -> list:
        """Cell modules mapping injectively onto ``Rad Delta(lam)``."""
        out = []
        for lam in d.labels:
            rad = gram_matrix(d, lam).radical
            if not rad.dim:
                continue
            target = cell_module(d, lam)
            for mu in d.labels:
                src = cell_module(d, mu)
                if src.dim != rad.dim or mu == lam:
                    continue
                for x in hom_space(src, target).basis:
                    cols = [list(c) for c in x.transpose().entries]
                    if x.rank() == src.dim and Subspace.from_vectors(cols, target.dim, d.field) == rad:
                        out.append({"radical_of": _label(lam), "isomorphic_to": _label(mu)})
                        break
        return out

    def _partition_theorems(self) -> dict:
        alg = self.alg
        if not hasattr(alg, "diagram_keys"):
            raise UnsupportedOperation("theorem checks need a cellular datum or a partition family")
        n, m = alg.diagram_shape
        out = []
        for col in self.es:
            out.append(self._record(dg.check_localization_iso(n, m, alg.deltas, col, alg.field)))
        return {"localization_iso": out}

    def sec_oracle(self) -> dict:
        alg = self.alg
        if not self.char0:
            raise UnsupportedOperation("trace-form oracle needs characteristic 0")
        if alg.dim > ORACLE_DIM_CAP:
            raise ResourceLimitError(f"dimension {alg.dim} exceeds the oracle cap {ORACLE_DIM_CAP}")
        rad = jacobson_radical(alg).dim
        out: dict[str, Any] = {"status": "ok", "radical_dim": rad, "oracle_semisimple": rad == 0}
        if isinstance(alg, CellDatum):
            gram_ss = is_semisimple(alg).semisimple
            out["gram_semisimple"] = gram_ss
            out["agree"] = gram_ss == (rad == 0)
            if not out["agree"]:
                self.failed = True
                out["status"] = "fail"
        elif hasattr(alg, "deltas"):
            n = alg.diagram_shape[0]
            cond = dg.sufficient_condition(n, alg.deltas)
            out["sufficient_condition"] = cond
            out["consistent"] = rad == 0 or not cond
            if not out["consistent"]:
                self.failed = True
                out["status"] = "fail"
        return out


def build_report(alg: Algebra, idempotents: dict | None, sections, spec: dict | None = None) -> dict:
    rb = ReportBuilder(alg, idempotents, spec)
    return rb.run(sections)
