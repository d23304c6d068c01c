"""Command-line entry point.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys

from . import __version__
from .errors import CellAlgError
from .reports import FAMILIES, SECTIONS, AlgebraSpec, build_from_spec, build_report
from .serialize import algebra_from_json, algebra_to_json, canonical_dumps, dumps

log = logging.getLogger("cellalg")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _spec_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", choices=FAMILIES, required=required)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--delta", action="append", default=[], help="loop parameter; repeat per colour")
    p.add_argument("--field", default="rational", help="'rational' or 'gf(p)'")
    p.add_argument("--path", help="algebra JSON for --family custom-json")


def _spec_from(ns) -> AlgebraSpec:
    spec = AlgebraSpec(ns.family, ns.n, ns.m, list(ns.delta), ns.field, ns.path)
    spec.validate()
    return spec


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cache_key(spec: AlgebraSpec) -> str:
    blob = canonical_dumps({"spec": spec.to_dict(), "version": __version__})
    return hashlib.sha256(blob.encode()).hexdigest()[:32]


def cmd_build(ns) -> int:
    spec = _spec_from(ns)
    cached = None
    if ns.cache_dir and spec.family != "custom-json":
        os.makedirs(ns.cache_dir, exist_ok=True)
        cached = os.path.join(ns.cache_dir, _cache_key(spec) + ".json")
        if os.path.exists(cached):
            log.info("cache hit %s", cached)
            with open(cached, encoding="utf-8") as fh:
                _write(fh.read(), ns.out)
            return EXIT_OK
    alg, es = build_from_spec(spec)
    text = dumps(algebra_to_json(alg, es, spec.to_dict()))
    if cached:
        with open(cached, "w", encoding="utf-8") as fh:
            fh.write(text)
    _write(text, ns.out)
    return EXIT_OK


def _load_for_report(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from None
    except json.JSONDecodeError as exc:
        raise CellAlgError(f"{path}: not valid JSON ({exc})") from None
    alg, es = algebra_from_json(doc)
    spec = doc.get("spec")
    if doc.get("kind") == "algebra" and spec and spec.get("family") == "pnm":
        # diagram metadata is not stored; rebuild and insist on identical constants
        rebuilt, es2 = build_from_spec(
            AlgebraSpec("pnm", spec["n"], spec.get("m"), spec["delta"], spec["field"])
        )
        if algebra_to_json(rebuilt, es2, spec)["content_hash"] != doc["content_hash"]:
            raise CellAlgError("stored partition algebra differs from its spec")
        alg, es = rebuilt, es2
    return alg, es, spec


def _sections(text: str | None, default) -> list[str]:
    if not text:
        return list(default)
    secs = [s.strip() for s in text.split(",") if s.strip()]
    for s in secs:
        if s not in SECTIONS:
            raise CellAlgError(f"unknown section {s!r}; choose from {', '.join(SECTIONS)}")
    return secs


def _run_report(ns, default_sections) -> int:
    if ns.file:
        alg, es, spec = _load_for_report(ns.file)
    else:
        if not ns.family:
            raise CellAlgError("give an algebra file or --family")
        s = _spec_from(ns)
        alg, es = build_from_spec(s)
        spec = s.to_dict()
    doc = build_report(alg, es, _sections(ns.sections, default_sections), spec)
    if ns.no_timestamp:
        doc.pop("generated_at", None)
    _write(dumps(doc), ns.out)
    return EXIT_FAIL if doc["status"] == "fail" else EXIT_OK


def cmd_report(ns) -> int:
    return _run_report(ns, SECTIONS)


def cmd_verify(ns) -> int:
    return _run_report(ns, ("verify-assumptions", "verify-theorems"))


def cmd_oracle(ns) -> int:
    return _run_report(ns, ("simples", "oracle") if ns.family != "pnm" else ("oracle",))


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cellalg", description="Exact computations with cellular algebras.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an algebra and write it as JSON")
    _spec_args(b)
    b.add_argument("--out")
    b.add_argument("--cache-dir")
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_build)

    for name, func, helptext in (
        ("report", cmd_report, "run report sections on an algebra"),
        ("verify", cmd_verify, "check assumptions and decomposition theorems"),
        ("oracle", cmd_oracle, "compare the trace-form radical with the Gram verdict"),
    ):
        r = sub.add_parser(name, help=helptext)
        r.add_argument("file", nargs="?", help="algebra JSON written by 'build'")
        _spec_args(r, required=False)
        r.add_argument("--sections", help=f"comma list from: {', '.join(SECTIONS)}")
        r.add_argument("--out")
        r.add_argument("--seed", type=int, default=0)
        r.add_argument("--no-timestamp", action="store_true", help="omit generated_at")
        r.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s")
    random.seed(ns.seed)
    try:
        return ns.func(ns)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CellAlgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
