"""JSON encodings, catalog files on disk, and polytope exports.

Every file carries ``schema_version``; files written by a different version
are rejected.  Rationals are ``"num/den"`` strings (integers as ``"n"``).
Output is deterministic: sorted keys, fixed indentation, trailing newline.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any

from .hull import HullReport, PointSet
from .model import ExponentVector, MarkovChain, Sequence, WeightScheme
from .propagate import CatalogEntry, VertexCatalog

SCHEMA_VERSION = 1
CACHE_ENV = "VITPOLY_CACHE"
MANIFEST = "manifest.json"


class SchemaError(ValueError):
    """A file is malformed or was written under another schema version."""


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "vitpoly"


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise SchemaError(f"rational expected as a string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(f"bad rational {s!r}") from exc


def encode_sequence(s: Sequence) -> dict:
    return {"k": s.k, "states": list(s.states)}


def decode_sequence(d: dict) -> Sequence:
    return Sequence(int(d["k"]), tuple(int(x) for x in d["states"]))


def encode_exponents(ev: ExponentVector) -> dict:
    return {"k": ev.k, "start": ev.start, "counts": list(ev.counts)}


def decode_exponents(d: dict) -> ExponentVector:
    return ExponentVector(int(d["k"]), int(d["start"]), tuple(int(x) for x in d["counts"]))


def encode_chain(c: MarkovChain) -> dict:
    return {"k": c.k, "pi": [frac_str(x) for x in c.pi],
            "p": [[frac_str(x) for x in row] for row in c.p]}


def decode_chain(d: dict) -> MarkovChain:
    return MarkovChain(int(d["k"]), tuple(parse_frac(x) for x in d["pi"]),
                       tuple(tuple(parse_frac(x) for x in row) for row in d["p"]))


def encode_weights(ws: WeightScheme) -> dict:
    out: dict[str, Any] = {"k": ws.k, "w": [[frac_str(x) for x in row] for row in ws.w]}
    out["omega"] = None if ws.omega is None else [frac_str(x) for x in ws.omega]
    return out


def decode_weights(d: dict) -> WeightScheme:
    om = d.get("omega")
    return WeightScheme(int(d["k"]), tuple(tuple(parse_frac(x) for x in row) for row in d["w"]),
                        None if om is None else tuple(parse_frac(x) for x in om))


def _encode_entry(e: CatalogEntry) -> dict:
    return {
        "exponents": encode_exponents(e.exponents),
        "representative": encode_sequence(e.representative),
        "witness": [frac_str(x) for x in e.witness],
        "status": e.status,
        "chain": None if e.chain is None else encode_chain(e.chain),
        "ratio": None if e.ratio is None else frac_str(e.ratio),
        "tag": e.tag,
    }


def _decode_entry(d: dict) -> CatalogEntry:
    return CatalogEntry(
        decode_exponents(d["exponents"]),
        decode_sequence(d["representative"]),
        tuple(parse_frac(x) for x in d["witness"]),
        d.get("status", "minweight"),
        None if d.get("chain") is None else decode_chain(d["chain"]),
        None if d.get("ratio") is None else parse_frac(d["ratio"]),
        d.get("tag"),
    )


def catalog_to_json(cat: VertexCatalog) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "catalog", "k": cat.k, "n": cat.n,
            "start": cat.start, "entries": [_encode_entry(e) for e in cat.entries]}


def _check_version(d: dict, kind: str) -> None:
    if not isinstance(d, dict):
        raise SchemaError("top-level JSON object expected")
    v = d.get("schema_version")
    if v != SCHEMA_VERSION:
        raise SchemaError(f"{kind} has schema_version {v!r}; this build reads only "
                          f"version {SCHEMA_VERSION}. Regenerate the file.")
    if d.get("kind") != kind:
        raise SchemaError(f"expected a {kind} file, found kind {d.get('kind')!r}")


def catalog_from_json(d: dict) -> VertexCatalog:
    _check_version(d, "catalog")
    try:
        entries = tuple(_decode_entry(e) for e in d["entries"])
        return VertexCatalog(int(d["k"]), int(d["n"]), int(d["start"]), entries)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed catalog: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(dumps(obj))
    tmp.replace(path)


def read_json(path) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc


def save_catalog(path, cat: VertexCatalog) -> None:
    write_json(path, catalog_to_json(cat))


def load_catalog(path) -> VertexCatalog:
    return catalog_from_json(read_json(path))


def catalog_filename(k: int, n: int, start: int) -> str:
    return f"catalog_k{k}_n{n}_s{start}.json"


class CatalogStore:
    """A directory of catalog files plus a manifest of what it holds."""

    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def path(self, k: int, n: int, start: int) -> Path:
        return self.root / catalog_filename(k, n, start)

    def manifest(self) -> dict:
        p = self.root / MANIFEST
        if not p.exists():
            return {"schema_version": SCHEMA_VERSION, "kind": "manifest", "catalogs": []}
        d = read_json(p)
        _check_version(d, "manifest")
        return d

    def _write_manifest(self, m: dict) -> None:
        m["catalogs"] = sorted(m["catalogs"], key=lambda e: (e["k"], e["start"], e["n"]))
        write_json(self.root / MANIFEST, m)

    def save(self, cat: VertexCatalog) -> Path:
        p = self.path(cat.k, cat.n, cat.start)
        save_catalog(p, cat)
        m = self.manifest()
        rec = {"k": cat.k, "n": cat.n, "start": cat.start, "file": p.name,
               "classified": any(e.status != "minweight" for e in cat.entries)}
        m["catalogs"] = [e for e in m["catalogs"]
                         if (e["k"], e["n"], e["start"]) != (cat.k, cat.n, cat.start)] + [rec]
        self._write_manifest(m)
        return p

    def load(self, k: int, n: int, start: int = 0) -> VertexCatalog | None:
        p = self.path(k, n, start)
        if not p.exists():
            return None
        return load_catalog(p)

    def lengths(self, k: int, start: int = 0) -> list[int]:
        return sorted(e["n"] for e in self.manifest()["catalogs"]
                      if e["k"] == k and e["start"] == start)

    def best_resume(self, k: int, n: int) -> VertexCatalog | None:
        """Longest stored start-0 catalog of length at most ``n``."""
        for m in reversed(self.lengths(k, 0)):
            if m <= n and self.path(k, m, 0).exists():
                return self.load(k, m, 0)
        return None


def polytope_to_json(ps: PointSet, report: HullReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "polytope",
        "dim": ps.dim,
        "points": [list(p) for p in ps.points],
        "vertex_flags": list(report.vertex_flags),
        "witnesses": [None if w is None else [frac_str(x) for x in w] for w in report.witnesses],
        "edges": None if report.edges is None else [list(e) for e in report.edges],
        "f_vector": report.f_vector,
    }


def poly_text(ps: PointSet, report: HullReport | None = None) -> str:
    """Plain-text point list in homogeneous coordinates (leading 1), one per line."""
    lines = [f"# dim {ps.dim}, {len(ps)} points", "POINTS"]
    lines += ["1 " + " ".join(map(str, p)) for p in ps.points]
    if report is not None:
        lines += ["", "VERTICES"]
        lines += ["1 " + " ".join(map(str, ps.points[i])) for i in report.vertex_indices]
    return "\n".join(lines) + "\n"
