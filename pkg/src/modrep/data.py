"""Bundled, hash-pinned curve systems and relator catalogs.

Genus 3 and 4 ship with the package.  Other genera are generated on first
use, validated against the free-group twist model, and cached in
``$MODREP_CACHE`` (default ``~/.cache/modrep``).
"""

from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .presentation import RelatorCatalog, build_catalog
from .surface import CurveSystem, Surface, humphries_system

BUNDLED_GENERA = (3, 4)
FORMAT_VERSION = 1


class DataIntegrityError(RuntimeError):
    pass


def canonical_json(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode()


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def curve_system_hash(cs: CurveSystem) -> str:
    return sha256(canonical_json(curve_document(cs)))


def curve_document(cs: CurveSystem) -> dict:
    return {"version": FORMAT_VERSION, **cs.to_json()}


def catalog_document(cat: RelatorCatalog, cs: CurveSystem) -> dict:
    return {"version": FORMAT_VERSION, "curve_system_hash": curve_system_hash(cs), **cat.to_json()}


def cache_dir() -> Path:
    d = os.environ.get("MODREP_CACHE")
    return Path(d) if d else Path.home() / ".cache" / "modrep"


def _bundled_dir():
    return resources.files("modrep") / "datafiles"


def _manifest() -> dict:
    return json.loads((_bundled_dir() / "manifest.json").read_text())


def validate_catalog(cat: RelatorCatalog) -> list[str]:
    """Labels of relators that are nontrivial in the twist model (should be empty)."""
    from .ribbon import twist_model

    model = twist_model(cat.surface.genus)
    index = {n: int(n[1:]) for n in cat.generators}
    bad = []
    for r in cat.relators:
        if not model.is_identity([(index[n], e) for n, e in r.word]):
            bad.append(r.label)
    return bad


def generate(g: int, validate: bool = True) -> tuple[dict, dict]:
    cs = humphries_system(Surface(g))
    cat = build_catalog(cs)
    if validate:
        bad = validate_catalog(cat)
        if bad:
            raise DataIntegrityError(f"relators fail in the twist model: {bad}")
    return curve_document(cs), catalog_document(cat, cs)


def write_files(g: int, directory: Path, validate: bool = True) -> dict[str, str]:
    directory.mkdir(parents=True, exist_ok=True)
    curves, catalog = generate(g, validate)
    out = {}
    for stem, doc in ((f"curves_g{g}.json", curves), (f"relators_g{g}.json", catalog)):
        data = canonical_json(doc)
        (directory / stem).write_bytes(data)
        out[stem] = sha256(data)
    return out


def _read_pinned(name: str, g: int) -> dict:
    if g in BUNDLED_GENERA:
        data = (_bundled_dir() / name).read_bytes()
        expected = _manifest()["files"].get(name)
    else:
        d = cache_dir()
        path = d / name
        pin = d / (name + ".sha256")
        if not path.exists() or not pin.exists():
            hashes = write_files(g, d)
            for stem, h in hashes.items():
                (d / (stem + ".sha256")).write_text(h + "\n")
        data = path.read_bytes()
        expected = pin.read_text().strip()
    if expected is None or sha256(data) != expected:
        raise DataIntegrityError(f"hash mismatch for {name}")
    return json.loads(data)


@lru_cache(maxsize=16)
def load_curve_system(g: int) -> CurveSystem:
    Surface(g)
    return CurveSystem.from_json(_read_pinned(f"curves_g{g}.json", g))


@lru_cache(maxsize=16)
def load_catalog(g: int) -> RelatorCatalog:
    Surface(g)
    doc = _read_pinned(f"relators_g{g}.json", g)
    if doc["curve_system_hash"] != curve_system_hash(load_curve_system(g)):
        raise DataIntegrityError("catalog was built for a different curve system")
    return RelatorCatalog.from_json(doc)
