"""JSON reading, writing and schema validation."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema


class SchemaError(ValueError):
    pass


@lru_cache(maxsize=None)
def schema(name: str) -> dict:
    return json.loads((resources.files("modrep") / "schemas" / f"{name}.schema.json").read_text())


def validate(doc, name: str, source: str = "<document>"):
    v = jsonschema.Draft202012Validator(schema(name))
    errors = sorted(v.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise SchemaError(f"{source}: {name} schema violation at {path}: {e.message}")


def read_json(path: str | Path, name: str | None = None) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}") from exc
    if name is not None:
        validate(doc, name, str(path))
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def write_json(path: str | Path | None, doc):
    text = dumps(doc)
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
