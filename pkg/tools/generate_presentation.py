"""Regenerate the bundled curve systems, relator catalogs and example representations.

Every relator is checked in the free-group twist model before it is written.
Run from the repository root:

    python3 tools/generate_presentation.py [--genus 3 4]
"""

import argparse
import json
from pathlib import Path

from modrep.data import BUNDLED_GENERA, canonical_json, write_files

OUT = Path(__file__).resolve().parents[1] / "src" / "modrep" / "datafiles"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--genus", type=int, nargs="*", default=list(BUNDLED_GENERA))
    args = ap.parse_args()
    manifest_path = OUT / "manifest.json"
    manifest = json.loads(manifest_path.read_text()) if manifest_path.exists() else {"files": {}}
    for g in args.genus:
        hashes = write_files(g, OUT)
        manifest["files"].update(hashes)
        for name, h in hashes.items():
            print(f"{name} {h}")
    manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    for g in args.genus:
        write_example_reps(g)


def write_example_reps(g):
    """Example representation files used by the CLI docs and tests."""
    from modrep.reps import symplectic_rep
    from modrep.suspension import dual_unit_tangent_rep, unit_tangent_rep
    from modrep.surface import Surface

    s = Surface(g)
    for stem, build in (
        ("symplectic", symplectic_rep),
        ("unit_tangent", unit_tangent_rep),
        ("dual_unit_tangent", dual_unit_tangent_rep),
    ):
        path = OUT / f"rep_{stem}_g{g}.json"
        path.write_bytes(canonical_json(build(s).to_json()))
        print(path.name)


if __name__ == "__main__":
    main()
