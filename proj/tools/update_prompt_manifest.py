#!/usr/bin/env python3
"""Regenerate assets/prompts/manifest.json after editing a prompt file."""
import hashlib
import json
import pathlib
import sys

VERSION = 1


def main() -> int:
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "assets/prompts")
    files = {}
    for path in sorted(root.rglob("*.txt")):
        files[path.relative_to(root).as_posix()] = hashlib.sha256(path.read_bytes()).hexdigest()
    manifest = {"version": VERSION, "files": files}
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(files)} entries")
    return 0


if __name__ == "__main__":
    sys.exit(main())
