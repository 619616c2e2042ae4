"""On-disk cache of (q,t)-characters keyed by ``(r, i, j, k)``.

Entries live under ``<root>/<schema hash>/``; bumping ``SCHEMA_VERSION``
moves every lookup to a fresh directory.  ``KRQT_CACHE_DIR`` overrides the
root, which otherwise defaults to ``~/.cache/krqt``.
"""
from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .tableaux import KrLabel, q_character
from .ylattice import QtCharacter

SCHEMA_VERSION = "krqt-character/1"
ENV_VAR = "KRQT_CACHE_DIR"


def canonical_json(chi: QtCharacter) -> str:
    return json.dumps(chi.to_json(), sort_keys=True, separators=(",", ":"))


def digest(chi: QtCharacter) -> str:
    return hashlib.sha256(canonical_json(chi).encode()).hexdigest()


def cache_root(root: str | os.PathLike | None = None) -> Path:
    base = Path(root or os.environ.get(ENV_VAR) or Path.home() / ".cache" / "krqt")
    return base / hashlib.sha256(SCHEMA_VERSION.encode()).hexdigest()[:16]


def entry_path(label: KrLabel, root=None) -> Path:
    return cache_root(root) / f"r{label.r}_i{label.i}_j{label.j}_k{label.k}.json"


def load(label: KrLabel, root=None) -> QtCharacter | None:
    path = entry_path(label, root)
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if data.get("schema") != SCHEMA_VERSION or data.get("sha256") != hashlib.sha256(
        json.dumps(data.get("character"), sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest():
        return None
    return QtCharacter.from_json(data["character"])


def store(label: KrLabel, chi: QtCharacter, root=None) -> Path:
    path = entry_path(label, root)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"schema": SCHEMA_VERSION, "character": chi.to_json(), "sha256": digest(chi)}
    tmp = path.with_suffix(f".{os.getpid()}.tmp")
    tmp.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    os.replace(tmp, path)
    return path


def cached_character(label: KrLabel, root=None) -> QtCharacter:
    """Read through the cache; a missing or corrupt entry is recomputed and rewritten."""
    chi = load(label, root)
    if chi is None:
        chi = q_character(label)
        store(label, chi, root)
    return chi


def verify_entry(label: KrLabel, root=None) -> bool:
    """True when the stored entry hashes the same as a fresh computation."""
    chi = load(label, root)
    return chi is not None and digest(chi) == digest(q_character(label))
