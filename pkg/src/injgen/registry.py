"""Content-addressed object store backed by a directory.

Layout: <root>/objects/<hash>.json holds the canonical document bytes,
<root>/index.json maps hashes to file, label, kind, and provenance.
Storing the same document twice is a no-op; labels are conveniences and
never enter the hash.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .serialize import (SerializeError, canonical_bytes, content_hash,
                        from_json, object_kind, to_json)


class RegistryError(Exception):
    pass


class Registry:
    def __init__(self, root):
        self.root = Path(root)
        (self.root / "objects").mkdir(parents=True, exist_ok=True)
        self._index_path = self.root / "index.json"
        if self._index_path.exists():
            try:
                self._index = json.loads(self._index_path.read_text())
            except ValueError as e:
                raise RegistryError(f"corrupt index at {self._index_path}: {e}") from e
        else:
            self._index = {"objects": {}}
        self._live = {}

    def _write_index(self):
        tmp = self._index_path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(self._index, indent=1, sort_keys=True))
        os.replace(tmp, self._index_path)

    def store(self, doc: dict, label: str | None = None) -> str:
        kind = object_kind(doc)
        h = content_hash(doc)
        rel = f"objects/{h}.json"
        path = self.root / rel
        if not path.exists():
            path.write_bytes(canonical_bytes(doc))
        entry = self._index["objects"].get(h)
        if entry is None:
            entry = {"file": rel, "kind": kind,
                     "provenance": doc.get("provenance")}
            self._index["objects"][h] = entry
        elif entry.get("provenance") is None and doc.get("provenance") is not None:
            # a provenance-bearing re-store enriches a bare entry
            entry["provenance"] = doc["provenance"]
            path.write_bytes(canonical_bytes(doc))
        if label is not None:
            entry["label"] = label
        self._write_index()
        return h

    def store_object(self, obj, label=None, provenance=None) -> str:
        h = self.store(to_json(obj, provenance), label=label)
        self._live.setdefault(h, obj)
        return h

    def entry(self, h: str) -> dict:
        try:
            return self._index["objects"][h]
        except KeyError:
            raise RegistryError(f"unknown object {h}") from None

    def entries(self) -> dict:
        return dict(self._index["objects"])

    def load_doc(self, h: str) -> dict:
        path = self.root / self.entry(h)["file"]
        try:
            doc = json.loads(path.read_bytes())
        except (OSError, ValueError) as e:
            raise RegistryError(f"cannot read stored object {h}: {e}") from e
        got = content_hash(doc)
        if got != h:
            raise RegistryError(f"stored object {h} rehashes to {got}")
        return doc

    def load(self, h: str):
        if h not in self._live:
            self._live[h] = from_json(self.load_doc(h))
        return self._live[h]

    def label_of(self, h: str) -> str:
        e = self.entry(h)
        return e.get("label") or h[:12]

    def resolve(self, ref: str) -> str:
        objs = self._index["objects"]
        if ref in objs:
            return ref
        by_label = [h for h, e in objs.items() if e.get("label") == ref]
        if len(by_label) == 1:
            return by_label[0]
        if len(by_label) > 1:
            raise RegistryError(f"label {ref!r} is ambiguous")
        if len(ref) >= 6:
            pref = [h for h in objs if h.startswith(ref)]
            if len(pref) == 1:
                return pref[0]
            if len(pref) > 1:
                raise RegistryError(f"hash prefix {ref!r} is ambiguous")
        raise RegistryError(f"no object matches {ref!r}")

    def derived_from(self, h: str, construction: str | None = None):
        """Entries whose provenance lists h among the inputs."""
        out = []
        for other, e in self._index["objects"].items():
            prov = e.get("provenance")
            if not prov:
                continue
            if construction is not None and prov.get("construction") != construction:
                continue
            if h in prov.get("inputs", []):
                out.append((other, e))
        out.sort(key=lambda t: t[0])
        return out

    def __contains__(self, h: str) -> bool:
        return h in self._index["objects"]

    def __len__(self) -> int:
        return len(self._index["objects"])
