"""Write-once JSON result cache, content-addressed by computation key.

Entries are keyed by (kind, key-dict); the file name is the sha256 of the
canonical JSON encoding, so identical computations land on identical paths.
Writes go to a temp file followed by an atomic rename, which keeps a cache
directory safe under concurrent scanners.  Existing entries are never
rewritten.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

FORMAT = 1


def cache_digest(kind, key):
    canon = json.dumps({"kind": kind, "key": key}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def cache_path(root, kind, key):
    h = cache_digest(kind, key)
    return os.path.join(root, kind, h[:2], h + ".json")


def cache_get(root, kind, key):
    """The stored payload, or None on miss, stale format, or corruption."""
    path = cache_path(root, kind, key)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("format") != FORMAT or data.get("kind") != kind or data.get("key") != key:
        return None
    return data.get("payload")


def cache_put(root, kind, key, payload):
    """Store payload unless the entry already exists.  Returns True if written."""
    path = cache_path(root, kind, key)
    if os.path.exists(path):
        return False
    os.makedirs(os.path.dirname(path), exist_ok=True)
    data = {"format": FORMAT, "kind": kind, "key": key, "payload": payload}
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return True
