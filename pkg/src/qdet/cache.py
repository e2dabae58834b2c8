"""Optional on-disk cache for computed ideal spans.

Spans are stored as JSON files keyed by a content hash of the defining
data (shape, minor, degree, format version).  The cache directory comes
from the QDET_CACHE environment variable when set, otherwise from
set_cache_dir; with neither, caching is a no-op.
"""

import hashlib
import json
import os
import tempfile
from fractions import Fraction

from .scalars import LaurentScalar

#: bump when the serialized layout changes
FORMAT = 1

_dir_override = None


def set_cache_dir(path):
    """Directory used when QDET_CACHE is not set; None disables."""
    global _dir_override
    _dir_override = path


def cache_dir():
    return os.environ.get("QDET_CACHE") or _dir_override


def _path_for(base, key):
    digest = hashlib.sha256(repr((FORMAT,) + tuple(key)).encode()).hexdigest()
    return os.path.join(base, digest + ".json")


def _encode_rows(rows):
    out = []
    for row in rows:
        enc = []
        for col in sorted(row):
            terms = [[e, c.numerator, c.denominator]
                     for e, c in sorted(row[col].terms.items())]
            enc.append([col, terms])
        out.append(enc)
    return out


def _decode_rows(data):
    rows = []
    for enc in data:
        row = {}
        for col, terms in enc:
            row[int(col)] = LaurentScalar(
                {int(e): Fraction(int(n), int(d)) for e, n, d in terms})
        rows.append(row)
    return rows


def load_rows(key):
    """Stored rows for the key, or None on any miss or decode problem."""
    base = cache_dir()
    if not base:
        return None
    path = _path_for(base, key)
    try:
        with open(path, "r", encoding="ascii") as fh:
            payload = json.load(fh)
    except (OSError, ValueError):
        return None
    if payload.get("format") != FORMAT or payload.get("key") != repr(tuple(key)):
        return None
    try:
        return _decode_rows(payload["rows"])
    except (KeyError, TypeError, ValueError):
        return None


def store_rows(key, rows):
    """Persist rows for the key; silently does nothing without a cache dir."""
    base = cache_dir()
    if not base:
        return
    os.makedirs(base, exist_ok=True)
    payload = {"format": FORMAT, "key": repr(tuple(key)),
               "rows": _encode_rows(rows)}
    fd, tmp = tempfile.mkstemp(dir=base, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            json.dump(payload, fh, separators=(",", ":"))
        os.replace(tmp, _path_for(base, key))
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
