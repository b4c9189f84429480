"""On-disk store of Groebner bases keyed by a hash of the input.

Entries are only a speed-up: every basis read back is re-checked with
the S-pair criterion and against the input generators before use, and a
failed check discards the entry.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from . import groebner

log = logging.getLogger(__name__)

__all__ = ["BasisStore", "basis_store"]


def _enc_poly(f: dict) -> list:
    return sorted([list(m), str(c)] for m, c in f.items())


def _dec_poly(terms, p: int) -> dict:
    if p:
        return {tuple(m): int(c) for m, c in terms}
    return {tuple(m): Fraction(c) for m, c in terms}


class BasisStore:
    def __init__(self, directory):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    def _payload(self, polys, order, p, npos) -> dict:
        return {
            "field": p,
            "npos": npos,
            "order": str(order),
            "input": sorted(_enc_poly(f) for f in polys),
        }

    def _path(self, payload: dict) -> Path:
        h = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
        return self.dir / f"{h}.json"

    def load(self, polys, order, p, npos):
        payload = self._payload(polys, order, p, npos)
        path = self._path(payload)
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError):
            self.misses += 1
            return None
        try:
            if entry.get("key") != payload:
                raise ValueError("key mismatch")
            basis = [_dec_poly(t, p) for t in entry["basis"]]
            ok = groebner.is_reduced_basis(polys, basis, order, p, npos)
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            ok = False
        if not ok:
            log.warning("discarding cache entry %s: basis check failed", path.name)
            self.rejected += 1
            return None
        self.hits += 1
        return basis

    def save(self, polys, order, p, npos, basis) -> None:
        payload = self._payload(polys, order, p, npos)
        path = self._path(payload)
        text = json.dumps({"key": payload, "basis": [_enc_poly(g) for g in basis]}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)


@contextmanager
def basis_store(directory):
    """Use a :class:`BasisStore` in ``directory`` for the duration of the block."""
    store = BasisStore(directory)
    old = groebner.set_basis_store(store)
    try:
        yield store
    finally:
        groebner.set_basis_store(old)
