"""On-disk cache of operator matrices.

One JSON file per (operator, degree).  The file records the module
fingerprint it was computed for; loading it under a different fingerprint
raises :class:`CacheInvalidError` instead of silently reusing stale data.
Entries are stored in the canonical text forms of monomials and scalars.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
import threading
from pathlib import Path

from ..errors import CacheInvalidError
from ..fock import ModuleVector, VacuumModuleSpec, format_monomial, parse_monomial
from ..scalars import from_text, to_text

CACHE_FORMAT = 1

# matrix: {source word: ModuleVector image}


class OperatorMatrixCache:
    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._write_lock = threading.Lock()

    def _path(self, op_id: str) -> Path:
        safe = re.sub(r"[^A-Za-z0-9_.=-]+", "_", op_id)
        digest = hashlib.sha256(op_id.encode()).hexdigest()[:8]
        return self.root / f"{safe}-{digest}.json"

    def store(self, op_id: str, degree: int, spec: VacuumModuleSpec, matrix: dict) -> Path:
        payload = {
            "format": CACHE_FORMAT,
            "op": op_id,
            "degree": degree,
            "fingerprint": spec.fingerprint,
            "columns": [
                [format_monomial(src, spec), [[format_monomial(t, spec), to_text(x)] for t, x in img.sorted_terms()]]
                for src, img in sorted(matrix.items(), key=lambda item: (spec.word_weight(item[0]), item[0]))
            ],
        }
        text = json.dumps(payload, indent=1, sort_keys=True)
        path = self._path(f"{op_id}@{degree}")
        with self._write_lock:
            self.root.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, path)
        return path

    def load(self, op_id: str, degree: int, spec: VacuumModuleSpec) -> dict | None:
        """The cached matrix, or None on a miss."""
        path = self._path(f"{op_id}@{degree}")
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        payload = json.loads(text)
        if payload.get("format") != CACHE_FORMAT or payload.get("op") != op_id or payload.get("degree") != degree:
            raise CacheInvalidError(f"{path} does not hold {op_id} at degree {degree}")
        if payload.get("fingerprint") != spec.fingerprint:
            raise CacheInvalidError(
                f"{path} was computed for {payload.get('fingerprint')!r}, not {spec.fingerprint!r}"
            )
        out = {}
        for src, terms in payload["columns"]:
            out[parse_monomial(src, spec)] = ModuleVector(
                spec, {parse_monomial(t, spec): from_text(x) for t, x in terms}
            )
        return out


def cache_store(cache: OperatorMatrixCache, key: tuple[str, int], spec: VacuumModuleSpec, matrix: dict) -> Path:
    op_id, degree = key
    return cache.store(op_id, degree, spec, matrix)


def cache_load(cache: OperatorMatrixCache, key: tuple[str, int], spec: VacuumModuleSpec) -> dict | None:
    op_id, degree = key
    return cache.load(op_id, degree, spec)
