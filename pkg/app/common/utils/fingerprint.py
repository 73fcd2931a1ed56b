import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from app.common.contracts import IFingerprinter


class Fingerprinter(IFingerprinter):
    """
    SHA-256 content fingerprints for files and arrays.
    """

    _BLOCK = 1 << 20

    def file_digest(self, path: str | Path) -> str:
        digest = hashlib.sha256()
        with open(path, "rb") as handle:
            for block in iter(lambda: handle.read(self._BLOCK), b""):
                digest.update(block)
        return digest.hexdigest()

    def json_digest(self, payload: Any) -> str:
        encoded = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
        return hashlib.sha256(encoded.encode("utf-8")).hexdigest()

    def arrays_digest(self, *arrays: np.ndarray) -> str:
        digest = hashlib.sha256()
        for array in arrays:
            array = np.ascontiguousarray(array)
            digest.update(str(array.dtype).encode())
            digest.update(str(array.shape).encode())
            digest.update(array.tobytes())
        return digest.hexdigest()
