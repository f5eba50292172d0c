"""On-disk cache of Hecke matrices in a line-based integer-triplet format.

    GL3ATLAS-CACHE v1 <N> <p> <kind> <convention> <dim> <checksum>
    <row> <col> <numerator>        (nonzero entries only)
    <denominator>
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from flint import fmpz_mat

from .hecke.operators import DEFAULT_CONVENTION, HeckeMatrix, hecke_matrix

MAGIC = "GL3ATLAS-CACHE"
VERSION = "v1"
ENV_VAR = "GL3_CACHE_DIR"


class CacheCorrupt(RuntimeError):
    pass


class CacheMiss(LookupError):
    pass


def default_dir() -> Path | None:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def cache_path(directory: str | Path, n: int, p: int, kind: str, convention: str) -> Path:
    return Path(directory) / f"hecke_{n}_{p}_{kind}_{convention}.txt"


def _payload_lines(H: HeckeMatrix) -> list[str]:
    M = H.numerators
    lines = [
        f"{i} {j} {int(M[i, j])}"
        for i in range(M.nrows())
        for j in range(M.ncols())
        if M[i, j] != 0
    ]
    lines.append(str(H.denominator))
    return lines


def _digest(lines: list[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:16]


def dumps(H: HeckeMatrix) -> str:
    lines = _payload_lines(H)
    header = f"{MAGIC} {VERSION} {H.level} {H.p} {H.kind} {H.convention} {H.dim} {_digest(lines)}"
    return "\n".join([header] + lines) + "\n"


def loads(text: str, expect: tuple | None = None) -> HeckeMatrix:
    """Parse a cache file.  ``expect`` = (N, p, kind, convention): a header that
    differs raises CacheMiss; a payload that fails its checksum raises CacheCorrupt."""
    lines = text.splitlines()
    if not lines:
        raise CacheCorrupt("empty cache file")
    head = lines[0].split()
    if len(head) != 8 or head[0] != MAGIC:
        raise CacheCorrupt("not a cache file")
    _, version, n, p, kind, convention, dim, digest = head
    if version != VERSION:
        raise CacheMiss(f"cache version {version} != {VERSION}")
    n, p, dim = int(n), int(p), int(dim)
    if expect is not None and (n, p, kind, convention) != tuple(expect):
        raise CacheMiss("cache header does not match the request")
    payload = lines[1:]
    if not payload or _digest(payload) != digest:
        raise CacheCorrupt("cache payload checksum mismatch")
    M = fmpz_mat(dim, dim)
    for line in payload[:-1]:
        i, j, v = (int(t) for t in line.split())
        M[i, j] = v
    return HeckeMatrix(n, p, kind, convention, M, int(payload[-1]))


def write(directory: str | Path, H: HeckeMatrix) -> Path:
    path = cache_path(directory, H.level, H.p, H.kind, H.convention)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(dumps(H))
    tmp.replace(path)
    return path


def read(directory: str | Path, n: int, p: int, kind: str, convention: str = DEFAULT_CONVENTION) -> HeckeMatrix:
    path = cache_path(directory, n, p, kind, convention)
    if not path.exists():
        raise CacheMiss(str(path))
    return loads(path.read_text(), (n, p, kind, convention))


def cache_roundtrip(directory: str | Path, H: HeckeMatrix) -> HeckeMatrix:
    write(directory, H)
    return read(directory, H.level, H.p, H.kind, H.convention)


def cached_or_build(directory: str | Path | None, n: int, p: int, kind: str,
                    convention: str = DEFAULT_CONVENTION) -> tuple[HeckeMatrix, bool]:
    """(matrix, hit).  A corrupt or mismatched file is rebuilt and overwritten."""
    if directory is not None:
        try:
            return read(directory, n, p, kind, convention), True
        except (CacheMiss, CacheCorrupt):
            pass
    H = hecke_matrix(n, p, kind, convention=convention)
    if directory is not None:
        write(directory, H)
    return H, False
