"""Dense LO vectors: hashing provider, precomputed-file provider, cache format.

Real transformer inference happens out of process: export vectors from any
encoder into the cache file and point the PrecomputedFile provider at it.
The hashing provider is the deterministic offline stand-in used by tests
and demos.

Cache file layout (little-endian):
  magic "LOEMB1\\0\\0" | u32 version=1 | u32 dim | u64 count | u64 fnv1a(payload)
  then per record: u16 id_len | id utf-8 bytes | u8 zero_flag | dim x f32
"""

from __future__ import annotations

import enum
import hashlib
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BadMagic,
    ChecksumMismatch,
    DimMismatch,
    MissingVector,
    TruncatedFile,
    ZeroVector,
)
from .textprep import TokenizedDoc

MAGIC = b"LOEMB1\x00\x00"
VERSION = 1
DEFAULT_DIM = 384

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _U64
    return h


class ProviderKind(enum.Enum):
    HASH_FALLBACK = "hash"
    PRECOMPUTED_FILE = "file"


@dataclass(frozen=True)
class ProviderConfig:
    kind: ProviderKind = ProviderKind.HASH_FALLBACK
    dim: int = DEFAULT_DIM
    seed: int = 0
    path: Optional[str] = None

    def __post_init__(self):
        if self.dim < 2:
            raise DimMismatch(2, self.dim)

    def tag(self) -> str:
        if self.kind is ProviderKind.HASH_FALLBACK:
            return f"hash(dim={self.dim},seed={self.seed})"
        name = Path(self.path).name if self.path else "?"
        return f"file({name},dim={self.dim})"


@dataclass
class EmbeddingSet:
    dim: int
    ids: tuple[str, ...]
    vectors: np.ndarray  # float32, shape (len(ids), dim)
    zero_flags: np.ndarray  # bool, shape (len(ids),)
    provider_tag: str
    content_hash: int = field(init=False)

    def __post_init__(self):
        if self.vectors.shape != (len(self.ids), self.dim):
            raise DimMismatch(self.dim, self.vectors.shape[-1] if self.vectors.ndim else 0)
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("duplicate ids in embedding set")
        norms = np.linalg.norm(self.vectors.astype(np.float64), axis=1)
        bad = ~self.zero_flags & (np.abs(norms - 1.0) > 1e-4)
        if bad.any():
            raise ValueError(f"row {int(np.argmax(bad))} is neither unit-norm nor zero-flagged")
        if (self.zero_flags & (norms != 0.0)).any():
            raise ValueError("zero-flagged row has nonzero components")
        self.content_hash = fnv1a64(_payload_bytes(self))

    def row(self, lo_code: str) -> np.ndarray:
        return self.vectors[self.ids.index(lo_code)]


def _token_hash(token: str, seed: int) -> int:
    key = (seed & _U64).to_bytes(8, "little")
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8, key=key).digest()
    return int.from_bytes(digest, "little")


def hash_embed(tokens: Sequence[str], dim: int, seed: int) -> tuple[np.ndarray, bool]:
    """Signed feature hashing: bin index and +-1 sign from a seeded 64-bit hash.

    Returns (unit float32 vector, zero_flag); the flag is set when the token
    list is empty.
    """
    acc = np.zeros(dim, dtype=np.float64)
    for tok in tokens:
        h = _token_hash(tok, seed)
        idx = (h >> 1) % dim
        sign = 1.0 if (h & 1) == 0 else -1.0
        acc[idx] += sign
    norm = float(np.linalg.norm(acc))
    if norm == 0.0:
        return np.zeros(dim, dtype=np.float32), True
    return (acc / norm).astype(np.float32), False


def embed_batch(docs: Sequence[TokenizedDoc], cfg: ProviderConfig) -> EmbeddingSet:
    """Embed documents in order; pure function of (docs, cfg)."""
    if not docs:
        raise ValueError("embed_batch requires at least one document")
    ids = tuple(d.lo_code for d in docs)
    if cfg.kind is ProviderKind.HASH_FALLBACK:
        vectors = np.empty((len(docs), cfg.dim), dtype=np.float32)
        flags = np.zeros(len(docs), dtype=bool)
        for i, doc in enumerate(docs):
            vectors[i], flags[i] = hash_embed(doc.tokens, cfg.dim, cfg.seed)
        return EmbeddingSet(cfg.dim, ids, vectors, flags, cfg.tag())

    cached = load_embeddings(cfg.path)
    if cached.dim != cfg.dim:
        raise DimMismatch(cfg.dim, cached.dim)
    index = {c: i for i, c in enumerate(cached.ids)}
    vectors = np.empty((len(docs), cfg.dim), dtype=np.float32)
    flags = np.zeros(len(docs), dtype=bool)
    for i, doc in enumerate(docs):
        j = index.get(doc.lo_code)
        if j is None:
            raise MissingVector(doc.lo_code)
        row = cached.vectors[j]
        flag = bool(cached.zero_flags[j])
        if not flag:
            norm = float(np.linalg.norm(row.astype(np.float64)))
            if norm == 0.0:
                flag = True
            elif abs(norm - 1.0) > 1e-4:
                row = (row.astype(np.float64) / norm).astype(np.float32)
        vectors[i] = row
        flags[i] = flag
    return EmbeddingSet(cfg.dim, ids, vectors, flags, cfg.tag())


def cosine(u: np.ndarray, v: np.ndarray,
           u_zero: bool = False, v_zero: bool = False) -> float:
    if u.shape != v.shape:
        raise DimMismatch(u.shape[-1], v.shape[-1])
    if u_zero or v_zero:
        raise ZeroVector()
    nu = float(np.linalg.norm(u.astype(np.float64)))
    nv = float(np.linalg.norm(v.astype(np.float64)))
    if nu == 0.0 or nv == 0.0:
        raise ZeroVector()
    c = float(np.dot(u.astype(np.float64), v.astype(np.float64)) / (nu * nv))
    return max(-1.0, min(1.0, c))


def _payload_bytes(es: EmbeddingSet) -> bytes:
    parts = []
    for i, lo_code in enumerate(es.ids):
        id_bytes = lo_code.encode("utf-8")
        parts.append(struct.pack("<H", len(id_bytes)))
        parts.append(id_bytes)
        parts.append(struct.pack("<B", 1 if es.zero_flags[i] else 0))
        parts.append(es.vectors[i].astype("<f4").tobytes())
    return b"".join(parts)


def save_embeddings(es: EmbeddingSet, path: str | Path) -> None:
    payload = _payload_bytes(es)
    header = MAGIC + struct.pack("<IIQQ", VERSION, es.dim, len(es.ids), fnv1a64(payload))
    Path(path).write_bytes(header + payload)


def load_embeddings(path: str | Path) -> EmbeddingSet:
    raw = Path(path).read_bytes()
    if len(raw) < len(MAGIC) + 24:
        raise TruncatedFile(str(path))
    if raw[:8] != MAGIC:
        raise BadMagic(raw[:8])
    version, dim, count, checksum = struct.unpack_from("<IIQQ", raw, 8)
    if version != VERSION:
        raise BadMagic(raw[:8])
    payload = raw[32:]
    if fnv1a64(payload) != checksum:
        raise ChecksumMismatch(str(path))
    ids: list[str] = []
    flags = np.zeros(count, dtype=bool)
    vectors = np.empty((count, dim), dtype=np.float32)
    off = 0
    rec_f32 = dim * 4
    for i in range(count):
        if off + 2 > len(payload):
            raise TruncatedFile(str(path))
        (id_len,) = struct.unpack_from("<H", payload, off)
        off += 2
        if off + id_len + 1 + rec_f32 > len(payload):
            raise TruncatedFile(str(path))
        ids.append(payload[off:off + id_len].decode("utf-8"))
        off += id_len
        flags[i] = payload[off] != 0
        off += 1
        vectors[i] = np.frombuffer(payload, dtype="<f4", count=dim, offset=off)
        off += rec_f32
    if off != len(payload):
        raise TruncatedFile(str(path))
    return EmbeddingSet(dim, tuple(ids), vectors, flags, provider_tag=f"file({Path(path).name},dim={dim})")
