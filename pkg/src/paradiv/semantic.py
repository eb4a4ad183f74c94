"""Embedding providers and cosine-based semantic scoring.

Three provider kinds: ``file`` (precomputed JSONL vectors), ``http``
(a batch embedding endpoint), and ``test_hash`` (a deterministic sparse
bag-of-words vector for tests and offline runs).  Reported scores are
cosine similarities: high means semantically close.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field

import numpy as np

from .corpus import ParaphrasePair, normalize
from .errors import DataError, ExternalServiceError

HASH_PROVIDER_DIM = 2048
EMBED_AUTH_ENV = "PARADIV_EMBED_TOKEN"


@dataclass(frozen=True)
class EmbeddingVector:
    values: np.ndarray
    provider: str

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])


class FileProvider:
    """Looks up precomputed vectors by exact sentence key."""

    kind = "file"

    def __init__(self, name: str, path):
        self.name = name
        self._table: dict[str, np.ndarray] = {}
        dim = None
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    text, vector = obj["text"], obj["vector"]
                except (json.JSONDecodeError, KeyError, TypeError) as exc:
                    raise DataError(f"{path}: bad embedding record at line {lineno}") from exc
                arr = np.asarray(vector, dtype=float)
                if arr.ndim != 1 or arr.shape[0] < 1 or not np.all(np.isfinite(arr)):
                    raise DataError(f"{path}: bad vector at line {lineno}")
                if dim is None:
                    dim = arr.shape[0]
                elif arr.shape[0] != dim:
                    raise DataError(
                        f"{path}: dimension mismatch at line {lineno} "
                        f"({arr.shape[0]} != {dim})"
                    )
                self._table[text] = arr
        self.dim = dim

    def embed_batch(self, sentences: list[str]) -> list[np.ndarray]:
        missing = [s for s in sentences if s not in self._table]
        if missing:
            preview = ", ".join(repr(s) for s in missing[:5])
            raise DataError(
                f"provider {self.name!r}: {len(missing)} sentence(s) missing "
                f"from embedding file: {preview}"
            )
        return [self._table[s] for s in sentences]


class HttpProvider:
    """POSTs sentence batches to an embedding server.

    Wire shape: request {"inputs": [...]}, response {"vectors": [[...]]}.
    A bearer token is read from the EMBED_AUTH_ENV environment variable
    when present.
    """

    kind = "http"

    def __init__(self, name: str, url: str, dim: int | None = None, timeout: float = 30.0):
        self.name = name
        self.url = url
        self.dim = dim
        self.timeout = timeout

    def embed_batch(self, sentences: list[str]) -> list[np.ndarray]:
        import requests

        headers = {}
        token = os.environ.get(EMBED_AUTH_ENV)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        try:
            resp = requests.post(
                self.url, json={"inputs": sentences}, headers=headers, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ExternalServiceError(f"provider {self.name!r}: {exc}") from exc
        if resp.status_code != 200:
            raise ExternalServiceError(
                f"provider {self.name!r}: HTTP {resp.status_code}"
            )
        try:
            vectors = resp.json()["vectors"]
        except (ValueError, KeyError) as exc:
            raise ExternalServiceError(
                f"provider {self.name!r}: malformed response"
            ) from exc
        if len(vectors) != len(sentences):
            raise ExternalServiceError(
                f"provider {self.name!r}: got {len(vectors)} vectors "
                f"for {len(sentences)} inputs"
            )
        out = []
        for v in vectors:
            arr = np.asarray(v, dtype=float)
            if self.dim is not None and arr.shape[0] != self.dim:
                raise ExternalServiceError(
                    f"provider {self.name!r}: dimension mismatch "
                    f"({arr.shape[0]} != {self.dim})"
                )
            out.append(arr)
        return out


class HashProvider:
    """Deterministic sparse bag-of-words vectors (token count at a hashed
    index); no model, no network."""

    kind = "test_hash"

    def __init__(self, name: str = "test_hash", dim: int = HASH_PROVIDER_DIM):
        self.name = name
        self.dim = dim

    def _index(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big") % self.dim

    def embed_batch(self, sentences: list[str]) -> list[np.ndarray]:
        out = []
        for s in sentences:
            v = np.zeros(self.dim)
            for token in normalize(s).split():
                v[self._index(token)] += 1.0
            out.append(v)
        return out


@dataclass
class _Cache:
    table: dict[tuple[str, str], np.ndarray] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)


_cache = _Cache()


def clear_cache() -> None:
    with _cache.lock:
        _cache.table.clear()


def embed(provider, sentences: list[str]) -> list[EmbeddingVector]:
    """Embed a batch through the in-run cache keyed (provider, sentence)."""
    for s in sentences:
        if not s:
            raise ValueError("empty sentence")
    with _cache.lock:
        todo = [s for s in sentences if (provider.name, s) not in _cache.table]
    if todo:
        # dedup while keeping order
        todo = list(dict.fromkeys(todo))
        vectors = provider.embed_batch(todo)
        with _cache.lock:
            for s, v in zip(todo, vectors):
                _cache.table[(provider.name, s)] = v
    with _cache.lock:
        return [
            EmbeddingVector(_cache.table[(provider.name, s)], provider.name)
            for s in sentences
        ]


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity, clamped to [-1, 1]; exact 1.0 on equal vectors."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")
    na = float(np.dot(a.values, a.values))
    nb = float(np.dot(b.values, b.values))
    if na == 0.0 or nb == 0.0:
        raise ValueError("zero vector")
    if np.array_equal(a.values, b.values):
        return 1.0
    cos = float(np.dot(a.values, b.values)) / float(np.sqrt(na * nb))
    return min(1.0, max(-1.0, cos))


def semantic_score(pair: ParaphrasePair, provider) -> float:
    """Cosine similarity between the embedded source and paraphrase."""
    va, vb = embed(provider, [pair.source, pair.paraphrase])
    return cosine(va, vb)


def parse_provider_spec(spec: str):
    """Build a provider from a CLI spec ``name=kind:location``.

    Kinds: ``file:<path>``, ``http:<url>``, ``test_hash``.
    """
    if "=" not in spec:
        raise ValueError(f"bad provider spec: {spec!r}")
    name, rest = spec.split("=", 1)
    kind, _, location = rest.partition(":")
    if kind == "file":
        if not location:
            raise ValueError(f"file provider needs a path: {spec!r}")
        return FileProvider(name, location)
    if kind == "http":
        if not location:
            raise ValueError(f"http provider needs a url: {spec!r}")
        return HttpProvider(name, location)
    if kind == "test_hash":
        return HashProvider(name)
    raise ValueError(f"unknown provider kind: {kind!r}")
