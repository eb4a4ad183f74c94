"""Pair ingestion and dataset construction.

Raw pair files (TSV / JSONL) and raw LLM augmentation responses are
normalized into an immutable, duplicate-free :class:`Corpus`.  All
uniqueness judgements operate on :func:`normalize`-d text so that trivial
case / whitespace variants collapse.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DataError

_WS_RUN = re.compile(r"\s+")
_LIST_ITEM = re.compile(r"^\s*\d+[.)]\s*")


def normalize(text: str) -> str:
    """NFC, lowercase, collapse whitespace runs, trim. Idempotent."""
    text = unicodedata.normalize("NFC", text)
    text = text.lower()
    text = _WS_RUN.sub(" ", text)
    return text.strip()


@dataclass(frozen=True)
class ParaphrasePair:
    """One (source, paraphrase) text pair; the atom of all scoring."""

    id: str
    source: str
    paraphrase: str
    origin: str = "dataset"  # "dataset" | "generated"
    corpus_tag: str = ""

    def __post_init__(self):
        if self.origin not in ("dataset", "generated"):
            raise ValueError(f"bad origin: {self.origin!r}")
        if not normalize(self.source) or not normalize(self.paraphrase):
            raise ValueError(f"pair {self.id!r}: empty text after trimming")

    def key(self) -> tuple[str, str]:
        return (normalize(self.source), normalize(self.paraphrase))


class Corpus:
    """Ordered, duplicate-free collection of pairs.

    Iteration order is insertion order; duplicates (by normalized pair)
    are dropped on add and counted in ``dropped_duplicates``.
    """

    def __init__(self, name: str = "", pairs: Iterable[ParaphrasePair] = ()):
        self.name = name
        self._pairs: list[ParaphrasePair] = []
        self._keys: set[tuple[str, str]] = set()
        self._ids: set[str] = set()
        self.dropped_duplicates = 0
        for p in pairs:
            self.add(p)

    def add(self, pair: ParaphrasePair) -> bool:
        """Add a pair; returns False (and counts a drop) on duplicates."""
        k = pair.key()
        if k in self._keys:
            self.dropped_duplicates += 1
            return False
        if pair.id in self._ids:
            raise DataError(f"duplicate pair id {pair.id!r}")
        self._keys.add(k)
        self._ids.add(pair.id)
        self._pairs.append(pair)
        return True

    def __iter__(self) -> Iterator[ParaphrasePair]:
        return iter(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __getitem__(self, i: int) -> ParaphrasePair:
        return self._pairs[i]

    @property
    def pairs(self) -> list[ParaphrasePair]:
        return list(self._pairs)


@dataclass
class ParaphrasePool:
    """A source sentence with its candidate rewordings.

    Paraphrases must be pairwise distinct after normalization and none may
    equal the normalized source.
    """

    source: str
    paraphrases: list[str] = field(default_factory=list)

    def __post_init__(self):
        src = normalize(self.source)
        if not src:
            raise ValueError("empty source")
        seen: set[str] = set()
        for p in self.paraphrases:
            np_ = normalize(p)
            if not np_:
                raise ValueError("empty paraphrase in pool")
            if np_ == src:
                raise ValueError(f"paraphrase equals source: {p!r}")
            if np_ in seen:
                raise ValueError(f"duplicate paraphrase in pool: {p!r}")
            seen.add(np_)


@dataclass(frozen=True)
class Rejection:
    """A discarded LLM response, with the reason it was discarded."""

    reason: str  # "non_english" | "unparseable"
    response: str = ""


def parse_llm_list(response: str) -> list[str] | Rejection:
    """Split a numbered-list response into items.

    Accepts ``1.`` and ``1)`` markers.  A bare "Error" body (any case)
    signals a non-English source; anything without numbered items is
    rejected as unparseable rather than guessed at.
    """
    body = response.strip()
    if body.lower() == "error":
        return Rejection("non_english", response)
    items: list[str] = []
    for line in body.splitlines():
        if _LIST_ITEM.match(line):
            item = _LIST_ITEM.sub("", line).strip()
            if item:
                items.append(item)
    if not items:
        return Rejection("unparseable", response)
    return items


def build_pairs(
    pool: ParaphrasePool, mode: str = "source_to_each", id_prefix: str = "p"
) -> list[ParaphrasePair]:
    """Expand a pool into pairs.

    ``source_to_each`` emits (source, p_i); ``all_unique`` additionally
    emits each unordered paraphrase pair (p_i, p_j), i < j.  Output is
    deduplicated on normalized text (unordered in all_unique mode).
    """
    if mode not in ("source_to_each", "all_unique"):
        raise ValueError(f"bad mode: {mode!r}")
    out: list[ParaphrasePair] = []
    seen: set[frozenset[str] | tuple[str, str]] = set()
    counter = 0

    def emit(a: str, b: str) -> None:
        nonlocal counter
        na, nb = normalize(a), normalize(b)
        if na == nb:
            return
        key = frozenset((na, nb)) if mode == "all_unique" else (na, nb)
        if key in seen:
            return
        seen.add(key)
        out.append(
            ParaphrasePair(
                id=f"{id_prefix}{counter}", source=a, paraphrase=b, origin="generated"
            )
        )
        counter += 1

    for p in pool.paraphrases:
        emit(pool.source, p)
    if mode == "all_unique":
        for i in range(len(pool.paraphrases)):
            for j in range(i + 1, len(pool.paraphrases)):
                emit(pool.paraphrases[i], pool.paraphrases[j])
    return out


def load_corpus(path, format: str, header: bool = False, name: str = "") -> Corpus:
    """Load a pair file.

    TSV columns are (source, paraphrase[, corpus_tag]); JSONL objects must
    carry "source" and "paraphrase".  Duplicate pairs are dropped and
    counted on the returned corpus.  An empty file yields an empty corpus.
    """
    if format not in ("tsv", "jsonl"):
        raise ValueError(f"bad format: {format!r}")
    corpus = Corpus(name=name or str(path))
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            if format == "tsv":
                if header and lineno == 1:
                    continue
                cols = line.rstrip("\n").split("\t")
                if len(cols) < 2 or not cols[0].strip() or not cols[1].strip():
                    raise DataError(f"{path}: malformed TSV row at line {lineno}")
                source, paraphrase = cols[0], cols[1]
                tag = cols[2] if len(cols) > 2 else ""
                rec_id = ""
            else:
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DataError(
                        f"{path}: invalid JSON at line {lineno}: {exc}"
                    ) from exc
                if not isinstance(obj, dict) or "source" not in obj or "paraphrase" not in obj:
                    raise DataError(
                        f"{path}: missing 'source'/'paraphrase' at line {lineno}"
                    )
                source, paraphrase = obj["source"], obj["paraphrase"]
                if not isinstance(source, str) or not isinstance(paraphrase, str):
                    raise DataError(f"{path}: non-string text at line {lineno}")
                if not source.strip() or not paraphrase.strip():
                    raise DataError(f"{path}: empty text at line {lineno}")
                tag = obj.get("corpus_tag", "")
                rec_id = str(obj.get("id", ""))
            try:
                pair = ParaphrasePair(
                    id=rec_id or f"r{lineno}",
                    source=source,
                    paraphrase=paraphrase,
                    origin="dataset",
                    corpus_tag=tag,
                )
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from exc
            corpus.add(pair)
    return corpus


def save_corpus(corpus: Corpus, path, format: str) -> None:
    """Write a corpus back out; load_corpus(save_corpus(c)) is c."""
    if format not in ("tsv", "jsonl"):
        raise ValueError(f"bad format: {format!r}")
    with open(path, "w", encoding="utf-8") as fh:
        for pair in corpus:
            if format == "tsv":
                fh.write(f"{pair.source}\t{pair.paraphrase}\t{pair.corpus_tag}\n")
            else:
                fh.write(
                    json.dumps(
                        {
                            "id": pair.id,
                            "source": pair.source,
                            "paraphrase": pair.paraphrase,
                            "corpus_tag": pair.corpus_tag,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )


def write_rejections(rejections: Iterable[Rejection], path) -> None:
    """Sidecar .rejects.jsonl with reasons, for auditability."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in rejections:
            fh.write(
                json.dumps({"reason": r.reason, "response": r.response}, ensure_ascii=False)
                + "\n"
            )
