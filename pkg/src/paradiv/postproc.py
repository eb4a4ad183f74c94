"""Output post-processing for lowercase generated text.

Three case-only repairs: copy source casing onto matching tokens, apply
an optional entity casing lexicon (longest match first), and capitalize
the first letter of each sentence.  Plus order-preserving duplicate
removal over candidate lists.
"""

from __future__ import annotations

import re

from .corpus import normalize
from .errors import DataError

_WORD = re.compile(r"\w+", re.UNICODE)
_SENT_START = re.compile(r"(^|[.!?]\s+)([^.!?]*?)([^\W\d_])", re.UNICODE)


class CasingLexicon:
    """Lowercase surface form -> canonical cased form (case-only edits)."""

    def __init__(self, entries: dict[str, str] | None = None):
        self._entries: dict[str, str] = {}
        for k, v in (entries or {}).items():
            self.add(k, v)

    def add(self, key: str, value: str) -> None:
        if key != key.lower():
            raise ValueError(f"lexicon key must be lowercase: {key!r}")
        if value.lower() != key:
            raise ValueError(f"lexicon value {value!r} is not a casing of {key!r}")
        self._entries[key] = value

    def items(self):
        # longest keys first so multi-word entries win over their parts
        return sorted(self._entries.items(), key=lambda kv: -len(kv[0]))

    def __len__(self) -> int:
        return len(self._entries)

    @classmethod
    def load(cls, path) -> "CasingLexicon":
        """TSV file: lowercase_key <tab> cased_value."""
        lex = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                cols = line.rstrip("\n").split("\t")
                if len(cols) != 2:
                    raise DataError(f"{path}: malformed lexicon row at line {lineno}")
                try:
                    lex.add(cols[0], cols[1])
                except ValueError as exc:
                    raise DataError(f"{path}: line {lineno}: {exc}") from exc
        return lex


def restore_case(
    source: str, generated_lower: str, lexicon: CasingLexicon | None = None
) -> str:
    """Re-case lowercase generated text; only letter case ever changes."""
    # rule 1: copy source casing for case-insensitively equal tokens,
    # first source occurrence wins
    source_case: dict[str, str] = {}
    for m in _WORD.finditer(source):
        source_case.setdefault(m.group(0).lower(), m.group(0))

    def recase(m: re.Match) -> str:
        return source_case.get(m.group(0).lower(), m.group(0))

    text = _WORD.sub(recase, generated_lower)

    # rule 2: lexicon multi-word matches, longest first
    if lexicon is not None:
        for key, value in lexicon.items():
            pattern = re.compile(r"(?<!\w)" + re.escape(key) + r"(?!\w)", re.IGNORECASE)
            text = pattern.sub(value, text)

    # rule 3: capitalize the first alphabetic character of each sentence
    def cap(m: re.Match) -> str:
        return m.group(1) + m.group(2) + m.group(3).upper()

    return _SENT_START.sub(cap, text)


def dedup_outputs(candidates: list[str]) -> list[str]:
    """Order-preserving removal of candidates equal after normalize()."""
    seen: set[str] = set()
    out: list[str] = []
    for c in candidates:
        key = normalize(c)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out
