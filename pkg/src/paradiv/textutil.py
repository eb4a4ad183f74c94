"""Tokenization and n-gram extraction shared by the lexical metrics."""

from __future__ import annotations

import re
from collections import Counter

_UNICODE_WORDS = re.compile(r"\w+|[^\w\s]", re.UNICODE)


def tokenize(text: str, scheme: str = "unicode_words") -> list[str]:
    """Split text into tokens.

    ``whitespace`` splits on whitespace runs; ``unicode_words`` splits on
    word boundaries and keeps each punctuation character as its own token.
    """
    if scheme == "whitespace":
        return text.split()
    if scheme == "unicode_words":
        return _UNICODE_WORDS.findall(text)
    raise ValueError(f"bad scheme: {scheme!r}")


def ngrams(tokens: list[str], n: int) -> Counter:
    """All contiguous n-grams with multiplicities; empty if |tokens| < n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
