"""Shared fixtures helpers: random trees and sentences."""

from __future__ import annotations

import random

from paradiv.syntax import ParseTree

PHRASE_LABELS = ["S", "NP", "VP", "PP", "ADJP", "ADVP", "SBAR"]
POS_LABELS = ["DT", "NN", "VB", "JJ", "IN", "RB", "PRP"]
WORDS = [
    "the", "a", "cat", "dog", "sat", "ran", "big", "small", "on", "under",
    "mat", "tree", "quickly", "slowly", "it", "they", "house", "bird",
]


def random_tree(rng: random.Random, max_nodes: int = 8, labels=None) -> ParseTree:
    """Random ordered labeled tree with at most max_nodes nodes."""
    labels = labels or (PHRASE_LABELS + POS_LABELS + WORDS)
    budget = rng.randint(1, max_nodes)

    def grow(remaining: int) -> tuple[ParseTree, int]:
        label = rng.choice(labels)
        remaining -= 1
        children = []
        while remaining > 0 and rng.random() < 0.6:
            child, remaining = grow(remaining)
            children.append(child)
        return ParseTree(label, tuple(children)), remaining

    tree, _ = grow(budget)
    return tree


def random_sentence(rng: random.Random, min_len: int = 3, max_len: int = 10) -> list[str]:
    return [rng.choice(WORDS) for _ in range(rng.randint(min_len, max_len))]
