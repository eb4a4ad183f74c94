"""Constituency-tree ingestion and the syntactic diversity metrics.

Trees arrive in Penn-style bracket notation.  Five metrics are computed
per pair: full tree edit distance, depth-3 tree edit distance, a
distributed-tree cosine diversity ("kermit*"), the complete-subtree
Jaccard kernel, and the ancestor/descendant node-pair kernel.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .treedist import tree_distance

KERMIT_DIM = 4096
KERMIT_LAMBDA = 0.4
_SEED_NAMESPACE = b"paradiv.tree.v1"


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple["ParseTree", ...] = ()

    def __post_init__(self):
        if not self.label:
            raise ValueError("empty node label")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def parse_bracket(text: str) -> ParseTree:
    """Parse Penn-style bracket notation ``(LABEL child ...)``.

    Bare tokens become leaves.  Raises DataError with the byte offset of
    the problem on unbalanced or empty input.
    """
    s = text
    pos = 0
    n = len(s)

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def parse_atom() -> str:
        nonlocal pos
        start = pos
        while pos < n and not s[pos].isspace() and s[pos] not in "()":
            pos += 1
        return s[start:pos]

    def parse_node() -> ParseTree:
        nonlocal pos
        skip_ws()
        if pos >= n or s[pos] != "(":
            raise DataError(f"expected '(' at byte offset {_byte_offset(s, pos)}")
        pos += 1
        skip_ws()
        label = parse_atom()
        if not label:
            raise DataError(f"missing label at byte offset {_byte_offset(s, pos)}")
        children: list[ParseTree] = []
        while True:
            skip_ws()
            if pos >= n:
                raise DataError(f"unbalanced input at byte offset {_byte_offset(s, pos)}")
            if s[pos] == ")":
                pos += 1
                return ParseTree(label, tuple(children))
            if s[pos] == "(":
                children.append(parse_node())
            else:
                children.append(ParseTree(parse_atom()))

    skip_ws()
    if pos >= n:
        raise DataError("empty input at byte offset 0")
    tree = parse_node()
    skip_ws()
    if pos != n:
        raise DataError(f"trailing input at byte offset {_byte_offset(s, pos)}")
    return tree


def to_bracket(tree: ParseTree) -> str:
    """Canonical serialization: leaves bare, internal nodes in parens."""
    if not tree.children:
        return tree.label
    return "(" + tree.label + " " + " ".join(to_bracket(c) for c in tree.children) + ")"


def node_count(tree: ParseTree) -> int:
    return 1 + sum(node_count(c) for c in tree.children)


def truncate_depth(tree: ParseTree, depth_limit: int) -> ParseTree:
    """Drop all nodes deeper than depth_limit (root depth = 1)."""
    if depth_limit < 1:
        raise ValueError("depth_limit must be >= 1")
    if depth_limit == 1:
        return ParseTree(tree.label)
    return ParseTree(
        tree.label, tuple(truncate_depth(c, depth_limit - 1) for c in tree.children)
    )


def strip_leaves(tree: ParseTree) -> ParseTree:
    """Remove terminal tokens, keeping nonterminal structure only."""
    kept = tuple(strip_leaves(c) for c in tree.children if c.children)
    # a preterminal keeps its label and becomes a leaf
    return ParseTree(tree.label, kept)


def tree_edit_distance(a: ParseTree, b: ParseTree, depth_limit: int | None = None) -> int:
    """Unit-cost ordered TED; optional truncation to the first strata."""
    if depth_limit is not None:
        if depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        a = truncate_depth(a, depth_limit)
        b = truncate_depth(b, depth_limit)
    return tree_distance(a, b)


# ----------------------------------------------------------------- kernels

def subtree_set(tree: ParseTree) -> set[str]:
    """Canonical strings of every complete node-rooted subtree."""
    out: set[str] = set()

    def walk(t: ParseTree) -> str:
        if not t.children:
            s = t.label
        else:
            s = "(" + t.label + " " + " ".join(walk(c) for c in t.children) + ")"
        out.add(s)
        return s

    walk(tree)
    return out


def subtree_kernel_diversity(a: ParseTree, b: ParseTree) -> float:
    """1 - Jaccard over complete-subtree sets."""
    sa, sb = subtree_set(a), subtree_set(b)
    return 1.0 - len(sa & sb) / len(sa | sb)


def node_pairs(tree: ParseTree, parent_child_only: bool = False) -> set[tuple[str, str]]:
    """(ancestor-label, descendant-label) pairs under strict dominance."""
    out: set[tuple[str, str]] = set()

    def labels_below(t: ParseTree) -> list[str]:
        acc = [t.label]
        for c in t.children:
            acc.extend(labels_below(c))
        return acc

    def walk(t: ParseTree) -> None:
        for c in t.children:
            if parent_child_only:
                out.add((t.label, c.label))
            else:
                for d in labels_below(c):
                    out.add((t.label, d))
            walk(c)

    walk(tree)
    return out


def node_pair_kernel_diversity(
    a: ParseTree, b: ParseTree, parent_child_only: bool = False
) -> float:
    """1 - Jaccard over dominance label pairs; empty-vs-empty scores 0."""
    pa = node_pairs(a, parent_child_only)
    pb = node_pairs(b, parent_child_only)
    union = pa | pb
    if not union:
        return 0.0
    return 1.0 - len(pa & pb) / len(union)


# ------------------------------------------------- distributed embedding

_vec_cache: dict[tuple[str, int], np.ndarray] = {}
_emb_cache: dict[tuple[str, int, float], np.ndarray] = {}


def _subtree_vector(canon: str, dim: int) -> np.ndarray:
    key = (canon, dim)
    v = _vec_cache.get(key)
    if v is None:
        digest = hashlib.blake2b(
            canon.encode("utf-8"), digest_size=8, person=_SEED_NAMESPACE
        ).digest()
        rng = np.random.default_rng(int.from_bytes(digest, "big"))
        v = rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        _vec_cache[key] = v
    return v


def _subtree_size(canon: str) -> int:
    # node count of a canonical subtree string: parens mark internal
    # nodes, bare atoms mark leaves
    if not canon.startswith("("):
        return 1
    internal = canon.count("(")
    tokens = len(canon.replace("(", " ( ").replace(")", " ) ").split())
    # atoms = internal labels + leaves = total node count
    return tokens - 2 * internal


def distributed_tree_embedding(
    tree: ParseTree, dim: int = KERMIT_DIM, lam: float = KERMIT_LAMBDA
) -> np.ndarray:
    """Sum of hash-seeded unit vectors, one per distinct subtree.

    Each subtree contributes with weight lam**(its node count); the sum
    is not normalized.  Deterministic across runs and platforms.
    """
    if dim < 64:
        raise ValueError("dim must be >= 64")
    if not (0.0 < lam <= 1.0):
        raise ValueError("lambda must be in (0, 1]")
    key = (to_bracket(tree), dim, lam)
    cached = _emb_cache.get(key)
    if cached is not None:
        return cached
    acc = np.zeros(dim)
    for canon in sorted(subtree_set(tree)):
        acc += lam ** _subtree_size(canon) * _subtree_vector(canon, dim)
    _emb_cache[key] = acc
    return acc


def subtree_weights(tree: ParseTree, lam: float = KERMIT_LAMBDA) -> dict[str, float]:
    """Feature weights lam**size per distinct subtree (kernel view)."""
    return {canon: lam ** _subtree_size(canon) for canon in subtree_set(tree)}


def kermit_diversity(
    a: ParseTree, b: ParseTree, dim: int = KERMIT_DIM, lam: float = KERMIT_LAMBDA
) -> float:
    """1 - cosine of the distributed embeddings, clamped to [0, 1]."""
    if to_bracket(a) == to_bracket(b):
        return 0.0
    va = distributed_tree_embedding(a, dim, lam)
    vb = distributed_tree_embedding(b, dim, lam)
    cos = float(np.dot(va, vb) / (np.linalg.norm(va) * np.linalg.norm(vb)))
    return min(1.0, max(0.0, 1.0 - cos))


# ------------------------------------------------------------ pair driver

SYNTAX_METRICS = ("ted_f", "ted_3", "kermit", "subtree_k", "node_pair_k")


def score_pair(
    a: ParseTree,
    b: ParseTree,
    dim: int = KERMIT_DIM,
    lam: float = KERMIT_LAMBDA,
) -> dict[str, float]:
    """All syntactic metrics for one (original, paraphrase) tree pair."""
    return {
        "ted_f": float(tree_edit_distance(a, b)),
        "ted_3": float(tree_edit_distance(a, b, depth_limit=3)),
        "kermit": kermit_diversity(a, b, dim, lam),
        "subtree_k": subtree_kernel_diversity(a, b),
        "node_pair_k": node_pair_kernel_diversity(a, b),
    }


def load_tree_file(path) -> dict[str, tuple[ParseTree, ParseTree]]:
    """Read the tree JSONL contract: {"id","source_tree","paraphrase_tree"}."""
    out: dict[str, tuple[ParseTree, ParseTree]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}: invalid JSON at line {lineno}: {exc}") from exc
            try:
                rec_id = obj["id"]
                src = parse_bracket(obj["source_tree"])
                par = parse_bracket(obj["paraphrase_tree"])
            except KeyError as exc:
                raise DataError(f"{path}: missing key {exc} at line {lineno}") from exc
            except DataError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from exc
            out[str(rec_id)] = (src, par)
    return out
