"""Independent oracles used to cross-check the production metrics.

Everything here is deliberately written from first principles (full
quadratic DP matrices, memoized forest recursion, direct formulas) and
shares no code with the paradiv implementations it checks.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache


def lev_oracle(a, b) -> int:
    """Full-matrix quadratic edit distance DP."""
    n, m = len(a), len(b)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            sub = d[i - 1][j - 1] + (0 if a[i - 1] == b[j - 1] else 1)
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, sub)
    return d[n][m]


def wer_oracle(ref, hyp) -> float:
    return lev_oracle(hyp, ref) / len(ref)


def ter_oracle(ref, hyp, max_span: int = 10) -> float:
    """Brute force over all single shifts, applied greedily.

    A shift moves a contiguous hypothesis span (length <= max_span) that
    exactly matches some contiguous reference span to a new position.
    The shift with the largest edit-distance reduction is applied (ties:
    first in (start, length, destination) scan order) until none reduces
    the distance; each shift costs 1.
    """
    ref = list(ref)
    hyp = list(hyp)
    ref_spans = set()
    for l in range(1, min(max_span, len(ref)) + 1):
        for k in range(len(ref) - l + 1):
            ref_spans.add(tuple(ref[k : k + l]))
    shifts = 0
    dist = lev_oracle(hyp, ref)
    while dist > 0:
        best_red = 0
        best_hyp = None
        best_dist = None
        for start in range(len(hyp)):
            for length in range(1, min(max_span, len(hyp) - start) + 1):
                span = tuple(hyp[start : start + length])
                if span not in ref_spans:
                    continue
                rest = hyp[:start] + hyp[start + length :]
                for dest in range(len(rest) + 1):
                    if dest == start:
                        continue
                    cand = rest[:dest] + list(span) + rest[dest:]
                    d = lev_oracle(cand, ref)
                    if dist - d > best_red:
                        best_red = dist - d
                        best_hyp = cand
                        best_dist = d
        if best_hyp is None:
            break
        hyp, dist = best_hyp, best_dist
        shifts += 1
    return (shifts + dist) / len(ref)


def ted_oracle(a, b) -> int:
    """Memoized forest edit distance recursion over ordered trees.

    Trees are paradiv ParseTree objects; the recursion removes rightmost
    roots and is exhaustive over all edit scripts.
    """

    def conv(t):
        return (t.label, tuple(conv(c) for c in t.children))

    def fsize(f):
        return sum(1 + fsize(t[1]) for t in f)

    @lru_cache(maxsize=None)
    def d(f1, f2):
        if not f1 and not f2:
            return 0
        if not f1:
            return fsize(f2)
        if not f2:
            return fsize(f1)
        t1, t2 = f1[-1], f2[-1]
        return min(
            d(f1[:-1] + t1[1], f2) + 1,
            d(f1, f2[:-1] + t2[1]) + 1,
            d(t1[1], t2[1]) + d(f1[:-1], f2[:-1]) + (0 if t1[0] == t2[0] else 1),
        )

    result = d((conv(a),), (conv(b),))
    d.cache_clear()
    return result


def bleu_oracle(pairs, smooth: bool, eps: float = 0.1) -> float:
    """Reference BLEU-4 with pooled clipped counts and brevity penalty."""
    ref_len = hyp_len = 0
    nums = [0, 0, 0, 0]
    dens = [0, 0, 0, 0]
    for ref, hyp in pairs:
        ref_len += len(ref)
        hyp_len += len(hyp)
        for n in range(1, 5):
            rgrams = Counter(tuple(ref[i : i + n]) for i in range(len(ref) - n + 1))
            hgrams = Counter(tuple(hyp[i : i + n]) for i in range(len(hyp) - n + 1))
            nums[n - 1] += sum((hgrams & rgrams).values())
            dens[n - 1] += sum(hgrams.values())
    precisions = []
    for num, den in zip(nums, dens):
        if den == 0:
            den = 1
        if num == 0:
            if not smooth:
                return 0.0
            precisions.append(eps / den)
        else:
            precisions.append(num / den)
    geo = math.exp(sum(math.log(p) for p in precisions) / 4.0)
    bp = 1.0 if hyp_len > ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * geo


def weighted_subtree_cosine_oracle(weights_a: dict, weights_b: dict) -> float:
    """Exact feature-space cosine over weighted subtree features."""
    dot = sum(w * weights_b[s] for s, w in weights_a.items() if s in weights_b)
    na = math.sqrt(sum(w * w for w in weights_a.values()))
    nb = math.sqrt(sum(w * w for w in weights_b.values()))
    return dot / (na * nb)
