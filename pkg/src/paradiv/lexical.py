"""Lexical diversity and edit-rate metrics over token sequences.

All diversity metrics return 1 - similarity and live in [0, 1]; TER, WER
and the character rate are raw error rates (>= 0, may exceed 1).  The
first sequence of every pair is the reference/original, the second the
hypothesis/paraphrase; the metrics are NOT symmetric.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from .stem import stem
from .textutil import ngrams

BLEU_SMOOTH_EPS = 0.1  # floor for zero clipped-count numerators
TER_MAX_SPAN = 10

Tokens = Sequence[str]


def _require_nonempty(*seqs: Tokens) -> None:
    for s in seqs:
        if len(s) == 0:
            raise ValueError("empty input")


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Unit-cost edit distance between two sequences (two-row DP)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            )
        prev = cur
    return prev[-1]


# ---------------------------------------------------------------- overlap

def bow_overlap_diversity(o: Tokens, p: Tokens) -> float:
    """1 - Dice over token multisets; identity scores 0, disjoint 1."""
    _require_nonempty(o, p)
    co, cp = Counter(o), Counter(p)
    shared = sum(min(co[t], cp[t]) for t in co.keys() & cp.keys())
    return 1.0 - 2.0 * shared / (len(o) + len(p))


def token_jaccard_diversity(o: Tokens, p: Tokens) -> float:
    """1 - |types(o) & types(p)| / |types(o) | types(p)|."""
    _require_nonempty(o, p)
    so, sp = set(o), set(p)
    return 1.0 - len(so & sp) / len(so | sp)


# ------------------------------------------------------------------ BLEU

def bleu_pair_stats(o: Tokens, p: Tokens) -> tuple[tuple[int, ...], tuple[int, ...], int, int]:
    """Per-pair BLEU-4 sufficient statistics.

    Returns (clipped counts n=1..4, total hyp n-gram counts n=1..4,
    ref length, hyp length); corpus BLEU sums these over pairs.
    """
    _require_nonempty(o, p)
    clipped, totals = [], []
    for n in range(1, 5):
        ref_ng = ngrams(list(o), n)
        hyp_ng = ngrams(list(p), n)
        clipped.append(sum(min(c, ref_ng[g]) for g, c in hyp_ng.items()))
        totals.append(sum(hyp_ng.values()))
    return tuple(clipped), tuple(totals), len(o), len(p)


def bleu_from_stats(
    clipped: Sequence[int],
    totals: Sequence[int],
    ref_len: int,
    hyp_len: int,
    smooth: bool,
) -> float:
    """BLEU-4 from summed statistics.

    Unsmoothed: any zero precision makes the score 0.  Smoothed: zero
    numerators are floored at BLEU_SMOOTH_EPS; an order with no hypothesis
    n-grams at all counts as a single unmatched n-gram.
    """
    log_sum = 0.0
    for num, den in zip(clipped, totals):
        if den == 0:
            den = 1
        if num == 0:
            if not smooth:
                return 0.0
            prec = BLEU_SMOOTH_EPS / den
        else:
            prec = num / den
        log_sum += math.log(prec)
    bp = 1.0 if hyp_len > ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * math.exp(log_sum / 4.0)


def bleu_diversity(pairs: Sequence[tuple[Tokens, Tokens]], mode: str = "corpus") -> float:
    """1 - BLEU over a pair list; original is the single reference.

    Modes: ``corpus`` (unsmoothed, counts pooled over pairs),
    ``corpus_smoothed`` (pooled, epsilon smoothing), ``sentence`` (mean of
    per-pair smoothed BLEU).
    """
    if mode not in ("corpus", "corpus_smoothed", "sentence"):
        raise ValueError(f"bad mode: {mode!r}")
    if not pairs:
        raise ValueError("empty pair list")
    if mode == "sentence":
        total = 0.0
        for o, p in pairs:
            c, t, r, h = bleu_pair_stats(o, p)
            total += bleu_from_stats(c, t, r, h, smooth=True)
        return 1.0 - total / len(pairs)
    sums_c = [0, 0, 0, 0]
    sums_t = [0, 0, 0, 0]
    ref_len = hyp_len = 0
    for o, p in pairs:
        c, t, r, h = bleu_pair_stats(o, p)
        for i in range(4):
            sums_c[i] += c[i]
            sums_t[i] += t[i]
        ref_len += r
        hyp_len += h
    return 1.0 - bleu_from_stats(
        sums_c, sums_t, ref_len, hyp_len, smooth=(mode == "corpus_smoothed")
    )


def google_bleu_diversity(o: Tokens, p: Tokens) -> float:
    """1 - GLEU: min(precision, recall) over pooled 1..4-grams."""
    _require_nonempty(o, p)
    ref_ng: Counter = Counter()
    hyp_ng: Counter = Counter()
    for n in range(1, 5):
        ref_ng.update(ngrams(list(o), n))
        hyp_ng.update(ngrams(list(p), n))
    shared = sum(min(c, ref_ng[g]) for g, c in hyp_ng.items())
    precision = shared / sum(hyp_ng.values())
    recall = shared / sum(ref_ng.values())
    return 1.0 - min(precision, recall)


# ---------------------------------------------------------------- METEOR

def _meteor_align(o: Tokens, p: Tokens) -> tuple[int, int]:
    """Two-stage unigram alignment (exact, then stem).

    Each hypothesis token matches at most one reference token; when
    several candidates exist the one extending the previous contiguous
    run is preferred, minimizing the chunk count.  Returns (matches,
    chunks).
    """
    o_used = [False] * len(o)
    match_of: dict[int, int] = {}  # p index -> o index

    for keyfn in (lambda w: w, stem):
        keyed: dict[str, list[int]] = {}
        for i, w in enumerate(o):
            if not o_used[i]:
                keyed.setdefault(keyfn(w), []).append(i)
        prev_o = -2
        for j, w in enumerate(p):
            if j in match_of:
                prev_o = match_of[j]
                continue
            cands = keyed.get(keyfn(w))
            if not cands:
                continue
            pick = None
            if prev_o + 1 in cands:
                pick = prev_o + 1
            else:
                pick = cands[0]
            cands.remove(pick)
            if not cands:
                del keyed[keyfn(w)]
            o_used[pick] = True
            match_of[j] = pick
            prev_o = pick

    if not match_of:
        return 0, 0
    pairs = sorted(match_of.items())
    chunks = 1
    for (pj, oj), (pk, ok) in zip(pairs, pairs[1:]):
        if pk != pj + 1 or ok != oj + 1:
            chunks += 1
    return len(pairs), chunks


def meteor_diversity(o: Tokens, p: Tokens) -> float:
    """1 - METEOR (exact + stem stages, no synonym stage)."""
    _require_nonempty(o, p)
    m, chunks = _meteor_align(o, p)
    if m == 0:
        return 1.0
    precision = m / len(p)
    recall = m / len(o)
    fmean = 10.0 * precision * recall / (recall + 9.0 * precision)
    penalty = 0.5 * (chunks / m) ** 3
    return 1.0 - fmean * (1.0 - penalty)


# ----------------------------------------------------------------- ROUGE

def _lcs_len(a: Tokens, b: Tokens) -> int:
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, start=1):
            cur[j] = prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def rouge_diversity(o: Tokens, p: Tokens, variant: str = "r1") -> float:
    """1 - ROUGE F1; variants r1/r2 (n-gram overlap) and rL (LCS)."""
    _require_nonempty(o, p)
    if variant in ("r1", "r2"):
        n = 1 if variant == "r1" else 2
        ref_ng = ngrams(list(o), n)
        hyp_ng = ngrams(list(p), n)
        overlap = sum(min(c, ref_ng[g]) for g, c in hyp_ng.items())
        den_p = sum(hyp_ng.values())
        den_r = sum(ref_ng.values())
    elif variant == "rL":
        overlap = _lcs_len(o, p)
        den_p = len(p)
        den_r = len(o)
    else:
        raise ValueError(f"bad variant: {variant!r}")
    precision = overlap / den_p if den_p else 0.0
    recall = overlap / den_r if den_r else 0.0
    if precision + recall == 0.0:
        return 1.0
    return 1.0 - 2.0 * precision * recall / (precision + recall)


# ------------------------------------------------------------- edit rates

def wer(o: Tokens, p: Tokens) -> float:
    """Word-level edit distance from hypothesis to reference, over |o|."""
    if len(o) == 0:
        raise ValueError("empty input")
    return levenshtein(p, o) / len(o)


def ter_shift_phase(o: Tokens, p: Tokens, max_span: int = TER_MAX_SPAN) -> tuple[list[str], int]:
    """Greedy block-shift search.

    Repeatedly applies the single shift of a contiguous hypothesis span
    that most reduces word edit distance to the reference (ties broken by
    smallest (start, length, destination)), until no shift reduces it.
    Shifted spans must exactly match some contiguous reference span; span
    length is capped at ``max_span``.  Returns (shifted hypothesis,
    number of shifts applied).
    """
    hyp = list(p)
    ref = list(o)
    ref_spans: set[tuple[str, ...]] = set()
    for l in range(1, min(max_span, len(ref)) + 1):
        for k in range(len(ref) - l + 1):
            ref_spans.add(tuple(ref[k : k + l]))
    shifts = 0
    base = levenshtein(hyp, ref)
    while base > 0:
        best = None  # (reduction, candidate, new distance)
        for i in range(len(hyp)):
            for l in range(1, min(max_span, len(hyp) - i) + 1):
                span = tuple(hyp[i : i + l])
                if span not in ref_spans:
                    continue
                removed = hyp[:i] + hyp[i + l :]
                for j in range(len(removed) + 1):
                    if j == i:
                        continue  # same position: identical sequence
                    cand = removed[:j] + list(span) + removed[j:]
                    d = levenshtein(cand, ref)
                    red = base - d
                    if red >= 1 and (best is None or red > best[0]):
                        best = (red, cand, d)
        if best is None:
            break
        hyp = best[1]
        base = best[2]
        shifts += 1
    return hyp, shifts


def ter(o: Tokens, p: Tokens) -> float:
    """Translation edit rate: (shifts + residual word edits) / |o|."""
    if len(o) == 0:
        raise ValueError("empty input")
    shifted, shifts = ter_shift_phase(o, p)
    return (shifts + levenshtein(shifted, o)) / len(o)


def character_rate(o: Tokens, p: Tokens) -> float:
    """Word-shift phase, then character edit rate over hypothesis chars."""
    _require_nonempty(o, p)
    shifted, _ = ter_shift_phase(o, p)
    hyp_str = " ".join(shifted)
    ref_str = " ".join(o)
    return levenshtein(hyp_str, ref_str) / len(hyp_str)


# ------------------------------------------------------------ pair driver

PAIR_METRICS = (
    "bow_overlap",
    "token_jaccard",
    "sentence_bleu",
    "google_bleu",
    "meteor",
    "rouge1",
    "rouge2",
    "rougeL",
    "ter",
    "wer",
    "character",
)

CORPUS_METRICS = ("corpus_bleu", "corpus_bleu2")


def score_pair(o: Tokens, p: Tokens) -> dict[str, float]:
    """All per-pair lexical metrics for one (original, paraphrase) pair."""
    c, t, r, h = bleu_pair_stats(o, p)
    return {
        "bow_overlap": bow_overlap_diversity(o, p),
        "token_jaccard": token_jaccard_diversity(o, p),
        "sentence_bleu": 1.0 - bleu_from_stats(c, t, r, h, smooth=True),
        "google_bleu": google_bleu_diversity(o, p),
        "meteor": meteor_diversity(o, p),
        "rouge1": rouge_diversity(o, p, "r1"),
        "rouge2": rouge_diversity(o, p, "r2"),
        "rougeL": rouge_diversity(o, p, "rL"),
        "ter": ter(o, p),
        "wer": wer(o, p),
        "character": character_rate(o, p),
    }
