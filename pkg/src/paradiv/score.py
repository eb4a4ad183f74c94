"""Corpus-scale scoring driver.

Computes the lexical and syntactic metric battery per pair (optionally in
parallel worker processes) plus corpus-level BLEU and per-provider
semantic similarity.  Results are deterministic and schedule-independent:
rows are kept in corpus order and corpus BLEU reduces integer counts.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import lexical, semantic, syntax
from .corpus import Corpus, normalize
from .errors import DataError
from .textutil import tokenize


@dataclass
class ScoreRun:
    rows: list[dict] = field(default_factory=list)  # one dict per pair, corpus order
    corpus_level: dict[str, float] = field(default_factory=dict)


def _pair_tokens(source: str, paraphrase: str, scheme: str) -> tuple[list[str], list[str]]:
    return tokenize(normalize(source), scheme), tokenize(normalize(paraphrase), scheme)


def _score_chunk(args) -> list[dict]:
    """Worker: lexical + syntactic metrics for a chunk of pairs.

    ``items`` are (id, tag, source, paraphrase, src_tree, par_tree) with
    trees as bracket strings or None.  Returns one row dict per item,
    with BLEU sufficient statistics under "_bleu" for later reduction.
    """
    items, scheme, do_lexical, do_syntax, strip, dim, lam = args
    rows = []
    for pid, tag, source, paraphrase, src_tree, par_tree in items:
        row: dict = {"id": pid, "corpus_tag": tag}
        if do_lexical:
            o, p = _pair_tokens(source, paraphrase, scheme)
            if not o or not p:
                raise DataError(f"pair {pid!r}: no tokens after normalization")
            row.update(lexical.score_pair(o, p))
            row["_bleu"] = lexical.bleu_pair_stats(o, p)
        if do_syntax and src_tree is not None:
            ta = syntax.parse_bracket(src_tree)
            tb = syntax.parse_bracket(par_tree)
            if strip:
                ta, tb = syntax.strip_leaves(ta), syntax.strip_leaves(tb)
            row.update(syntax.score_pair(ta, tb, dim, lam))
        rows.append(row)
    return rows


def score_corpus(
    corpus: Corpus,
    trees: dict[str, tuple[str, str]] | None = None,
    providers: list | None = None,
    metrics: set[str] = frozenset({"lexical", "syntax", "semantic"}),
    jobs: int = 1,
    scheme: str = "unicode_words",
    strip_leaves: bool = False,
    kermit_dim: int = syntax.KERMIT_DIM,
    kermit_lambda: float = syntax.KERMIT_LAMBDA,
    chunk_size: int = 500,
) -> ScoreRun:
    """Score every pair of a corpus.

    ``trees`` maps pair id -> (source bracket, paraphrase bracket); pairs
    without trees simply lack syntactic fields.  ``providers`` drive
    semantic columns named ``semantic_<provider>``.
    """
    if len(corpus) == 0:
        raise DataError("empty corpus")
    do_lexical = "lexical" in metrics
    do_syntax = "syntax" in metrics and trees is not None
    items = [
        (
            p.id,
            p.corpus_tag,
            p.source,
            p.paraphrase,
            trees[p.id][0] if do_syntax and p.id in trees else None,
            trees[p.id][1] if do_syntax and p.id in trees else None,
        )
        for p in corpus
    ]
    chunks = [items[i : i + chunk_size] for i in range(0, len(items), chunk_size)]
    args = [
        (c, scheme, do_lexical, do_syntax, strip_leaves, kermit_dim, kermit_lambda)
        for c in chunks
    ]
    if jobs <= 1 or len(chunks) <= 1:
        chunk_rows = [_score_chunk(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk_rows = list(pool.map(_score_chunk, args))
    rows = [row for chunk in chunk_rows for row in chunk]

    run = ScoreRun(rows=rows)

    if do_lexical:
        sums_c = [0, 0, 0, 0]
        sums_t = [0, 0, 0, 0]
        ref_len = hyp_len = 0
        for row in rows:
            c, t, r, h = row.pop("_bleu")
            for i in range(4):
                sums_c[i] += c[i]
                sums_t[i] += t[i]
            ref_len += r
            hyp_len += h
        run.corpus_level["corpus_bleu"] = 1.0 - lexical.bleu_from_stats(
            sums_c, sums_t, ref_len, hyp_len, smooth=False
        )
        run.corpus_level["corpus_bleu2"] = 1.0 - lexical.bleu_from_stats(
            sums_c, sums_t, ref_len, hyp_len, smooth=True
        )

    if "semantic" in metrics and providers:
        for provider in providers:
            sentences = []
            for p in corpus:
                sentences.extend((p.source, p.paraphrase))
            vectors = semantic.embed(provider, sentences)
            for i, p in enumerate(corpus):
                rows[i][f"semantic_{provider.name}"] = semantic.cosine(
                    vectors[2 * i], vectors[2 * i + 1]
                )
    return run


def write_rows_jsonl(run: ScoreRun, path) -> None:
    """Pair-level scores as deterministic JSONL (sorted keys)."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in run.rows:
            fh.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")
        if run.corpus_level:
            fh.write(
                json.dumps(
                    {"corpus_level": run.corpus_level}, ensure_ascii=False, sort_keys=True
                )
                + "\n"
            )
