"""Corpus aggregation and table rendering.

Per-pair scores are averaged into MetricReport rows; a ScoreMatrix of
rows renders to markdown, CSV or JSON.  Percent-style metrics show two
decimals with a % sign; edit rates and tree distances are shown times
100 and raw respectively, mirroring the report table conventions.
Rounding is half-up at the rendering layer only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .errors import DataError

# metric ids rendered as value*100 with a trailing %
PERCENT_METRICS = {
    "bow_overlap",
    "token_jaccard",
    "corpus_bleu",
    "corpus_bleu2",
    "sentence_bleu",
    "google_bleu",
    "meteor",
    "rouge1",
    "rouge2",
    "rougeL",
    "kermit",
    "subtree_k",
    "node_pair_k",
}
# raw error rates rendered times 100 without a % sign
RATE_METRICS = {"ter", "wer", "character"}
# plain numbers rendered with two decimals
PLAIN_METRICS = {"ted_f", "ted_3", "semantic", "lexical", "syntactic", "grammatical"}

CORPUS_LEVEL_METRICS = {"corpus_bleu", "corpus_bleu2"}

SEMANTIC_TABLE = "semantic"
SYNTACTIC_TABLE = ("ted_f", "ted_3", "kermit", "subtree_k", "node_pair_k")
LEXICAL_TABLE = (
    "bow_overlap",
    "corpus_bleu",
    "corpus_bleu2",
    "sentence_bleu",
    "meteor",
    "rouge1",
    "rouge2",
    "rougeL",
    "token_jaccard",
    "ter",
    "wer",
    "character",
    "google_bleu",
)
JUDGE_TABLE = ("semantic", "lexical", "syntactic", "grammatical")


@dataclass
class MetricReport:
    system: str
    corpus_tag: str
    means: dict[str, float]
    pair_count: int
    corpus_level_ids: frozenset[str] = frozenset()


@dataclass
class ScoreMatrix:
    columns: list[str]
    rows: list[MetricReport] = field(default_factory=list)

    def add(self, report: MetricReport) -> None:
        missing = [c for c in self.columns if c not in report.means]
        if missing:
            raise DataError(f"row {report.system!r} missing metrics: {missing}")
        self.rows.append(report)


def aggregate(
    rows: list[dict],
    corpus_level: dict[str, float] | None = None,
    system: str = "",
    group_by_tag: bool = False,
) -> MetricReport | list[MetricReport]:
    """Arithmetic mean per metric over pair rows.

    Corpus-level metrics (corpus BLEU) are passed through unchanged, not
    re-averaged.  Mixed corpus tags require group_by_tag, otherwise the
    grouping would be ambiguous.
    """
    if not rows:
        raise DataError("no scored pairs to aggregate")
    tags = {r.get("corpus_tag", "") for r in rows}
    if len(tags) > 1 and not group_by_tag:
        raise DataError(
            f"ambiguous grouping: {len(tags)} corpus tags present; use group_by"
        )
    if group_by_tag:
        out = []
        for tag in sorted(tags):
            subset = [r for r in rows if r.get("corpus_tag", "") == tag]
            out.append(aggregate(subset, corpus_level, system=system))
        return out

    metric_ids = [
        k for k in rows[0] if k not in ("id", "corpus_tag") and not k.startswith("_")
    ]
    means: dict[str, float] = {}
    for mid in metric_ids:
        vals = [r[mid] for r in rows if mid in r]
        # fsum keeps the mean exactly permutation-invariant
        means[mid] = math.fsum(vals) / len(vals)
    corpus_ids = set()
    for mid, val in (corpus_level or {}).items():
        means[mid] = val
        corpus_ids.add(mid)
    return MetricReport(
        system=system,
        corpus_tag=next(iter(tags)),
        means=means,
        pair_count=len(rows),
        corpus_level_ids=frozenset(corpus_ids),
    )


def _metric_class(metric_id: str) -> str:
    base = metric_id
    if metric_id.startswith("semantic_"):
        return "percent"
    if base in PERCENT_METRICS:
        return "percent"
    if base in RATE_METRICS:
        return "rate"
    return "plain"


def format_value(metric_id: str, value: float) -> str:
    """Half-up rendering; internal values stay full precision."""
    klass = _metric_class(metric_id)
    scaled = Decimal(repr(value * 100.0 if klass in ("percent", "rate") else value))
    text = str(scaled.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
    return text + "%" if klass == "percent" else text


def render(matrix: ScoreMatrix, format: str = "markdown") -> str:
    """Deterministic table text in markdown, csv, or json."""
    if format == "markdown":
        lines = [
            "| System | " + " | ".join(matrix.columns) + " |",
            "|" + "---|" * (len(matrix.columns) + 1),
        ]
        for row in matrix.rows:
            cells = [format_value(c, row.means[c]) for c in matrix.columns]
            lines.append("| " + row.system + " | " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    if format == "csv":
        lines = ["system," + ",".join(matrix.columns)]
        for row in matrix.rows:
            cells = [format_value(c, row.means[c]) for c in matrix.columns]
            lines.append(row.system + "," + ",".join(cells))
        return "\n".join(lines) + "\n"
    if format == "json":
        obj = {
            "columns": matrix.columns,
            "rows": [
                {
                    "system": r.system,
                    "corpus_tag": r.corpus_tag,
                    "pair_count": r.pair_count,
                    "corpus_level_ids": sorted(r.corpus_level_ids),
                    "means": {c: r.means[c] for c in matrix.columns},
                }
                for r in matrix.rows
            ],
        }
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    raise ValueError(f"bad format: {format!r}")


def parse_matrix(text: str) -> ScoreMatrix:
    """Inverse of render(format='json')."""
    try:
        obj = json.loads(text)
        matrix = ScoreMatrix(columns=list(obj["columns"]))
        for r in obj["rows"]:
            matrix.add(
                MetricReport(
                    system=r["system"],
                    corpus_tag=r["corpus_tag"],
                    means=dict(r["means"]),
                    pair_count=int(r["pair_count"]),
                    corpus_level_ids=frozenset(r.get("corpus_level_ids", ())),
                )
            )
        return matrix
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise DataError(f"bad matrix JSON: {exc}") from exc
