"""LLM-as-judge harness.

Builds a fixed four-aspect Likert prompt per pair, sends it to a
chat-completion endpoint (or reads canned responses offline), parses the
JSON ratings, and aggregates per-dimension means.  A single bad pair
never aborts a run; failures are recorded with enumerated reasons.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from string import Template

from .corpus import Corpus, ParaphrasePair
from .errors import DataError, ExternalServiceError

RATING_KEYS = (
    "Semantic Similarity",
    "Lexical Diversity",
    "Syntactic Diversity",
    "Grammatical Correctness",
)

JUDGE_AUTH_ENV = "PARADIV_JUDGE_TOKEN"


def prompt_template() -> str:
    return (
        resources.files("paradiv")
        .joinpath("resources/judge_prompt.txt")
        .read_text(encoding="utf-8")
    )


def build_prompt(pair: ParaphrasePair) -> str:
    """Instantiate the rating prompt; substitution is literal, one pass."""
    return Template(prompt_template()).substitute(
        source_text=pair.source, paraphrase=pair.paraphrase
    )


@dataclass(frozen=True)
class LikertRating:
    semantic: int
    lexical: int
    syntactic: int
    grammatical: int

    def __post_init__(self):
        for name, v in self.as_dict().items():
            if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= 5:
                raise ValueError(f"{name} rating out of range: {v!r}")

    def as_dict(self) -> dict[str, int]:
        return {
            "semantic": self.semantic,
            "lexical": self.lexical,
            "syntactic": self.syntactic,
            "grammatical": self.grammatical,
        }


class JudgeParseError(ValueError):
    """reason is one of: malformed_json, missing_key, out_of_range."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


def parse_rating(response: str) -> LikertRating:
    """Extract and validate the first JSON object in a judge response."""
    decoder = json.JSONDecoder()
    obj = None
    pos = response.find("{")
    while pos != -1:
        try:
            candidate, _ = decoder.raw_decode(response, pos)
        except json.JSONDecodeError:
            pos = response.find("{", pos + 1)
            continue
        if isinstance(candidate, dict):
            obj = candidate
            break
        pos = response.find("{", pos + 1)
    if obj is None:
        raise JudgeParseError("malformed_json", "no JSON object found")
    extra = set(obj) - set(RATING_KEYS)
    if extra:
        raise JudgeParseError("malformed_json", f"unexpected keys: {sorted(extra)}")
    values = []
    for key in RATING_KEYS:
        if key not in obj:
            raise JudgeParseError("missing_key", key)
        v = obj[key]
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= 5:
            raise JudgeParseError("out_of_range", f"{key}={v!r}")
        values.append(v)
    return LikertRating(*values)


@dataclass(frozen=True)
class JudgeResult:
    pair_id: str
    rating: LikertRating | None
    failure_reason: str | None  # malformed_json | missing_key | out_of_range | transport
    raw_response: str
    attempts: int


@dataclass
class JudgeConfig:
    endpoint: str = ""
    model: str = "gpt-4"
    retries: int = 2
    parallelism: int = 4
    timeout: float = 60.0
    offline_fixtures: dict[str, str] | None = None
    auth_env: str = JUDGE_AUTH_ENV


def load_fixtures(path) -> dict[str, str]:
    """JSONL of {"pair_id", "response"} used by --offline runs."""
    out: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                out[str(obj["pair_id"])] = obj["response"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{path}: bad fixture at line {lineno}") from exc
    return out


def _request(config: JudgeConfig, prompt: str) -> str:
    import requests

    headers = {}
    token = os.environ.get(config.auth_env)
    if token:
        headers["Authorization"] = f"Bearer {token}"
    body = {
        "model": config.model,
        "messages": [{"role": "user", "content": prompt}],
        "temperature": 0,
    }
    try:
        resp = requests.post(config.endpoint, json=body, headers=headers, timeout=config.timeout)
    except requests.RequestException as exc:
        raise ExternalServiceError(str(exc)) from exc
    if resp.status_code != 200:
        raise ExternalServiceError(f"HTTP {resp.status_code}")
    try:
        return resp.json()["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise ExternalServiceError("malformed completion response") from exc


def _judge_one(pair: ParaphrasePair, config: JudgeConfig) -> JudgeResult:
    prompt = build_prompt(pair)
    offline = config.offline_fixtures is not None
    max_attempts = 1 if offline else config.retries + 1
    raw = ""
    reason = "transport"
    for attempt in range(1, max_attempts + 1):
        if offline:
            raw = config.offline_fixtures.get(pair.id, "")
            if not raw:
                return JudgeResult(pair.id, None, "transport", "", attempt)
        else:
            try:
                raw = _request(config, prompt)
            except ExternalServiceError as exc:
                raw, reason = str(exc), "transport"
                continue
        try:
            rating = parse_rating(raw)
            return JudgeResult(pair.id, rating, None, raw, attempt)
        except JudgeParseError as exc:
            reason = exc.reason
    return JudgeResult(pair.id, None, reason, raw, max_attempts)


def judge_corpus(
    corpus: Corpus, config: JudgeConfig
) -> tuple[list[JudgeResult], dict[str, float | int]]:
    """Judge every pair; returns (results sorted by pair_id, aggregate).

    The aggregate holds per-dimension arithmetic means over successful
    ratings plus success_count and pair_count; failed pairs are excluded
    from the means.
    """
    pairs = list(corpus)
    width = max(1, config.parallelism)
    if width == 1 or len(pairs) <= 1:
        results = [_judge_one(p, config) for p in pairs]
    else:
        with ThreadPoolExecutor(max_workers=width) as pool:
            results = list(pool.map(lambda p: _judge_one(p, config), pairs))
    results.sort(key=lambda r: r.pair_id)
    ok = [r.rating for r in results if r.rating is not None]
    aggregate: dict[str, float | int] = {
        "pair_count": len(pairs),
        "success_count": len(ok),
    }
    for dim in ("semantic", "lexical", "syntactic", "grammatical"):
        aggregate[dim] = (
            sum(r.as_dict()[dim] for r in ok) / len(ok) if ok else float("nan")
        )
    return results, aggregate


def write_results(results: list[JudgeResult], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in results:
            fh.write(
                json.dumps(
                    {
                        "pair_id": r.pair_id,
                        "rating": r.rating.as_dict() if r.rating else None,
                        "failure_reason": r.failure_reason,
                        "raw_response": r.raw_response,
                        "attempts": r.attempts,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )
