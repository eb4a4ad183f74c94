"""Command-line entry point.

Subcommands: ingest, pairs, postprocess, score, judge, report.  A TOML
config file can mirror any flag (section per subcommand); explicit flags
win.  Exit codes: 0 ok, 1 usage error, 2 data error, 3 external-service
error.
"""

from __future__ import annotations

import json
import sys
try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

import click

from . import corpus as corpus_mod
from . import judge as judge_mod
from . import postproc, report, score, semantic, syntax
from .errors import DataError, ExternalServiceError


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="TOML file mirroring subcommand flags; flags win.")
@click.pass_context
def cli(ctx, config_path):
    if config_path:
        with open(config_path, "rb") as fh:
            ctx.default_map = tomllib.load(fh)


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["tsv", "jsonl"]), required=True)
@click.option("--header", is_flag=True, default=False)
@click.option("--out", "out_path", required=True, type=click.Path())
def ingest(in_path, fmt, header, out_path):
    """Load a raw pair file, dedup, write a normalized corpus JSONL."""
    c = corpus_mod.load_corpus(in_path, fmt, header=header)
    corpus_mod.save_corpus(c, out_path, "jsonl")
    click.echo(f"{len(c)} pairs, {c.dropped_duplicates} duplicates dropped", err=True)


@cli.command()
@click.option("--responses", "responses_path", required=True, type=click.Path(exists=True),
              help="JSONL of {source, response} raw augmentation outputs.")
@click.option("--mode", type=click.Choice(["source_to_each", "all_unique"]),
              default="source_to_each", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def pairs(responses_path, mode, out_path):
    """Parse numbered-list responses into pools and expand into pairs."""
    out = corpus_mod.Corpus(name=out_path)
    rejections = []
    n = 0
    with open(responses_path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                source, response = obj["source"], obj["response"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{responses_path}: bad record at line {lineno}") from exc
            parsed = corpus_mod.parse_llm_list(response)
            if isinstance(parsed, corpus_mod.Rejection):
                rejections.append(parsed)
                continue
            # drop list items that duplicate the source or each other
            seen = {corpus_mod.normalize(source)}
            keep = []
            for item in parsed:
                key = corpus_mod.normalize(item)
                if key not in seen:
                    seen.add(key)
                    keep.append(item)
            if not keep:
                rejections.append(corpus_mod.Rejection("unparseable", response))
                continue
            pool = corpus_mod.ParaphrasePool(source, keep)
            for pair in corpus_mod.build_pairs(pool, mode, id_prefix=f"g{n}_"):
                out.add(pair)
            n += 1
    corpus_mod.save_corpus(out, out_path, "jsonl")
    corpus_mod.write_rejections(rejections, str(out_path) + ".rejects.jsonl")
    click.echo(
        f"{len(out)} pairs from {n} pools, {len(rejections)} rejections", err=True
    )


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True),
              help="JSONL of {source, candidates} lowercase generations.")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
def postprocess(in_path, lexicon_path, out_path):
    """Restore casing and drop duplicate candidates."""
    lexicon = postproc.CasingLexicon.load(lexicon_path) if lexicon_path else None
    with open(in_path, encoding="utf-8") as fh, open(out_path, "w", encoding="utf-8") as out:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
                source, candidates = obj["source"], obj["candidates"]
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{in_path}: bad record at line {lineno}") from exc
            outputs = [
                postproc.restore_case(source, c, lexicon)
                for c in postproc.dedup_outputs(candidates)
            ]
            out.write(
                json.dumps({"source": source, "outputs": outputs}, ensure_ascii=False)
                + "\n"
            )


@cli.command(name="score")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["tsv", "jsonl"]), default="jsonl",
              show_default=True)
@click.option("--metrics", default="lexical,syntax,semantic", show_default=True)
@click.option("--trees", "trees_path", type=click.Path(exists=True), default=None)
@click.option("--provider", "provider_specs", multiple=True,
              help="name=kind:location (file/http/test_hash); repeatable.")
@click.option("--jobs", default=1, show_default=True)
@click.option("--scheme", type=click.Choice(["whitespace", "unicode_words"]),
              default="unicode_words", show_default=True)
@click.option("--strip-leaves", is_flag=True, default=False)
@click.option("--group-by", "group_by", is_flag=True, default=False)
@click.option("--system", default="system", show_default=True)
@click.option("--out-pairs", "pairs_out", type=click.Path(), default=None,
              help="Write pair-level scores as JSONL.")
@click.option("--out-matrix", "matrix_out", type=click.Path(), default=None,
              help="Write the aggregated matrix as JSON.")
@click.option("--table-format", type=click.Choice(["markdown", "csv", "json"]),
              default="markdown", show_default=True)
def score_cmd(in_path, fmt, metrics, trees_path, provider_specs, jobs, scheme,
              strip_leaves, group_by, system, pairs_out, matrix_out, table_format):
    """Run the metric battery over a corpus and print aggregate tables."""
    wanted = {m.strip() for m in metrics.split(",") if m.strip()}
    unknown = wanted - {"lexical", "syntax", "semantic"}
    if unknown:
        raise click.UsageError(f"unknown metrics: {sorted(unknown)}")
    c = corpus_mod.load_corpus(in_path, fmt)
    trees = syntax.load_tree_file(trees_path) if trees_path else None
    tree_strings = None
    if trees is not None:
        tree_strings = {
            k: (syntax.to_bracket(a), syntax.to_bracket(b)) for k, (a, b) in trees.items()
        }
    providers = [semantic.parse_provider_spec(s) for s in provider_specs]
    run = score.score_corpus(
        c,
        trees=tree_strings,
        providers=providers,
        metrics=wanted,
        jobs=jobs,
        scheme=scheme,
        strip_leaves=strip_leaves,
    )
    if pairs_out:
        score.write_rows_jsonl(run, pairs_out)
    reports = report.aggregate(
        run.rows, run.corpus_level, system=system, group_by_tag=group_by
    )
    if not isinstance(reports, list):
        reports = [reports]
    columns = [
        k for k in sorted(reports[0].means) if k not in ("id", "corpus_tag")
    ]
    matrix = report.ScoreMatrix(columns=columns)
    for r in reports:
        matrix.add(r)
    if matrix_out:
        with open(matrix_out, "w", encoding="utf-8") as fh:
            fh.write(report.render(matrix, "json"))
    click.echo(report.render(matrix, table_format), nl=False)


@cli.command(name="judge")
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["tsv", "jsonl"]), default="jsonl",
              show_default=True)
@click.option("--endpoint", default="")
@click.option("--model", default="gpt-4", show_default=True)
@click.option("--offline", "offline_path", type=click.Path(exists=True), default=None,
              help="Fixtures JSONL mapping pair_id to canned response.")
@click.option("--retries", default=2, show_default=True)
@click.option("--parallelism", default=4, show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def judge_cmd(in_path, fmt, endpoint, model, offline_path, retries, parallelism, out_path):
    """Rate every pair with the four-aspect Likert judge."""
    if not endpoint and not offline_path:
        raise click.UsageError("need --endpoint or --offline")
    c = corpus_mod.load_corpus(in_path, fmt)
    config = judge_mod.JudgeConfig(
        endpoint=endpoint,
        model=model,
        retries=retries,
        parallelism=parallelism,
        offline_fixtures=judge_mod.load_fixtures(offline_path) if offline_path else None,
    )
    results, aggregate = judge_mod.judge_corpus(c, config)
    if out_path:
        judge_mod.write_results(results, out_path)
    click.echo(json.dumps(aggregate, sort_keys=True))


@cli.command(name="report")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True),
              help="Matrix JSON produced by score --out-matrix.")
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv", "json"]),
              default="markdown", show_default=True)
def report_cmd(matrix_path, fmt):
    """Re-render a stored score matrix."""
    with open(matrix_path, encoding="utf-8") as fh:
        matrix = report.parse_matrix(fh.read())
    click.echo(report.render(matrix, fmt), nl=False)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    except ExternalServiceError as exc:
        click.echo(f"external service error: {exc}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
