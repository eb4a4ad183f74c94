import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from paradiv.corpus import (
    Corpus,
    ParaphrasePair,
    ParaphrasePool,
    Rejection,
    build_pairs,
    load_corpus,
    normalize,
    parse_llm_list,
    save_corpus,
)
from paradiv.errors import DataError


class TestNormalize:
    def test_collapse_and_lower(self):
        assert normalize("The  Cat ") == "the cat"

    def test_nfc_stable(self):
        assert normalize("Café") == "café"
        assert normalize("Café") == "café"  # NFD input folds to NFC

    def test_empty(self):
        assert normalize("") == ""

    @given(st.text(max_size=80))
    def test_idempotent(self, s):
        assert normalize(normalize(s)) == normalize(s)


class TestParseLlmList:
    def test_basic(self):
        assert parse_llm_list("1. foo\n2. bar") == ["foo", "bar"]

    def test_paren_markers(self):
        assert parse_llm_list("1) foo\n2) bar") == ["foo", "bar"]

    def test_error_sentinel(self):
        r = parse_llm_list("Error")
        assert isinstance(r, Rejection) and r.reason == "non_english"
        assert parse_llm_list("  error \n").reason == "non_english"

    def test_unparseable(self):
        r = parse_llm_list("no list here")
        assert isinstance(r, Rejection) and r.reason == "unparseable"

    def test_unknown_markers_rejected(self):
        assert isinstance(parse_llm_list("- foo\n- bar"), Rejection)


class TestBuildPairs:
    def test_source_to_each(self):
        pairs = build_pairs(ParaphrasePool("s", ["a", "b"]), "source_to_each")
        assert [(p.source, p.paraphrase) for p in pairs] == [("s", "a"), ("s", "b")]

    def test_all_unique(self):
        pairs = build_pairs(ParaphrasePool("s", ["a", "b"]), "all_unique")
        assert [(p.source, p.paraphrase) for p in pairs] == [
            ("s", "a"),
            ("s", "b"),
            ("a", "b"),
        ]

    def test_pool_rejects_normalized_duplicate(self):
        with pytest.raises(ValueError):
            ParaphrasePool("s", ["a cat", "A  cat"])

    def test_pool_rejects_source_copy(self):
        with pytest.raises(ValueError):
            ParaphrasePool("the dog", ["The  Dog"])

    def test_empty_pool(self):
        assert build_pairs(ParaphrasePool("s", []), "all_unique") == []

    @given(st.lists(st.sampled_from(["aa", "bb", "cc", "dd"]), unique=True, max_size=4))
    def test_no_self_or_reverse_pairs(self, paras):
        pairs = build_pairs(ParaphrasePool("src", paras), "all_unique")
        keys = set()
        for p in pairs:
            k = (normalize(p.source), normalize(p.paraphrase))
            assert k[0] != k[1]
            assert (k[1], k[0]) not in keys
            keys.add(k)


class TestLoadCorpus:
    def test_tsv_dedup(self, tmp_path):
        f = tmp_path / "c.tsv"
        f.write_text("a cat\tthe cat\na cat\tthe cat\n")
        c = load_corpus(f, "tsv")
        assert len(c) == 1
        assert c.dropped_duplicates == 1

    def test_jsonl_missing_key(self, tmp_path):
        f = tmp_path / "c.jsonl"
        f.write_text('{"source": "a"}\n')
        with pytest.raises(DataError, match="line 1"):
            load_corpus(f, "jsonl")

    def test_order_preserved(self, tmp_path):
        f = tmp_path / "c.tsv"
        f.write_text("s1\tp1\ns2\tp2\ns3\tp3\n")
        c = load_corpus(f, "tsv")
        assert [p.source for p in c] == ["s1", "s2", "s3"]

    def test_empty_file(self, tmp_path):
        f = tmp_path / "c.tsv"
        f.write_text("")
        assert len(load_corpus(f, "tsv")) == 0

    def test_malformed_tsv_names_line(self, tmp_path):
        f = tmp_path / "c.tsv"
        f.write_text("a\tb\nonly-one-column\n")
        with pytest.raises(DataError, match="line 2"):
            load_corpus(f, "tsv")

    def test_round_trip_fixed_point(self, tmp_path):
        f = tmp_path / "c.jsonl"
        rows = [
            {"id": "x1", "source": "A cat", "paraphrase": "a feline", "corpus_tag": "mrpc"},
            {"id": "x2", "source": "dogs run", "paraphrase": "dogs sprint", "corpus_tag": "qqp"},
        ]
        f.write_text("".join(json.dumps(r) + "\n" for r in rows))
        c1 = load_corpus(f, "jsonl")
        out = tmp_path / "out.jsonl"
        save_corpus(c1, out, "jsonl")
        c2 = load_corpus(out, "jsonl")
        assert [(p.id, p.source, p.paraphrase, p.corpus_tag) for p in c1] == [
            (p.id, p.source, p.paraphrase, p.corpus_tag) for p in c2
        ]
        out2 = tmp_path / "out2.jsonl"
        save_corpus(c2, out2, "jsonl")
        assert out.read_text() == out2.read_text()


class TestCorpusInvariants:
    def test_duplicate_id_rejected(self):
        c = Corpus()
        c.add(ParaphrasePair("a", "x y", "y x"))
        with pytest.raises(DataError):
            c.add(ParaphrasePair("a", "p q", "q p"))

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            ParaphrasePair("a", "  ", "ok")
