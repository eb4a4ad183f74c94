import pytest
from hypothesis import given
from hypothesis import strategies as st

from paradiv.corpus import normalize
from paradiv.errors import DataError
from paradiv.postproc import CasingLexicon, dedup_outputs, restore_case


class TestRestoreCase:
    def test_source_casing_copied(self):
        assert restore_case("Paris is big", "paris is very big") == "Paris is very big"

    def test_sentence_initial_capitals(self):
        assert restore_case("", "hello. world.") == "Hello. World."

    def test_lexicon_longest_match(self):
        lex = CasingLexicon({"new york": "New York", "york": "York"})
        assert restore_case("", "i love new york", lex) == "I love New York"

    def test_first_source_occurrence_wins(self):
        # "IBM" appears cased two ways; the first occurrence is copied
        out = restore_case("IBM and ibm", "ibm shares")
        assert out == "IBM shares"

    def test_only_case_changes(self):
        source = "Paris is Big"
        gen = "the city of paris, is it big? yes!"
        out = restore_case(source, gen)
        assert out.lower() == gen.lower()
        assert len(out) == len(gen)

    @given(
        st.text(alphabet="abc ABC.", max_size=40),
        st.text(alphabet="abc .!?", max_size=40),
    )
    def test_normalized_fixed_point(self, source, gen):
        gen = gen.lower()
        assert normalize(restore_case(source, gen)) == normalize(gen)


class TestCasingLexicon:
    def test_validation(self):
        with pytest.raises(ValueError):
            CasingLexicon({"New york": "New York"})  # key not lowercase
        with pytest.raises(ValueError):
            CasingLexicon({"new york": "Old York"})  # not a casing variant

    def test_load_tsv(self, tmp_path):
        f = tmp_path / "lex.tsv"
        f.write_text("new york\tNew York\nnasa\tNASA\n")
        lex = CasingLexicon.load(f)
        assert len(lex) == 2
        assert restore_case("", "nasa launched", lex) == "NASA launched"

    def test_load_malformed(self, tmp_path):
        f = tmp_path / "lex.tsv"
        f.write_text("just-one-column\n")
        with pytest.raises(DataError, match="line 1"):
            CasingLexicon.load(f)


class TestDedupOutputs:
    def test_normalized_equality(self):
        assert dedup_outputs(["A b", "a  B", "c"]) == ["A b", "c"]

    def test_empty(self):
        assert dedup_outputs([]) == []

    def test_all_distinct_unchanged(self):
        xs = ["one", "two", "three"]
        assert dedup_outputs(xs) == xs

    @given(st.lists(st.text(alphabet="ab B", max_size=6), max_size=10))
    def test_idempotent(self, xs):
        once = dedup_outputs(xs)
        assert dedup_outputs(once) == once
