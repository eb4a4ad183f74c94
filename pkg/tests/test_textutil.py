import pytest
from hypothesis import given
from hypothesis import strategies as st

from paradiv.corpus import normalize
from paradiv.textutil import ngrams, tokenize


class TestTokenize:
    def test_whitespace(self):
        assert tokenize("the cat sat", "whitespace") == ["the", "cat", "sat"]

    def test_unicode_words_punct(self):
        assert tokenize("don't stop.", "unicode_words") == ["don", "'", "t", "stop", "."]

    def test_empty(self):
        assert tokenize("", "unicode_words") == []

    def test_bad_scheme(self):
        with pytest.raises(ValueError):
            tokenize("x", "bytes")

    @given(st.text(alphabet="ab c\t", max_size=40))
    def test_surrounding_whitespace_irrelevant(self, s):
        assert tokenize(normalize("  " + s + "\t")) == tokenize(normalize(s))


class TestNgrams:
    def test_unigrams(self):
        assert ngrams(["a", "b", "a"], 1) == {("a",): 2, ("b",): 1}

    def test_bigrams(self):
        assert ngrams(["a", "b", "a"], 2) == {("a", "b"): 1, ("b", "a"): 1}

    def test_too_short(self):
        assert ngrams(["a"], 2) == {}

    def test_zero_n(self):
        with pytest.raises(ValueError):
            ngrams(["a"], 0)

    @given(st.lists(st.sampled_from("abc"), max_size=12), st.integers(1, 5))
    def test_total_count(self, toks, n):
        assert sum(ngrams(toks, n).values()) == max(0, len(toks) - n + 1)
