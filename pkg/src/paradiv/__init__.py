"""paradiv: corpus-scale paraphrase pair scoring.

Semantic similarity (embedding cosine), lexical diversity (thirteen
overlap and edit-rate metrics), syntactic diversity (five constituency
tree metrics), output post-processing, and an LLM-judge harness.
"""

from .corpus import (
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
from .errors import DataError, ExternalServiceError, ParadivError
from .syntax import ParseTree, parse_bracket, to_bracket, tree_edit_distance

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "ParaphrasePair",
    "ParaphrasePool",
    "Rejection",
    "ParseTree",
    "DataError",
    "ExternalServiceError",
    "ParadivError",
    "build_pairs",
    "load_corpus",
    "normalize",
    "parse_llm_list",
    "parse_bracket",
    "save_corpus",
    "to_bracket",
    "tree_edit_distance",
    "__version__",
]
