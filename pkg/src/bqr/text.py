"""Shared tokenizer.

Single source of truth: the index, the bag-of-words vectors and the
embedding lookups must all split text the same way or relevance scores
silently drift.
"""

import re

# Unicode alphanumerics, underscore excluded.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split on any non-alphanumeric character; lowercase by default."""
    if lowercase:
        text = text.lower()
    return _TOKEN_RE.findall(text)
