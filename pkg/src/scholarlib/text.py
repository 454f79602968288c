"""Tokenization shared by the mock DL, social search, and term matching.

One rule everywhere: case-fold, split on non-alphanumerics, no stemming.
Keeping a single definition makes every matching operation oracle-testable.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Case-folded alphanumeric tokens of ``text``, in order, with repeats."""
    return _TOKEN_RE.findall(text.casefold())


def token_set(*parts: str) -> set[str]:
    """Union of tokens over several text fragments."""
    out: set[str] = set()
    for part in parts:
        out.update(tokenize(part))
    return out


def match_count(query_tokens: set[str], doc_tokens: set[str]) -> int:
    """Number of distinct query tokens present in the document tokens."""
    return len(query_tokens & doc_tokens)
