"""Text normalization for LO statements.

Lowercases, splits on non-alphanumeric boundaries, and drops stop words and
pure-number tokens. Mixed letter/digit tokens such as "3d" survive on
purpose: the corpus has topics built around them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .catalog import FrameworkCatalog
from .errors import UnsupportedLanguage

STOPWORDS_VERSION = "en-v1"

# Unicode alphanumeric runs, underscore excluded.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_DIGITS_RE = re.compile(r"^[0-9]+$")


@dataclass(frozen=True)
class TokenizedDoc:
    lo_code: str
    tokens: tuple[str, ...]


def normalize_text(raw: str, stopwords: frozenset[str] | set[str]) -> list[str]:
    """Tokenize one statement; survivors keep their original order."""
    out = []
    for tok in _TOKEN_RE.findall(raw.lower()):
        if _DIGITS_RE.match(tok):
            continue
        if tok in stopwords:
            continue
        out.append(tok)
    return out


def default_stopwords(language_tag: str) -> frozenset[str]:
    """Load the vendored stop-word list for a language tag (only "en" for now)."""
    if language_tag != "en":
        raise UnsupportedLanguage(language_tag)
    text = resources.files("curralign.data").joinpath("stopwords_en.txt").read_text("utf-8")
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.add(word)
    return frozenset(words)


def tokenize_catalog(catalog: FrameworkCatalog,
                     stopwords: frozenset[str] | set[str]) -> list[TokenizedDoc]:
    return [TokenizedDoc(lo.code, tuple(normalize_text(lo.text, stopwords)))
            for lo in catalog.los]
