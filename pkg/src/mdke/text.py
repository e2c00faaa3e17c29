"""Tokenization, sentence splitting, stemming and document frequency."""

from __future__ import annotations

import hashlib
import os
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EmptyDocument, ValidationError
from .porter import porter_stem_fixpoint

STOPWORDS_ENV = "MDKE_STOPWORDS"
ABBREVIATIONS_ENV = "MDKE_ABBREVIATIONS"

# Pinned checksums of the bundled lists; a mismatch means the package data
# was edited and results are no longer comparable.
BUNDLED_SHA256 = {
    "stopwords_en.txt": "220f9e4fde204eb4d4a216f4b5024633b61e41555809f95d9b12f0773be0a3f3",
    "abbreviations_en.txt": "4824bcfed9c5ab71094865bb3d435796161abbc64135bd9cbd74f2a9cdc69627",
}

_TOKEN_RE = re.compile(
    r"""
      (?:[^\W\d_]\.){2,}            # dotted acronyms: U.S., e.g.
    | \d+(?:[.,:/]\d+)+             # 3.5  1,000  10:30
    | [^\W_]+(?:[-'’][^\W_]+)* # words, hyphenated compounds, contractions
    """,
    re.VERBOSE,
)
_POSSESSIVE = ("'s", "’s")
_BLANK_LINE = re.compile(r"\n[ \t\r\f\v]*\n")
_TERMINAL = re.compile(r"[.!?]+[\"')\]’”]*\s")


def _read_list(text: str) -> frozenset[str]:
    return frozenset(
        line.strip().lower() for line in text.splitlines() if line.strip()
    )


def _load_list(name: str, override: str | os.PathLike | None) -> frozenset[str]:
    if override is not None:
        return _read_list(Path(override).read_text(encoding="utf-8"))
    raw = resources.files("mdke.data").joinpath(name).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != BUNDLED_SHA256[name]:
        raise ValidationError(f"bundled list {name} fails its checksum ({digest})")
    return _read_list(raw.decode("utf-8"))


@dataclass(frozen=True)
class Lexicon:
    stopwords: frozenset[str]
    abbreviations: frozenset[str]

    @classmethod
    def load(cls, stopwords_path=None, abbreviations_path=None) -> "Lexicon":
        """Load word lists; explicit paths beat environment variables beat bundled data."""
        stopwords_path = stopwords_path or os.environ.get(STOPWORDS_ENV) or None
        abbreviations_path = (
            abbreviations_path or os.environ.get(ABBREVIATIONS_ENV) or None
        )
        return cls(
            _load_list("stopwords_en.txt", stopwords_path),
            _load_list("abbreviations_en.txt", abbreviations_path),
        )

    @cached_property
    def stopword_stems(self) -> frozenset[str]:
        return frozenset(stem_word(w) for w in self.stopwords)

    def is_stop(self, surface: str, stem: str) -> bool:
        return surface.lower() in self.stopwords or stem in self.stopword_stems


_lexicon: Lexicon | None = None


def get_lexicon() -> Lexicon:
    global _lexicon
    if _lexicon is None:
        _lexicon = Lexicon.load()
    return _lexicon


def set_lexicon(lexicon: Lexicon | None) -> None:
    """Replace the process-wide lexicon (``None`` reloads defaults lazily)."""
    global _lexicon
    _lexicon = lexicon


def is_stopword(word: str) -> bool:
    return word.lower() in get_lexicon().stopwords


@lru_cache(maxsize=200_000)
def stem_word(word: str) -> str:
    """Lowercased Porter stem.

    Hyphenated compounds are stemmed part by part; parts that are not plain
    ASCII letters (numbers, contractions, acronyms) are only lowercased.
    """
    lowered = word.lower()
    parts = lowered.split("-")
    return "-".join(
        porter_stem_fixpoint(p) if p.isascii() and p.isalpha() else p
        for p in parts
    )


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    stem: str
    position: int
    sentence_index: int
    is_stopword: bool
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Document:
    id: str
    raw_text: str
    sentences: tuple[tuple[Token, ...], ...]

    @cached_property
    def tokens(self) -> tuple[Token, ...]:
        return tuple(t for s in self.sentences for t in s)

    @cached_property
    def stems(self) -> tuple[str, ...]:
        return tuple(t.stem for t in self.tokens)

    @cached_property
    def stem_set(self) -> frozenset[str]:
        return frozenset(self.stems)

    @cached_property
    def stem_positions(self) -> dict[str, list[int]]:
        index: dict[str, list[int]] = {}
        for i, s in enumerate(self.stems):
            index.setdefault(s, []).append(i)
        return index

    @cached_property
    def breaks_before(self) -> tuple[bool, ...]:
        """True where punctuation or a sentence boundary separates a token from its predecessor."""
        toks = self.tokens
        out = [True]
        for prev, tok in zip(toks, toks[1:]):
            gap = self.raw_text[prev.char_span[1] : tok.char_span[0]]
            out.append(
                prev.sentence_index != tok.sentence_index or bool(gap.strip())
            )
        return tuple(out)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class DocumentSet:
    topic_id: str
    documents: tuple[Document, ...]
    reference_summaries: tuple[Document, ...] = field(default=())

    def __post_init__(self):
        if not self.topic_id:
            raise ValidationError("topic_id must be non-empty")
        ids = [d.id for d in self.documents]
        if len(set(ids)) != len(ids):
            raise ValidationError(f"duplicate document ids in topic {self.topic_id}")
        object.__setattr__(self, "documents", tuple(self.documents))
        object.__setattr__(self, "reference_summaries", tuple(self.reference_summaries))


def word_spans(text: str) -> list[tuple[str, int, int]]:
    """Raw token matches as ``(surface, start, end)``, possessive ``'s`` trimmed."""
    out = []
    for m in _TOKEN_RE.finditer(text):
        surface, start, end = m.group(), m.start(), m.end()
        if surface.lower().endswith(_POSSESSIVE) and len(surface) > 2:
            surface, end = surface[:-2], end - 2
        out.append((surface, start, end))
    return out


def _is_boundary(text: str, prev: tuple[str, int, int], nxt: tuple[str, int, int], abbreviations) -> bool:
    gap = text[prev[2] : nxt[1]]
    if _BLANK_LINE.search(gap):
        return True
    m = _TERMINAL.match(gap)
    if m is None:
        return False
    first = nxt[0][0]
    if not (first.isupper() or first.isdigit()):
        return False
    if m.group().rstrip() == ".":
        word = prev[0]
        if word.lower() in abbreviations or (len(word) == 1 and word.isalpha()):
            return False
    return True


def tokenize(raw_text: str, doc_id: str = "doc", lexicon: Lexicon | None = None) -> Document:
    """Split ``raw_text`` into sentences of stemmed tokens.

    Sentences end at ``.``/``!``/``?`` followed by whitespace and a capital
    letter or digit (abbreviations and single-letter initials excepted) and
    at blank lines.
    """
    lex = lexicon or get_lexicon()
    spans = word_spans(raw_text)
    if not spans:
        raise EmptyDocument(f"document {doc_id!r} has no tokens")
    sentences: list[list[Token]] = [[]]
    for i, span in enumerate(spans):
        if i and _is_boundary(raw_text, spans[i - 1], span, lex.abbreviations):
            sentences.append([])
        surface = span[0]
        stem = stem_word(surface)
        sentences[-1].append(
            Token(
                surface=surface,
                stem=stem,
                position=i,
                sentence_index=len(sentences) - 1,
                is_stopword=lex.is_stop(surface, stem),
                char_span=(span[1], span[2]),
            )
        )
    return Document(doc_id, raw_text, tuple(tuple(s) for s in sentences))


def tokenize_set(
    topic_id: str,
    documents: Iterable[tuple[str, str]],
    summaries: Iterable[tuple[str, str]] = (),
    lexicon: Lexicon | None = None,
) -> DocumentSet:
    """Build a DocumentSet from ``(id, text)`` pairs."""
    return DocumentSet(
        topic_id,
        tuple(tokenize(text, doc_id, lexicon) for doc_id, text in documents),
        tuple(tokenize(text, sid, lexicon) for sid, text in summaries),
    )


def document_frequency(stem: str, docs: Sequence[Document]) -> int:
    if not docs:
        raise ValueError("document_frequency needs at least one document")
    return sum(1 for d in docs if stem in d.stem_set)
