"""Shared types for single-document extractors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields
from typing import Iterable, Mapping, NamedTuple, Sequence

from ..candidates import CandidatePhrase
from ..errors import ConfigError


class ExtractorId(str, enum.Enum):
    TFIDF = "TFIDF"
    KPMINER = "KPMINER"
    YAKE = "YAKE"
    TEXTRANK = "TEXTRANK"
    SINGLERANK = "SINGLERANK"
    POSITIONRANK = "POSITIONRANK"
    TOPICRANK = "TOPICRANK"
    MULTIPARTITERANK = "MULTIPARTITERANK"
    RAKE = "RAKE"
    COLLABRANK = "COLLABRANK"

    @classmethod
    def parse(cls, name: str) -> "ExtractorId":
        from ..errors import UnknownExtractor

        key = name.strip().upper().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise UnknownExtractor(f"unknown extractor {name!r}")


class Keyphrase(NamedTuple):
    surface: str
    key: str
    score: float


@dataclass(frozen=True)
class RankedKeyphraseList:
    items: tuple[Keyphrase, ...]
    source_id: str

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def keys(self) -> list[str]:
        return [item.key for item in self.items]

    def head(self, n: int) -> "RankedKeyphraseList":
        return RankedKeyphraseList(self.items[:n], self.source_id)


@dataclass(frozen=True)
class GraphParams:
    window: int
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    position_bias: bool = False
    weighted: bool = True

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass(frozen=True)
class ExtractorConfig:
    """Tunable parameters for every extractor (the ``[extractors]`` config section)."""

    max_phrase_len: int = 4
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    textrank_window: int = 2
    singlerank_window: int = 10
    positionrank_window: int = 10
    cluster_similarity: float = 0.25
    multipartite_alpha: float = 1.1
    kpminer_lasf: int = 3
    kpminer_cutoff: int = 400
    kpminer_alpha: float = 2.3
    kpminer_sigma: float = 3.0
    yake_window: int = 1
    rake_max_words: int = 3

    def __post_init__(self):
        positive = ("max_phrase_len", "max_iterations", "textrank_window", "singlerank_window",
                    "positionrank_window", "kpminer_lasf", "yake_window", "rake_max_words")
        for name in positive:
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if not 0.0 < self.damping < 1.0:
            raise ConfigError("damping must lie in (0, 1)")
        if self.tolerance <= 0 or self.kpminer_alpha <= 0 or self.kpminer_sigma <= 0:
            raise ConfigError("tolerance, kpminer_alpha and kpminer_sigma must be positive")
        if not 0.0 <= self.cluster_similarity <= 1.0:
            raise ConfigError("cluster_similarity must lie in [0, 1]")
        if self.kpminer_cutoff < 1 or self.multipartite_alpha < 0:
            raise ConfigError("kpminer_cutoff must be >= 1 and multipartite_alpha >= 0")

    @classmethod
    def from_mapping(cls, values: Mapping[str, str]) -> "ExtractorConfig":
        """Build from string values, rejecting unknown keys."""
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            if key not in types:
                raise ConfigError(f"unknown [extractors] key {key!r}")
            default = getattr(cls, key)
            try:
                kwargs[key] = type(default)(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {raw!r}") from exc
        return cls(**kwargs)

    def graph_params(self, window: int, *, position_bias=False, weighted=True) -> GraphParams:
        return GraphParams(
            window=window,
            damping=self.damping,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            position_bias=position_bias,
            weighted=weighted,
        )


DEFAULT_CONFIG = ExtractorConfig()


def rank_candidates(
    candidates: Iterable[CandidatePhrase],
    scores: Mapping[str, float],
    n: int | None,
    source_id: str,
) -> RankedKeyphraseList:
    """Order scored candidates: score descending, then first occurrence, then key."""
    scored = []
    for cand in candidates:
        key = cand.key
        if key not in scores:
            continue
        score = float(scores[key])
        if not math.isfinite(score):
            raise ValueError(f"non-finite score for {key!r}")
        scored.append((-score, cand.first_position, key, cand.surface))
    scored.sort()
    if n is not None:
        scored = scored[:n]
    return RankedKeyphraseList(
        tuple(Keyphrase(surface, key, -neg) for neg, _, key, surface in scored),
        source_id,
    )


def by_key(candidates: Sequence[CandidatePhrase]) -> dict[str, CandidatePhrase]:
    return {c.key: c for c in candidates}
