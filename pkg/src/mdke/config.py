"""Run configuration: INI config file plus command-line overrides."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ConfigError, UnknownExtractor
from .evaluation import DEFAULT_K, MatchPolicy
from .extractors import ExtractorConfig, ExtractorId
from .multidoc import DEFAULT_N_PER_DOC

BAYATMAKOU = "BAYATMAKOU"
MODES = ("concat", "merge")
DEFAULT_TRUNC = 20

RUN_KEYS = {
    "dataset", "extractors", "modes", "k", "trunc", "policy",
    "output", "jobs", "n_per_doc", "query", "strict",
}
PATH_KEYS = {"stopwords", "abbreviations"}


def parse_extractor(name: str) -> str:
    """Canonical extractor label: an ExtractorId value or BAYATMAKOU."""
    if name.strip().upper() == BAYATMAKOU:
        return BAYATMAKOU
    try:
        return ExtractorId.parse(name).value
    except UnknownExtractor as exc:
        raise ConfigError(str(exc)) from exc


def parse_k(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"bad k list {text!r}") from exc
    if not values or any(v < 1 for v in values) or list(values) != sorted(set(values)):
        raise ConfigError(f"k values must be positive and strictly ascending: {text!r}")
    return values


def parse_trunc(text: str | int | None) -> int | None:
    if text is None or str(text).strip().lower() in ("none", "full", ""):
        return None
    try:
        value = int(text)
    except ValueError as exc:
        raise ConfigError(f"bad trunc value {text!r}") from exc
    if value < 1:
        raise ConfigError("trunc must be >= 1 or 'none'")
    return value


def parse_policy(text: str) -> MatchPolicy:
    try:
        return MatchPolicy(text.strip().lower())
    except ValueError as exc:
        raise ConfigError(f"policy must be 'exact' or 'cluster', not {text!r}") from exc


def _split(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


@dataclass(frozen=True)
class RunConfig:
    dataset_path: Path | None = None
    extractors: tuple[str, ...] = tuple(e.value for e in ExtractorId) + (BAYATMAKOU,)
    modes: tuple[str, ...] = MODES
    k_values: tuple[int, ...] = DEFAULT_K
    trunc: int | None = DEFAULT_TRUNC
    policy: MatchPolicy = MatchPolicy.EXACT_STEM
    extractor_config: ExtractorConfig = field(default_factory=ExtractorConfig)
    output_dir: Path = Path("results")
    jobs: int = 1
    n_per_doc: int = DEFAULT_N_PER_DOC
    query: str | None = None
    strict: bool = True
    stopwords: Path | None = None
    abbreviations: Path | None = None

    def __post_init__(self):
        if not self.extractors:
            raise ConfigError("at least one extractor is required")
        if not self.modes:
            raise ConfigError("at least one mode is required")
        for mode in self.modes:
            if mode not in MODES:
                raise ConfigError(f"unknown mode {mode!r}")
        if not self.k_values or list(self.k_values) != sorted(set(self.k_values)):
            raise ConfigError("k values must be non-empty and strictly ascending")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.n_per_doc < 1:
            raise ConfigError("n_per_doc must be >= 1")

    def with_overrides(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _run_values(section: Mapping[str, str], base: Path) -> dict:
    unknown = set(section) - RUN_KEYS
    if unknown:
        raise ConfigError(f"unknown [run] keys: {sorted(unknown)}")
    out: dict = {}
    if "dataset" in section:
        out["dataset_path"] = base / section["dataset"]
    if "extractors" in section:
        out["extractors"] = tuple(parse_extractor(e) for e in _split(section["extractors"]))
    if "modes" in section:
        out["modes"] = tuple(m.lower() for m in _split(section["modes"]))
    if "k" in section:
        out["k_values"] = parse_k(section["k"])
    if "trunc" in section:
        out["trunc"] = parse_trunc(section["trunc"])
    if "policy" in section:
        out["policy"] = parse_policy(section["policy"])
    if "output" in section:
        out["output_dir"] = base / section["output"]
    try:
        if "jobs" in section:
            out["jobs"] = int(section["jobs"])
        if "n_per_doc" in section:
            out["n_per_doc"] = int(section["n_per_doc"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "query" in section:
        out["query"] = section["query"]
    if "strict" in section:
        out["strict"] = section["strict"].strip().lower() in ("1", "true", "yes", "on")
    return out


def load_config(path: str | Path | None, base: Path | None = None) -> RunConfig:
    """Read an INI file with optional ``[run]``, ``[extractors]`` and ``[paths]`` sections.

    Relative paths inside the file resolve against ``base`` (the working
    directory root).  Unknown sections or keys are errors.
    """
    base = base or Path.cwd()
    if path is None:
        return RunConfig(output_dir=base / "results")
    path = Path(path)
    if not path.is_absolute():
        path = base / path
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    unknown = set(parser.sections()) - {"run", "extractors", "paths"}
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    values: dict = {"output_dir": base / "results"}
    if parser.has_section("run"):
        values.update(_run_values(dict(parser["run"]), base))
    if parser.has_section("extractors"):
        values["extractor_config"] = ExtractorConfig.from_mapping(dict(parser["extractors"]))
    if parser.has_section("paths"):
        paths = dict(parser["paths"])
        unknown = set(paths) - PATH_KEYS
        if unknown:
            raise ConfigError(f"unknown [paths] keys: {sorted(unknown)}")
        for key, raw in paths.items():
            values[key] = base / raw
    return RunConfig(**values)


def parse_extractor_list(items: Sequence[str]) -> tuple[str, ...]:
    return tuple(parse_extractor(e) for item in items for e in _split(item))
