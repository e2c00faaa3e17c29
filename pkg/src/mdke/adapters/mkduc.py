"""Conversion of the upstream MK-DUC-01 release into the native dataset format.

Two source layouts are accepted:

* a JSON file (or a directory holding exactly one ``*.json``) mapping each
  topic id to ``{"documents": {doc_id: text, ...}, "keyphrases": [[variant,
  ...], ...]}``; documents may also be a list of ``{"id", "text"}`` objects,
  and a keyphrase may be a bare string;
* a directory with one sub-directory per topic holding ``docs/*.txt``,
  optional ``summaries/*.txt`` and ``gold.txt`` with one entry per line and
  variants separated by `` | ``.

Everything upstream-specific lives here so format drift stays contained.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import ParseError

VARIANT_SEP = "|"


def _variants(item) -> list[str]:
    if isinstance(item, str):
        return [item.strip()]
    if isinstance(item, list) and all(isinstance(v, str) for v in item):
        return [v.strip() for v in item if v.strip()]
    raise ParseError(f"unrecognised keyphrase entry {item!r}")


def _documents(raw) -> list[dict]:
    if isinstance(raw, dict):
        return [{"id": str(k), "text": v} for k, v in raw.items()]
    if isinstance(raw, list):
        return [{"id": str(d["id"]), "text": d["text"]} for d in raw]
    raise ParseError("documents must be a mapping or a list")


def _from_json(path: Path, name: str) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict) and "topics" in data and isinstance(data["topics"], list):
        return data  # already native
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected an object keyed by topic id")
    topics = []
    for tid in sorted(data):
        topic = data[tid]
        try:
            entry = {
                "topic_id": str(tid),
                "documents": _documents(topic["documents"]),
                "gold": [{"variants": _variants(k)} for k in topic["keyphrases"]],
            }
        except (KeyError, TypeError) as exc:
            raise ParseError(f"{path}: topic {tid}: missing or malformed field {exc}") from exc
        if "summaries" in topic:
            entry["summaries"] = _documents(topic["summaries"])
        topics.append(entry)
    return {"name": name, "topics": topics}


def _read_texts(folder: Path) -> list[dict]:
    if not folder.is_dir():
        return []
    return [
        {"id": p.stem, "text": p.read_text(encoding="utf-8")}
        for p in sorted(folder.glob("*.txt"))
    ]


def _from_tree(root: Path, name: str) -> dict:
    topics = []
    for topic_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        gold_file = topic_dir / "gold.txt"
        if not gold_file.exists():
            continue
        gold = []
        for line in gold_file.read_text(encoding="utf-8").splitlines():
            variants = [v.strip() for v in line.split(VARIANT_SEP) if v.strip()]
            if variants:
                gold.append({"variants": variants})
        docs = _read_texts(topic_dir / "docs")
        if not docs:
            raise ParseError(f"{topic_dir}: no documents under docs/")
        topics.append({
            "topic_id": topic_dir.name,
            "documents": docs,
            "summaries": _read_texts(topic_dir / "summaries"),
            "gold": gold,
        })
    if not topics:
        raise ParseError(f"{root}: no topic directories with a gold.txt")
    return {"name": name, "topics": topics}


def import_mkduc(source: str | Path, name: str = "MK-DUC-01") -> dict:
    """Native-format dataset dict built from an upstream release at ``source``."""
    source = Path(source)
    if source.is_file():
        return _from_json(source, name)
    if not source.is_dir():
        raise ParseError(f"{source} does not exist")
    jsons = sorted(source.glob("*.json"))
    if len(jsons) == 1:
        return _from_json(jsons[0], name)
    return _from_tree(source, name)
