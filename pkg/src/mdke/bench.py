"""Benchmark grid runner and table output."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .config import BAYATMAKOU, RunConfig
from .dataset import BenchmarkDataset, Topic
from .errors import MdkeError
from .evaluation import avg_keyphrase_length, evaluate
from .extractors import ExtractorConfig, ExtractorId
from .multidoc import TopicKeyphrases, bayatmakou_extract, concat_extract, merge_extract
from .text import Lexicon, set_lexicon

log = logging.getLogger(__name__)

TABLE_FORMATS = ("csv", "markdown")


def supports(extractor: str, mode: str) -> bool:
    """CollabRank and the query-salience RAKE baseline only run in Merge mode."""
    if extractor in (BAYATMAKOU, ExtractorId.COLLABRANK.value):
        return mode == "merge"
    return True


def run_topic(
    extractor: str,
    mode: str,
    topic: Topic,
    n: int,
    n_per_doc: int,
    config: ExtractorConfig,
    query: str | None = None,
) -> TopicKeyphrases:
    """Predicted keyphrases for one topic under one (extractor, mode) cell."""
    if extractor == BAYATMAKOU:
        return bayatmakou_extract(topic.docs, query if query is not None else topic.query, n, config)
    if mode == "concat":
        return concat_extract(extractor, topic.docs, n, config)
    return merge_extract(extractor, topic.docs, n_per_doc, n, config)


@dataclass(frozen=True)
class ResultTable:
    rows: tuple[tuple[str, str], ...]  # (extractor, mode)
    columns: tuple[str, ...]
    cells: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(set(self.rows)) != len(self.rows) or len(set(self.columns)) != len(self.columns):
            raise ValueError("row and column labels must be unique")
        if len(self.cells) != len(self.rows) or any(len(r) != len(self.columns) for r in self.cells):
            raise ValueError("cell grid does not match the labels")


def table_columns(k_values: Sequence[int]) -> tuple[str, ...]:
    return tuple(f"F1@{k}" for k in k_values) + tuple(f"uF1@{k}" for k in k_values)


def format_cell(value: float) -> str:
    return f"{value:.4g}"


def emit_table(table: ResultTable, fmt: str) -> str:
    """Render as CSV or a Markdown pipe table, one row per (extractor, mode)."""
    header = ["extractor", "mode", *table.columns]
    body = [[e, m, *(format_cell(v) for v in row)] for (e, m), row in zip(table.rows, table.cells)]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in body]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


def _cells(cfg: RunConfig) -> list[tuple[str, str]]:
    # Mode-major order keeps each mode's rows contiguous.
    return [(e, m) for m in cfg.modes for e in cfg.extractors if supports(e, m)]


def _init_worker(lexicon: Lexicon) -> None:
    set_lexicon(lexicon)


def _work(args):
    extractor, mode, topic, n, n_per_doc, config, query = args
    try:
        return run_topic(extractor, mode, topic, n, n_per_doc, config, query), None
    except MdkeError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _predict(cfg: RunConfig, dataset: BenchmarkDataset, cells, n: int, lexicon: Lexicon):
    tasks = [
        (e, m, topic, n, cfg.n_per_doc, cfg.extractor_config, cfg.query)
        for e, m in cells
        for topic in dataset.topics.values()
    ]
    if cfg.jobs == 1:
        results = map(_work, tasks)
        yield from results
        return
    with ProcessPoolExecutor(cfg.jobs, initializer=_init_worker, initargs=(lexicon,)) as pool:
        yield from pool.map(_work, tasks, chunksize=1)


def results_path(output_dir: Path) -> dict[str, Path]:
    return {
        "json": output_dir / "results.json",
        "csv": output_dir / "results.csv",
        "markdown": output_dir / "results.md",
    }


def _write(cfg: RunConfig, payload: dict, table: ResultTable) -> None:
    paths = results_path(cfg.output_dir)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    paths["json"].write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n", encoding="utf-8")
    paths["csv"].write_text(emit_table(table, "csv"), encoding="utf-8")
    paths["markdown"].write_text(emit_table(table, "markdown"), encoding="utf-8")


def run_benchmark(cfg: RunConfig, dataset: BenchmarkDataset, lexicon: Lexicon | None = None) -> tuple[ResultTable, dict]:
    """Run every (extractor, mode) cell over every topic, evaluate and write results.

    Topic failures are recorded with their coordinates; the affected cell is
    left out of the table and the results file is marked ``partial``.  Files
    are written even when an unexpected error aborts the run.
    """
    from .text import get_lexicon

    lexicon = lexicon or get_lexicon()
    cells = _cells(cfg)
    n = max(cfg.k_values)
    topic_ids = dataset.topic_ids()
    runs, failures, rows, grid = [], [], [], []
    payload = {
        "dataset": dataset.name,
        "k_values": list(cfg.k_values),
        "policy": cfg.policy.value,
        "trunc": cfg.trunc,
        "n_per_doc": cfg.n_per_doc,
        "status": "partial",
        "runs": runs,
        "failures": failures,
    }
    columns = table_columns(cfg.k_values)

    def table() -> ResultTable:
        return ResultTable(tuple(rows), columns, tuple(grid))

    try:
        outputs = _predict(cfg, dataset, cells, n, lexicon)
        for extractor, mode in cells:
            preds, failed = {}, False
            for tid in topic_ids:
                pred, error = next(outputs)
                if error is not None:
                    failed = True
                    failures.append({"extractor": extractor, "mode": mode, "topic_id": tid, "error": error})
                    log.warning("%s/%s failed on topic %s: %s", extractor, mode, tid, error)
                else:
                    preds[tid] = pred
            if failed:
                continue
            report = evaluate(preds, dataset, cfg.k_values, cfg.policy, cfg.trunc)
            runs.append({
                "extractor": extractor,
                "mode": mode,
                "aggregate": report.aggregate,
                "per_topic": report.per_topic,
                "avg_keyphrase_length": avg_keyphrase_length(preds[t] for t in topic_ids),
            })
            rows.append((extractor, mode))
            grid.append(tuple(report.aggregate[c] for c in columns))
        payload["status"] = "complete" if not failures else "partial"
    except BaseException as exc:
        failures.append({"extractor": "*", "mode": "*", "topic_id": None, "error": f"{type(exc).__name__}: {exc}"})
        _write(cfg, payload, table())
        raise
    _write(cfg, payload, table())
    return table(), payload
