"""Command-line interface: ``mdke {extract,eval,bench,build-gold,stats,import-mkduc}``.

Exit codes: 0 success, 1 usage error, 2 data or validation error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import asdict, replace
from pathlib import Path
from typing import Sequence

from . import __version__
from .bench import emit_table, run_benchmark, run_topic, supports
from .builder import build_topic_gold, read_topic_dir, report_to_json
from .config import (
    MODES,
    load_config,
    parse_extractor,
    parse_extractor_list,
    parse_k,
    parse_policy,
    parse_trunc,
)
from .dataset import Topic, TopicGold, dataset_from_json, dataset_stats, load_dataset, save_dataset
from .errors import ConfigError, DataError, ParseError, UnknownExtractor
from .evaluation import evaluate, metric_names
from .extractors import Keyphrase
from .multidoc import Mode, TopicKeyphrases
from .text import ABBREVIATIONS_ENV, STOPWORDS_ENV, Lexicon, set_lexicon, tokenize_set

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("mdke")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--workdir", default=".", help="root that relative paths resolve against")
    p.add_argument("--config", help="INI config file with [run], [extractors] and [paths] sections")
    p.add_argument("--stopwords", help=f"stopword list file (env {STOPWORDS_ENV})")
    p.add_argument("--abbreviations", help=f"abbreviation list file (env {ABBREVIATIONS_ENV})")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="mdke", description="Multi-document keyphrase extraction benchmark toolkit.")
    parser.add_argument("--version", action="version", version=f"mdke {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ex = sub.add_parser("extract", parents=[common], help="extract topic keyphrases")
    ex.add_argument("files", nargs="*", help="text files forming one topic (instead of --dataset)")
    ex.add_argument("--dataset")
    ex.add_argument("--topic", action="append", help="restrict to these topic ids")
    ex.add_argument("--extractor", required=True)
    ex.add_argument("--mode", choices=MODES, default="merge")
    ex.add_argument("--n", type=int, default=20)
    ex.add_argument("--n-per-doc", type=int)
    ex.add_argument("--query")
    ex.add_argument("--output", help="predictions JSON file (default: stdout)")

    ev = sub.add_parser("eval", parents=[common], help="score predictions against a dataset")
    ev.add_argument("--dataset", required=True)
    ev.add_argument("--predictions", required=True)
    ev.add_argument("--k", default="1,5,10,20")
    ev.add_argument("--policy", choices=("exact", "cluster"), default="exact")
    ev.add_argument("--trunc", default="20", help="gold truncation depth or 'none'")
    ev.add_argument("--output", help="directory for eval.json, eval.csv and eval.md")

    be = sub.add_parser("bench", parents=[common], help="run an extractor x mode grid")
    be.add_argument("--dataset")
    be.add_argument("--extractors", nargs="+", help="extractor ids (comma or space separated)")
    be.add_argument("--mode", nargs="+", choices=MODES, dest="modes")
    be.add_argument("--k")
    be.add_argument("--policy", choices=("exact", "cluster"))
    be.add_argument("--trunc")
    be.add_argument("--jobs", type=int)
    be.add_argument("--n-per-doc", type=int)
    be.add_argument("--query")
    be.add_argument("--output")
    be.add_argument("--lenient", action="store_true", help="do not require gold phrases to occur in documents")

    bg = sub.add_parser("build-gold", parents=[common], help="rank a topic's merged gold candidates")
    bg.add_argument("topic_dir")
    bg.add_argument("--n", type=int)
    bg.add_argument("--output", help="report JSON file (default: stdout)")

    st = sub.add_parser("stats", parents=[common], help="dataset statistics")
    st.add_argument("--dataset", required=True)
    st.add_argument("--trunc", default="none")
    st.add_argument("--json", action="store_true", help="print JSON instead of a Markdown table")
    st.add_argument("--lenient", action="store_true")

    im = sub.add_parser("import-mkduc", parents=[common], help="convert an MK-DUC-01 release")
    im.add_argument("source")
    im.add_argument("--output", required=True)
    im.add_argument("--name", default="MK-DUC-01")
    im.add_argument("--lenient", action="store_true")
    return parser


def _resolve(args, path: str | os.PathLike | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    return p if p.is_absolute() else Path(args.workdir) / p


def _write_text(args, target: str | None, text: str) -> None:
    if target is None:
        sys.stdout.write(text)
        return
    path = _resolve(args, target)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _lexicon(args, cfg_paths=(None, None)) -> Lexicon:
    stop = _resolve(args, args.stopwords) or cfg_paths[0]
    abbr = _resolve(args, args.abbreviations) or cfg_paths[1]
    try:
        lexicon = Lexicon.load(stop, abbr)
    except OSError as exc:
        raise ConfigError(f"cannot read word list: {exc}") from exc
    set_lexicon(lexicon)
    return lexicon


def _config(args):
    return load_config(args.config, Path(args.workdir))


def _predictions_json(extractor: str, mode: str, preds: dict[str, TopicKeyphrases]) -> dict:
    return {
        "extractor": extractor,
        "mode": mode,
        "topics": {
            tid: [{"surface": k.surface, "key": k.key, "score": k.score} for k in pred.items]
            for tid, pred in preds.items()
        },
    }


def _read_predictions(path: Path) -> dict[str, TopicKeyphrases]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return {
            tid: TopicKeyphrases(
                tid,
                tuple(Keyphrase(i["surface"], i["key"], float(i["score"])) for i in items),
                Mode(data.get("mode", "merge")),
            )
            for tid, items in data["topics"].items()
        }
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"cannot read predictions {path}: {exc}") from exc


def cmd_extract(args) -> int:
    cfg = _config(args)
    lexicon = _lexicon(args, (cfg.stopwords, cfg.abbreviations))
    extractor = parse_extractor(args.extractor)
    mode = args.mode
    if not supports(extractor, mode):
        raise ConfigError(f"{extractor} only runs in merge mode")
    if args.n < 1:
        raise ConfigError("--n must be >= 1")
    n_per_doc = args.n_per_doc or cfg.n_per_doc
    if args.dataset:
        dataset = load_dataset(_resolve(args, args.dataset), cfg.strict, lexicon)
        topics = dataset.topics
        if args.topic:
            unknown = [t for t in args.topic if t not in topics]
            if unknown:
                raise ConfigError(f"unknown topics {unknown}")
            topics = {t: topics[t] for t in args.topic}
    elif args.files:
        docs = []
        for f in args.files:
            path = _resolve(args, f)
            try:
                docs.append((path.stem, path.read_text(encoding="utf-8")))
            except OSError as exc:
                raise ParseError(f"cannot read {path}: {exc}") from exc
        topics = {"topic": Topic(tokenize_set("topic", docs, (), lexicon), TopicGold("topic", ()))}
    else:
        raise ConfigError("give --dataset or one or more text files")
    query = args.query if args.query is not None else cfg.query
    preds = {
        tid: run_topic(extractor, mode, topic, args.n, n_per_doc, cfg.extractor_config, query)
        for tid, topic in topics.items()
    }
    text = json.dumps(_predictions_json(extractor, mode, preds), indent=2, ensure_ascii=False) + "\n"
    _write_text(args, args.output, text)
    return EXIT_OK


def _eval_tables(report, names) -> tuple[str, str]:
    header = ["topic", *names]
    rows = [[tid, *(f"{m[n]:.4g}" for n in names)] for tid, m in report.per_topic.items()]
    rows.append(["MEAN", *(f"{report.aggregate[n]:.4g}" for n in names)])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    md = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    md += ["| " + " | ".join(r) + " |" for r in rows]
    return buf.getvalue(), "\n".join(md) + "\n"


def cmd_eval(args) -> int:
    cfg = _config(args)
    lexicon = _lexicon(args, (cfg.stopwords, cfg.abbreviations))
    k_values = parse_k(args.k)
    policy = parse_policy(args.policy)
    trunc = parse_trunc(args.trunc)
    dataset = load_dataset(_resolve(args, args.dataset), cfg.strict, lexicon)
    preds = _read_predictions(_resolve(args, args.predictions))
    report = evaluate(preds, dataset, k_values, policy, trunc)
    names = metric_names(k_values)
    csv_text, md_text = _eval_tables(report, names)
    if args.output:
        out = _resolve(args, args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "eval.csv").write_text(csv_text, encoding="utf-8")
        (out / "eval.md").write_text(md_text, encoding="utf-8")
        payload = {
            "k_values": list(k_values), "policy": policy.value, "trunc": trunc,
            "aggregate": report.aggregate, "per_topic": report.per_topic,
        }
        (out / "eval.json").write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    sys.stdout.write(md_text)
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    overrides = {
        "dataset_path": _resolve(args, args.dataset),
        "extractors": parse_extractor_list(args.extractors) if args.extractors else None,
        "modes": tuple(args.modes) if args.modes else None,
        "k_values": parse_k(args.k) if args.k else None,
        "policy": parse_policy(args.policy) if args.policy else None,
        "jobs": args.jobs,
        "n_per_doc": args.n_per_doc,
        "query": args.query,
        "output_dir": _resolve(args, args.output),
        "strict": False if args.lenient else None,
    }
    cfg = cfg.with_overrides(**overrides)
    if args.trunc is not None:
        cfg = replace(cfg, trunc=parse_trunc(args.trunc))
    if cfg.dataset_path is None:
        raise ConfigError("no dataset given (--dataset or [run] dataset)")
    lexicon = _lexicon(args, (cfg.stopwords, cfg.abbreviations))
    dataset = load_dataset(cfg.dataset_path, cfg.strict, lexicon)
    table, payload = run_benchmark(cfg, dataset, lexicon)
    sys.stdout.write(emit_table(table, "markdown"))
    for failure in payload["failures"]:
        log.error("failed: %(extractor)s/%(mode)s topic %(topic_id)s: %(error)s", failure)
    return EXIT_OK if payload["status"] == "complete" else EXIT_DATA


def cmd_build_gold(args) -> int:
    cfg = _config(args)
    lexicon = _lexicon(args, (cfg.stopwords, cfg.abbreviations))
    inp = read_topic_dir(_resolve(args, args.topic_dir), lexicon)
    report = build_topic_gold(inp, args.n)
    _write_text(args, args.output, json.dumps(report_to_json(report), indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    cfg = _config(args)
    lexicon = _lexicon(args, (cfg.stopwords, cfg.abbreviations))
    dataset = load_dataset(_resolve(args, args.dataset), cfg.strict and not args.lenient, lexicon)
    stats = asdict(dataset_stats(dataset, parse_trunc(args.trunc)))
    if args.json:
        sys.stdout.write(json.dumps(stats, indent=2) + "\n")
    else:
        lines = ["| statistic | value |", "|---|---|"]
        lines += [f"| {k} | {v:.4g} |" if isinstance(v, float) else f"| {k} | {v} |" for k, v in stats.items()]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_import_mkduc(args) -> int:
    from .adapters.mkduc import import_mkduc

    lexicon = _lexicon(args)
    data = import_mkduc(_resolve(args, args.source), args.name)
    dataset = dataset_from_json(data, strict=not args.lenient, lexicon=lexicon)
    out = _resolve(args, args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_dataset(dataset, out)
    log.info("wrote %d topics to %s", len(dataset.topics), out)
    return EXIT_OK


COMMANDS = {
    "extract": cmd_extract,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "build-gold": cmd_build_gold,
    "stats": cmd_stats,
    "import-mkduc": cmd_import_mkduc,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnknownExtractor) as exc:
        print(f"mdke: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"mdke: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        log.debug("internal error", exc_info=True)
        print(f"mdke: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
