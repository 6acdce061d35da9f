"""Command-line entry points.

Exit status is 0 on success, 1 when the input fails validation and 2 when a
file cannot be read or written. ``CENTERCACHE_CONFIG`` may name a JSON file
with default engine settings; command-line flags override it.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .corpus import CorpusIOError, parse_corpus
from .engine import EXHAUSTIVE, INTERLEAVED, PREFERENCE, STRICT, EngineConfig, process_discourse
from .model import ContractViolation, ValidationError
from .retrieval import pop_survey
from .segmenter import DanglingReturn, detect_boundaries
from .stats import PARTITION_RULES, annotation_records, compare_models, corpus_distribution, emit_annotations

CONFIG_ENV = "CENTERCACHE_CONFIG"
MODELS = {"cache": INTERLEAVED, "exhaustive": EXHAUSTIVE}
_CONFIG_KEYS = {"cache_size", "recency_window", "mode", "rule1", "store_displaced"}

log = logging.getLogger("centercache")


def _load_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise CorpusIOError(f"cannot read config {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad JSON: {e.msg}", f"{path}:{e.lineno}") from None
    if not isinstance(raw, dict):
        raise ValidationError("config must be a JSON object", path)
    unknown = set(raw) - _CONFIG_KEYS - {"model"}
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(sorted(unknown))}", path)
    if "model" in raw:
        raw["mode"] = MODELS.get(raw.pop("model"), "?")
    return raw


def build_config(args: argparse.Namespace) -> EngineConfig:
    opts = _load_defaults()
    if getattr(args, "model", None):
        opts["mode"] = MODELS[args.model]
    for key in ("cache_size", "recency_window", "rule1"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    if getattr(args, "trace", False):
        opts["trace"] = True
    return EngineConfig(**opts)


def _engine_flags(p: argparse.ArgumentParser):
    p.add_argument("--model", choices=sorted(MODELS), help="cache (interleaved) or exhaustive enumeration")
    p.add_argument("--cache-size", type=int, help="working-set capacity (default 7)")
    p.add_argument("--recency-window", type=int, help="linear recency window in utterances (default 3)")
    p.add_argument("--rule1", choices=[STRICT, PREFERENCE])


def _write(text: str, out: Optional[str]):
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise CorpusIOError(f"cannot write {out}: {e.strerror}") from e
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def cmd_resolve(args) -> None:
    cfg = build_config(args)
    corpus = parse_corpus(args.file)
    records = []
    for d in sorted(corpus.discourses, key=lambda d: d.id):
        records.extend(annotation_records(d, process_discourse(d, cfg), trace=cfg.trace))
    _write(emit_annotations(records, args.format), args.output)


def cmd_segment(args) -> None:
    corpus = parse_corpus(args.file)
    lines = []
    for d in sorted(corpus.discourses, key=lambda d: d.id):
        for b in detect_boundaries(d):
            lines.append(_dump({"discourse": d.id, "before": d.utterance(b.before_utterance).name,
                                "relation": b.relation.value, "evidence": b.evidence.value,
                                "return_target": b.return_target, "link_evidence": b.link_evidence}))
    _write("".join(lines), args.output)


def cmd_stats(args) -> None:
    cfg = build_config(args)
    corpus = parse_corpus(args.file)
    ds = sorted(corpus.discourses, key=lambda d: d.id)
    if args.table == "transitions":
        seg, other = corpus_distribution(ds, gold=args.gold, config=cfg, rule=args.partition)
        out = {"source": "gold" if args.gold else "engine", "rule": args.partition,
               "rows": [seg.as_dict(), other.as_dict()]}
    else:
        out = pop_survey(ds, cfg).as_dict()
    _write(_dump(out), args.output)


def cmd_compare(args) -> None:
    cfg = build_config(args)
    corpus = parse_corpus(args.file)
    lines = [_dump(compare_models(d, cfg).as_dict()) for d in sorted(corpus.discourses, key=lambda d: d.id)]
    _write("".join(lines), args.output)


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="centercache", description="Centering with a cache model of attention.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("resolve", help="resolve pronouns and emit per-utterance annotations")
    r.add_argument("file")
    _engine_flags(r)
    r.add_argument("--trace", action="store_true", help="include every anchor and its filter verdicts")
    r.add_argument("--format", choices=["jsonl", "json", "tsv"], default="jsonl")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_resolve)

    s = sub.add_parser("segment", help="list annotated and cue-detected segment boundaries")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_segment)

    t = sub.add_parser("stats", help="transition distribution or return-pop survey")
    t.add_argument("file")
    t.add_argument("--table", choices=["transitions", "pops"], required=True)
    t.add_argument("--gold", action="store_true", help="tally annotated transitions instead of engine output")
    t.add_argument("--partition", choices=sorted(PARTITION_RULES), default="cue-now")
    _engine_flags(t)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_stats)

    c = sub.add_parser("compare-models", help="cache versus focus-stack verdicts at segment openings")
    c.add_argument("file")
    _engine_flags(c)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValidationError, ContractViolation, DanglingReturn) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
