"""Single pipeline entry point with seeded, reproducible, manifest-stamped runs.

Every artifact-producing subcommand writes its outputs plus a manifest into
--output; given identical inputs, parameters, and tool version the artifacts
are byte-identical. Exit codes: 0 success, 1 usage, 2 data error (one JSON
line on stderr).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
import warnings
from pathlib import Path
from typing import Any

from . import __version__, analytics, calibration, fileio
from .agreement import (
    AnnotationRecord,
    aggregate_labels,
    corpus_pea,
    directed_agreement,
    filter_workers,
    jaccard,
    jaccard_distance,
    krippendorff_alpha,
    nominal_distance,
    per_item_pea,
    symmetric_agreement,
)
from .corpus import corpus_stats, dedup, lexicon_filter
from .tasks import build_binary_tasks, verify_split
from .wheel import pair_score, parse_emotion24

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this tool reserves 2 for data
    # errors, so usage problems are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ------------------------------------------------------------ preprocessing


def _cmd_preprocess(args: argparse.Namespace) -> int:
    records = fileio.read_tweets(args.input)
    kept = dedup(records, raw=args.raw_dedup)
    out = _out_dir(args)
    fileio.write_tweets(kept, out / "preprocessed.jsonl")
    fileio.write_manifest(
        out, "preprocess", {"raw_dedup": args.raw_dedup}, [args.input],
        extra={"input_count": len(records), "output_count": len(kept)},
    )
    print(f"{len(records)} tweets in, {len(kept)} after dedup")
    return EXIT_OK


def _cmd_lexfilter(args: argparse.Namespace) -> int:
    records = fileio.read_tweets(args.input)
    lexicon = fileio.read_lexicon(args.lexicon)
    kept = lexicon_filter(records, lexicon)
    out = _out_dir(args)
    fileio.write_tweets(kept, out / "filtered.jsonl")
    fileio.write_manifest(
        out, "lexfilter", {}, [args.input, args.lexicon],
        extra={"input_count": len(records), "output_count": len(kept)},
    )
    print(f"{len(records)} tweets in, {len(kept)} with lexicon hits")
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    stats = corpus_stats(fileio.read_tweets(args.input))
    out = _out_dir(args)
    fileio.write_json(dataclasses.asdict(stats), out / "stats.json")
    table = fileio.stats_to_table(stats)
    (out / "stats.txt").write_text(table, encoding="utf-8")
    fileio.write_manifest(out, "stats", {}, [args.input])
    print(table, end="")
    return EXIT_OK


# -------------------------------------------------------------- agreement


def _cmd_pea(args: argparse.Namespace) -> int:
    records = fileio.read_annotations(args.input)
    kwargs = {"item_weighted": args.item_weighted, "symmetric": args.symmetric}
    pre = corpus_pea(records, **kwargs)
    kept, dropped = filter_workers(pre, threshold=args.threshold)
    survivors = [r for r in records if r.worker_id not in dropped]
    post = corpus_pea(survivors, **kwargs) if survivors else dataclasses.replace(
        pre, per_item_per_worker={}, per_worker={}, corpus_mean=None
    )
    post = dataclasses.replace(post, dropped_workers=dropped)
    out = _out_dir(args)
    fileio.write_json(
        {
            "threshold": args.threshold,
            "pre_filter": fileio.report_to_json(pre),
            "post_filter": fileio.report_to_json(post),
        },
        out / "agreement.json",
    )
    table = (
        "pre-filter\n" + fileio.report_to_table(pre)
        + f"\npost-filter (threshold {args.threshold})\n" + fileio.report_to_table(post)
    )
    (out / "agreement.txt").write_text(table, encoding="utf-8")
    fileio.write_manifest(
        out, "pea",
        {"threshold": args.threshold, "item_weighted": args.item_weighted,
         "symmetric": args.symmetric},
        [args.input],
    )
    print(table, end="")
    return EXIT_OK


def _cmd_filter_workers(args: argparse.Namespace) -> int:
    records = fileio.read_annotations(args.input)
    report = corpus_pea(records)
    kept, dropped = filter_workers(report, threshold=args.threshold)
    out = _out_dir(args)
    fileio.write_annotations(
        [r for r in records if r.worker_id not in dropped], out / "kept.jsonl"
    )
    fileio.write_json(
        {"threshold": args.threshold, "kept_workers": sorted(kept),
         "dropped_workers": sorted(dropped)},
        out / "workers.json",
    )
    fileio.write_manifest(out, "filter-workers", {"threshold": args.threshold}, [args.input])
    print(f"kept {len(kept)} workers, dropped {len(dropped)}")
    return EXIT_OK


def _cmd_aggregate(args: argparse.Namespace) -> int:
    records = fileio.read_annotations(args.input)
    labels, flagged = aggregate_labels(records, min_votes=args.min_votes)
    out = _out_dir(args)
    fileio.write_jsonl(
        (
            {"item_id": item, "labels": fileio.emotion_names(labels[item])}
            for item in sorted(labels)
        ),
        out / "labels.jsonl",
    )
    fileio.write_json(sorted(flagged), out / "flagged.json")
    fileio.write_manifest(out, "aggregate", {"min_votes": args.min_votes}, [args.input])
    print(f"{len(labels)} items labeled, {len(flagged)} flagged empty")
    return EXIT_OK


# --------------------------------------------------------------- analytics


def _cmd_distribution(args: argparse.Namespace) -> int:
    counts = analytics.emotion_distribution(fileio.read_tweets(args.input))
    out = _out_dir(args)
    (out / "distribution.csv").write_text(
        fileio.distribution_to_csv(counts), encoding="utf-8"
    )
    fileio.write_json({e.value: counts[e] for e in counts}, out / "distribution.json")
    fileio.write_manifest(out, "distribution", {}, [args.input])
    print(f"{sum(counts.values())} label assignments over {len(counts)} emotions")
    return EXIT_OK


def _cmd_cooccur(args: argparse.Namespace) -> int:
    matrix = analytics.cooccurrence(fileio.read_tweets(args.input))
    out = _out_dir(args)
    (out / "cooccurrence.csv").write_text(fileio.matrix_to_csv(matrix), encoding="utf-8")
    table = fileio.matrix_to_table(matrix)
    (out / "cooccurrence.txt").write_text(table, encoding="utf-8")
    fileio.write_manifest(out, "cooccur", {}, [args.input])
    print(table, end="")
    return EXIT_OK


def _cmd_jsd(args: argparse.Namespace) -> int:
    corpus_a = fileio.read_tweets(args.input)
    corpus_b = fileio.read_tweets(args.input_b)
    if args.vocab:
        vocab = Path(args.vocab).read_text(encoding="utf-8").split()
        tokenize = analytics.subword_tokenizer(vocab)
    else:
        tokenize = analytics.whitespace_tokens
    counts_a = analytics.count_tokens((r.text for r in corpus_a), tokenize)
    counts_b = analytics.count_tokens((r.text for r in corpus_b), tokenize)
    base = 2.0 if args.log_base == "2" else math.e
    value = analytics.jsd(
        analytics.TokenDistribution.from_counts(counts_a),
        analytics.TokenDistribution.from_counts(counts_b),
        base=base,
    )
    out = _out_dir(args)
    inputs = [args.input, args.input_b] + ([args.vocab] if args.vocab else [])
    fileio.write_json(
        {
            "jsd": value,
            "log_base": args.log_base,
            "tokenizer": "subword" if args.vocab else "whitespace",
            "distinct_tokens_a": len(counts_a),
            "distinct_tokens_b": len(counts_b),
        },
        out / "jsd.json",
    )
    fileio.write_manifest(out, "jsd", {"log_base": args.log_base}, inputs)
    print(f"jsd (base {args.log_base}): {value}")
    return EXIT_OK


def _cmd_density(args: argparse.Namespace) -> int:
    corpus_a = fileio.read_tweets(args.input)
    corpus_b = fileio.read_tweets(args.input_b)
    counts_a = analytics.count_tokens(r.text for r in corpus_a)
    counts_b = analytics.count_tokens(r.text for r in corpus_b)
    rows = analytics.top_k_density(counts_a, counts_b, k=args.top_k)
    out = _out_dir(args)
    (out / "density.csv").write_text(
        fileio.density_to_csv(rows, "corpus_a", "corpus_b"), encoding="utf-8"
    )
    fileio.write_manifest(out, "density", {"top_k": args.top_k}, [args.input, args.input_b])
    print(f"{len(rows)} shared tokens written")
    return EXIT_OK


# ------------------------------------------------------------------- tasks


def _cmd_tasks_build(args: argparse.Namespace) -> int:
    records = fileio.read_tweets(args.input)
    tasks = build_binary_tasks(
        records, seed=args.seed, balanced=not args.keep_all_negatives
    )
    out = _out_dir(args)
    outputs = []
    counts = {}
    for group, split in tasks.items():
        outputs.extend(fileio.write_task_split(split, out))
        counts[group.value] = list(split.counts)
    fileio.write_manifest(
        out, "tasks-build",
        {"seed": args.seed, "keep_all_negatives": args.keep_all_negatives},
        [args.input],
        extra={"counts": counts, "outputs": outputs},
    )
    for name, (n_train, n_valid, n_test) in counts.items():
        print(f"{name:<16}{n_train:>8}{n_valid:>7}{n_test:>7}")
    return EXIT_OK


def _cmd_tasks_verify(args: argparse.Namespace) -> int:
    directory = Path(args.input)
    names = sorted(p.name.removesuffix(".train.jsonl")
                   for p in directory.glob("*.train.jsonl"))
    if not names:
        raise fileio.DataFormatError(directory, 0, "no *.train.jsonl files found")
    expected = {}
    if args.expected:
        expected = json.loads(Path(args.expected).read_text(encoding="utf-8"))
    checks_by_task = {}
    failed = 0
    for name in names:
        split = fileio.read_task_split(directory, name)
        checks = verify_split(
            split,
            expected_counts=tuple(expected[name]) if name in expected else None,
        )
        checks_by_task[name] = checks
        for check in checks:
            status = "pass" if check.passed else "FAIL"
            print(f"{name:<16}{check.name:<22}{status}  {check.detail}")
            failed += 0 if check.passed else 1
    out = _out_dir(args)
    fileio.write_json(fileio.checks_to_json(checks_by_task), out / "verification.json")
    fileio.write_manifest(out, "tasks-verify", {}, [])
    if failed:
        print(json.dumps({"error": f"{failed} verification checks failed"}),
              file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


# ------------------------------------------------------------- calibration


def _cmd_calibrate(args: argparse.Namespace) -> int:
    result = calibration.random_baseline(
        n_annotations=args.n_annotations,
        emotions_per_annotation=args.emotions_per_annotation,
        workers_per_item=args.workers_per_item,
        seed=args.seed,
        bins=args.bins,
    )
    out = _out_dir(args)
    fileio.write_json(
        {
            "mean": result.mean,
            "band": calibration.interpret(result.mean).value,
            "n_scores": len(result.scores),
            "histogram": list(result.histogram),
            "scores": list(result.scores),
        },
        out / "calibration.json",
    )
    (out / "histogram.csv").write_text(fileio.histogram_to_csv(result), encoding="utf-8")
    fileio.write_manifest(
        out, "calibrate",
        {"n_annotations": args.n_annotations,
         "emotions_per_annotation": args.emotions_per_annotation,
         "workers_per_item": args.workers_per_item,
         "seed": args.seed, "bins": args.bins},
        [],
    )
    print(f"mean over {len(result.scores)} synthetic workers: {result.mean:.4f} "
          f"({calibration.interpret(result.mean).value})")
    return EXIT_OK


def _cmd_ab_pairs(args: argparse.Namespace) -> int:
    records = fileio.read_annotations(args.input)
    pairs = calibration.enumerate_ab_pairs(records)
    out = _out_dir(args)
    fileio.write_jsonl(
        (
            {"item_id": p.item_id, "shared_worker": p.shared_worker,
             "pair_a": list(p.pair_a), "pair_b": list(p.pair_b)}
            for p in pairs
        ),
        out / "pairs.jsonl",
    )
    inputs = [args.input]
    hit_count = 0
    if args.n_sample:
        texts = {}
        if args.tweets:
            texts = {r.id: r.text for r in fileio.read_tweets(args.tweets)}
            inputs.append(args.tweets)
        index = calibration.annotation_index(records)
        batches = calibration.sample_hits(
            pairs, n_sample=args.n_sample, pairs_per_hit=args.pairs_per_hit,
            seed=args.seed,
        )
        hits_dir = out / "hits"
        hits_dir.mkdir(exist_ok=True)
        for batch in batches:
            fileio.write_json(
                fileio.hit_to_json(batch, texts, index),
                hits_dir / f"{batch.hit_id}.json",
            )
        hit_count = len(batches)
    fileio.write_manifest(
        out, "ab-pairs",
        {"seed": args.seed, "n_sample": args.n_sample,
         "pairs_per_hit": args.pairs_per_hit},
        inputs,
        extra={"pair_count": len(pairs), "hit_count": hit_count},
    )
    print(f"{len(pairs)} pairs enumerated, {hit_count} HIT batches written")
    return EXIT_OK


# ----------------------------------------------------------- metric bridge


def _emotion_set(names: Any) -> frozenset:
    if not isinstance(names, list):
        raise ValueError("expected an array of emotion names")
    return frozenset(parse_emotion24(str(n)) for n in names)


def _records_from(objs: Any):
    if not isinstance(objs, list):
        raise ValueError("expected an array of annotation records")
    records = []
    for i, obj in enumerate(objs):
        try:
            records.append(
                AnnotationRecord(
                    item_id=str(obj["item_id"]),
                    worker_id=str(obj["worker_id"]),
                    emotions=_emotion_set(obj["emotions"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed record at index {i}: {exc}") from None
    return records


def _metric_eval(request: dict) -> Any:
    op = request.get("op")
    if op == "pair_score":
        return pair_score(
            parse_emotion24(str(request["a"])), parse_emotion24(str(request["b"]))
        )
    if op == "directed_agreement":
        return directed_agreement(_emotion_set(request["x"]), _emotion_set(request["y"]))
    if op == "symmetric_agreement":
        return symmetric_agreement(_emotion_set(request["x"]), _emotion_set(request["y"]))
    if op == "per_item_pea":
        scores = per_item_pea(
            _records_from(request["records"]),
            symmetric=bool(request.get("symmetric", False)),
        )
        return {w: scores[w] for w in sorted(scores)}
    if op == "corpus_pea":
        report = corpus_pea(
            _records_from(request["records"]),
            item_weighted=bool(request.get("item_weighted", False)),
            symmetric=bool(request.get("symmetric", False)),
        )
        return fileio.report_to_json(report)
    if op == "krippendorff_alpha":
        items = request["items"]
        if not isinstance(items, dict):
            raise ValueError("items must be an object of item -> worker -> value")
        distance = {"nominal": nominal_distance, "jaccard": jaccard_distance}.get(
            request.get("distance", "nominal")
        )
        if distance is None:
            raise ValueError(f"unknown distance {request.get('distance')!r}")
        table = {
            str(item): {
                str(w): frozenset(map(str, v)) if isinstance(v, list) else v
                for w, v in workers.items()
            }
            for item, workers in items.items()
        }
        return krippendorff_alpha(table, distance)
    if op == "jaccard":
        a, b = request["a"], request["b"]
        if not isinstance(a, list) or not isinstance(b, list):
            raise ValueError("jaccard arguments must be arrays")
        return jaccard(frozenset(map(str, a)), frozenset(map(str, b)))
    if op == "random_baseline":
        result = calibration.random_baseline(
            n_annotations=int(request.get("n_annotations", 5000)),
            emotions_per_annotation=int(request.get("emotions_per_annotation", 3)),
            workers_per_item=int(request.get("workers_per_item", 5)),
            seed=int(request.get("seed", 0)),
            bins=int(request.get("bins", 20)),
        )
        return {
            "scores": list(result.scores),
            "mean": result.mean,
            "histogram": list(result.histogram),
        }
    raise ValueError(f"unknown op {op!r}")


def _respond(request_text: str) -> tuple[dict, bool]:
    try:
        request = json.loads(request_text)
        if not isinstance(request, dict):
            raise ValueError("request must be a JSON object")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return {"ok": True, "result": _metric_eval(request)}, True
    except (ValueError, KeyError) as exc:
        message = str(exc) if str(exc) else repr(exc)
        return {"ok": False, "error": message}, False


def _cmd_metric(args: argparse.Namespace) -> int:
    if args.mode == "eval":
        text = args.request if args.request else sys.stdin.read()
        response, ok = _respond(text)
        print(json.dumps(response, ensure_ascii=False))
        return EXIT_OK if ok else EXIT_DATA
    # batch: one JSON request per input line, one JSON response per output line
    for line in sys.stdin:
        if not line.strip():
            continue
        response, _ = _respond(line)
        print(json.dumps(response, ensure_ascii=False))
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> _Parser:
    parser = _Parser(prog="plutchik", description=__doc__)
    parser.add_argument("--version", action="version", version=f"plutchik-pea {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, func, *, inputs: int = 1, output: bool = True, seeded: bool = False,
            help: str = "") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        if inputs >= 1:
            p.add_argument("--input", "-i", required=True)
        if inputs >= 2:
            p.add_argument("--input-b", required=True)
        if output:
            p.add_argument("--output", "-o", required=True)
        if seeded:
            p.add_argument("--seed", type=int, default=0)
        return p

    p = add("preprocess", _cmd_preprocess, help="mask entities and drop duplicate tweets")
    p.add_argument("--raw-dedup", action="store_true",
                   help="key duplicates on the raw text instead of the masked text")

    p = add("lexfilter", _cmd_lexfilter, help="keep tweets with emotion-lexicon hits")
    p.add_argument("--lexicon", required=True)

    add("stats", _cmd_stats, help="vocabulary and entity-coverage statistics")

    p = add("pea", _cmd_pea, help="agreement report, before and after worker filtering")
    p.add_argument("--threshold", type=float, default=0.55)
    p.add_argument("--symmetric", action="store_true",
                   help="score items with the symmetric agreement variant")
    p.add_argument("--item-weighted", action="store_true",
                   help="average (item, worker) cells instead of workers")

    p = add("filter-workers", _cmd_filter_workers, help="drop low-agreement workers")
    p.add_argument("--threshold", type=float, default=0.55)

    p = add("aggregate", _cmd_aggregate, help="fold annotations into item labels")
    p.add_argument("--min-votes", type=int, default=1)

    add("distribution", _cmd_distribution, help="per-emotion label counts")
    add("cooccur", _cmd_cooccur, help="group co-occurrence matrix")

    p = add("jsd", _cmd_jsd, inputs=2, help="divergence between two corpora")
    p.add_argument("--log-base", choices=["2", "e"], default="2")
    p.add_argument("--vocab", help="subword vocabulary file (one piece per line)")

    p = add("density", _cmd_density, inputs=2, help="top-k shared token densities")
    p.add_argument("--top-k", type=int, default=1000)

    p = add("tasks-build", _cmd_tasks_build, seeded=True,
            help="balanced binary tasks with 80/10/10 splits")
    p.add_argument("--keep-all-negatives", action="store_true")

    p = add("tasks-verify", _cmd_tasks_verify, help="check split files' properties")
    p.add_argument("--expected", help="JSON file of task -> [train, valid, test] counts")

    p = add("calibrate", _cmd_calibrate, inputs=0, seeded=True,
            help="random-annotation baseline")
    p.add_argument("--n-annotations", type=int, default=5000)
    p.add_argument("--emotions-per-annotation", type=int, default=3)
    p.add_argument("--workers-per-item", type=int, default=5)
    p.add_argument("--bins", type=int, default=20)

    p = add("ab-pairs", _cmd_ab_pairs, seeded=True,
            help="enumerate shared-worker comparison pairs and batch a sample")
    p.add_argument("--n-sample", type=int, default=0,
                   help="pairs to sample into HIT batches (0 = enumerate only)")
    p.add_argument("--pairs-per-hit", type=int, default=10)
    p.add_argument("--tweets", help="tweet file supplying item texts for HITs")

    p = sub.add_parser("metric", help="evaluate metric requests as JSON (for bindings)")
    p.set_defaults(func=_cmd_metric)
    p.add_argument("mode", choices=["eval", "batch"])
    p.add_argument("--request", help="JSON request (eval mode; stdin when omitted)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        message = str(exc) if str(exc) else repr(exc)
        print(json.dumps({"error": message}, ensure_ascii=False), file=sys.stderr)
        return EXIT_DATA


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
