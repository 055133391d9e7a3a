"""On-disk formats: JSON-lines records, TSV lexicon, CSV tables, run manifests.

Everything written here is deterministic — fixed key order, no timestamps —
so identical inputs and parameters always produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .agreement import AgreementReport, AnnotationRecord
from .analytics import CooccurrenceMatrix, DensityRow
from .calibration import CalibrationResult, HitBatch, interpret
from .corpus import CorpusStats, Lexicon, TweetRecord
from .tasks import SplitCheck, TaskExample, TaskSplit
from .wheel import Emotion8, Emotion24, parse_emotion24

RNG_DERIVATION = "sha256('{seed}:{name}'), first 8 bytes big-endian, Mersenne Twister"

_E24_ORDER = {e: i for i, e in enumerate(Emotion24)}


class DataFormatError(ValueError):
    """A file failed to parse; message carries the path and line number."""

    def __init__(self, path: Path | str, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


def emotion_names(emotions: Iterable[Emotion24]) -> list[str]:
    """Emotion values in canonical table order, for stable serialization."""
    return [e.value for e in sorted(emotions, key=_E24_ORDER.__getitem__)]


def _iter_jsonl(path: Path) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataFormatError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise DataFormatError(path, lineno, "expected a JSON object")
            yield lineno, obj


def write_jsonl(rows: Iterable[dict], path: Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")


def write_json(obj: Any, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _field(obj: dict, key: str, path: Path, lineno: int) -> Any:
    try:
        return obj[key]
    except KeyError:
        raise DataFormatError(path, lineno, f"missing field {key!r}") from None


# ------------------------------------------------------------- annotations


def read_annotations(path: Path | str) -> list[AnnotationRecord]:
    """Read {item_id, worker_id, emotions} JSON-lines."""
    path = Path(path)
    records = []
    for lineno, obj in _iter_jsonl(path):
        names = _field(obj, "emotions", path, lineno)
        if not isinstance(names, list) or not names:
            raise DataFormatError(path, lineno, "emotions must be a non-empty array")
        try:
            emotions = frozenset(parse_emotion24(name) for name in names)
        except ValueError as exc:
            raise DataFormatError(path, lineno, str(exc)) from None
        records.append(
            AnnotationRecord(
                item_id=str(_field(obj, "item_id", path, lineno)),
                worker_id=str(_field(obj, "worker_id", path, lineno)),
                emotions=emotions,
            )
        )
    return records


def write_annotations(records: Iterable[AnnotationRecord], path: Path | str) -> None:
    write_jsonl(
        (
            {
                "item_id": r.item_id,
                "worker_id": r.worker_id,
                "emotions": emotion_names(r.emotions),
            }
            for r in records
        ),
        Path(path),
    )


# ------------------------------------------------------------------ tweets


def read_tweets(path: Path | str) -> list[TweetRecord]:
    """Read {id, text, source?, labels?} JSON-lines.

    A file that already carries raw_text (a re-emitted corpus) is loaded
    as-is; otherwise text is treated as raw input and masked on the spot.
    """
    path = Path(path)
    records = []
    for lineno, obj in _iter_jsonl(path):
        labels = None
        if obj.get("labels") is not None:
            try:
                labels = frozenset(parse_emotion24(name) for name in obj["labels"])
            except ValueError as exc:
                raise DataFormatError(path, lineno, str(exc)) from None
        id_ = str(_field(obj, "id", path, lineno))
        text = _field(obj, "text", path, lineno)
        if not isinstance(text, str):
            raise DataFormatError(path, lineno, "text must be a string")
        source = obj.get("source")
        if "raw_text" in obj:
            records.append(
                TweetRecord(id=id_, text=text, raw_text=obj["raw_text"],
                            source=source, labels=labels)
            )
        else:
            records.append(
                TweetRecord.from_raw(id=id_, raw_text=text, source=source, labels=labels)
            )
    seen: set[str] = set()
    for record in records:
        if record.id in seen:
            raise DataFormatError(path, 0, f"duplicate tweet id {record.id!r}")
        seen.add(record.id)
    return records


def write_tweets(records: Iterable[TweetRecord], path: Path | str) -> None:
    def row(r: TweetRecord) -> dict:
        obj: dict[str, Any] = {"id": r.id, "text": r.text, "raw_text": r.raw_text}
        if r.source is not None:
            obj["source"] = r.source
        if r.labels is not None:
            obj["labels"] = emotion_names(r.labels)
        return obj

    write_jsonl((row(r) for r in records), Path(path))


def read_lexicon(path: Path | str) -> Lexicon:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as handle:
            return Lexicon.from_tsv(handle)
    except ValueError as exc:
        raise DataFormatError(path, 0, str(exc)) from None


def read_labels(path: Path | str) -> dict[str, frozenset[Emotion24]]:
    """Read {item_id, labels} JSON-lines (aggregate output)."""
    path = Path(path)
    labels: dict[str, frozenset[Emotion24]] = {}
    for lineno, obj in _iter_jsonl(path):
        names = _field(obj, "labels", path, lineno)
        try:
            labels[str(_field(obj, "item_id", path, lineno))] = frozenset(
                parse_emotion24(n) for n in names
            )
        except ValueError as exc:
            raise DataFormatError(path, lineno, str(exc)) from None
    return labels


# ----------------------------------------------------------------- reports


def report_to_json(report: AgreementReport) -> dict:
    return {
        "corpus_mean": report.corpus_mean,
        "per_worker": {w: report.per_worker[w] for w in sorted(report.per_worker)},
        "per_item_per_worker": [
            {"item_id": item, "worker_id": worker, "score": score}
            for (item, worker), score in sorted(report.per_item_per_worker.items())
        ],
        "dropped_workers": sorted(report.dropped_workers),
        "skipped_items": list(report.skipped_items),
    }


def report_to_table(report: AgreementReport) -> str:
    """Human-readable per-worker table on the x100 scale, one decimal."""
    lines = [f"{'worker':<24}{'items':>8}{'score':>9}"]
    items_per_worker: dict[str, int] = {}
    for (_, worker) in report.per_item_per_worker:
        items_per_worker[worker] = items_per_worker.get(worker, 0) + 1
    for worker in sorted(report.per_worker):
        score = report.per_worker[worker] * 100
        mark = " (dropped)" if worker in report.dropped_workers else ""
        lines.append(
            f"{worker:<24}{items_per_worker.get(worker, 0):>8}{score:>9.1f}{mark}"
        )
    if report.corpus_mean is None:
        lines.append("corpus mean: undefined (no multi-annotator items)")
    else:
        band = interpret(report.corpus_mean).value
        lines.append(f"corpus mean: {report.corpus_mean * 100:.1f} ({band})")
    if report.skipped_items:
        lines.append(f"skipped single-annotator items: {len(report.skipped_items)}")
    return "\n".join(lines) + "\n"


def stats_to_table(stats: CorpusStats) -> str:
    header = f"{'tweets':>10}{'orig. vocab':>13}{'vocab':>9}{'#':>8}{'@':>8}{'//':>8}"
    row = (
        f"{stats.tweet_count:>10}{stats.vocab_original:>13}{stats.vocab_filtered:>9}"
        f"{stats.pct_hashtag:>7.1f}%{stats.pct_mention:>7.1f}%{stats.pct_link:>7.1f}%"
    )
    return header + "\n" + row + "\n"


# ------------------------------------------------------------------ tables


def _csv_text(rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def distribution_to_csv(counts: Mapping[Emotion24, int]) -> str:
    emotions = list(Emotion24)
    return _csv_text([
        [e.abbrev for e in emotions],
        [counts[e] for e in emotions],
    ])


def matrix_to_csv(matrix: CooccurrenceMatrix) -> str:
    groups = list(Emotion8)
    rows: list[list[Any]] = [[""] + [g.abbrev for g in groups]]
    for g in groups:
        rows.append([g.abbrev] + [matrix[g, h] for h in groups])
    return _csv_text(rows)


def matrix_to_table(matrix: CooccurrenceMatrix) -> str:
    """Lower-triangle rendering; the mirrored upper half is left blank."""
    groups = list(Emotion8)
    width = 7
    lines = [" " * width + "".join(f"{g.abbrev:>{width}}" for g in groups)]
    for i, g in enumerate(groups):
        cells = "".join(
            f"{matrix[g, h]:>{width}}" if j <= i else " " * width
            for j, h in enumerate(groups)
        )
        lines.append(f"{g.abbrev:<{width}}" + cells)
    return "\n".join(lines) + "\n"


def density_to_csv(rows: Sequence[DensityRow], label_a: str, label_b: str) -> str:
    out: list[Sequence[Any]] = [["token", label_a, label_b]]
    out.extend([r.token, repr(r.density_a), repr(r.density_b)] for r in rows)
    return _csv_text(out)


def histogram_to_csv(result: CalibrationResult) -> str:
    rows: list[Sequence[Any]] = [["bin_low", "bin_high", "count"]]
    width = result.bin_width
    for i, count in enumerate(result.histogram):
        rows.append([repr(i * width), repr((i + 1) * width), count])
    return _csv_text(rows)


# ------------------------------------------------------------------- tasks


def write_task_split(split: TaskSplit, directory: Path | str) -> list[str]:
    """Write <name>.<partition>.jsonl files; returns the file names written."""
    directory = Path(directory)
    names = []
    for partition in ("train", "valid", "test"):
        examples: tuple[TaskExample, ...] = getattr(split, partition)
        name = f"{split.emotion}.{partition}.jsonl"
        write_jsonl(
            ({"id": ex.item_id, "text": ex.text, "label": ex.label} for ex in examples),
            directory / name,
        )
        names.append(name)
    return names


def read_task_split(directory: Path | str, name: str, seed: int = 0) -> TaskSplit:
    directory = Path(directory)
    partitions: dict[str, tuple[TaskExample, ...]] = {}
    for partition in ("train", "valid", "test"):
        path = directory / f"{name}.{partition}.jsonl"
        examples = []
        for lineno, obj in _iter_jsonl(path):
            label = _field(obj, "label", path, lineno)
            if label not in (0, 1):
                raise DataFormatError(path, lineno, f"label must be 0 or 1, got {label!r}")
            examples.append(
                TaskExample(
                    item_id=str(_field(obj, "id", path, lineno)),
                    text=str(_field(obj, "text", path, lineno)),
                    label=label,
                )
            )
        partitions[partition] = tuple(examples)
    return TaskSplit(emotion=name, seed=seed, **partitions)


def checks_to_json(checks_by_task: Mapping[str, Sequence[SplitCheck]]) -> dict:
    return {
        task: [
            {"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks
        ]
        for task, checks in checks_by_task.items()
    }


# -------------------------------------------------------------------- hits


def hit_to_json(batch: HitBatch, texts: Mapping[str, str],
                annotations: Mapping[tuple[str, str], frozenset[Emotion24]]) -> dict:
    def pair_sets(workers: tuple[str, str], item: str) -> list[list[str]]:
        return [emotion_names(annotations[(item, w)]) for w in workers]

    return {
        "hit_id": batch.hit_id,
        "pairs": [
            {
                "item_text": texts.get(p.item_id, p.item_id),
                "annotations_a": pair_sets(p.pair_a, p.item_id),
                "annotations_b": pair_sets(p.pair_b, p.item_id),
            }
            for p in batch.pairs
        ],
    }


# --------------------------------------------------------------- manifests


def sha256_of(path: Path | str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(
    directory: Path | str,
    subcommand: str,
    parameters: Mapping[str, Any],
    inputs: Sequence[Path | str] = (),
    extra: Optional[Mapping[str, Any]] = None,
) -> Path:
    """Record what produced a directory's artifacts: version, params, input hashes."""
    manifest: dict[str, Any] = {
        "tool": "plutchik-pea",
        "version": __version__,
        "subcommand": subcommand,
        "parameters": dict(parameters),
        "inputs": [
            {"path": Path(p).name, "sha256": sha256_of(p)} for p in inputs
        ],
    }
    if "seed" in parameters:
        manifest["rng_derivation"] = RNG_DERIVATION
    if extra:
        manifest.update(extra)
    path = Path(directory) / f"{subcommand}.manifest.json"
    write_json(manifest, path)
    return path
