"""Command-line orchestration of the full analysis pipeline.

Subcommands cover the whole flow on batch data:

    mammoscope phantom  --out DIR [--config PATH]
    mammoscope extract  --manifest CSV --out CSV [--config PATH] [--jobs N]
    mammoscope train    --features CSV --out MODEL [--config PATH]
    mammoscope predict  --features CSV --model MODEL --out CSV
    mammoscope evaluate --features CSV [--config PATH] [--roc-csv PATH] [--roc-svg PATH]

Exit codes: 0 success, 1 partial data failure (some images failed to
extract), 2 usage or configuration error. Commands validate their inputs
before writing any output file.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import bayes, evaluation, phantom
from .config import PipelineConfig, load_config
from .errors import DegenerateLabelsError, MammoscopeError
from .features import (
    LABELS,
    NORMAL,
    SUSPICIOUS,
    FeatureTable,
    FeatureVector,
    extract_features,
    select_features,
    table_from_csv,
    table_from_rows,
    table_to_csv,
)
from .imgio import read_pgm, to_gray
from .preprocess import preprocess_pipeline


def _read_manifest(path: Path) -> list[tuple[str, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MammoscopeError(f"cannot read manifest {path}: {exc}") from None
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MammoscopeError(f"manifest {path} is empty") from None
    if header != ["path", "label"]:
        raise MammoscopeError(f"manifest {path} must have header path,label")
    rows = []
    for row in reader:
        if not row:
            continue
        if len(row) != 2 or row[1] not in LABELS:
            raise MammoscopeError(f"bad manifest row {row!r}")
        rows.append((row[0], row[1]))
    if not rows:
        raise MammoscopeError(f"manifest {path} lists no images")
    return rows


def _extract_one(task: tuple[str, PipelineConfig]) -> FeatureVector:
    path, cfg = task
    data = Path(path).read_bytes()
    img = to_gray(read_pgm(data))
    img = preprocess_pipeline(img, cfg.preprocess)
    return extract_features(img, cfg.features)


def cmd_phantom(args) -> int:
    cfg = load_config(args.config)
    out_dir = Path(args.out)
    try:
        phantom.generate(cfg.phantom, out_dir)
    except OSError as exc:
        print(f"error: cannot write phantom set: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {2 * cfg.phantom.count_per_class} images and manifest to {out_dir}")
    return 0


def cmd_extract(args) -> int:
    cfg = load_config(args.config)
    manifest_path = Path(args.manifest)
    rows = _read_manifest(manifest_path)
    base = manifest_path.parent

    tasks = [(str(base / rel) if not Path(rel).is_absolute() else rel, cfg) for rel, _ in rows]
    results: list[FeatureVector | None] = [None] * len(tasks)
    failures: list[tuple[str, str]] = []
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = list(pool.map(_try_extract, tasks))
        for i, outcome in enumerate(futures):
            if isinstance(outcome, str):
                failures.append((rows[i][0], outcome))
            else:
                results[i] = outcome
    else:
        for i, task in enumerate(tasks):
            outcome = _try_extract(task)
            if isinstance(outcome, str):
                failures.append((rows[i][0], outcome))
            else:
                results[i] = outcome

    kept = [
        (rows[i][0], rows[i][1], vec)
        for i, vec in enumerate(results)
        if vec is not None
    ]
    for image_id, message in failures:
        print(f"extract failed for {image_id}: {message}", file=sys.stderr)
    if not kept:
        print("error: no image could be extracted", file=sys.stderr)
        return 1
    Path(args.out).write_text(table_to_csv(table_from_rows(kept)), encoding="ascii")
    return 1 if failures else 0


def _try_extract(task: tuple[str, PipelineConfig]) -> FeatureVector | str:
    """Worker-safe wrapper: a failure comes back as its message string."""
    try:
        return _extract_one(task)
    except (MammoscopeError, OSError, ValueError) as exc:
        return str(exc)


def _load_table(path: str) -> FeatureTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MammoscopeError(f"cannot read features {path}: {exc}") from None
    try:
        return table_from_csv(text)
    except ValueError as exc:
        raise MammoscopeError(f"bad feature CSV {path}: {exc}") from None


def cmd_train(args) -> int:
    cfg = load_config(args.config)
    table = _load_table(args.features)
    if cfg.select_k is not None:
        table = table.select_columns(select_features(table, cfg.select_k))
    model = bayes.train(table)
    Path(args.out).write_bytes(bayes.save_model(model))
    print(f"trained on {table.n_rows} rows, {len(table.names)} features -> {args.out}")
    return 0


def cmd_predict(args) -> int:
    table = _load_table(args.features)
    try:
        model = bayes.load_model(Path(args.model).read_bytes())
    except OSError as exc:
        raise MammoscopeError(f"cannot read model {args.model}: {exc}") from None
    try:
        table = table.select_columns(model.feature_names)
    except ValueError as exc:
        raise MammoscopeError(str(exc)) from None

    lines = ["id,score,label"]
    threshold = args.threshold
    for i in range(table.n_rows):
        vec = FeatureVector(table.names, table.values[i])
        label, score = bayes.classify(model, vec, threshold)
        lines.append(f"{table.ids[i]},{score!r},{label}")
    Path(args.out).write_text("\n".join(lines) + "\n", encoding="ascii")
    return 0


@dataclass(frozen=True)
class CvResult:
    ids: tuple[str, ...]
    truth: tuple[str, ...]
    scores: tuple[float, ...]
    matrix: evaluation.ConfusionMatrix
    sens: float
    spec: float
    curve: evaluation.RocCurve


def run_cross_validation(table: FeatureTable, cfg: PipelineConfig) -> CvResult:
    """Stratified CV, pooling out-of-fold scores into one ROC.

    Feature selection, when configured, runs inside each fold on the
    training rows only. Pooled scores keep the table's row order.
    """
    splits = evaluation.kfold_indices(table, cfg.cv_folds, cfg.cv_seed)
    pooled = [0.0] * table.n_rows
    for train_rows, test_rows in splits:
        train_table = table.subset(train_rows)
        test_table = table.subset(test_rows)
        if cfg.select_k is not None:
            names = select_features(train_table, cfg.select_k)
            train_table = train_table.select_columns(names)
            test_table = test_table.select_columns(names)
        model = bayes.train(train_table)
        for i, row in enumerate(test_rows):
            vec = FeatureVector(test_table.names, test_table.values[i])
            _, score = bayes.classify(model, vec, cfg.classifier_threshold)
            pooled[row] = score

    ids = tuple(table.ids)
    truth = tuple(table.labels)
    scores = tuple(pooled)
    threshold = cfg.classifier_threshold
    pred = [SUSPICIOUS if s >= threshold else NORMAL for s in scores]
    matrix = evaluation.confusion(pred, truth)
    curve = evaluation.roc(scores, truth)
    return CvResult(
        ids,
        truth,
        scores,
        matrix,
        evaluation.sensitivity(matrix),
        evaluation.specificity(matrix),
        curve,
    )


def cmd_evaluate(args) -> int:
    cfg = load_config(args.config)
    table = _load_table(args.features)
    try:
        result = run_cross_validation(table, cfg)
    except DegenerateLabelsError as exc:
        raise MammoscopeError(str(exc)) from None

    m = result.matrix
    print(f"cases       : {m.total}")
    print(f"folds       : {cfg.cv_folds} (seed {cfg.cv_seed})")
    print(f"threshold   : {cfg.classifier_threshold}")
    print(f"confusion   : tp={m.tp} fp={m.fp} tn={m.tn} fn={m.fn}")
    print(f"sensitivity : {result.sens:.6f}")
    print(f"specificity : {result.spec:.6f}")
    print(f"auc         : {result.curve.auc:.6f}")
    if args.roc_csv:
        Path(args.roc_csv).write_text(
            evaluation.roc_to_csv(result.curve), encoding="ascii"
        )
    if args.roc_svg:
        Path(args.roc_svg).write_text(
            evaluation.roc_to_svg(result.curve), encoding="ascii"
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mammoscope",
        description="Wavelet/Fourier feature screening pipeline for grayscale images",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="generate a labeled synthetic image set")
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("extract", help="extract features for a manifest of PGM files")
    p.add_argument("--config", default=None)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="fit the classifier from a feature CSV")
    p.add_argument("--config", default=None)
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True, help="output model file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="score a feature CSV with a saved model")
    p.add_argument("--features", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out", required=True, help="output predictions CSV")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="cross-validate and report screening metrics")
    p.add_argument("--config", default=None)
    p.add_argument("--features", required=True)
    p.add_argument("--roc-csv", default=None)
    p.add_argument("--roc-svg", default=None)
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MammoscopeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
