"""Command-line entry points.

Every command is a thin wrapper over the same core functions the HTTP
service uses, so CLI and service outputs agree for identical inputs.

Exit codes: 0 success, 1 I/O errors, 2 validation errors.  Errors are
also written to stderr as one machine-readable JSON object.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .attention_core import AttentionRecord, CoreValidationError, ExtractionConfig
from .benchmark import report_table, report_to_obj, run_benchmark
from .evaluation import (
    DEFAULT_GRID,
    SETTINGS,
    EvalResult,
    evaluate_dataset,
    predictions_for_config,
    random_baseline,
    result_table,
    result_to_obj,
    tune_threshold,
)
from .interchange import (
    GoldDatasetError,
    RecordValidationError,
    load_gold_dataset,
    parse_attention_record,
)
from .pipeline import analyze, prediction_document, run_extraction
from .visualization import render_page_html

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2


class CliError(Exception):
    def __init__(self, exit_code: int, error: str, detail: str | None = None):
        self.exit_code = exit_code
        self.error = error
        self.detail = detail
        super().__init__(detail or error)


def _fail_io(error: str, detail: str | None = None) -> CliError:
    return CliError(EXIT_IO, error, detail)


def _fail_validation(error: str, detail: str | None = None) -> CliError:
    return CliError(EXIT_VALIDATION, error, detail)


def _read_record(path: str) -> AttentionRecord:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise _fail_io("cannot_read_record", f"{path}: {e}") from e
    try:
        return parse_attention_record(data)
    except RecordValidationError as e:
        raise _fail_validation("invalid_record", f"{path}: {e}") from e


def _read_records_dir(path: str) -> dict[str, AttentionRecord]:
    base = Path(path)
    if not base.is_dir():
        raise _fail_io("not_a_directory", str(path))
    records: dict[str, AttentionRecord] = {}
    for file in sorted(base.glob("*.json")):
        records[file.stem] = _read_record(str(file))
    if not records:
        raise _fail_io("no_records", f"no *.json records in {path}")
    return records


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as e:
            raise _fail_io("cannot_write_output", f"{out}: {e}") from e


def _parse_grid(spec: str) -> list[float]:
    try:
        lo_s, hi_s, step_s = spec.split(":")
        lo, hi, step = float(lo_s), float(hi_s), float(step_s)
    except ValueError as e:
        raise _fail_validation("bad_grid", f"expected a:b:step, got {spec!r}") from e
    if step <= 0 or hi < lo:
        raise _fail_validation("bad_grid", f"empty grid from {spec!r}")
    values = []
    k = 0
    while True:
        v = round(lo + k * step, 10)
        if v > hi + 1e-12:
            break
        values.append(round(v, 4))
        k += 1
    return values


def _extraction_config(args) -> ExtractionConfig:
    try:
        return ExtractionConfig(threshold=args.threshold, mode=args.mode)
    except CoreValidationError as e:
        raise _fail_validation("bad_config", str(e)) from e


def cmd_extract(args) -> int:
    record = _read_record(args.record)
    cfg = _extraction_config(args)
    pred, pair = run_extraction(record, cfg, expand_modifiers=not args.no_expand)
    if args.format == "json":
        doc = prediction_document(record, pred, pair, cfg)
        _write_out(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.out)
    else:
        result = analyze(record, cfg, expand_modifiers=not args.no_expand)
        _write_out(result.heatmap_html + "\n" + result.roles_html + "\n", args.out)
    return EXIT_OK


def cmd_visualize(args) -> int:
    record = _read_record(args.record)
    cfg = _extraction_config(args)
    result = analyze(record, cfg, expand_modifiers=not args.no_expand, palette=args.palette)
    page = render_page_html(
        title="muted analysis",
        heatmap_html=result.heatmap_html,
        roles_html=result.roles_html,
        classifier_label=record.classifier_label,
        classifier_score=record.classifier_score,
    )
    _write_out(page, args.out)
    return EXIT_OK


def _load_golds(args):
    try:
        return load_gold_dataset(args.dataset, args.dataset_format)
    except GoldDatasetError as e:
        raise _fail_validation("bad_dataset", str(e)) from e
    except OSError as e:
        raise _fail_io("cannot_read_dataset", f"{args.dataset}: {e}") from e


def _emit_result(result: EvalResult, fmt: str, out: str | None) -> None:
    pieces = []
    if fmt in ("table", "both"):
        pieces.append(result_table(result, max_rows=40))
    if fmt in ("json", "both"):
        pieces.append(json.dumps(result_to_obj(result), indent=2, ensure_ascii=False))
    _write_out("\n".join(pieces) + "\n", out)


def cmd_evaluate(args) -> int:
    golds = _load_golds(args)
    if args.random_baseline:
        rng = random.Random(args.seed)
        preds = {
            g.id: (random_baseline(g, p=args.baseline_p, rng=rng), None) for g in golds
        }
        threshold_used, mode_used = args.baseline_p, "random"
    else:
        if not args.records_dir:
            raise _fail_validation("missing_records", "provide --records-dir or --random-baseline")
        records = _read_records_dir(args.records_dir)
        missing = [g.id for g in golds if g.id not in records]
        if missing:
            raise _fail_validation("missing_predictions", f"no record for ids: {missing[:10]}")
        cfg = _extraction_config(args)
        preds = predictions_for_config(records, cfg, expand_modifiers=not args.no_expand)
        threshold_used, mode_used = args.threshold, args.mode
    try:
        result = evaluate_dataset(
            preds,
            golds,
            args.setting,
            threshold_used=threshold_used,
            mode_used=mode_used,
            raw_span_as_target=args.raw_span_as_target,
        )
    except (KeyError, ValueError) as e:
        raise _fail_validation("evaluation_failed", str(e)) from e
    _emit_result(result, args.format, args.out)
    return EXIT_OK


def cmd_tune(args) -> int:
    golds = _load_golds(args)
    records = _read_records_dir(args.records_dir)
    missing = [g.id for g in golds if g.id not in records]
    if missing:
        raise _fail_validation("missing_predictions", f"no record for ids: {missing[:10]}")
    grid = _parse_grid(args.grid) if args.grid else list(DEFAULT_GRID)
    try:
        best_tau, results = tune_threshold(
            records,
            golds,
            args.setting,
            grid=grid,
            mode=args.mode,
            expand_modifiers=not args.no_expand,
            raw_span_as_target=args.raw_span_as_target,
        )
    except (KeyError, ValueError) as e:
        raise _fail_validation("tuning_failed", str(e)) from e

    lines = [f"{'threshold':>10}  {'mean F1':>8}  {'evaluated':>9}  {'excluded':>8}"]
    for tau in sorted(results):
        r = results[tau]
        marker = " *" if tau == best_tau else ""
        lines.append(
            f"{tau:>10.2f}  {r.mean_f1:>8.4f}  {r.n_evaluated:>9}  {r.n_excluded:>8}{marker}"
        )
    lines.append(f"best threshold: {best_tau:g} ({args.mode})")
    obj = {
        "setting": args.setting,
        "mode": args.mode,
        "best_threshold": best_tau,
        "grid": [
            {
                "threshold": tau,
                "mean_f1": results[tau].mean_f1,
                "n_evaluated": results[tau].n_evaluated,
                "n_excluded": results[tau].n_excluded,
            }
            for tau in sorted(results)
        ],
    }
    pieces = []
    if args.format in ("table", "both"):
        pieces.append("\n".join(lines))
    if args.format in ("json", "both"):
        pieces.append(json.dumps(obj, indent=2, ensure_ascii=False))
    _write_out("\n".join(pieces) + "\n", args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = list(_read_records_dir(args.records_dir).values())
    cfg = _extraction_config(args)
    try:
        report = run_benchmark(records, n=args.n, cfg=cfg)
    except ValueError as e:
        raise _fail_validation("bench_failed", str(e)) from e
    pieces = []
    if args.format in ("table", "both"):
        pieces.append(report_table(report))
    if args.format in ("json", "both"):
        pieces.append(json.dumps(report_to_obj(report), indent=2))
    _write_out("\n".join(pieces) + "\n", args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import config_from_env, run_server

    config = config_from_env(
        adapter_url=args.adapter_url,
        port=args.port,
        max_chars=args.max_chars,
        ui_dir=args.ui_dir,
    )
    run_server(config, host=args.host)
    return EXIT_OK


def _add_threshold_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threshold", type=float, default=0.6, help="span threshold (default 0.6)")
    p.add_argument(
        "--mode",
        choices=["relative", "absolute"],
        default="relative",
        help="threshold scale: fraction of the max score, or raw value",
    )
    p.add_argument(
        "--no-expand",
        action="store_true",
        help="disable modifier expansion when assigning target words",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="muted",
        description="Offensive-span and target/argument extraction from classifier attention",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="predict spans for one attention record")
    p.add_argument("record", help="path to a schema-v1 attention record")
    _add_threshold_flags(p)
    p.add_argument("--format", choices=["json", "html"], default="json")
    p.add_argument("--out", default=None, help="write to file instead of stdout")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("visualize", help="render a standalone HTML page for one record")
    p.add_argument("record")
    _add_threshold_flags(p)
    p.add_argument("--palette", choices=["red", "colorblind"], default="red")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_visualize)

    p = sub.add_parser("evaluate", help="score predictions against a gold dataset")
    p.add_argument("--dataset", required=True, help="gold dataset file")
    p.add_argument("--dataset-format", choices=["tsd_csv", "tbo_jsonl"], required=True)
    p.add_argument("--records-dir", default=None, help="directory of <id>.json records")
    p.add_argument("--setting", choices=list(SETTINGS), required=True)
    _add_threshold_flags(p)
    p.add_argument("--raw-span-as-target", action="store_true",
                   help="score the raw span set as the target prediction")
    p.add_argument("--random-baseline", action="store_true",
                   help="evaluate the seeded random word baseline instead of records")
    p.add_argument("--baseline-p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["table", "json", "both"], default="both")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("tune", help="grid-search the best threshold on a training split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--dataset-format", choices=["tsd_csv", "tbo_jsonl"], required=True)
    p.add_argument("--records-dir", required=True)
    p.add_argument("--setting", choices=list(SETTINGS), required=True)
    p.add_argument("--grid", default=None, help="a:b:step (default 0.05:1.0:0.05)")
    p.add_argument("--mode", choices=["relative", "absolute"], default="relative")
    p.add_argument("--no-expand", action="store_true")
    p.add_argument("--raw-span-as-target", action="store_true")
    p.add_argument("--format", choices=["table", "json", "both"], default="both")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("bench", help="per-phase latency over n inputs")
    p.add_argument("--records-dir", required=True)
    p.add_argument("--n", type=int, default=100)
    _add_threshold_flags(p)
    p.add_argument("--format", choices=["table", "json", "both"], default="table")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None, help="overrides MUTED_PORT")
    p.add_argument("--adapter-url", default=None, help="overrides MUTED_ADAPTER_URL")
    p.add_argument("--max-chars", type=int, default=None, help="overrides MUTED_MAX_CHARS")
    p.add_argument("--ui-dir", default=None, help="serve a built web UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        body = {"error": e.error}
        if e.detail:
            body["detail"] = e.detail
        print(json.dumps(body), file=sys.stderr)
        return e.exit_code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
