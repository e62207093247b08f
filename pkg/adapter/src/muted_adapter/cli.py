"""Adapter CLI: batch export and the HTTP server."""

from __future__ import annotations

import argparse
import logging
import sys


def cmd_export(args) -> int:
    from .export import export_dataset
    from .service import service_from_env

    service = service_from_env(model_spec=args.model, parser_spec=args.parser)
    written, skipped, failed = export_dataset(service, args.in_path, args.out_dir)
    print(f"written {written}  skipped {skipped}  failed {failed}")
    return 0 if written or skipped else 1


def cmd_serve(args) -> int:
    from .service import run_server, service_from_env

    service = service_from_env(model_spec=args.model, parser_spec=args.parser)
    run_server(service, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Export schema-v1 attention records from an encoder HAP classifier",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("export", help="one record file per TSV line (id, language, text)")
    p.add_argument("--in", dest="in_path", required=True, help="TSV input: id<TAB>language<TAB>text")
    p.add_argument("--out", dest="out_dir", required=True, help="output directory of <id>.json")
    p.add_argument("--model", default=None, help="overrides ADAPTER_MODEL (default builtin:tiny)")
    p.add_argument("--parser", default=None, help="overrides ADAPTER_PARSER (e.g. spacy:en_core_web_sm)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="start the /attend HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None, help="overrides ADAPTER_PORT")
    p.add_argument("--model", default=None)
    p.add_argument("--parser", default=None)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
