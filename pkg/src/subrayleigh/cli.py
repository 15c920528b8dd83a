"""Command-line front end.

Three subcommands:

* ``scan``   -- run a configured detector scan and write CSV or JSON.
* ``oracle`` -- compare the closed-form field against the quadrature oracle
  on a decimated grid and print/write the agreement report.
* ``report`` -- re-print the fringe reports of an existing JSON result.

Exit codes: 0 success, 2 configuration problem, 3 numerical problem,
4 I/O problem.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, NumericalError
from .scan import load_config, read_result_json, run_oracle_check, run_scan, write_result

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subrayleigh",
        description="Detector scans of multi-photon diffraction correlations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", help="run a configured detector scan")
    scan.add_argument("--config", required=True, help="JSON configuration file")
    scan.add_argument("--output", default=None, help="output path (default: stdout summary only)")
    scan.add_argument("--format", choices=("csv", "json"), default="json", help="output format")
    scan.add_argument("--workers", type=int, default=None, help="thread pool size")

    oracle = sub.add_parser("oracle", help="check the closed form against the quadrature oracle")
    oracle.add_argument("--config", required=True, help="JSON configuration file")
    oracle.add_argument("--output", default=None, help="write the report as JSON")

    report = sub.add_parser("report", help="re-print the reports of an existing JSON result")
    report.add_argument("input", help="JSON result produced by `scan --format json`")
    return parser


def _print_report(label: str, report: dict) -> None:
    freq = report["dominant_frequency"]
    freq_text = "unresolved" if freq is None else f"{freq:.6g}"
    print(
        f"{label}: dominant_frequency={freq_text} "
        f"zero_count={report['zero_count']} visibility={report['visibility']:.6g}"
    )


def _cmd_scan(args) -> int:
    config = load_config(args.config)
    if args.workers is not None and args.workers < 1:
        raise ConfigError("--workers must be >= 1")
    result = run_scan(config, workers=args.workers)
    if args.output is not None:
        write_result(result, args.output, fmt=args.format)
        print(f"wrote {len(result.grid)} rows to {args.output} ({args.format})")
    if result.excluded:
        print("excluded grid points: " + ", ".join(repr(r) for r in result.excluded))
    _print_report("signal", result.report.to_dict())
    _print_report("classical", result.classical_report.to_dict())
    return EXIT_OK


def _cmd_oracle(args) -> int:
    config = load_config(args.config)
    report = run_oracle_check(config)
    payload = report.to_dict()
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2)
            handle.write("\n")
    for key, value in payload.items():
        print(f"{key}: {value}")
    return EXIT_OK


def _cmd_report(args) -> int:
    data = read_result_json(args.input)
    for key in ("report", "classical_report"):
        if key not in data:
            raise ConfigError(f"{args.input}: not a scan result (missing {key!r})")
    print(f"scenario: {data.get('config', {}).get('scenario', '?')}")
    _print_report("signal", data["report"])
    _print_report("classical", data["classical_report"])
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"scan": _cmd_scan, "oracle": _cmd_oracle, "report": _cmd_report}[args.command]
    try:
        return handler(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
