"""Command-line workflow: ``compute`` a bundle, ``serve`` it, ``export`` payloads.

Exit codes: 2 malformed inputs, 3 id mismatch between CSV and geometry,
4 port in use, 5 isolated region requested for a per-location plot.
Set ``MORAN_LOG={error|info|debug}`` to control log verbosity.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import socket
import sys

from .bundle import (
    PER_LOCATION_PLOTS,
    PLOT_KINDS,
    Workspace,
    compute_bundle,
    default_config,
    read_bundle,
    write_bundle,
)
from .errors import IdMismatch, IsolatedRegion, LisaError, UnknownId
from .geo import QUEEN, ROOK
from .payloads import COLOR_MODE_AUTOCORRELATION, COLOR_MODE_LABEL

log = logging.getLogger("lisakit")


def _fail(code: int, message: str):
    print(f"lisakit: {message}", file=sys.stderr)
    raise SystemExit(code)


def _read_csv_values(path: str, id_col: str, value_col: str) -> dict:
    values = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                _fail(2, f"{path}: empty CSV")
            if id_col not in reader.fieldnames:
                _fail(2, f"{path}: no column {id_col!r}")
            if value_col not in reader.fieldnames:
                _fail(2, f"{path}: no column {value_col!r}")
            for lineno, row in enumerate(reader, start=2):
                rid = (row[id_col] or "").strip()
                raw = (row[value_col] or "").strip()
                if not rid:
                    _fail(2, f"{path}:{lineno}: blank id")
                if rid in values:
                    _fail(2, f"{path}:{lineno}: duplicate id {rid!r}")
                try:
                    values[rid] = float(raw)
                except ValueError:
                    _fail(2, f"{path}:{lineno}: non-numeric value {raw!r}")
    except OSError as exc:
        _fail(2, f"cannot read {path}: {exc}")
    if not values:
        _fail(2, f"{path}: no data rows")
    return values


def _cmd_compute(args) -> int:
    if args.permutations < 1:
        _fail(2, "--permutations must be >= 1")
    if not 0.0 < args.alpha < 0.5:
        _fail(2, "--alpha must be in (0, 0.5)")
    try:
        with open(args.geo, "rb") as fh:
            geometry = json.loads(fh.read().decode("utf-8"))
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        _fail(2, f"cannot read geometry {args.geo}: {exc}")
    values = _read_csv_values(args.data, args.id_col, args.value_col)
    config = default_config(
        permutations=args.permutations,
        seed=args.seed,
        alpha=args.alpha,
        contiguity=args.contiguity,
        snap_tolerance=args.snap_tolerance,
        id_property=args.id_col,
        lonlat=args.lonlat,
    )
    name = os.path.splitext(os.path.basename(args.data))[0]
    try:
        bundle = compute_bundle(
            geometry, values, dataset_name=name, config=config, workers=args.workers
        )
    except IdMismatch as exc:
        _fail(3, str(exc))
    except LisaError as exc:
        _fail(2, str(exc))
    write_bundle(bundle, args.out)
    log.info("wrote bundle %s (%d regions)", args.out, len(bundle.results))
    return 0


def _load_workspace(path: str) -> Workspace:
    try:
        return Workspace.from_bundle(read_bundle(path))
    except LisaError as exc:
        _fail(2, f"cannot load bundle: {exc}")


def _cmd_serve(args) -> int:
    ws = _load_workspace(args.bundle)
    if args.static and not os.path.isdir(args.static):
        _fail(2, f"static directory {args.static} does not exist")
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        probe.bind((args.host, args.port))
    except OSError as exc:
        _fail(4, f"port {args.port} unavailable: {exc}")
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    app = create_app(ws, static_dir=args.static)
    log.info("serving bundle %s on %s:%d", args.bundle, args.host, args.port)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_export(args) -> int:
    ws = _load_workspace(args.bundle)
    per_location = args.plot in PER_LOCATION_PLOTS
    if per_location and args.location is None:
        _fail(2, f"--location is required for --plot {args.plot}")
    try:
        body = ws.plot_bytes(args.plot, args.location, args.mode)
    except UnknownId as exc:
        _fail(2, str(exc))
    except IsolatedRegion as exc:
        _fail(5, str(exc))
    with open(args.out, "wb") as fh:
        fh.write(body)
    log.info("wrote %s payload to %s", args.plot, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lisakit",
        description="Local Moran's I analysis: compute bundles, serve and export plot payloads.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="analyze a dataset and write a bundle")
    c.add_argument("--geo", required=True, help="GeoJSON FeatureCollection path")
    c.add_argument("--data", required=True, help="CSV attribute table path")
    c.add_argument("--id-col", default="id", help="id column / geometry id property")
    c.add_argument("--value-col", default="value", help="attribute value column")
    c.add_argument("--contiguity", choices=[QUEEN, ROOK], default=QUEEN)
    c.add_argument("--permutations", type=int, default=999)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--alpha", type=float, default=0.05)
    c.add_argument("--snap-tolerance", type=float, default=1e-7)
    c.add_argument("--lonlat", action="store_true", help="treat coordinates as lon/lat degrees")
    c.add_argument("--workers", type=int, default=None)
    c.add_argument("--out", required=True, help="bundle path (.json or .json.gz)")
    c.set_defaults(func=_cmd_compute)

    s = sub.add_parser("serve", help="serve a bundle over HTTP")
    s.add_argument("--bundle", required=True)
    s.add_argument("--port", type=int, default=8080)
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--static", default=None, help="dashboard asset directory")
    s.set_defaults(func=_cmd_serve)

    e = sub.add_parser("export", help="write one plot payload as JSON")
    e.add_argument("--bundle", required=True)
    e.add_argument("--plot", required=True, choices=list(PLOT_KINDS))
    e.add_argument("--location", default=None)
    e.add_argument(
        "--mode",
        choices=[COLOR_MODE_LABEL, COLOR_MODE_AUTOCORRELATION],
        default=COLOR_MODE_LABEL,
        help="dual-density color mode",
    )
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("MORAN_LOG", "error").lower()
    logging.basicConfig(
        level={"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}.get(
            level, logging.ERROR
        ),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
