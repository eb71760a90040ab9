"""Command line entry: serve the design studio or run a headless benchmark."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .benchmark import records_to_csv, run_headless
from .service import ServiceConfig, create_app, load_service_config


def _parse_target(text: str):
    parts = [float(p) for p in text.split(",")]
    return parts


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="grassfeel",
        description="Midair haptic design studio: live service or headless benchmark.",
    )
    p.add_argument("--config", help="service configuration JSON file")
    p.add_argument("--port", type=int, help="listen port (overrides config)")
    p.add_argument("--seed", type=int, default=0, help="session seed")
    p.add_argument("--headless", action="store_true",
                   help="run a synthetic-user benchmark instead of serving")
    p.add_argument("--iterations", type=int, default=15,
                   help="headless: number of commit rounds")
    p.add_argument("--noise", type=float, default=0.0,
                   help="headless: Gumbel noise scale on the synthetic choices")
    p.add_argument("--target", type=_parse_target, default=None,
                   help="headless: 7 comma-separated cube coordinates")
    p.add_argument("--method", choices=("sls", "random"), default="sls",
                   help="headless: search method")
    p.add_argument("--out", help="headless: CSV destination (default stdout)")
    p.add_argument("--log-out", help="headless: write the event log as JSONL here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_service_config(args.config) if args.config else ServiceConfig()
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.port is not None:
        cfg = replace(cfg, port=args.port)

    if args.headless:
        result = run_headless(
            seed=args.seed,
            iterations=args.iterations,
            noise=args.noise,
            target=args.target,
            method=args.method,
            config=cfg.session,
        )
        text = records_to_csv(result.records, args.out)
        if args.out is None:
            sys.stdout.write(text)
        if args.log_out and result.session is not None:
            with open(args.log_out, "w") as fh:
                fh.write(result.session.log_jsonl())
        return 0

    import uvicorn

    uvicorn.run(create_app(cfg), host=cfg.listen_address, port=cfg.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
