"""Batch CLI: learn, infer, diff, rank, render, serve.

Each subcommand is a thin wrapper over the core package; everything the
service does is reachable here with no UI. All randomness flows through
--seed, so outputs are reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys

from .inference import ImpossibleEvidenceError, posterior_all
from .layout import compute_layout
from .learning import LearnConfig, learn_structure, read_csv, subsample
from .model import DomainError, EvidenceSet, ModelError
from .netformat import NetworkFormatError, parse_network, serialize_network
from .relevance import FilterConfig, diff_report, inference_diff, rank
from .scene import build_scene
from .svg import render_svg


class CliError(Exception):
    pass


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc


def _load_network(path: str):
    return parse_network(_read_text(path))


def _evidence(net, text: str) -> EvidenceSet:
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"evidence is not valid JSON: {exc}") from exc
    if not isinstance(mapping, dict):
        raise CliError("evidence must be a JSON object of {variable: value}")
    return EvidenceSet.from_mapping(net, mapping)


def _json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_learn(args) -> int:
    data = read_csv(_read_text(args.data))
    if args.sample_n is not None:
        data = subsample(data, args.sample_n, args.seed)
    config = LearnConfig(
        max_indegree=args.max_indegree,
        dirichlet_alpha=args.alpha,
        max_passes=args.max_passes,
    )
    net = learn_structure(data, config)
    _write_text(args.out, serialize_network(net))
    return 0


def cmd_infer(args) -> int:
    net = _load_network(args.network)
    evidence = _evidence(net, args.evidence)
    result = posterior_all(net, evidence)
    report = {
        "evidence": evidence.to_mapping(net),
        "posteriors": [
            {
                "name": var.name,
                "values": list(var.space.values),
                "masses": list(dist.masses),
            }
            for var, dist in zip(net.variables, result.posteriors)
        ],
    }
    _write_text(args.out, _json(report))
    return 0


def cmd_diff(args) -> int:
    net = _load_network(args.network)
    diff = inference_diff(net, _evidence(net, args.e1), _evidence(net, args.e2))
    _write_text(args.out, _json(diff_report(diff)))
    return 0


def cmd_rank(args) -> int:
    net = _load_network(args.network)
    diff = inference_diff(net, _evidence(net, args.e1), _evidence(net, args.e2))
    report = diff_report(diff, rank(diff), FilterConfig(args.threshold))
    _write_text(args.out, _json(report))
    return 0


def cmd_render(args) -> int:
    net = _load_network(args.network)
    diff = inference_diff(net, _evidence(net, args.e1), _evidence(net, args.e2))
    ranking = rank(diff)
    scene = build_scene(
        net, diff, ranking, FilterConfig(args.threshold), compute_layout(net)
    )
    _write_text(args.out, render_svg(scene))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bndiff",
        description="Inference-diff workbench for discrete Bayesian networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a network from a CSV dataset")
    learn.add_argument("--data", required=True, help="CSV file, header row first")
    learn.add_argument("--out", default=None, help="output network document path")
    learn.add_argument("--max-indegree", type=int, default=2)
    learn.add_argument("--alpha", type=float, default=1.0)
    learn.add_argument("--sample-n", type=int, default=None,
                       help="subsample this many rows before learning")
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--max-passes", type=int, default=1000)
    learn.set_defaults(func=cmd_learn)

    infer = sub.add_parser("infer", help="posteriors under one evidence set")
    infer.add_argument("--network", required=True)
    infer.add_argument("--evidence", default="{}", help='JSON map, e.g. {"X":"v"}')
    infer.add_argument("--out", default=None)
    infer.set_defaults(func=cmd_infer)

    diff = sub.add_parser("diff", help="paired posteriors under two evidence sets")
    diff.add_argument("--network", required=True)
    diff.add_argument("--e1", default="{}")
    diff.add_argument("--e2", default="{}")
    diff.add_argument("--out", default=None)
    diff.set_defaults(func=cmd_diff)

    rank_p = sub.add_parser("rank", help="diff plus relevance ranking and filter")
    rank_p.add_argument("--network", required=True)
    rank_p.add_argument("--e1", default="{}")
    rank_p.add_argument("--e2", default="{}")
    rank_p.add_argument("--threshold", type=float, default=100.0)
    rank_p.add_argument("--out", default=None)
    rank_p.set_defaults(func=cmd_rank)

    render = sub.add_parser("render", help="render the filtered scene to SVG")
    render.add_argument("--network", required=True)
    render.add_argument("--e1", default="{}")
    render.add_argument("--e2", default="{}")
    render.add_argument("--threshold", type=float, default=100.0)
    render.add_argument("--out", default=None)
    render.set_defaults(func=cmd_render)

    serve = sub.add_parser("serve", help="start the HTTP session service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8314)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        ModelError,
        DomainError,
        NetworkFormatError,
        ImpossibleEvidenceError,
        ValueError,
    ) as exc:
        print(f"bndiff: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
