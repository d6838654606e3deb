"""Command-line pipeline: preprocess, spectrum, PMI comparison, embedding,
evaluation.

Every run emits a JSON manifest next to its primary output recording the
resolved configuration; `replay` re-runs a manifest and reproduces the
outputs bit-identically. All randomness flows from explicit --seed flags
(default 0, never entropy).

Exit codes: 0 ok, 2 usage, 3 input validation, 4 numerical failure, 5 I/O.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import time
from importlib.metadata import PackageNotFoundError, version

import numpy as np

from . import evaluation, pmi, spectral
from .embed import (
    METHOD_ADJACENCY,
    METHOD_BINARIZED_LPINV,
    METHOD_INFINITEWALK,
    METHOD_LIMIT_RAW,
    EmbedConfig,
    embed as build_embedding,
    load_embedding_text,
    save_embedding_text,
)
from .graph import (
    Graph,
    GraphError,
    WalkabilityError,
    build_graph,
    largest_connected_component,
    load_edge_list,
    load_label_sets,
    load_labels,
    validate_walkable,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4
EXIT_IO = 5

_RAMP_FLAGS = {"r1": pmi.RAMP_ONE, "reps": pmi.RAMP_EPS}
_METHOD_FLAGS = {
    "infinitewalk": METHOD_INFINITEWALK,
    "binlap": METHOD_BINARIZED_LPINV,
    "adjacency": METHOD_ADJACENCY,
    "limitraw": METHOD_LIMIT_RAW,
}


def _toolkit_version() -> str:
    try:
        return version("infinitewalk")
    except PackageNotFoundError:
        return "unknown"


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_status: int):
        super().__init__(message)
        self.code = code
        self.exit_status = exit_status


def _atomic_write_text(path: str, content: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        f.write(content)
    os.replace(tmp, path)


def _atomic_write_bytes(path: str, content: bytes) -> None:
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(content)
    os.replace(tmp, path)


def _write_manifest(path: str, command: str, argv: list[str], inputs: dict,
                    config: dict, started: float) -> None:
    manifest = {
        "command": command,
        "argv": argv,
        "inputs": inputs,
        "config": config,
        "toolkit_version": _toolkit_version(),
        "duration_seconds": time.monotonic() - started,
    }
    _atomic_write_text(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# --- preprocessed-graph directory format ------------------------------------
#
#   DIR/edges.txt   canonical edge list "u v w" with dense int ids
#   DIR/names.json  list mapping dense id -> original node id string
#   DIR/labels.txt  optional, "u label [label ...]" with dense ids
#   DIR/stats.json  n, num_edges, volume, num_labels


def write_graph_dir(out_dir: str, g: Graph, labels=None) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []

    buf = io.StringIO()
    for u, v, w in zip(g.edge_u.tolist(), g.edge_v.tolist(), g.edge_w.tolist()):
        buf.write(f"{u} {v} {w!r}\n")
    path = os.path.join(out_dir, "edges.txt")
    _atomic_write_text(path, buf.getvalue())
    written.append(path)

    names = [g.name_of(i) for i in range(g.n)]
    path = os.path.join(out_dir, "names.json")
    _atomic_write_text(path, json.dumps(names) + "\n")
    written.append(path)

    stats = {
        "n": g.n,
        "num_edges": g.num_edges,
        "volume": g.volume,
        "num_labels": labels.num_labels if labels is not None else None,
    }
    path = os.path.join(out_dir, "stats.json")
    _atomic_write_text(path, json.dumps(stats, indent=2, sort_keys=True) + "\n")
    written.append(path)

    if labels is not None:
        buf = io.StringIO()
        for i, label_set in enumerate(labels.labels):
            toks = " ".join(labels.label_names[l] for l in sorted(label_set))
            buf.write(f"{i} {toks}".rstrip() + "\n")
        path = os.path.join(out_dir, "labels.txt")
        _atomic_write_text(path, buf.getvalue())
        written.append(path)
    return written


def read_graph_dir(graph_dir: str) -> Graph:
    with open(os.path.join(graph_dir, "names.json")) as f:
        names = json.load(f)
    edges = []
    with open(os.path.join(graph_dir, "edges.txt")) as f:
        for line in f:
            if not line.strip():
                continue
            u, v, w = line.split()
            edges.append((int(u), int(v), float(w)))
    return build_graph(len(names), edges, node_names=tuple(names))


# --- subcommands -------------------------------------------------------------


def _cmd_preprocess(args, argv: list[str]) -> None:
    started = time.monotonic()
    with open(args.edges) as f:
        g = load_edge_list(f)
    g = largest_connected_component(g)
    validate_walkable(g)
    labels = None
    if args.labels:
        with open(args.labels) as f:
            labels = load_labels(f, g)
    write_graph_dir(args.out, g, labels)
    _write_manifest(
        os.path.join(args.out, "manifest.json"),
        "preprocess",
        argv,
        {"edges": args.edges, "labels": args.labels},
        {},
        started,
    )


def _cmd_spectrum(args, argv: list[str]) -> None:
    started = time.monotonic()
    g = read_graph_dir(args.graph)
    cache = spectral.spectral_cache(g)
    buf = io.StringIO()
    spectral.export_spectrum(cache, buf)
    _atomic_write_text(args.out, buf.getvalue())
    _write_manifest(
        args.out + ".manifest.json", "spectrum", argv, {"graph": args.graph},
        {}, started,
    )


def _cmd_pmi_compare(args, argv: list[str]) -> None:
    started = time.monotonic()
    g = read_graph_dir(args.graph)
    ramp = _RAMP_FLAGS[args.ramp]
    cfg = pmi.PmiConfig(T=args.T, ramp=ramp)
    cache = spectral.spectral_cache(g)
    exact = pmi.pmi_exact(g, cfg)
    approx = pmi.pmi_approx(pmi.pmi_limit(g, cache), cfg)
    report = pmi.approx_error_report(exact, approx)
    _atomic_write_text(args.out, report.to_json() + "\n")
    _write_manifest(
        args.out + ".manifest.json", "pmi-compare", argv, {"graph": args.graph},
        {"T": args.T, "ramp": args.ramp}, started,
    )


def _cmd_pmi_empirical(args, argv: list[str]) -> None:
    started = time.monotonic()
    g = read_graph_dir(args.graph)
    wcfg = pmi.WalkConfig(gamma=args.gamma, L=args.len, T=args.T, seed=args.seed)
    est = pmi.empirical_pmi(g, wcfg)
    exact = pmi.pmi_exact(g, pmi.PmiConfig(T=args.T))
    comparable = ~(est.ramped_mask | exact.ramped_mask)
    if comparable.any():
        max_abs = float(np.abs(est.values - exact.values)[comparable].max())
    else:
        max_abs = 0.0
    _atomic_write_bytes(
        args.out, np.ascontiguousarray(est.values, dtype=np.float64).tobytes()
    )
    meta = {
        "n": est.n, "T": args.T, "b": 1.0, "epsilon": est.config.epsilon,
        "kind": est.kind, "gamma": args.gamma, "L": args.len, "seed": args.seed,
    }
    _atomic_write_text(args.out + ".meta", json.dumps(meta, indent=2, sort_keys=True) + "\n")
    deviation = {
        "max_abs_deviation_unramped": max_abs,
        "compared_entries": int(comparable.sum()),
    }
    _atomic_write_text(
        args.out + ".deviation.json",
        json.dumps(deviation, indent=2, sort_keys=True) + "\n",
    )
    _write_manifest(
        args.out + ".manifest.json", "pmi-empirical", argv,
        {"graph": args.graph},
        {"T": args.T, "gamma": args.gamma, "len": args.len, "seed": args.seed},
        started,
    )


def _cmd_embed(args, argv: list[str]) -> None:
    started = time.monotonic()
    g = read_graph_dir(args.graph)
    cfg = EmbedConfig(
        d=args.d, method=_METHOD_FLAGS[args.method], T=args.T, q=args.q,
        ramp=_RAMP_FLAGS[args.ramp],
    )
    emb = build_embedding(g, cfg)
    buf = io.StringIO()
    save_embedding_text(emb, g, buf)
    _atomic_write_text(args.out, buf.getvalue())
    _write_manifest(
        args.out + ".manifest.json", "embed", argv, {"graph": args.graph},
        {"method": args.method, "d": args.d, "T": args.T, "q": args.q,
         "ramp": args.ramp},
        started,
    )


def _cmd_evaluate(args, argv: list[str]) -> None:
    started = time.monotonic()
    with open(args.embedding) as f:
        names, vectors = load_embedding_text(f)
    with open(args.labels) as f:
        data = load_label_sets(f, names)
    cfg = evaluation.EvalConfig(
        train_ratios=tuple(args.ratios),
        repeats=args.repeats,
        C=args.C,
        seed=args.seed,
    )
    report = evaluation.evaluate_sweep(vectors, data, cfg, method=args.method_name)
    buf = io.StringIO()
    report.to_csv(buf)
    _atomic_write_text(args.out, buf.getvalue())
    _write_manifest(
        args.out + ".manifest.json", "evaluate", argv,
        {"embedding": args.embedding, "labels": args.labels},
        {"ratios": list(args.ratios), "repeats": args.repeats, "C": args.C,
         "seed": args.seed},
        started,
    )


def _cmd_replay(args, argv: list[str]) -> int:
    with open(args.manifest) as f:
        manifest = json.load(f)
    return run(manifest["argv"])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infinitewalk",
        description="Node embeddings from limiting random-walk PMI matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="load, extract largest component, validate")
    p.add_argument("--edges", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("spectrum", help="export eigenvalues of the transition matrix")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("pmi-compare", help="exact vs limit-based PMI error report")
    p.add_argument("--graph", required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--ramp", choices=sorted(_RAMP_FLAGS), default="r1")
    p.add_argument("--out", required=True)

    p = sub.add_parser("pmi-empirical", help="sampled PMI matrix + deviation report")
    p.add_argument("--graph", required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("embed", help="compute node embeddings")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=sorted(_METHOD_FLAGS), required=True)
    p.add_argument("--T", type=int, default=10)
    p.add_argument("--q", type=float, default=0.95)
    p.add_argument("--ramp", choices=sorted(_RAMP_FLAGS), default="reps")
    p.add_argument("--d", type=int, default=128)
    p.add_argument("--out", required=True)

    p = sub.add_parser("evaluate", help="multi-label classification sweep")
    p.add_argument("--embedding", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--ratios", type=float, nargs="+",
                   default=[round(0.1 * i, 1) for i in range(1, 10)])
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method-name", default="embedding")
    p.add_argument("--out", required=True)

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("--manifest", required=True)

    return parser


_HANDLERS = {
    "preprocess": _cmd_preprocess,
    "spectrum": _cmd_spectrum,
    "pmi-compare": _cmd_pmi_compare,
    "pmi-empirical": _cmd_pmi_empirical,
    "embed": _cmd_embed,
    "evaluate": _cmd_evaluate,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    if args.command == "replay":
        return _cmd_replay(args, argv)

    handler = _HANDLERS[args.command]
    try:
        handler(args, argv)
    except WalkabilityError as exc:
        print(f"E_VALIDATION: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except GraphError as exc:
        print(f"E_VALIDATION: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except spectral.SpectralError as exc:
        print(f"E_NUMERICAL: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"E_USAGE: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"E_IO: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
