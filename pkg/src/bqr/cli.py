"""Command-line interface.

Subcommands: index, search, recommend, evaluate, serve, export-plot.
Machine-readable output goes to stdout (--format json|csv), diagnostics
to stderr. Exit codes: 0 success, 1 user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys
from dataclasses import replace
from pathlib import Path

from .corpus import UnlabeledPolicy, load_corpus, load_queries, load_schema
from .embeddings import load_vectors
from .engine import EngineConfig, recommend
from .errors import BqrError, ConfigError
from .evaluation import manifest_json, method_matrix, run_manifest, scatter_csv, scatter_rows
from .index import Index, IndexParams, build_index
from .providers import LiveHttpProvider, ReplayProvider
from .scoring import default_dims
from .service import Snapshot, _parse_method, create_app, recommendation_payload


class _Parser(argparse.ArgumentParser):
    # usage problems are user errors: exit 1, not argparse's default 2
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="bqr", description="Balanced query recommendation over a labeled corpus.")
    parser.add_argument("--corpus", help="JSON-Lines corpus file")
    parser.add_argument("--topics", help="JSON-Lines query-topics file")
    parser.add_argument("--embeddings", help="GloVe-format word vectors file")
    parser.add_argument("--fixtures", help="replay fixture file (JSON map prompt-hash -> response)")
    parser.add_argument("--config", help="engine config file (JSON)")
    parser.add_argument("--schema", help="schema file (JSON list of dimension names)")
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="output format")
    parser.add_argument(
        "--live-llm", action="store_true",
        help="use the live HTTP provider (BQR_LLM_ENDPOINT / BQR_LLM_KEY)",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    p_index = sub.add_parser("index", help="build and persist the BM25 index")
    p_index.add_argument("--out", required=True, help="path for the serialized index")
    p_index.add_argument("--k1", type=float, default=0.9)
    p_index.add_argument("--b", type=float, default=0.4)

    p_search = sub.add_parser("search", help="run one BM25 query")
    p_search.add_argument("--query", required=True)
    p_search.add_argument("--n", type=int, default=20)
    p_search.add_argument("--index", help="serialized index (skips rebuilding)")

    p_rec = sub.add_parser("recommend", help="recommend balanced queries")
    p_rec.add_argument("--query", required=True)
    p_rec.add_argument("--method", default=None, help="m1 | m2 | m3")
    p_rec.add_argument("--k", type=int, default=None)
    p_rec.add_argument("--n", type=int, default=None)
    p_rec.add_argument("--max-iter", type=int, default=None)

    p_eval = sub.add_parser("evaluate", help="pairwise method domination matrix")
    p_eval.add_argument("--methods", default="m1,m2,m3", help="comma-separated method list")
    p_eval.add_argument("--out-dir", help="write matrix.csv, summary.json and manifest.json here")

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--ui-dir", help="serve a built web UI from this directory at /")

    p_plot = sub.add_parser("export-plot", help="scatter data for one query")
    p_plot.add_argument("--query", required=True)
    p_plot.add_argument("--method", default=None)
    p_plot.add_argument("--out", help="output file (stdout when omitted)")

    return parser


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    with Path(path).open(encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must be a JSON object")
    return data


def _engine_config(args, cfg: dict, dimensions: list[str]) -> EngineConfig:
    method = cfg.get("method", "m2")
    dims = default_dims(cfg.get("dimensions", dimensions))
    try:
        return EngineConfig(
            k=cfg.get("k", 10),
            n=cfg.get("n", 20),
            max_iter=cfg.get("max_iter", 5),
            method=_parse_method(method),
            dims=dims,
            unlabeled_policy=UnlabeledPolicy(cfg.get("unlabeled_policy", "exclude-unlabeled")),
            neighbor_words=cfg.get("neighbor_words", 10),
            skip_llm_single_word=cfg.get("skip_llm_single_word", False),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid engine config: {exc}") from exc


def _load_snapshot(args, need_corpus=True, need_index=True, index_path=None) -> Snapshot:
    cfg = _load_config_file(args.config)
    corpus_path = args.corpus or cfg.get("corpus")
    schema_path = args.schema or cfg.get("schema")
    if need_corpus and not corpus_path:
        raise ConfigError("--corpus is required for this command")
    dimensions = load_schema(schema_path) if schema_path else cfg.get("dimensions", [])
    corpus = load_corpus(corpus_path, dimensions) if corpus_path else None
    index = None
    if need_index and corpus is not None:
        if index_path:
            index = Index.load(index_path)
        else:
            index = build_index(corpus)
    store = None
    embeddings_path = args.embeddings or cfg.get("embeddings")
    if embeddings_path:
        store = load_vectors(embeddings_path)
    provider = None
    fixtures_path = args.fixtures or cfg.get("fixtures")
    if fixtures_path:
        provider = ReplayProvider.from_file(fixtures_path)
    elif args.live_llm:
        provider = LiveHttpProvider(model=cfg.get("model", "default"))
    topics = []
    topics_path = args.topics or cfg.get("topics")
    if topics_path:
        topics = load_queries(topics_path, corpus)
    config = _engine_config(args, cfg, dimensions)
    return Snapshot(
        corpus=corpus, index=index, store=store, provider=provider, config=config, topics=topics
    )


def _cmd_index(args) -> int:
    snapshot = _load_snapshot(args, need_index=False)
    index = build_index(snapshot.corpus, IndexParams(k1=args.k1, b=args.b))
    index.save(args.out)
    print(json.dumps({"out": args.out, **index.stats()}))
    return 0


def _cmd_search(args) -> int:
    snapshot = _load_snapshot(args, index_path=args.index)
    rs = snapshot.index.search(args.query, args.n)
    if args.format == "csv":
        print("doc_id,score")
        for doc_id, score in rs.hits:
            print(f"{doc_id},{score!r}")
    else:
        payload = {
            "query": rs.query,
            "hits": [{"doc_id": d, "score": s} for d, s in rs.hits],
        }
        print(json.dumps(payload, indent=2))
    return 0


def _run_recommend(args, snapshot: Snapshot):
    config = snapshot.config
    overrides = {}
    if args.method:
        overrides["method"] = _parse_method(args.method)
    if getattr(args, "k", None):
        overrides["k"] = args.k
    if getattr(args, "n", None):
        overrides["n"] = args.n
    if getattr(args, "max_iter", None):
        overrides["max_iter"] = args.max_iter
    if overrides:
        config = replace(config, **overrides)
    return recommend(
        args.query,
        config,
        snapshot.index,
        snapshot.corpus,
        snapshot.store,
        snapshot.provider,
        topic=snapshot.topic_for(args.query),
    ), config


def _cmd_recommend(args) -> int:
    snapshot = _load_snapshot(args)
    result, _config = _run_recommend(args, snapshot)
    if args.format == "csv":
        names = [name for name, _ in result.original.dim_scores]
        print("query," + ",".join(names))
        for sq in result.recs:
            print(sq.query + "," + ",".join(repr(v) for v in sq.values))
    else:
        print(json.dumps(recommendation_payload(snapshot, result), indent=2))
    return 0


def _cmd_evaluate(args) -> int:
    snapshot = _load_snapshot(args)
    if not snapshot.topics:
        raise ConfigError("evaluate needs --topics")
    methods = [_parse_method(m) for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise ConfigError("no methods given")
    matrix = method_matrix(
        snapshot.topics, methods, snapshot.config,
        snapshot.index, snapshot.corpus, snapshot.store, snapshot.provider,
    )
    csv_text = matrix.to_csv()
    summary = {"pairs": matrix.summary(), "failures": matrix.failures}
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "matrix.csv").write_text(csv_text, encoding="utf-8")
        (out / "summary.json").write_text(
            json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        files = {
            name: path
            for name, path in [
                ("corpus", args.corpus), ("topics", args.topics),
                ("embeddings", args.embeddings), ("fixtures", args.fixtures),
            ]
            if path
        }
        manifest = run_manifest(snapshot.config, methods, snapshot.topics, files)
        (out / "manifest.json").write_text(manifest_json(manifest), encoding="utf-8")
        print(json.dumps({"out_dir": str(out), "topics": len(snapshot.topics)}))
    elif args.format == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    snapshot = _load_snapshot(args)
    app = create_app(snapshot, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_export_plot(args) -> int:
    snapshot = _load_snapshot(args)
    result, _config = _run_recommend(args, snapshot)
    if args.format == "json":
        rows = [
            {"query": q, "dim_name": d, "value": v, "on_front": f}
            for q, d, v, f in scatter_rows(result)
        ]
        text = json.dumps(rows, indent=2)
    else:
        text = scatter_csv(result)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(json.dumps({"out": args.out, "rows": len(scatter_rows(result))}))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


_COMMANDS = {
    "index": _cmd_index,
    "search": _cmd_search,
    "recommend": _cmd_recommend,
    "evaluate": _cmd_evaluate,
    "serve": _cmd_serve,
    "export-plot": _cmd_export_plot,
}


def main(argv: list[str] | None = None) -> int:
    if hasattr(signal, "SIGPIPE"):
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)  # behave when piped to head
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except BqrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
