"""Command-line entry points.

Subcommands: select, mine, pipeline, split, export, eval, overlap, index,
query.  Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import evaluation, formats, mining, retrieval
from .pipeline import (DatasetBundle, EmptyDataset, PipelineConfig, deduplicate,
                       run_pipeline, split)
from .textproc import tokenize_apiseq, tokenize_desc

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise SystemExit((EXIT_USAGE, message))


def _build_parser() -> _Parser:
    parser = _Parser(prog="apimine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="apply the project-selection predicate")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--min-stars", type=int, default=mining.MIN_STARS)
    p.add_argument("--max-size-bytes", type=int,
                   default=mining.MAX_PROJECT_SIZE_BYTES)

    p = sub.add_parser("mine", help="extract (desc, apiseq) pairs")
    p.add_argument("--manifest", required=True,
                   help="manifest of accepted projects (JSONL)")
    p.add_argument("--out", required=True, help="output pairs JSONL")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--stats-out", help="write mining stats JSON here")

    p = sub.add_parser("pipeline", help="run the filtering pipeline and split")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--config", help="key = value config file")

    p = sub.add_parser("split", help="hash-split an already-deduplicated file")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--test-fraction", type=float, default=0.04)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("export", help="write aligned parallel text files")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("eval", help="top-k BLEU-4 of hypothesis files")
    p.add_argument("--hyp", required=True,
                   help="k consecutive candidate lines per query")
    p.add_argument("--ref", required=True, help="one reference line per query")
    p.add_argument("--k-per-query", type=int, default=1)
    p.add_argument("--ks", default="1,5,10")
    p.add_argument("--corpus-bleu", action="store_true",
                   help="also report corpus-level BLEU-4 of the top candidates")
    p.add_argument("--json-out")

    p = sub.add_parser("overlap", help="overlap of test pairs with a corpus")
    p.add_argument("--test-pairs", required=True)
    p.add_argument("--corpus", required=True,
                   help='JSONL rows {"doc_tokens": [...], "code_tokens": [...]}')
    p.add_argument("--json-out")

    p = sub.add_parser("index", help="build the TF-IDF retrieval index")
    p.add_argument("--train", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("query", help="query the retrieval index")
    p.add_argument("--index", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("-k", type=int, default=10)
    return parser


def _cmd_select(args) -> int:
    entries = mining.load_manifest(args.manifest)
    accepted = mining.select_projects(entries, args.min_stars,
                                      args.max_size_bytes)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for e in accepted:
            fh.write(json.dumps({
                "project_id": e.project_id, "local_path": e.local_path,
                "stars": e.stars, "is_fork": e.is_fork,
                "size_bytes": e.size_bytes,
            }, ensure_ascii=False))
            fh.write("\n")
    print(f"accepted {len(accepted)} of {len(entries)} projects")
    return EXIT_OK


def _cmd_mine(args) -> int:
    entries = mining.load_manifest(args.manifest)
    records, stats = mining.mine(entries, workers=args.workers)
    formats.write_pairs(records, args.out)
    if args.stats_out:
        with open(args.stats_out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(stats.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"mined {len(records)} pairs from {stats.files_seen} files "
          f"({stats.encoding_errors} encoding errors, "
          f"{stats.syntax_errors} syntax errors)")
    return EXIT_OK


def _cmd_pipeline(args) -> int:
    config = formats.load_config(args.config) if args.config else PipelineConfig()
    pairs = formats.read_pairs(args.pairs)
    bundle = run_pipeline(pairs, config)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    formats.write_pairs(bundle.train, out / "train.jsonl")
    formats.write_pairs(bundle.test, out / "test.jsonl")
    with open(out / "accepted_modules.txt", "w", encoding="utf-8",
              newline="\n") as fh:
        fh.write("".join(m + "\n" for m in bundle.accepted_modules))
    with open(out / "stage_stats.json", "w", encoding="utf-8",
              newline="\n") as fh:
        json.dump([{"stage": s, "in": i, "out": o}
                   for s, i, o in bundle.stage_stats], fh, indent=2)
        fh.write("\n")
    print(formats.stats_report(bundle.stage_stats))
    return EXIT_OK


def _cmd_split(args) -> int:
    pairs = deduplicate(formats.read_pairs(args.pairs))
    train, test = split(pairs, args.test_fraction, args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    formats.write_pairs(train, out / "train.jsonl")
    formats.write_pairs(test, out / "test.jsonl")
    print(f"train {len(train)}  test {len(test)}")
    return EXIT_OK


def _cmd_export(args) -> int:
    bundle = DatasetBundle(train=formats.read_pairs(args.train),
                           test=formats.read_pairs(args.test),
                           accepted_modules=[])
    written = formats.export_aligned_text(bundle, args.out_dir)
    for name in sorted(written):
        print(f"{name}: {written[name]}")
    return EXIT_OK


def _read_token_lines(path) -> list[list[str]]:
    with open(path, encoding="utf-8") as fh:
        return [line.split() for line in fh.read().splitlines()]


def _cmd_eval(args) -> int:
    hyp_lines = _read_token_lines(args.hyp)
    ref_lines = _read_token_lines(args.ref)
    k = args.k_per_query
    if k < 1 or len(hyp_lines) != k * len(ref_lines):
        raise ValueError(
            f"expected {k} hypothesis lines per reference "
            f"({len(ref_lines)} references, {len(hyp_lines)} hypotheses)")
    candidates = [hyp_lines[i * k:(i + 1) * k] for i in range(len(ref_lines))]
    ks = sorted({int(x) for x in args.ks.split(",") if x.strip()})
    report = evaluation.topk_bleu(candidates, ref_lines, ks=ks)
    payload = {"n_pairs": report.n_pairs, "smoothing": report.smoothing,
               "per_k": {str(kk): report.per_k[kk] for kk in ks}}
    for kk in ks:
        print(f"top-{kk} BLEU-4: {report.per_k[kk]:.4f}")
    if args.corpus_bleu:
        top1 = [c[0] for c in candidates]
        score = evaluation.corpus_bleu4(top1, ref_lines)
        payload["corpus_bleu4_top1"] = score
        print(f"corpus BLEU-4 (top-1): {score:.4f}")
    print(f"({report.n_pairs} pairs, {report.smoothing} smoothing)")
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _cmd_overlap(args) -> int:
    test_pairs = []
    for pair in formats.read_pairs(args.test_pairs):
        test_pairs.append((tokenize_desc(pair.desc).tokens,
                           tokenize_apiseq(pair.apiseq).tokens))
    corpus = []
    with open(args.corpus, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            corpus.append((rec["doc_tokens"], rec["code_tokens"]))
    report = evaluation.overlap_report(test_pairs, corpus)
    print(f"matched desc:   {report.matched_desc}")
    print(f"matched apiseq: {report.matched_apiseq}")
    print(f"matched pairs:  {report.matched_pairs}")
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"matched_desc": report.matched_desc,
                       "matched_apiseq": report.matched_apiseq,
                       "matched_pairs": report.matched_pairs}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _cmd_index(args) -> int:
    index = retrieval.build_index(formats.read_pairs(args.train))
    retrieval.save_index(index, args.out)
    print(f"indexed {len(index.pairs)} pairs, "
          f"{len(index.vocabulary)} terms -> {args.out}")
    return EXIT_OK


def _cmd_query(args) -> int:
    index = retrieval.load_index(args.index)
    for pair, sim in retrieval.query(index, args.text, args.k):
        print(f"{sim:.4f}\t{' '.join(pair.apiseq.paths())}")
    return EXIT_OK


_COMMANDS = {
    "select": _cmd_select, "mine": _cmd_mine, "pipeline": _cmd_pipeline,
    "split": _cmd_split, "export": _cmd_export, "eval": _cmd_eval,
    "overlap": _cmd_overlap, "index": _cmd_index, "query": _cmd_query,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, tuple):
            code, message = exc.code
            print(f"error: {message}", file=sys.stderr)
            return code
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (EmptyDataset, evaluation.EmptyReference, ValueError,
            json.JSONDecodeError, KeyError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
