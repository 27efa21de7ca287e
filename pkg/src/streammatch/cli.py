"""Command-line surface.

    streammatch run    --model {dynamic|dynamic-approx|insert} [--k K]
                       [--epsilon E] [--delta D] --seed S [--stats]
                       [--oracle] FILE
    streammatch gen    --n N --k K --weights W --m M [--del-rate R]
                       --seed S [--model M] [--infeasible] [--out FILE]
    streammatch verify FILE
    streammatch bench  --model M --k K --lengths L1,L2,... --seed S

Exit codes: 0 on success, 2 on parse/format error, 3 on a one-sided
violation (only detectable under ``run --oracle``, which replays the true
graph alongside the sketch).
"""

from __future__ import annotations

import argparse
import sys

from .dynamic import DynamicMatcher, EdgeUpdate
from .errors import StreamMatchError, StreamFormatError
from .exact import solve_exact
from .insertonly import insert_preprocess, insert_query
from .seeds import spawn_rng
from .streams import GraphReplay, format_weight, gen_planted, parse_stream, render_stream
from .trials import TrialConfig, measure

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ONE_SIDED = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="streammatch",
                                     description="streaming maximum-weight k-matching")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a stream file and answer its queries")
    run.add_argument("--model", required=True, choices=("dynamic", "dynamic-approx", "insert"))
    run.add_argument("--k", type=int, default=None, help="override the header parameter")
    run.add_argument("--epsilon", type=float, default=0.1)
    run.add_argument("--delta", type=float, default=1 / 16)
    run.add_argument("--seed", type=int, required=True)
    run.add_argument("--stats", action="store_true")
    run.add_argument("--oracle", action="store_true",
                     help="replay the true graph and fail on one-sided violations")
    run.add_argument("file")

    gen = sub.add_parser("gen", help="generate a planted stream")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--weights", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--del-rate", type=float, default=0.0)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--model", choices=("dynamic", "insert"), default="dynamic")
    gen.add_argument("--infeasible", action="store_true")
    gen.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="check stream well-formedness and replay the oracle")
    verify.add_argument("file")

    bench = sub.add_parser("bench", help="measure per-update ops and space over stream lengths")
    bench.add_argument("--model", required=True, choices=("dynamic", "dynamic-approx", "insert"))
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument("--n", type=int, default=64)
    bench.add_argument("--weights", type=int, default=5)
    bench.add_argument("--epsilon", type=float, default=0.1)
    bench.add_argument("--delta", type=float, default=1 / 16)
    bench.add_argument("--lengths", required=True)
    bench.add_argument("--seed", type=int, default=0)
    return parser


def _fmt_w(w, precision: int) -> str:
    return format_weight(w, precision) if isinstance(w, int) else f"{float(w):.6g}"


def _format_answer(answer, precision: int) -> str:
    if answer is None:
        return "no k-matching"
    shown = " ".join(f"({u},{v},{_fmt_w(w, precision)})" for u, v, w in answer.edges)
    return f"weight={_fmt_w(answer.weight, precision)} edges: {shown}"


def _cmd_run(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    sf = parse_stream(text, insert_only=args.model == "insert")
    k = args.k if args.k is not None else sf.k
    rng = spawn_rng(args.seed, "cli-run", args.model, k)

    if args.model == "insert":
        copies = insert_preprocess(sf.n, k, args.delta, rng)
        state = None
    else:
        mode = "approx" if args.model == "dynamic-approx" else "exact"
        state = DynamicMatcher(sf.n, k, rng, mode=mode,
                               eps=args.epsilon if mode == "approx" else None)
        copies = None

    replay = GraphReplay() if args.oracle else None
    violated = False
    query_no = 0
    for record in sf.records:
        if record[0] == "Q":
            query_no += 1
            answer = insert_query(copies, k) if copies is not None else state.query()
            print(f"query {query_no}: {_format_answer(answer, sf.precision)}")
            if replay is not None:
                violated |= _oracle_check(answer, k, replay, sf.precision, query_no)
            continue
        if replay is not None:
            replay.apply(record)
        if copies is not None:
            for copy in copies:
                copy.update((record[1], record[2], record[3]))
        else:
            state.update(EdgeUpdate(record[1], record[2], record[3], record[0] == "I"))

    if args.stats:
        if copies is not None:
            for idx, copy in enumerate(copies):
                print(f"stats copy {idx}: max_update_ops={copy.max_update_ops} "
                      f"max_stored_edges={copy.max_stored_edges} budget={copy.budget} "
                      f"window={copy.window_len}")
        else:
            params = state.scheme.params
            print(f"stats: bank={len(state.bank)} touched_per_update={params.family_size ** 2} "
                  f"weight_classes={len(state.wclasses)} delta={state.delta:.3g}")
    return EXIT_ONE_SIDED if violated else EXIT_OK


def _oracle_check(answer, k, replay, precision, query_no) -> bool:
    truth = solve_exact(replay.edges(), k) if replay.live else None
    if answer is None:
        return False
    ok = len(answer.edges) == k
    seen: set[int] = set()
    for u, v, _w in answer.edges:
        ok = ok and u not in seen and v not in seen and (u, v) in replay.live
        seen.add(u)
        seen.add(v)
    if truth is None:
        ok = False
    if not ok:
        print(f"one-sided violation at query {query_no}", file=sys.stderr)
        return True
    return False


def _cmd_gen(args) -> int:
    sf, opt = gen_planted(args.n, args.k, args.weights, args.m, args.del_rate,
                          args.seed, model=args.model, feasible=not args.infeasible)
    text = render_stream(sf)
    header = f"# planted optimum: {opt if opt is not None else 'none'}\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(header + text)
    else:
        sys.stdout.write(header + text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    sf = parse_stream(text)
    replay = GraphReplay()
    query_no = 0
    for record in sf.records:
        if record[0] == "Q":
            query_no += 1
            answer = solve_exact(replay.edges(), sf.k) if replay.live else None
            print(f"query {query_no}: oracle {_format_answer(answer, sf.precision)}")
        else:
            replay.apply(record)
    print(f"ok: {len(sf.records)} records, {query_no} queries")
    return EXIT_OK


def _cmd_bench(args) -> int:
    lengths = tuple(int(x) for x in args.lengths.split(","))
    config = TrialConfig(model=args.model, n=args.n, k=args.k, weights=args.weights,
                         m=max(lengths), eps=args.epsilon if args.model == "dynamic-approx" else None,
                         delta=args.delta)
    profile = measure(config, lengths, args.seed)
    for m, entry in profile["per_length"].items():
        fields = " ".join(f"{key}={value}" for key, value in entry.items())
        print(f"m={m}: {fields}")
    if "update_ops_ratio" in profile:
        print(f"update_ops_ratio={profile['update_ops_ratio']:.4f}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "gen": _cmd_gen, "verify": _cmd_verify, "bench": _cmd_bench}
    try:
        return handlers[args.command](args)
    except StreamFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (StreamMatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
