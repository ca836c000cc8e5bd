"""Command-line entry point: ``hypermotif {count,profile,metrics,budget-search,generate}``."""

import argparse
import csv
import io
import logging
import os
import shlex
import sys
import time

import numpy as np

from . import __version__
from .census import count_motifs, write_meta_header
from .errors import ConfigError, EmptyHypergraphError, InvariantError, ParseError
from .hypergraph import load_hyperedge_list
from .sampling import budget_search, default_budget, sample_census
from .significance import (
    abundance_profile,
    census_many,
    null_ensemble,
    profile_correlation_matrix,
    profile_metrics,
)
from .synthetic import GenSpec, generate, parse_sizes

EXIT_OK = 0
EXIT_PARSE = 3
EXIT_CONFIG = 4
EXIT_INTERNAL = 5

log = logging.getLogger("hypermotif")


def derive_seed(seed, *path) -> int:
    """Deterministic sub-seed for one subsystem of a run."""
    entropy = [] if seed is None else [int(seed)]
    return int(np.random.SeedSequence(entropy + [int(p) for p in path]).generate_state(1)[0])


SUB_SAMPLER, SUB_NULLS, SUB_NULL_SAMPLER = 1, 2, 3


def parse_ratios(text):
    """``a:b[:c]`` -> {3: a, 4: b[, 5: c]} relative to S_2."""
    if text is None:
        return None
    try:
        parts = [float(x) for x in text.split(":")]
    except ValueError:
        raise ConfigError(f"bad --ratios {text!r}; expected a:b[:c]") from None
    if not 1 <= len(parts) <= 3 or any(p < 0 for p in parts):
        raise ConfigError(f"bad --ratios {text!r}; expected a:b[:c]")
    return {s: p for s, p in zip((3, 4, 5), parts)}


def parse_int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise ConfigError(f"bad integer list {text!r}") from None


def _add_input_opts(p):
    p.add_argument("--min-size", type=int, default=2)
    p.add_argument("--max-size", type=int, default=None)


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
    p.add_argument("--workers", type=int, default=None, help="default: available CPUs")


def _add_sampling(p):
    p.add_argument("-S", "--samples", type=int, default=None, help="total hyperedge samples")
    p.add_argument("--ratios", default=None, help="S_3:S_4[:S_5] multipliers of S_2 (default 3:2:2)")


def _add_null(p):
    p.add_argument("--null-samples", type=int, default=10)
    p.add_argument("--swap-mult", type=float, default=10.0)
    p.add_argument("--epsilon", type=float, default=4.0)


def build_parser():
    ap = argparse.ArgumentParser(prog="hypermotif", description="Higher-order motif counting in hypergraphs.")
    ap.add_argument("--version", action="version", version=f"hypermotif {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact or sampled motif census")
    p.add_argument("input")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--algo", choices=("baseline", "efficient", "sample"), default="efficient")
    _add_sampling(p)
    _add_input_opts(p)
    _add_common(p)

    p = sub.add_parser("profile", help="significance profiles against a configuration-model null")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--algo", choices=("baseline", "efficient", "sample"), default="efficient")
    p.add_argument("--null-algo", choices=("baseline", "efficient", "sample"), default=None,
                   help="census method for null replicas (default: --algo, sample for k=5)")
    p.add_argument("--matrix", default=None, help="where to write the correlation matrix")
    _add_sampling(p)
    _add_null(p)
    _add_input_opts(p)
    _add_common(p)

    p = sub.add_parser("metrics", help="sampled vs. exact profile quality (rho, MaxAE, MAE)")
    p.add_argument("input")
    p.add_argument("-k", type=int, default=4)
    p.add_argument("-S", "--samples", default="100,250,500,1000", help="comma-separated totals")
    p.add_argument("--ratios", default=None)
    p.add_argument("--repetitions", type=int, default=10)
    _add_null(p)
    _add_input_opts(p)
    _add_common(p)

    p = sub.add_parser("budget-search", help="grid search of per-size budget multipliers")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--base", type=int, default=50, help="S_2")
    p.add_argument("--a-values", default="1,2,3,4", help="S_3/S_2 grid")
    p.add_argument("--b-values", default="1,2,3,4", help="S_4/S_2 grid")
    p.add_argument("--repetitions", type=int, default=10)
    _add_null(p)
    _add_input_opts(p)
    _add_common(p)

    p = sub.add_parser("generate", help="synthetic hypergraph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--sizes", required=True, help="size:count[,size:count...]")
    p.add_argument("--nesting", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)
    return ap


def _meta(args, **extra):
    meta = {
        "command": shlex.join(["hypermotif"] + list(args._argv)),
        "version": __version__,
        "seed": getattr(args, "seed", None),
    }
    meta.update(extra)
    return meta


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(args, path):
    return load_hyperedge_list(path, min_size=args.min_size, max_size=args.max_size)


def _budget(args, h, k):
    if args.samples is None or args.samples <= 0:
        raise ConfigError("sampling requires -S > 0")
    return default_budget(h, k, args.samples, parse_ratios(args.ratios))


def _check_k(k, algo):
    if algo == "sample":
        if k not in (3, 4, 5):
            raise ConfigError("sampling supports -k 3, 4 or 5")
    elif k not in (3, 4):
        raise ConfigError(f"exact algorithm {algo!r} supports -k 3 or 4")


def _census(h, k, algo, args, budget=None, seed=None):
    if algo == "sample":
        return sample_census(h, k, budget, seed=seed)
    return count_motifs(h, k, algorithm=algo)


def cmd_count(args):
    _check_k(args.k, args.algo)
    h = _load(args, args.input)
    started = time.perf_counter()
    budget = _budget(args, h, args.k) if args.algo == "sample" else None
    census = _census(h, args.k, args.algo, args, budget, derive_seed(args.seed, SUB_SAMPLER))
    meta = _meta(args, input=args.input)
    for key, value in census.meta.items():
        meta["sampler_seed" if key == "seed" else key] = value
    census.meta = meta
    census.meta["wall_s"] = round(time.perf_counter() - started, 6)
    text = census.to_json() if args.format == "json" else census.to_csv()
    _write(text, args.output)


def _profile_for(args, path, idx):
    k = args.k
    h = _load(args, path)
    null_algo = args.null_algo or ("sample" if k == 5 else args.algo)
    _check_k(k, args.algo)
    _check_k(k, null_algo)
    budget = None
    if "sample" in (args.algo, null_algo):
        budget = _budget(args, h, k)
    real = _census(h, k, args.algo, args, budget, derive_seed(args.seed, SUB_SAMPLER, idx))
    ens = null_ensemble(h, args.null_samples, seed=derive_seed(args.seed, SUB_NULLS, idx),
                        swap_mult=args.swap_mult)
    if null_algo == "sample":
        nulls = []
        for r, rep in enumerate(ens.replicas):
            nb = default_budget(rep, k, budget.total, parse_ratios(args.ratios))
            nulls.append(sample_census(rep, k, nb, seed=derive_seed(args.seed, SUB_NULL_SAMPLER, idx, r)))
    else:
        nulls = census_many(ens.replicas, k, algorithm=null_algo, workers=args.workers)
    prof = abundance_profile(real, nulls, epsilon=args.epsilon)
    prof.name = os.path.basename(path)
    return prof


def _unique_names(profiles):
    seen = {}
    for p in profiles:
        base = p.name
        seen[base] = seen.get(base, 0) + 1
        if seen[base] > 1:
            p.name = f"{base}#{seen[base]}"


def cmd_profile(args):
    profiles = [_profile_for(args, path, i) for i, path in enumerate(args.inputs)]
    _unique_names(profiles)
    meta = _meta(args, order=args.k, algorithm=args.algo, epsilon=args.epsilon,
                 null_samples=args.null_samples, swap_mult=args.swap_mult,
                 degenerate=[p.name for p in profiles if p.degenerate])
    names = [p.name for p in profiles]
    if args.format == "json":
        import json

        data = {"meta": meta, "patterns": [p.encode() for p in profiles[0].patterns],
                "profiles": {p.name: [float(v) for v in p.values] for p in profiles}}
        text = json.dumps(data, indent=2) + "\n"
    else:
        buf = io.StringIO()
        write_meta_header(buf, meta)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["pattern"] + names)
        for i, pat in enumerate(profiles[0].patterns):
            w.writerow([pat.encode()] + [repr(float(p.values[i])) for p in profiles])
        text = buf.getvalue()
    _write(text, args.output)
    if len(profiles) >= 2:
        mat = profile_correlation_matrix([(p.name, p) for p in profiles])
        mtext = mat.to_json() if args.format == "json" else mat.to_csv()
        target = args.matrix
        if target is None and args.output is not None:
            target = os.path.splitext(args.output)[0] + ".matrix." + args.format
        if target is None:
            sys.stdout.write("\n" + mtext)
        else:
            _write(mtext, target)


def cmd_metrics(args):
    from .significance import exact_reference

    k = args.k
    _check_k(k, "efficient")
    h = _load(args, args.input)
    totals = parse_int_list(args.samples)
    exact_prof, nulls = exact_reference(
        h, k, null_samples=args.null_samples, seed=derive_seed(args.seed, SUB_NULLS),
        epsilon=args.epsilon, swap_mult=args.swap_mult, workers=args.workers,
    )
    rows = []
    for si, total in enumerate(totals):
        budget = default_budget(h, k, total, parse_ratios(args.ratios))
        ms, times = [], []
        for r in range(args.repetitions):
            t0 = time.perf_counter()
            est = sample_census(h, k, budget, seed=derive_seed(args.seed, SUB_SAMPLER, si, r))
            times.append(time.perf_counter() - t0)
            ms.append(profile_metrics(abundance_profile(est, nulls, args.epsilon), exact_prof))
        arr = np.array(ms, dtype=float)
        rows.append({"S": total, "time_s": float(np.mean(times)), "rho": float(np.nanmean(arr[:, 0])),
                     "MaxAE": float(arr[:, 1].mean()), "MAE": float(arr[:, 2].mean()),
                     "budget": budget.to_dict()})
    meta = _meta(args, order=k, repetitions=args.repetitions, epsilon=args.epsilon,
                 null_samples=args.null_samples)
    if args.format == "json":
        import json

        text = json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        write_meta_header(buf, meta)
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["S", "time_s", "rho", "MaxAE", "MAE"])
        for r in rows:
            w.writerow([r["S"], f"{r['time_s']:.6f}", f"{r['rho']:.6f}", f"{r['MaxAE']:.6f}", f"{r['MAE']:.6f}"])
        text = buf.getvalue()
    _write(text, args.output)


def cmd_budget_search(args):
    if args.k != 4:
        raise ConfigError("budget-search supports -k 4")
    hs = [_load(args, p) for p in args.inputs]
    res = budget_search(
        hs, k=4, base=args.base, a_values=parse_int_list(args.a_values),
        b_values=parse_int_list(args.b_values), repetitions=args.repetitions,
        seed=args.seed, null_samples=args.null_samples, epsilon=args.epsilon, swap_mult=args.swap_mult,
    )
    meta = _meta(args, base=args.base, best_a=res.best[0], best_b=res.best[1],
                 best_rho=float(res.matrix.max()))
    if args.format == "json":
        import json

        data = {"meta": meta, "a_values": res.a_values, "b_values": res.b_values,
                "matrix": res.matrix.tolist(), "best": list(res.best)}
        text = json.dumps(data, indent=2) + "\n"
    else:
        buf = io.StringIO()
        write_meta_header(buf, meta)
        buf.write(res.to_csv())
        text = buf.getvalue()
    _write(text, args.output)


def cmd_generate(args):
    spec = GenSpec(args.n, parse_sizes(args.sizes), args.nesting, args.seed)
    h = generate(spec)
    buf = io.StringIO()
    buf.write(f"# command: {shlex.join(['hypermotif'] + list(args._argv))}\n")
    buf.write(f"# version: {__version__}\n")
    h.dump(buf)
    _write(buf.getvalue(), args.output)


COMMANDS = {
    "count": cmd_count,
    "profile": cmd_profile,
    "metrics": cmd_metrics,
    "budget-search": cmd_budget_search,
    "generate": cmd_generate,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args._argv = argv
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ParseError, EmptyHypergraphError, FileNotFoundError) as exc:
        print(f"hypermotif: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as exc:
        print(f"hypermotif: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantError as exc:
        print(f"hypermotif: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
