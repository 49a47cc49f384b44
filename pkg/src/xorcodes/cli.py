"""Command-line front end.

Four subcommands: ``eval`` computes decoding vectors and channel sweeps
for a matrix file, ``search`` runs the stochastic code search, ``baseline``
emits the analytic random-code reference curves, and ``simulate`` runs the
Monte Carlo channel check.  Every output starts with a single comment line
holding the run manifest (resolved configuration, seed, artifact version,
paths), so rerunning the same command reproduces the file byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .decoding import (
    _fmt,
    channel_sweep,
    exact_vd,
    p_success,
    rlnc_vd,
    sampled_vd,
    simulate_ps,
    sweep_csv,
    vd_csv,
)
from .gf2 import format_matrix, parse_matrix
from .search import SearchConfig, search_family

__all__ = ["main"]


class _CliError(Exception):
    pass


def _manifest_line(subcommand: str, config: dict, master_seed, inputs, outputs) -> str:
    m = {
        "artifact": "xorcodes",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "master_seed": master_seed,
        "inputs": list(inputs),
        "outputs": list(outputs),
    }
    return "# " + json.dumps(m, sort_keys=True) + "\n"


def _emit(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_matrix(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise _CliError(f"cannot read {path}: {e.strerror or e}")
    return parse_matrix(text)


def _p_grid(p_min: float, p_max: float, p_step: float) -> list[float]:
    if not 0.0 <= p_min <= p_max <= 1.0:
        raise _CliError(f"need 0 <= p-min <= p-max <= 1, got {p_min}..{p_max}")
    if p_step <= 0:
        raise _CliError(f"p-step must be positive, got {p_step}")
    count = int(round((p_max - p_min) / p_step)) + 1
    grid = [min(p_min + i * p_step, p_max) for i in range(count)]
    if grid[-1] < p_max - 1e-12:
        grid.append(p_max)
    return grid


def _vd_for(G, samples, seed, max_subsets):
    if samples is not None:
        return sampled_vd(G, samples, seed, max_subsets=max_subsets)
    try:
        return exact_vd(G, max_subsets=max_subsets)
    except ValueError as e:
        if "enumeration limit" in str(e):
            msg = str(e).replace("; use sampled_vd for this code", "")
            raise _CliError(f"{msg}; rerun with --samples N to estimate")
        raise


def _cmd_eval(args) -> int:
    G = _read_matrix(args.matrix)
    vd = _vd_for(G, args.samples, args.seed, args.max_subsets)
    grid = _p_grid(args.p_min, args.p_max, args.p_step)
    sweep = channel_sweep(vd, grid)
    config = {
        "matrix": args.matrix,
        "samples": args.samples,
        "max_subsets": args.max_subsets,
        "p_min": args.p_min,
        "p_max": args.p_max,
        "p_step": args.p_step,
    }
    head = _manifest_line("eval", config, args.seed if args.samples else None,
                          [args.matrix], [args.out_vd, args.out_sweep])
    _emit(args.out_vd, head + vd_csv(vd))
    _emit(args.out_sweep, head + sweep_csv(sweep))
    return 0


def _cmd_baseline(args) -> int:
    vd = rlnc_vd(args.n, args.k, args.q)
    grid = _p_grid(args.p_min, args.p_max, args.p_step)
    sweep = channel_sweep(vd, grid)
    config = {
        "n": args.n,
        "k": args.k,
        "q": args.q,
        "p_min": args.p_min,
        "p_max": args.p_max,
        "p_step": args.p_step,
    }
    head = _manifest_line("baseline", config, None, [], [args.out_vd, args.out_sweep])
    _emit(args.out_vd, head + vd_csv(vd))
    _emit(args.out_sweep, head + sweep_csv(sweep))
    return 0


def _provenance_line(prov: dict) -> str:
    keys = ["algorithm", "restart", "master_seed", "k1", "latin", "climb_steps"]
    parts = [f"{key}={prov[key]}" for key in keys if key in prov]
    return " ".join(parts)


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        n=args.n,
        k=args.k,
        k1=args.k1,
        reference_p=args.ref_p,
        attempts=args.attempts,
        max_climb_steps=args.max_climb_steps,
        stagnation_limit=args.stagnation_limit,
        master_seed=args.seed,
        vd_mode="sampled" if args.samples else "exact",
        vd_samples=args.samples if args.samples else 10_000,
        max_subsets=args.max_subsets,
    )
    family = search_family(cfg, algorithm=args.algorithm, threads=args.threads)
    config = {
        "n": cfg.n,
        "k": cfg.k,
        "k1": cfg.k1,
        "ref_p": cfg.reference_p,
        "attempts": cfg.attempts,
        "algorithm": args.algorithm,
        "max_climb_steps": cfg.max_climb_steps,
        "stagnation_limit": cfg.stagnation_limit,
        "samples": args.samples,
        "max_subsets": cfg.max_subsets,
    }
    head = _manifest_line("search", config, cfg.master_seed, [], [args.out])
    records = []
    for c in family:
        vd_line = ",".join(_fmt(x) for x in c.vd.rho)
        records.append(format_matrix(c.G) + vd_line + "\n" + _provenance_line(c.provenance) + "\n")
    _emit(args.out, head + f"# candidates={len(family)}\n" + "\n".join(records))
    best = family[0]
    print(f"best_score={_fmt(best.score)}")
    print("best_vd=" + ",".join(_fmt(x) for x in best.vd.rho))
    return 0


def _cmd_simulate(args) -> int:
    G = _read_matrix(args.matrix)
    result = simulate_ps(G, args.p, args.trials, args.seed)
    vd = _vd_for(G, args.samples, args.seed + 1, args.max_subsets)
    analytic = p_success(vd, args.p).p_s
    if result.stderr > 0:
        z = (result.estimate - analytic) / result.stderr
    else:
        z = 0.0 if result.estimate == analytic else float("inf")
    config = {"matrix": args.matrix, "p": args.p, "trials": args.trials,
              "samples": args.samples, "max_subsets": args.max_subsets}
    sys.stdout.write(_manifest_line("simulate", config, args.seed, [args.matrix], []))
    print(f"estimate={_fmt(result.estimate)}")
    print(f"stderr={_fmt(result.stderr)}")
    print(f"analytic_ps={_fmt(analytic)}")
    print(f"z={_fmt(z)}")
    return 0


def _add_grid_flags(sub) -> None:
    sub.add_argument("--p-min", type=float, default=0.0, help="sweep start (default 0.0)")
    sub.add_argument("--p-max", type=float, default=0.5, help="sweep end (default 0.5)")
    sub.add_argument("--p-step", type=float, default=0.01, help="sweep step (default 0.01)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xorcodes",
        description="evaluate, search and simulate binary erasure codes",
    )
    parser.add_argument("--version", action="version", version=f"xorcodes {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p_eval = subs.add_parser("eval", help="decoding vector and channel sweep of a matrix file")
    p_eval.add_argument("matrix", help="generator matrix file")
    p_eval.add_argument("--samples", type=int, default=None,
                        help="estimate oversized entries from this many subsets")
    p_eval.add_argument("--seed", type=int, default=0, help="sampling seed")
    p_eval.add_argument("--max-subsets", type=int, default=2_000_000,
                        help="exact enumeration limit per entry")
    p_eval.add_argument("--out-vd", default="-", help="decoding vector CSV path (default stdout)")
    p_eval.add_argument("--out-sweep", default="-", help="sweep CSV path (default stdout)")
    _add_grid_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_search = subs.add_parser("search", help="stochastic search for good codes")
    p_search.add_argument("--n", type=int, required=True, help="code length")
    p_search.add_argument("--k", type=int, required=True, help="source packets")
    p_search.add_argument("--k1", type=int, default=3, help="balanced column weight (odd)")
    p_search.add_argument("--attempts", type=int, default=100, help="independent restarts")
    p_search.add_argument("--seed", type=int, default=0, help="master seed")
    p_search.add_argument("--ref-p", type=float, default=0.1,
                          help="erasure probability the score targets")
    p_search.add_argument("--algorithm", type=int, choices=(1, 2), default=2,
                          help="1: random init, 2: balanced init")
    p_search.add_argument("--samples", type=int, default=None,
                          help="sampled decoding vectors with this many subsets per entry")
    p_search.add_argument("--max-climb-steps", type=int, default=200,
                          help="proposal budget per restart")
    p_search.add_argument("--stagnation-limit", type=int, default=40,
                          help="stop a climb after this many consecutive rejections")
    p_search.add_argument("--max-subsets", type=int, default=2_000_000,
                          help="exact enumeration limit per entry")
    p_search.add_argument("--threads", type=int, default=1, help="worker threads for restarts")
    p_search.add_argument("--out", default="-", help="family file path (default stdout)")
    p_search.set_defaults(func=_cmd_search)

    p_base = subs.add_parser("baseline", help="analytic random-code reference vector")
    p_base.add_argument("--n", type=int, required=True, help="code length")
    p_base.add_argument("--k", type=int, required=True, help="source packets")
    p_base.add_argument("--q", type=int, default=2, help="field size (>= 2)")
    p_base.add_argument("--out-vd", default="-", help="decoding vector CSV path (default stdout)")
    p_base.add_argument("--out-sweep", default="-", help="sweep CSV path (default stdout)")
    _add_grid_flags(p_base)
    p_base.set_defaults(func=_cmd_baseline)

    p_sim = subs.add_parser("simulate", help="Monte Carlo channel check of a matrix file")
    p_sim.add_argument("matrix", help="generator matrix file")
    p_sim.add_argument("--p", type=float, required=True, help="erasure probability")
    p_sim.add_argument("--trials", type=int, default=100_000, help="experiment count")
    p_sim.add_argument("--seed", type=int, default=0, help="simulation seed")
    p_sim.add_argument("--samples", type=int, default=None,
                       help="sampled analytic reference with this many subsets per entry")
    p_sim.add_argument("--max-subsets", type=int, default=2_000_000,
                       help="exact enumeration limit per entry")
    p_sim.set_defaults(func=_cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_CliError, ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
