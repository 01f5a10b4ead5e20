"""Unified command line: deterministic CSV/JSON emission for every subsystem.

Every numeric output is reproducible from (flags, seed): randomized
subcommands refuse to run without an explicit --seed, rows are sorted by
their primary key, floats are emitted with shortest round-trip repr, and no
timestamps enter data files. Run manifests (which carry a wall-clock
duration) are opt-in via --manifest so that plain runs emit byte-identical
files. Exit codes: 0 success, 2 usage or input error, 3 internal invariant
violation.
"""

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from . import __version__, cramer, levelset, mertens, pnt, predictor, primes, report
from .errors import (CapacityError, DomainError, InvariantViolation, NumericError)

DECADE_GRID = tuple(10 ** k for k in range(2, 9))


def _parse_grid(text: str) -> list:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"bad grid {text!r}: expected comma-separated integers")
    if not values:
        raise DomainError("empty grid")
    return sorted(values)


def _parse_k_grid(text: str) -> list:
    """Accept '1..12' ranges or comma lists like '1,2,8'."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise DomainError(f"bad k-grid {text!r}")
        if lo > hi:
            raise DomainError(f"bad k-grid {text!r}: empty range")
        return list(range(lo, hi + 1))
    return _parse_grid(text)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(args, header, rows, params, summary=None) -> list:
    """Write rows as CSV or a JSON envelope to --out (or stdout). Returns the
    list of file paths written."""
    if args.emit == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        payload = buf.getvalue()
    else:
        envelope = {
            "schema_version": report.SCHEMA_VERSION,
            "subcommand": args.command,
            "params": params,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        if summary is not None:
            envelope["summary"] = summary
        payload = json.dumps(envelope, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
        return [args.out]
    sys.stdout.write(payload)
    return []


def _maybe_manifest(args, params, outputs, t0) -> None:
    if not getattr(args, "manifest", None):
        return
    man = report.RunManifest(
        subcommand=args.command,
        flags=params,
        seed=params.get("seed"),
        artifact_version=__version__,
        input_digests={str(p): report.RunManifest.digest(p)
                       for p in getattr(args, "inputs", []) or []},
        output_paths=list(outputs),
        duration_seconds=time.perf_counter() - t0,
    )
    man.write(args.manifest)


def _cmd_primes(args) -> int:
    t0 = time.perf_counter()
    enc = primes.sieve(args.limit)
    series = primes.gaps(enc)
    rows = list(series)
    params = {"limit": args.limit, "emit": args.emit}
    summary = {"limit": args.limit, "pi": enc.pi,
               "largest_prime": int(enc.primes[-1])}
    outputs = _emit(args, ("n", "p_n", "p_next", "gap"), rows, params, summary)
    if args.out:
        print(f"primes: limit={args.limit} pi={enc.pi} -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _levelset_prime_rows(args):
    grid = _parse_grid(args.grid) if args.grid else [n for n in DECADE_GRID if n <= args.limit]
    if not grid or grid[-1] > args.limit:
        raise DomainError(f"grid must lie within [16, --limit={args.limit}]")
    table = primes.sieve(max(math.isqrt(grid[-1]), 2))
    rows = []
    for n in grid:
        if n < 16:
            raise DomainError(f"grid point {n} < 16")
        profile = levelset.entropy(mertens.coprimality_family(n, table))
        rows.append((n, profile.entropy, profile.typical_probability,
                     profile.entropy_rate,
                     profile.entropy / math.log(math.log(n))))
    return rows


def _levelset_simulated_rows(args):
    if args.seed is None:
        raise DomainError("--mode simulate requires an explicit --seed")
    seq = levelset.simulate(args.a, args.limit, args.seed)
    grid = _parse_grid(args.grid) if args.grid else \
        [n for n in DECADE_GRID if n <= args.limit] or [args.limit]
    rows = []
    counts = seq.bits.cumsum()
    for n in grid:
        if not 16 <= n <= args.limit:
            raise DomainError(f"grid point {n} outside [16, {args.limit}]")
        mean = counts[n] / n
        if mean <= 0:
            raise DomainError(f"no events below n={n}; enlarge the grid point")
        h = -math.log(mean)
        rows.append((n, h, mean, 1.0 / mean, h / math.log(math.log(n))))
    return rows


def _cmd_levelset(args) -> int:
    t0 = time.perf_counter()
    if args.mode == "primes":
        rows = _levelset_prime_rows(args)
    else:
        rows = _levelset_simulated_rows(args)
    params = {"mode": args.mode, "a": args.a, "limit": args.limit,
              "seed": args.seed, "grid": args.grid, "emit": args.emit}
    outputs = _emit(args, ("n", "entropy", "q_n", "entropy_rate", "ratio_to_loglog"),
                    rows, params)
    if args.out:
        print(f"levelset: mode={args.mode} rows={len(rows)} -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _cmd_mertens(args) -> int:
    t0 = time.perf_counter()
    grid = _parse_grid(args.grid) if args.grid else list(DECADE_GRID)
    table = primes.sieve(max(math.isqrt(grid[-1]), 2))
    rows = [(r.n, r.product_exact, r.product_corrected, r.abs_error, r.bound,
             r.entropy, math.log(math.log(r.n)), r.loglog_ratio, r.mertens_scaled)
            for r in (mertens.error_record(n, table) for n in grid)]
    params = {"grid": ",".join(str(n) for n in grid), "emit": args.emit}
    outputs = _emit(args, ("n", "product", "corrected", "delta", "bound",
                           "entropy", "loglog", "ratio", "scaled"), rows, params)
    if args.out:
        print(f"mertens: rows={len(rows)} -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _cmd_gaps(args) -> int:
    t0 = time.perf_counter()
    enc = primes.sieve(args.limit)
    result = cramer.scan(enc, min_prime=args.min_prime)
    rows = [(r.n, r.p, r.p_next, r.gap, r.cramer_ratio, r.halting_lower, r.mean_halting)
            for r in result.records]
    summary = {"limit": args.limit, "min_prime": result.min_prime,
               "max_ratio": result.max_ratio, "argmax_prime": result.argmax_prime,
               "model": args.model}
    if args.emit == "json" and args.model:
        summary["gap_entropy"] = [
            {"n": r.n, "entropy": cramer.gap_entropy(r, args.model).entropy}
            for r in result.records]
    params = {"limit": args.limit, "min_prime": args.min_prime,
              "model": args.model, "emit": args.emit}
    outputs = _emit(args, ("n", "p_n", "p_next", "gap", "ratio",
                           "halting_lower", "mean_halting"), rows, params, summary)
    if args.out:
        print(f"gaps: limit={args.limit} max_ratio={result.max_ratio!r} "
              f"at p={result.argmax_prime} (min_prime={result.min_prime}) -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _cmd_pnt(args) -> int:
    t0 = time.perf_counter()
    grid = _parse_grid(args.grid) if args.grid else list(DECADE_GRID)
    enc = primes.sieve(grid[-1])
    rows = []
    for n in grid:
        s = pnt.info_summary(enc, n)
        rows.append((s.N, s.pi_N, s.bits_per_prime, s.log_N, s.harmonic,
                     s.k_proxy, s.info_I))
    summary = None
    if args.emit == "json":
        checks = pnt.lagrangian_check(grid, lam=args.lam)
        summary = {"lambda": args.lam,
                   "lagrangian": [{"n": c.n, "q_star": c.q_star,
                                   "analytic_residual": c.analytic_residual,
                                   "fd_residual": c.fd_residual}
                                  for c in checks]}
    params = {"grid": ",".join(str(n) for n in grid), "lambda": args.lam,
              "emit": args.emit}
    outputs = _emit(args, ("N", "pi", "bits_per_prime", "ln_N", "harmonic",
                           "k_proxy", "info_I"), rows, params, summary)
    if args.out:
        print(f"pnt: rows={len(rows)} -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _load_bit_file(path) -> "list":
    import numpy as np
    raw = Path(path).read_bytes()
    bits = [b - 48 for b in raw if b in (48, 49)]
    if not bits:
        raise DomainError(f"{path}: no 0/1 bytes found")
    bad = sum(1 for b in raw if b not in (48, 49, 10, 13, 32, 9))
    if bad:
        raise DomainError(f"{path}: {bad} bytes are not 0/1 or whitespace")
    return np.array(bits, dtype=np.uint8)


def _cmd_predict(args) -> int:
    t0 = time.perf_counter()
    ks = _parse_k_grid(args.k_grid)
    if args.corpus == "primes":
        seq = predictor.prime_corpus(args.limit)
    elif args.corpus == "periodic":
        seq = predictor.periodic_corpus(args.limit)
    elif args.corpus == "coin":
        if args.seed is None:
            raise DomainError("--corpus coin requires an explicit --seed")
        seq = predictor.coin_corpus(args.limit, args.seed)
    else:
        if not args.infile:
            raise DomainError("--corpus file requires --in PATH")
        seq = _load_bit_file(args.infile)
    rows = []
    for k in ks:
        _, rep = predictor.train_and_evaluate(seq, k)
        rows.append((args.corpus, k, rep.N, rep.raw_accuracy, rep.n0, rep.n1,
                     rep.acc0, rep.acc1, rep.balanced))
    params = {"corpus": args.corpus, "limit": args.limit,
              "k_grid": args.k_grid, "seed": args.seed, "emit": args.emit,
              "in": args.infile}
    outputs = _emit(args, ("corpus", "k", "N", "raw_acc", "N0", "N1",
                           "acc0", "acc1", "balanced"), rows, params)
    if args.out:
        print(f"predict: corpus={args.corpus} rows={len(rows)} -> {args.out}")
    _maybe_manifest(args, params, outputs, t0)
    return 0


def _cmd_report(args) -> int:
    summary = report.build_report(args.inputs, args.out_dir)
    print(json.dumps({"all_passed": summary["all_passed"],
                      "sections": summary["sections"]}, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primelens",
        description="Level-set statistics of prime encodings.")
    parser.add_argument("--version", action="version", version=f"primelens {__version__}")
    sub = parser.add_subparsers(dest="command")

    def common(p, seed=False):
        p.add_argument("--emit", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write data here instead of stdout")
        p.add_argument("--manifest", help="also write a run manifest (JSON) here")
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help="required for randomized modes; no ambient entropy")

    p = sub.add_parser("primes", help="sieve an interval and emit the gap series")
    p.add_argument("--limit", type=int, required=True)
    common(p)
    p.set_defaults(fn=_cmd_primes)

    p = sub.add_parser("levelset", help="entropy/level-set profiles for primes or simulations")
    p.add_argument("--mode", choices=("primes", "simulate"), default="primes")
    p.add_argument("--a", type=float, default=1.0, help="density exponent for simulate mode")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--grid", help="comma-separated n values (default: decades within limit)")
    common(p, seed=True)
    p.set_defaults(fn=_cmd_levelset)

    p = sub.add_parser("mertens", help="coprimality products, error bounds, entropy ratios")
    p.add_argument("--grid", help="comma-separated n values (default: 1e2..1e8 decades)")
    common(p)
    p.set_defaults(fn=_cmd_mertens)

    p = sub.add_parser("gaps", help="prime gap scan with normalized-gap statistics")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--min-prime", type=int, default=cramer.DEFAULT_MIN_PRIME,
                   help="headline max-ratio statistic ignores smaller primes (reported, never silent)")
    p.add_argument("--model", choices=("uniform", "point", "product"), default="uniform",
                   help="gap-entropy model; surfaces in the JSON emission only")
    common(p)
    p.set_defaults(fn=_cmd_gaps)

    p = sub.add_parser("pnt", help="information-theoretic PNT summary table")
    p.add_argument("--grid", help="comma-separated N values (default: 1e2..1e8 decades)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="multiplier for the stationarity check (JSON emission)")
    common(p)
    p.set_defaults(fn=_cmd_pnt)

    p = sub.add_parser("predict", help="order-k incompressibility test on a corpus")
    p.add_argument("--corpus", choices=("primes", "periodic", "coin", "file"), required=True)
    p.add_argument("--limit", type=int, default=1 << 18)
    p.add_argument("--k-grid", default="1..12")
    p.add_argument("--in", dest="infile", help="bit file: ASCII 0/1 per byte, newline-tolerant")
    common(p, seed=True)
    p.set_defaults(fn=_cmd_predict)

    p = sub.add_parser("report", help="aggregate emitted CSVs into plot data + summary JSON")
    p.add_argument("inputs", nargs="*", help="CSV files produced by this artifact")
    p.add_argument("--out-dir", default="report", help="directory for .dat files and summary.json")
    p.set_defaults(fn=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (DomainError, CapacityError, NumericError) as exc:
        print(f"primelens {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"primelens {args.command}: invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
