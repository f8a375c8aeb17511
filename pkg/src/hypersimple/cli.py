"""Command-line interface.

Every command prints one JSON document on stdout.  Failures print a JSON
error object on stderr and exit with 2 (invalid input or unmet
precondition), 3 (enumeration cap exceeded) or 4 (internal error).  Checks
that run but find a mismatch exit with 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .asymp import (
    RegularSpec,
    adjust_n,
    asymptotic,
    check_hypotheses,
    convergence_ratio,
    uniform_spec,
)
from .core import DirectedDegreeSequence, UndirectedDegreeSequence, validate
from .errors import CapExceeded, DivisibilityError, HypersimpleError, InvalidParams
from .exact import STATISTICS_DIRECTED, STATISTICS_UNDIRECTED, expected
from .formats import load_sequence, rational, sequence_to_dict
from .oracle import (
    IDENTITY_MAX_JOINT,
    IDENTITY_MAX_WEIGHT,
    catalog,
    compare_with_exact,
    run_identity_trials,
)
from .rng import STREAM_VERSION, stream
from .sampler import default_workers, monte_carlo

EXIT_CHECK_FAILED = 1
GEN_RETRIES = 1000


def _finite(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def _stats(arg: Optional[str], seq) -> tuple[str, ...]:
    allowed = STATISTICS_DIRECTED if isinstance(seq, DirectedDegreeSequence) else STATISTICS_UNDIRECTED
    if not arg:
        return allowed
    chosen = tuple(s.strip() for s in arg.split(",") if s.strip())
    for s in chosen:
        if s not in allowed:
            raise InvalidParams(f"statistic {s!r} not available; choose from {list(allowed)}")
    return chosen


def _document(command: str, inputs: dict, results, **extra) -> dict:
    doc = {
        "metadata": {"command": command, "inputs": inputs, "version": __version__},
        "results": results,
    }
    doc.update(extra)
    return doc


def _model(seq) -> str:
    return "directed" if isinstance(seq, DirectedDegreeSequence) else "undirected"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_exact(args) -> tuple[dict, int]:
    seq = load_sequence(args.input)
    results = {}
    for stat in _stats(args.stats, seq):
        value = expected(seq, stat).value
        results[stat] = {"exact": rational(value), "float": float(value)}
    return _document("exact", {"file": args.input, "model": _model(seq)}, results), 0


def cmd_asymptotic(args) -> tuple[dict, int]:
    seq = load_sequence(args.input)
    spec = RegularSpec.from_sequence(seq)
    results = {}
    for stat in _stats(args.stats, seq):
        results[stat] = {
            "asymptotic": _finite(asymptotic(spec, stat)),
            "warnings": check_hypotheses(spec, stat),
        }
    return _document("asymptotic", {"file": args.input, "model": _model(seq)}, results), 0


def cmd_sample(args) -> tuple[dict, int]:
    seq = load_sequence(args.input)
    workers = args.workers if args.workers is not None else default_workers()
    estimates = monte_carlo(
        seq, _stats(args.stats, seq), samples=args.samples, seed=args.seed,
        workers=workers, dump=args.dump,
    )
    results = {k: {"mc": v.as_dict()} for k, v in estimates.items()}
    inputs = {
        "file": args.input, "model": _model(seq), "samples": args.samples,
        "seed": args.seed, "workers": workers, "rng": STREAM_VERSION,
    }
    if args.dump:
        inputs["dump"] = args.dump
    return _document("sample", inputs, results), 0


def _row_json(row: dict) -> dict:
    return {
        "statistic": row["statistic"],
        "oracle": rational(row["oracle"]),
        "exact": rational(row["exact"]) if row["exact"] is not None else None,
        "equal": row["equal"],
        **({"note": row["note"]} if "note" in row else {}),
    }


def cmd_oracle_check(args) -> tuple[dict, int]:
    if args.catalog and args.input:
        raise InvalidParams("give either an input file or --catalog, not both")
    if args.catalog:
        instances = catalog()
    elif args.input:
        instances = [(args.input, load_sequence(args.input))]
    else:
        raise InvalidParams("give an input file or --catalog")
    report = []
    all_equal = True
    for name, seq in instances:
        rows = compare_with_exact(seq)
        all_equal &= all(r["equal"] is not False for r in rows)
        report.append({
            "name": name,
            "sequence": sequence_to_dict(seq),
            "rows": [_row_json(r) for r in rows],
        })
    doc = _document(
        "oracle-check",
        {"file": args.input, "catalog": bool(args.catalog)},
        report,
        all_equal=all_equal,
    )
    return doc, 0 if all_equal else EXIT_CHECK_FAILED


def cmd_identity_check(args) -> tuple[dict, int]:
    if args.trials < 0:
        raise InvalidParams("trials must be non-negative")
    if args.max_delta is not None and args.max_delta > IDENTITY_MAX_JOINT:
        raise CapExceeded(f"--max-delta {args.max_delta} exceeds {IDENTITY_MAX_JOINT}")
    if args.max_delta is not None and args.max_delta < 1:
        raise InvalidParams("--max-delta must be at least 1")
    if args.max_w > IDENTITY_MAX_WEIGHT:
        raise CapExceeded(f"--max-w {args.max_w} exceeds {IDENTITY_MAX_WEIGHT}")
    summary = {}
    failures = []
    for kind in ("corollary", "lemma"):
        trials = run_identity_trials(
            args.trials, args.seed, kind, max_delta=args.max_delta, max_weight=args.max_w
        )
        bad = [t for t in trials if not t["equal"]]
        summary[kind] = {"trials": len(trials), "passed": len(trials) - len(bad)}
        failures.extend(
            {"kind": kind, **{k: str(v) if k in ("lhs", "rhs") else v for k, v in t.items()}}
            for t in bad
        )
    inputs = {"trials": args.trials, "seed": args.seed, "max_delta": args.max_delta, "max_w": args.max_w}
    doc = _document("identity-check", inputs, summary, failures=failures)
    return doc, 0 if not failures else EXIT_CHECK_FAILED


def _parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InvalidParams(f"--n-list {text!r} is not a comma-separated list of integers") from None
    if not ns or any(n < 1 for n in ns):
        raise InvalidParams("--n-list needs positive integers")
    return ns


def cmd_sweep(args) -> tuple[dict, int]:
    ns = _parse_n_list(args.n_list)
    if args.delta_head is not None:
        edge_size = (args.delta, args.delta_head)
        degree = (args.d, args.d_in if args.d_in is not None else args.d)
    else:
        edge_size = args.delta
        degree = args.d
    if args.adjust_n:
        ns = [adjust_n(n, degree, edge_size) for n in ns]
    family = [uniform_spec(n, degree, edge_size) for n in ns]
    points = convergence_ratio(args.stat, family)

    rows = [(p.n, float(p.exact), p.asymptotic, p.ratio) for p in points]
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(("n", "exact", "asymptotic", "ratio"))
            writer.writerows(rows)
    results = {
        args.stat: [
            {
                "n": p.n,
                "exact": rational(p.exact),
                "float": float(p.exact),
                "asymptotic": _finite(p.asymptotic),
                "ratio": _finite(p.ratio),
            }
            for p in points
        ]
    }
    inputs = {
        "family": args.family, "n_list": ns, "d": args.d, "d_in": args.d_in,
        "delta": args.delta, "delta_head": args.delta_head, "stat": args.stat,
        "csv": args.csv, "ratio_convention": "0/0 -> 1",
    }
    return _document("sweep", inputs, results), 0


# ---------------------------------------------------------------------------
# degree-sequence generation
# ---------------------------------------------------------------------------

def _draw(model: str, rng: np.random.Generator, n: int, args) -> np.ndarray:
    if model == "poisson":
        return rng.poisson(args.lam, size=n)
    return rng.zipf(args.alpha, size=n)


def _divisible_draw(model: str, rng, n: int, size: int, args) -> tuple[np.ndarray, int]:
    truncated = 0
    for _ in range(GEN_RETRIES):
        raw = _draw(model, rng, n, args)
        degrees = np.minimum(raw, n)
        if degrees.sum() % size == 0:
            truncated = int((raw > n).sum())
            return degrees, truncated
    raise DivisibilityError(
        f"no {model} draw with stub total divisible by {size} after {GEN_RETRIES} tries"
    )


def _rebalance(rng, degrees: np.ndarray, target: int, floor: int, ceiling: int) -> np.ndarray:
    """Move single stubs on random vertices until the total hits ``target``."""
    degrees = degrees.copy()
    total = int(degrees.sum())
    n = len(degrees)
    step = 1 if target > total else -1
    if not (floor * n <= target <= ceiling * n):
        raise DivisibilityError(f"cannot rebalance stub total to {target} within [{floor}, {ceiling}]")
    while total != target:
        v = int(rng.integers(n))
        if floor <= degrees[v] + step <= ceiling:
            degrees[v] += step
            total += step
    return degrees


def generate_degrees(args) -> tuple[object, dict]:
    n, delta = args.n, args.delta
    if n < 1 or delta < 1 or (args.delta_head is not None and args.delta_head < 1):
        raise InvalidParams("n and edge sizes must be positive")
    directed = args.delta_head is not None
    meta = {"model": args.model, "seed": args.seed, "rng": STREAM_VERSION}

    if args.model == "regular":
        if args.d is None or args.d < 1:
            raise InvalidParams("regular model needs --d >= 1")
        if directed:
            d_in = args.d_in if args.d_in is not None else args.d
            spec = RegularSpec((args.d,) * n, (delta, args.delta_head), (d_in,) * n)
        else:
            spec = RegularSpec((args.d,) * n, delta)
        return spec.to_sequence(), meta

    if args.model == "poisson" and (args.lam is None or args.lam <= 0):
        raise InvalidParams("poisson model needs --lambda > 0")
    if args.model == "zipf" and (args.alpha is None or args.alpha <= 1):
        raise InvalidParams("zipf model needs --alpha > 1")
    floor = 1 if args.model == "zipf" else 0
    meta["truncated_at"] = n

    out, cut_out = _divisible_draw(args.model, stream(args.seed, 0), n, delta, args)
    if not directed:
        meta["truncated_count"] = cut_out
        m = int(out.sum()) // delta
        return UndirectedDegreeSequence(out.tolist(), [delta] * m), meta

    rng_in = stream(args.seed, 1)
    in_, cut_in = _divisible_draw(args.model, rng_in, n, args.delta_head, args)
    m = int(out.sum()) // delta
    if int(in_.sum()) != m * args.delta_head:
        in_ = _rebalance(rng_in, in_, m * args.delta_head, floor, n)
        meta["rebalanced"] = "in"
    meta["truncated_count"] = {"out": cut_out, "in": cut_in}
    seq = DirectedDegreeSequence(out.tolist(), in_.tolist(), [delta] * m, [args.delta_head] * m)
    return seq, meta


def cmd_gen_degrees(args) -> tuple[dict, int]:
    seq, meta = generate_degrees(args)
    validate(seq)
    doc = {**sequence_to_dict(seq), "metadata": {**meta, "version": __version__}}
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    return doc, 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hypersimple",
        description="Expected degenerate edges, multi-edges and self-loops in random hypergraphs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("exact", help="exact expectations as rationals")
    s.add_argument("input", help="sequence file (JSON)")
    s.add_argument("--stats", help="comma-separated subset of DH,M,S,WS")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("asymptotic", help="leading-order values for uniform edge sizes")
    s.add_argument("input")
    s.add_argument("--stats")
    s.set_defaults(func=cmd_asymptotic)

    s = sub.add_parser("sample", help="Monte Carlo estimates")
    s.add_argument("input")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $HYPERSIMPLE_WORKERS or 1)")
    s.add_argument("--stats")
    s.add_argument("--dump", help="write per-sample counts as CSV")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("oracle-check", help="brute force vs. exact on tiny instances")
    s.add_argument("input", nargs="?")
    s.add_argument("--catalog", action="store_true", help="use the built-in instance catalog")
    s.set_defaults(func=cmd_oracle_check)

    s = sub.add_parser("identity-check", help="randomized checks of the partition identities")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-delta", type=int, default=None)
    s.add_argument("--max-w", type=int, default=IDENTITY_MAX_WEIGHT)
    s.set_defaults(func=cmd_identity_check)

    s = sub.add_parser("sweep", help="exact/asymptotic ratios along an n ladder")
    s.add_argument("--family", choices=["regular"], default="regular")
    s.add_argument("--n-list", default="102,1002,10002")
    s.add_argument("--d", type=int, default=3, help="vertex (or out-) degree")
    s.add_argument("--d-in", type=int, default=None, help="in-degree for directed families")
    s.add_argument("--delta", type=int, default=3, help="edge (or tail) size")
    s.add_argument("--delta-head", type=int, default=None, help="head size; makes the family directed")
    s.add_argument("--stat", default="DH", choices=list(STATISTICS_DIRECTED))
    s.add_argument("--adjust-n", action="store_true",
                   help="raise each n to the next value meeting divisibility")
    s.add_argument("--csv", help="write n,exact,asymptotic,ratio rows here")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("gen-degrees", help="write a sequence file")
    s.add_argument("--model", choices=["regular", "poisson", "zipf"], required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, help="regular degree (out-degree if directed)")
    s.add_argument("--d-in", type=int, help="regular in-degree (default: --d)")
    s.add_argument("--lambda", dest="lam", type=float, help="poisson mean")
    s.add_argument("--alpha", type=float, help="zipf exponent (> 1)")
    s.add_argument("--delta", type=int, required=True, help="edge (or tail) size")
    s.add_argument("--delta-head", type=int, help="head size; makes the sequence directed")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="output path (default: stdout only)")
    s.set_defaults(func=cmd_gen_degrees)
    return p


def _error(code: str, message: str, exit_code: int) -> int:
    json.dump({"error": code, "message": message, "exit_code": exit_code}, sys.stderr)
    sys.stderr.write("\n")
    return exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, status = args.func(args)
    except HypersimpleError as err:
        return _error(err.code, str(err), err.exit_code)
    except Exception as err:  # anything else is a bug
        return _error("InternalError", f"{type(err).__name__}: {err}", 4)
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
