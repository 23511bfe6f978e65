"""Command-line driver: one L-polynomial record per odd prime p < N."""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import oracle
from .curve import Curve, parse_coeff_string, parse_curve, read_curve_file
from .errors import HyperZetaError, InternalError, InvalidInput, VerificationMismatch
from .frobenius import FrobContext, frobenius_matrices
from .rtree import sieve_primes
from .zeta import LPolyRecord, charpoly_mod, lift_weil_lpoly

log = logging.getLogger("hyperzeta")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


@dataclass
class RunConfig:
    N: int
    coeffs: Sequence[int] | None = None
    curve_file: str | None = None
    out: str | None = None
    fmt: str = "csv"
    threads: int = 1
    verify_limit: int = 0
    budget_bits: int = 25

    def __post_init__(self):
        if self.N < 3:
            raise InvalidInput("the prime bound N must be at least 3")
        if self.threads < 1:
            raise InvalidInput("threads must be at least 1")
        if self.fmt not in ("csv", "jsonl"):
            raise InvalidInput(f"unknown format {self.fmt!r}")
        if (self.coeffs is None) == (self.curve_file is None):
            raise InvalidInput("give exactly one of coeffs or curve_file")

    def load_curve(self) -> Curve:
        if self.curve_file is not None:
            return read_curve_file(self.curve_file)
        return parse_curve(self.coeffs)


@dataclass
class RunStats:
    """Counters from the main path, reported after a run."""

    u_entries: int = 0
    max_valuation: int = 0
    valuation_within_rho: int = 0
    integrality_checks: int = 0
    computed: int = 0
    fallback: int = 0
    bad: int = 0
    verified: int = 0
    slack_by_pair: dict = field(default_factory=dict)


@contextmanager
def _stage(name: str, p: int | None = None):
    try:
        yield
    except HyperZetaError as exc:
        where = f"{name}" + (f", p={p}" if p is not None else "")
        raise type(exc)(f"[{where}] {exc}") from exc


def compute_records(
    curve: Curve,
    N: int,
    threads: int = 1,
    budget: int = oracle.DEFAULT_BUDGET,
    verify_limit: int = 0,
) -> tuple[list[LPolyRecord], RunStats]:
    ctx = FrobContext.for_curve(curve)
    stats = RunStats()
    with _stage("frobenius"):
        mats, table = frobenius_matrices(curve, N, threads, ctx)
    for (pair, p), u in table.items():
        stats.u_entries += 1
        stats.max_valuation = max(stats.max_valuation, u.e)
        stats.valuation_within_rho += u.e <= ctx.rho[pair]
        slack = ctx.rho[pair] - u.e
        stats.slack_by_pair[pair] = min(stats.slack_by_pair.get(pair, slack), slack)
    records = []
    for p in sieve_primes(N):
        if p == 2:
            continue
        if curve.delta % p == 0:
            rec = LPolyRecord(p, "bad")
            stats.bad += 1
        elif p in mats:
            with _stage("charpoly", p):
                e = charpoly_mod(mats[p].entries, curve.g, p, ctx.mu)
                rec = lift_weil_lpoly(e, p, curve.g, ctx.mu)
            stats.computed += 1
            stats.integrality_checks += 1
        else:
            with _stage("fallback", p):
                rec = oracle.fallback_lpoly(curve, p, budget)
            stats.fallback += 1
        if rec.a is not None:
            with _stage("check", p):
                rec.check()
            if p <= verify_limit:
                with _stage("verify", p):
                    ref = oracle.fallback_lpoly(curve, p, budget)
                if ref.a != rec.a:
                    raise VerificationMismatch(f"[verify, p={p}] pipeline {rec.a} != oracle {ref.a}")
                stats.verified += 1
        records.append(rec)
    return records, stats


def run_pipeline(cfg: RunConfig) -> Iterator[LPolyRecord]:
    """Records for every odd prime p < N, ascending."""
    curve = cfg.load_curve()
    records, _ = compute_records(curve, cfg.N, cfg.threads, 1 << cfg.budget_bits, cfg.verify_limit)
    yield from records


def format_records(records: Iterable[LPolyRecord], g: int, fmt: str = "csv") -> str:
    buf = io.StringIO()
    names = [f"a_{i}" for i in range(2 * g + 1)]
    if fmt == "csv":
        buf.write(",".join(["p", "status"] + names) + "\n")
        for rec in records:
            coeffs = [str(x) for x in rec.a] if rec.a is not None else [""] * len(names)
            buf.write(",".join([str(rec.p), rec.status] + coeffs) + "\n")
    elif fmt == "jsonl":
        for rec in records:
            row = {"p": rec.p, "status": rec.status}
            for i, name in enumerate(names):
                row[name] = rec.a[i] if rec.a is not None else None
            buf.write(json.dumps(row) + "\n")
    else:
        raise InvalidInput(f"unknown format {fmt!r}")
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperzeta",
        description="L-polynomials of y^2 = Q(x) modulo every odd prime p < N.",
    )
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help='ascending coefficients of Q, e.g. "1,1,0,1" for x^3+x+1')
    src.add_argument("--curve-file", help="file holding one line of ascending coefficients")
    ap.add_argument("--limit", type=int, required=True, metavar="N", help="emit primes p < N")
    ap.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    ap.add_argument("--out", help="output path (default: stdout)")
    ap.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    ap.add_argument("--verify", type=int, default=0, metavar="LIMIT",
                    help="cross-check records with p <= LIMIT against brute-force counts")
    ap.add_argument("--budget", type=int, default=25, metavar="BITS",
                    help="brute-force counting allowed while p^n <= 2^BITS (default 25)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(
            N=args.limit,
            coeffs=parse_coeff_string(args.coeffs) if args.coeffs is not None else None,
            curve_file=args.curve_file,
            out=args.out,
            fmt=args.format,
            threads=args.threads,
            verify_limit=args.verify,
            budget_bits=args.budget,
        )
        curve = cfg.load_curve()
        records, stats = compute_records(curve, cfg.N, cfg.threads, 1 << cfg.budget_bits, cfg.verify_limit)
    except InvalidInput as exc:
        print(f"hyperzeta: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InternalError, AssertionError) as exc:
        print(f"hyperzeta: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"hyperzeta: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = format_records(records, curve.g, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    log.info("%d computed, %d fallback, %d bad, %d verified; max valuation %d",
             stats.computed, stats.fallback, stats.bad, stats.verified, stats.max_valuation)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
