"""Command-line front end: single queries, parameter sweeps, verification
runs, trace export, and a plain-file cache of verified instances.

Exit codes: 0 success, 1 oracle disagreement found, 2 usage error,
3 size budget exceeded.  All randomness flows from --seed, so identical
invocations produce byte-identical outputs.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Tuple

import click

from .classify import BasePolicy, PolicyKind, Verdict, classify, verify
from .core import K3System, edim, vdim_k3
from .degeneration import is_admissible_count
from .oracle import (
    DEFAULT_BUDGET_ROWS,
    DEFAULT_PRIME,
    DEFAULT_PRIME2,
    DEFAULT_TRIALS,
    BudgetExceededError,
    PrimeFieldConfig,
)

SWEEP_HEADER = "gamma,d,m,n,vdim,edim,dim,status,oracle_dim,verdict"


def _build_config(prime, prime2, seed, trials, budget_rows) -> PrimeFieldConfig:
    try:
        return PrimeFieldConfig(
            prime=prime,
            seed=seed,
            trials=trials,
            prime2=(prime2 or None),
            budget_rows=budget_rows,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
@click.option("--prime", type=int, default=DEFAULT_PRIME, show_default=True,
              envvar="K3FAT_PRIME", help="Oracle prime (> 2^30).")
@click.option("--prime2", type=int, default=DEFAULT_PRIME2, show_default=True,
              envvar="K3FAT_PRIME2", help="Cross-check prime; 0 disables.")
@click.option("--seed", type=int, default=1, show_default=True,
              envvar="K3FAT_SEED", help="Master seed for all sampling.")
@click.option("--trials", type=int, default=DEFAULT_TRIALS, show_default=True,
              envvar="K3FAT_TRIALS", help="Oracle trials per prime (>= 2).")
@click.option("--budget-rows", type=int, default=DEFAULT_BUDGET_ROWS, show_default=True,
              envvar="K3FAT_BUDGET_ROWS", help="Condition-matrix size cap.")
@click.pass_context
def main(ctx, prime, prime2, seed, trials, budget_rows):
    """Dimensions and speciality of fat-point linear systems on generic K3
    surfaces, with finite-field oracle verification."""
    ctx.obj = _build_config(prime, prime2, seed, trials, budget_rows)


def _validated_system(gamma: int, d: int, m: Optional[int], n: int) -> K3System:
    if gamma % 2 != 0:
        raise click.UsageError("gamma must be even")
    if gamma < 2:
        raise click.UsageError("gamma must be >= 2")
    if d < 1:
        raise click.UsageError("d must be >= 1")
    if m is None:
        return K3System(gamma, d)
    if m < 1:
        raise click.UsageError("m must be >= 1")
    if n < 1:
        raise click.UsageError("n must be >= 1")
    return K3System.homogeneous(gamma, d, m, n)


@main.command("vdim")
@click.option("--gamma", "-g", type=int, required=True)
@click.option("-d", "d", type=int, required=True)
@click.option("-m", "m", type=int, default=None)
@click.option("-n", "n", type=int, default=1, show_default=True)
def cmd_vdim(gamma, d, m, n):
    """Print the virtual and expected dimension of L^gamma(d, m^n)."""
    sys_ = _validated_system(gamma, d, m, n)
    v = vdim_k3(sys_)
    click.echo(f"vdim={v} edim={edim(v)}")


def _policy_for(gamma: int, assume_base: bool, cfg: PrimeFieldConfig) -> BasePolicy:
    if gamma == 4:
        return BasePolicy(PolicyKind.GAMMA4_PROVED)
    if assume_base:
        return BasePolicy(PolicyKind.HYPOTHESIS, gamma=gamma)
    raise click.UsageError(
        f"no proved base classification for gamma={gamma}; pass --assume-base "
        "to compute CONDITIONAL reports under the non-special-base hypothesis"
    )


def _report_line(gamma, d, m, n, report) -> str:
    dim = "NA" if report.dim is None else str(report.dim)
    return (
        f"gamma={gamma} d={d} m={m} n={n} "
        f"vdim={report.vdim} edim={report.edim} dim={dim} status={report.status.value}"
    )


@main.command("classify")
@click.option("--gamma", "-g", type=int, required=True)
@click.option("-d", "d", type=int, required=True)
@click.option("-m", "m", type=int, required=True)
@click.option("-n", "n", type=int, default=1, show_default=True)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None,
              help="Write the degeneration trace as JSON.")
@click.option("--assume-base", is_flag=True,
              help="For gamma != 4: assume single-point systems are non-special.")
@click.pass_obj
def cmd_classify(cfg, gamma, d, m, n, trace_path, assume_base):
    """Classify L^gamma(d, m^n) and optionally export its recursion trace."""
    sys_ = _validated_system(gamma, d, m, n)
    if not is_admissible_count(n):
        raise click.UsageError(f"n must be of the form 4^u * 9^w, got {n}")
    policy = _policy_for(gamma, assume_base, cfg)
    report = classify(sys_, policy)
    click.echo(_report_line(gamma, d, m, n, report))
    if trace_path:
        with open(trace_path, "w", encoding="utf-8") as fh:
            fh.write(report.trace.to_json())
        click.echo(f"trace written to {trace_path}")


# ---------------------------------------------------------------------------
# Cache of verified instances, one plain file per (gamma,d,m,n,prime,seed).


def _cache_path(cache_dir, gamma, d, m, n, cfg) -> str:
    name = f"g{gamma}_d{d}_m{m}_n{n}_p{cfg.prime}_s{cfg.seed}.json"
    return os.path.join(cache_dir, name)


def _cache_lookup(cache_dir, gamma, d, m, n, cfg) -> Optional[dict]:
    path = _cache_path(cache_dir, gamma, d, m, n, cfg)
    if not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            entry = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    config_match = (
        entry.get("trials") == cfg.trials
        and entry.get("prime2") == cfg.prime2
        and entry.get("budget_rows") == cfg.budget_rows
    )
    return entry if config_match else None


def _cache_store(cache_dir, gamma, d, m, n, cfg, payload: dict) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    payload = dict(payload)
    payload.update(trials=cfg.trials, prime2=cfg.prime2, budget_rows=cfg.budget_rows)
    with open(_cache_path(cache_dir, gamma, d, m, n, cfg), "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)


def _verify_with_cache(sys_, report, cfg, cache_dir):
    gamma, d = sys_.gamma, sys_.degree
    m = sys_.multiplicity if sys_.total_points else 0
    n = sys_.total_points
    if cache_dir:
        entry = _cache_lookup(cache_dir, gamma, d, m, n, cfg)
        if entry is not None:
            from .classify import VerificationOutcome

            return VerificationOutcome(
                Verdict(entry["verdict"]),
                oracle_dim=entry.get("oracle_dim"),
                reason=entry.get("reason"),
                low_confidence=entry.get("low_confidence", False),
            )
    outcome = verify(sys_, report, cfg)
    if cache_dir:
        _cache_store(cache_dir, gamma, d, m, n, cfg, {
            "verdict": outcome.kind.value,
            "oracle_dim": outcome.oracle_dim,
            "reason": outcome.reason,
            "low_confidence": outcome.low_confidence,
            "engine_dim": report.dim,
            "engine_status": report.status.value,
        })
    return outcome


@main.command("verify")
@click.option("--gamma", "-g", type=int, required=True)
@click.option("-d", "d", type=int, required=True)
@click.option("-m", "m", type=int, required=True)
@click.option("-n", "n", type=int, default=1, show_default=True)
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None,
              help="Directory of cached verified instances.")
@click.pass_context
def cmd_verify(ctx, gamma, d, m, n, cache_dir):
    """Classify L^gamma(d, m^n) and check the verdict against the oracle."""
    cfg = ctx.obj
    sys_ = _validated_system(gamma, d, m, n)
    if not is_admissible_count(n):
        raise click.UsageError(f"n must be of the form 4^u * 9^w, got {n}")
    if gamma != 4:
        raise click.UsageError("verify requires gamma=4 (the oracle is quartic-only)")
    report = classify(sys_, _policy_for(gamma, False, cfg))
    try:
        outcome = _verify_with_cache(sys_, report, cfg, cache_dir)
    except BudgetExceededError as exc:
        click.echo(f"verdict=SKIPPED reason={exc}")
        ctx.exit(3)
    engine_dim = "NA" if report.dim is None else report.dim
    oracle_dim = "NA" if outcome.oracle_dim is None else outcome.oracle_dim
    click.echo(
        f"verdict={outcome.kind.value} status={report.status.value} "
        f"engine_dim={engine_dim} oracle_dim={oracle_dim} "
        f"low_confidence={outcome.low_confidence}"
        + (f" reason={outcome.reason}" if outcome.reason else "")
    )
    if outcome.kind is Verdict.DISAGREE:
        ctx.exit(1)
    if outcome.kind is Verdict.SKIPPED and outcome.reason and "budget" in outcome.reason:
        ctx.exit(3)


# ---------------------------------------------------------------------------
# Parameter sweep


def _sweep_row(task: Tuple) -> Tuple[str, str]:
    """One sweep row, picklable for the worker pool.

    Returns (csv_row, verdict) with empty oracle fields when the oracle is
    off or skipped."""
    gamma, d, m, n, cfg_fields, oracle_on, cache_dir = task
    cfg = PrimeFieldConfig(*cfg_fields)
    sys_ = K3System.homogeneous(gamma, d, m, n)
    report = classify(sys_)
    dim = "" if report.dim is None else str(report.dim)
    oracle_dim = ""
    verdict = ""
    if oracle_on:
        outcome = _verify_with_cache(sys_, report, cfg, cache_dir)
        verdict = outcome.kind.value
        if outcome.oracle_dim is not None:
            oracle_dim = str(outcome.oracle_dim)
    row = (
        f"{gamma},{d},{m},{n},{report.vdim},{report.edim},{dim},"
        f"{report.status.value},{oracle_dim},{verdict}"
    )
    return row, verdict


@main.command("sweep")
@click.option("--gamma", type=int, default=4, show_default=True)
@click.option("--d-range", nargs=2, type=int, required=True, metavar="LO HI")
@click.option("--m-range", nargs=2, type=int, required=True, metavar="LO HI")
@click.option("--n-set", type=str, required=True,
              help="Comma-separated point counts, each of the form 4^u*9^w.")
@click.option("--oracle/--no-oracle", default=False, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker processes for oracle rows.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def cmd_sweep(ctx, gamma, d_range, m_range, n_set, oracle, out_path, jobs, cache_dir):
    """Tabulate engine and oracle results over a (d, m, n) grid as CSV."""
    cfg = ctx.obj
    if gamma != 4:
        raise click.UsageError("sweep supports gamma=4 only")
    d_lo, d_hi = d_range
    m_lo, m_hi = m_range
    if d_lo < 1 or d_lo > d_hi or m_lo < 1 or m_lo > m_hi:
        raise click.UsageError("empty or invalid d/m range")
    try:
        n_values = sorted({int(x) for x in n_set.split(",") if x.strip()})
    except ValueError:
        raise click.UsageError(f"could not parse n-set {n_set!r}")
    if not n_values:
        raise click.UsageError("n-set must not be empty")
    for n in n_values:
        if n < 1 or not is_admissible_count(n):
            raise click.UsageError(f"n-set entry {n} is not of the form 4^u * 9^w")

    cfg_fields = (cfg.prime, cfg.seed, cfg.trials, cfg.prime2, cfg.budget_rows)
    tasks = [
        (gamma, d, m, n, cfg_fields, oracle, cache_dir)
        for d in range(d_lo, d_hi + 1)
        for m in range(m_lo, m_hi + 1)
        for n in n_values
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_row, tasks))
    else:
        results = [_sweep_row(t) for t in tasks]

    lines = [SWEEP_HEADER] + [row for row, _ in results]
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    disagreements = sum(1 for _, verdict in results if verdict == "DISAGREE")
    click.echo(f"wrote {len(results)} rows to {out_path}"
               + (f"; {disagreements} DISAGREE" if disagreements else ""))
    if disagreements:
        ctx.exit(1)


if __name__ == "__main__":
    main()
