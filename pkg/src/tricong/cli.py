"""Command-line front end: parameter sweeps in, machine-readable reports out.

Exit codes: 0 when every non-skipped check passes, 1 when anything fails
(or an internal consistency assertion fires), 2 for usage and configuration
errors.
"""

from __future__ import annotations

import json
import multiprocessing
import os
import sys
import time

import click

from .identity_suite import IDENTITIES, LEMMAS, run_identity_suite, run_lemma_suite
from .modmath import primes_between
from .report import Report, ReportWriteError, SweepConfig, emit_report
from .verifier import TARGETS, check_congruence, iter_congruence_records

ENV_JOBS = "TRICONG_JOBS"

ALL_CONGRUENCE = tuple(sorted(TARGETS))
ALL_IDENTITIES = tuple(sorted(IDENTITIES))
ALL_LEMMAS = tuple(sorted(LEMMAS))


def _parse_span(text: str, field_name: str) -> tuple[int, int]:
    raw = text.strip()
    try:
        if ".." in raw:
            lo_s, hi_s = raw.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(raw)
    except ValueError:
        raise click.UsageError(f"{field_name}: cannot parse range {text!r} (use LO..HI)")
    return lo, hi


def _parse_targets(text: str | None, allowed, field_name: str) -> list[str]:
    if text is None:
        return list(allowed)
    chosen = [t.strip() for t in text.split(",") if t.strip()]
    bad = sorted(set(chosen) - set(allowed))
    if bad:
        raise click.UsageError(f"targets: unknown or out-of-scope ids {', '.join(bad)}")
    if not chosen:
        raise click.UsageError("targets: empty selection")
    return chosen


def _resolve_jobs(parallelism) -> int:
    if parallelism == "auto":
        return os.cpu_count() or 1
    return int(parallelism)


def _collect_notes(targets) -> list[str]:
    notes = []
    for tid in targets:
        spec = IDENTITIES.get(tid) or LEMMAS.get(tid)
        if spec is not None and spec.note:
            notes.append(f"{tid}: {spec.note}")
    return notes


def _work_items(cfg: SweepConfig) -> list[tuple]:
    cong = tuple(t for t in cfg.targets if t in TARGETS)
    idents = tuple(t for t in cfg.targets if t in IDENTITIES)
    lemmas = tuple(t for t in cfg.targets if t in LEMMAS)
    primes = primes_between(cfg.prime_min, cfg.prime_max)
    items: list[tuple] = []
    if cong:
        for p in primes:
            items.append(("congruence", (cong, p, cfg.b_range, cfg.c_range, cfg.x_range, cfg.modulus_margin)))
    for ident in idents:
        items.append(("identity", (ident, cfg.n_max, cfg.b_range, cfg.c_range)))
    for lemma in lemmas:
        for p in primes:
            items.append(("lemma", (lemma, p)))
    return items


def _run_work_item(item: tuple) -> list:
    kind, payload = item
    if kind == "congruence":
        targets, p, b_range, c_range, x_range, margin = payload
        return iter_congruence_records(targets, [p], b_range, c_range, x_range, margin=margin)
    if kind == "identity":
        ident, n_max, b_range, c_range = payload
        return list(run_identity_suite([ident], n_max, b_range, c_range))
    lemma_id, p = payload
    return list(run_lemma_suite([lemma_id], [p]))


def execute(cfg: SweepConfig) -> Report:
    """Run a validated sweep configuration to a Report (records sorted)."""
    cfg.validate()
    unknown = sorted(set(cfg.targets) - set(TARGETS) - set(IDENTITIES) - set(LEMMAS))
    if unknown:
        raise ValueError(f"targets: unknown ids {', '.join(unknown)}")
    items = _work_items(cfg)
    jobs = _resolve_jobs(cfg.parallelism)
    start = time.perf_counter()
    if jobs <= 1 or len(items) <= 1:
        chunks = [_run_work_item(it) for it in items]
    else:
        with multiprocessing.Pool(min(jobs, len(items))) as pool:
            chunks = pool.map(_run_work_item, items)
    records = [rec for chunk in chunks for rec in chunk]
    return Report.build(
        records,
        cfg,
        notes=_collect_notes(cfg.targets),
        wall_time=time.perf_counter() - start,
    )


def _sweep_options(fn):
    opts = [
        click.option("--targets", "targets_text", default=None, help="comma-separated target ids"),
        click.option("--primes", "primes_text", default=None, help="prime range LO..HI (default 5..97)"),
        click.option("--b-range", "b_text", default=None, help="b interval LO..HI (default -4..4)"),
        click.option("--c-range", "c_text", default=None, help="c interval LO..HI (default -4..4)"),
        click.option("--x-range", "x_text", default=None, help="x interval LO..HI (default 1..8)"),
        click.option("--n-max", "n_max", type=int, default=None, help="identity-domain bound (default 40)"),
        click.option("--margin", "modulus_margin", type=int, default=None, help="internal precision headroom (>= 2)"),
        click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default=None),
        click.option("--output", "output_path", default=None, help="report path (default stdout)"),
        click.option("--jobs", "jobs_text", default=None, help="worker count or 'auto'"),
        click.option("--config", "config_path", default=None, help="JSON file with SweepConfig fields"),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _build_config(allowed_targets, kwargs) -> SweepConfig:
    cfg = SweepConfig()
    config_path = kwargs.get("config_path")
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            cfg = SweepConfig.from_dict(data)
        except (OSError, ValueError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"config: {exc}")
        bad = sorted(set(cfg.targets) - set(allowed_targets))
        if bad:
            raise click.UsageError(f"targets: unknown or out-of-scope ids {', '.join(bad)}")
        if not cfg.targets:
            cfg.targets = list(allowed_targets)
    else:
        cfg.targets = list(allowed_targets)

    if kwargs.get("targets_text") is not None:
        cfg.targets = _parse_targets(kwargs["targets_text"], allowed_targets, "targets")
    if kwargs.get("primes_text") is not None:
        cfg.prime_min, cfg.prime_max = _parse_span(kwargs["primes_text"], "primes")
    if kwargs.get("b_text") is not None:
        cfg.b_range = _parse_span(kwargs["b_text"], "b_range")
    if kwargs.get("c_text") is not None:
        cfg.c_range = _parse_span(kwargs["c_text"], "c_range")
    if kwargs.get("x_text") is not None:
        cfg.x_range = _parse_span(kwargs["x_text"], "x_range")
    if kwargs.get("n_max") is not None:
        cfg.n_max = kwargs["n_max"]
    if kwargs.get("modulus_margin") is not None:
        cfg.modulus_margin = kwargs["modulus_margin"]
    if kwargs.get("output_format") is not None:
        cfg.output_format = kwargs["output_format"]
    if kwargs.get("output_path") is not None:
        cfg.output_path = kwargs["output_path"]

    jobs_text = kwargs.get("jobs_text")
    if jobs_text is None and not config_path:
        jobs_text = os.environ.get(ENV_JOBS)
    if jobs_text is not None:
        if jobs_text == "auto":
            cfg.parallelism = "auto"
        else:
            try:
                cfg.parallelism = int(jobs_text)
            except ValueError:
                raise click.UsageError(f"parallelism: expected a count or 'auto', got {jobs_text!r}")

    try:
        cfg.validate()
    except ValueError as exc:
        raise click.UsageError(str(exc))
    return cfg


def _finish(cfg: SweepConfig) -> None:
    report = execute(cfg)
    try:
        emit_report(report, cfg.output_format, cfg.output_path)
    except ReportWriteError as exc:
        raise click.UsageError(str(exc))
    s = report.summary
    click.echo(
        f"checked={s['checked']} passed={s['passed']} failed={s['failed']} "
        f"skipped={s['skipped']} wall={report.wall_time:.2f}s",
        err=True,
    )
    for flag in report.flags:
        click.echo(f"flag: {flag}", err=True)
    sys.exit(0 if report.failed == 0 else 1)


@click.group()
@click.version_option()
def main():
    """Verify congruences for power sums of generalized central trinomial coefficients."""


@main.command()
@_sweep_options
def verify(**kwargs):
    """Sweep the congruence targets (theorems, corollaries, background sum)."""
    _finish(_build_config(ALL_CONGRUENCE, kwargs))


@main.command()
@_sweep_options
def identities(**kwargs):
    """Check every exact identity over its sample domain."""
    _finish(_build_config(ALL_IDENTITIES, kwargs))


@main.command()
@_sweep_options
def lemmas(**kwargs):
    """Check every congruence lemma exhaustively over the prime range."""
    _finish(_build_config(ALL_LEMMAS, kwargs))


@main.command(name="all")
@_sweep_options
def all_cmd(**kwargs):
    """Run the congruence, identity, and lemma suites together."""
    _finish(_build_config(ALL_CONGRUENCE + ALL_IDENTITIES + ALL_LEMMAS, kwargs))


@main.command()
@click.option("--target", required=True)
@click.option("--p", "prime", type=int, required=True)
@click.option("--b", type=int, default=None)
@click.option("--c", type=int, default=None)
@click.option("--x", type=int, default=None)
@click.option("--margin", "modulus_margin", type=int, default=2)
def show(target, prime, b, c, x, modulus_margin):
    """Print one congruence record's LHS/RHS decomposition for debugging."""
    if target not in TARGETS:
        raise click.UsageError(f"targets: {target!r} is not a congruence target")
    try:
        rec = check_congruence(target, prime, b=b, c=c, x=x, margin=modulus_margin)
    except (ValueError, KeyError) as exc:
        raise click.UsageError(str(exc))
    head = f"{rec.target} p={rec.p}"
    if rec.b is not None:
        head += f" b={rec.b} c={rec.c}"
    if rec.x is not None:
        head += f" x={rec.x}"
    click.echo(head)
    if rec.status == "skip":
        click.echo(f"status=skip reason: {rec.reason}")
        sys.exit(0)
    modulus = rec.p ** rec.stated_exponent
    click.echo(f"lhs={rec.lhs}, rhs={rec.rhs} mod {modulus}")
    click.echo(
        f"residual={rec.residual} residual_valuation={rec.verified_exponent} "
        f"stated_exponent={rec.stated_exponent} status={rec.status}"
    )
    sys.exit(0 if rec.status == "pass" else 1)


def run(argv=None) -> int:
    """Invoke the CLI programmatically; returns the process exit code."""
    try:
        main.main(args=argv, standalone_mode=False)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 130
    return 0


if __name__ == "__main__":
    main()
