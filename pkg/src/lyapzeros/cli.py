"""Command-line front end: predictions, classification tables, simulation
runs, and verification reports.

Exit codes: 0 success / match, 2 usage error, 3 incoherent or unsupported
pair, 4 verification mismatch, 5 inconclusive verdict.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from .errors import NumericalError, ParameterError, UnsupportedFeatureError
from .prediction import predict
from .realforms import RealFormSpec, so_split, so_star, sp, su
from .simulate import (SimConfig, exterior_consistency_check, lyapunov_spectrum,
                       verify_prediction)
from .weights import RepSpec, binomial

SCHEMA_VERSION = 1
SEED_ENV_VAR = "LYAPZEROS_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCOHERENT = 3
EXIT_MISMATCH = 4
EXIT_INCONCLUSIVE = 5


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _add_group_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, choices=["su", "so-split", "so-star", "sp"])
    p.add_argument("--p", type=int, help="su: positive part of the signature")
    p.add_argument("--q", type=int, help="su: negative part of the signature")
    p.add_argument("--m", type=int, help="so-split: so(m,2)")
    p.add_argument("--n", type=int, help="so-star: so*(2n)")
    p.add_argument("--g", type=int, help="sp: sp(2g,R)")
    p.add_argument("--rep", default="standard",
                   help="standard | ext:K | spin | half-spin:+ | half-spin:-")


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--steps", type=int, default=100_000)
    p.add_argument("--trials", type=int, default=8)
    p.add_argument("--seed", type=int, default=None,
                   help=f"master seed (default: ${SEED_ENV_VAR} or 42)")
    p.add_argument("--scale", type=float, default=0.3)
    p.add_argument("--renorm", type=int, default=10)
    p.add_argument("--zero-threshold", type=float, default=0.05)
    p.add_argument("--dump-trials", metavar="PATH", default=None,
                   help="write per-trial exponents as CSV")


def _parse_form(args) -> RealFormSpec:
    if args.group == "su":
        if args.p is None or args.q is None:
            raise ParameterError("su requires --p and --q")
        return su(args.p, args.q)
    if args.group == "so-split":
        if args.m is None:
            raise ParameterError("so-split requires --m")
        return so_split(args.m)
    if args.group == "so-star":
        if args.n is None:
            raise ParameterError("so-star requires --n")
        return so_star(args.n)
    if args.g is None:
        raise ParameterError("sp requires --g")
    return sp(args.g)


def _record(command: str, inputs: dict, payload: dict, provenance: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "inputs": inputs, "payload": payload, "provenance": provenance}


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(record, out, indent=2)
        out.write("\n")
        return
    _emit_text(record, out)


def _emit_text(record: dict, out) -> None:
    payload = record["payload"]
    print(f"# {record['command']}", file=out)
    if "rows" in payload:
        rows = payload["rows"]
        if not rows:
            print("(empty table)", file=out)
            return
        cols = list(rows[0].keys())
        widths = [max(len(str(c)), *(len(str(r[c])) for r in rows)) for c in cols]
        print("  ".join(str(c).ljust(w) for c, w in zip(cols, widths)), file=out)
        for r in rows:
            print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)), file=out)
        if "note" in payload:
            print(payload["note"], file=out)
        return
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        print(f"{key}: {value}", file=out)


def _provenance(args, started: float, seed: int | None = None) -> dict:
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "format") and v is not None}
    return {"seed": seed, "parameters": params,
            "wall_clock_seconds": round(time.perf_counter() - started, 6)}


def cmd_predict(args, out) -> int:
    started = time.perf_counter()
    form = _parse_form(args)
    rep = RepSpec.parse(args.rep)
    pred = predict(form, rep)
    payload = pred.as_record()
    rec = _record("predict", {"group": args.group, "form": form.label(),
                              "rep": rep.label()},
                  payload, _provenance(args, started))
    _emit(rec, args.format, out)
    return EXIT_OK


def _admissible_rows(max_dim: int) -> list[dict]:
    pairs: list[tuple[RealFormSpec, RepSpec]] = []
    # su(p,q) standard: real dimension 2(p+q)
    s = 2
    while 2 * s <= max_dim:
        for q in range(1, s // 2 + 1):
            pairs.append((su(s - q, q), RepSpec.standard()))
        s += 1
    # su(p,1) nontrivial exterior powers: real dimension 2 C(p+1, k)
    p = 2
    while 2 * (p + 1) <= max_dim:
        for k in range(2, p + 1):
            if 2 * binomial(p + 1, k) <= max_dim:
                pairs.append((su(p, 1), RepSpec.exterior(k)))
        p += 1
    # sp(2g,R) standard: real dimension 2g
    g = 1
    while 2 * g <= max_dim:
        pairs.append((sp(g), RepSpec.standard()))
        g += 1
    # so*(2n) standard: real dimension 4n
    n = 2
    while 4 * n <= max_dim:
        pairs.append((so_star(n), RepSpec.standard()))
        n += 1
    # so(2n-1,2) spin: real dimension 2^n
    n = 2
    while 2 ** n <= max_dim:
        pairs.append((so_split(2 * n - 1), RepSpec.spin()))
        n += 1
    # so(2n-2,2) half-spins: real dimension 2^(n-1)
    n = 3
    while 2 ** (n - 1) <= max_dim:
        pairs.append((so_split(2 * n - 2), RepSpec.half_spin("+")))
        pairs.append((so_split(2 * n - 2), RepSpec.half_spin("-")))
        n += 1

    rows = []
    for form, rep in pairs:
        pred = predict(form, rep)
        assert pred.hodge_admissible, (form.label(), rep.label())
        if pred.real_dim > max_dim:
            continue
        rows.append({
            "form": form.label(),
            "rep": rep.label(),
            "real_dim": pred.real_dim,
            "zero_count_real": pred.zero_count_real,
        })
    rows.sort(key=lambda r: (r["real_dim"], r["form"], r["rep"]))
    return rows


def cmd_classify(args, out) -> int:
    started = time.perf_counter()
    if args.max_dim < 0:
        raise ParameterError("--max-dim must be nonnegative")
    rows = _admissible_rows(args.max_dim)
    payload = {"rows": rows, "note": "counts are real counts"}
    rec = _record("classify", {"max_dim": args.max_dim}, payload,
                  _provenance(args, started))
    _emit(rec, args.format, out)
    return EXIT_OK


def _sim_config(args) -> SimConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    form = _parse_form(args)
    rep = RepSpec.parse(args.rep)
    return SimConfig(form=form, rep=rep, steps=args.steps, trials=args.trials,
                     renorm_interval=args.renorm, scale=args.scale,
                     master_seed=seed, zero_threshold=args.zero_threshold)


def _dump_trials(path: str, result) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        width = len(result.exponents)
        writer.writerow(["trial"] + [f"lambda_{i + 1}" for i in range(width)])
        for t, row in enumerate(result.trial_exponents):
            writer.writerow([t] + list(row))


def cmd_simulate(args, out) -> int:
    started = time.perf_counter()
    config = _sim_config(args)
    result = lyapunov_spectrum(config)
    if args.dump_trials:
        _dump_trials(args.dump_trials, result)
    rec = _record("simulate",
                  {"form": config.form.label(), "rep": config.rep.label()},
                  result.as_record(),
                  _provenance(args, started, seed=config.master_seed))
    _emit(rec, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    started = time.perf_counter()
    config = _sim_config(args)
    pred = predict(config.form, config.rep)
    report = verify_prediction(config, pred)
    if args.dump_trials:
        _dump_trials(args.dump_trials, report.result)
    rec = _record("verify",
                  {"form": config.form.label(), "rep": config.rep.label()},
                  report.as_record(),
                  _provenance(args, started, seed=config.master_seed))
    _emit(rec, args.format, out)
    if report.verdict == "match":
        return EXIT_OK
    if report.verdict == "mismatch":
        return EXIT_MISMATCH
    return EXIT_INCONCLUSIVE


def cmd_exterior_check(args, out) -> int:
    started = time.perf_counter()
    config = _sim_config(args)
    report = exterior_consistency_check(config.form, args.k, config)
    rec = _record("exterior-check",
                  {"form": config.form.label(), "k": args.k},
                  report.as_record(),
                  _provenance(args, started, seed=config.master_seed))
    _emit(rec, args.format, out)
    return EXIT_OK if report.matched else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyapzeros",
        description="Restricted-weight predictions and Lyapunov-spectrum "
                    "verification for pseudo-Hermitian Lie groups")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_pred = sub.add_parser("predict", help="closed-form spectrum prediction")
    _add_group_flags(p_pred)
    p_pred.set_defaults(func=cmd_predict)

    p_cls = sub.add_parser("classify", help="table of Hodge-admissible pairs")
    p_cls.add_argument("--max-dim", type=int, required=True,
                       help="largest real dimension to list")
    p_cls.set_defaults(func=cmd_classify)

    p_sim = sub.add_parser("simulate", help="estimate a Lyapunov spectrum")
    _add_group_flags(p_sim)
    _add_sim_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_ver = sub.add_parser("verify", help="simulate and compare to the prediction")
    _add_group_flags(p_ver)
    _add_sim_flags(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_ext = sub.add_parser("exterior-check",
                           help="exterior exponents vs subset sums of standard ones")
    _add_group_flags(p_ext)
    _add_sim_flags(p_ext)
    p_ext.add_argument("--k", type=int, required=True, help="exterior degree")
    p_ext.set_defaults(func=cmd_exterior_check)

    for p in (p_pred, p_cls, p_sim, p_ver, p_ext):
        p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (ParameterError, UnsupportedFeatureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOHERENT
    except NumericalError as exc:
        print(f"numerical error: {exc} {exc.diagnostics}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
