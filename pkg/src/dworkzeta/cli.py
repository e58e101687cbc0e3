"""Command-line interface: predict / verify-rep / count / zeta / check.

Configuration can come from a JSON key-value file (--config); explicit flags
override file values.  The effective configuration is serialized verbatim
into every output so runs are reproducible.  Exit codes: 0 success, 2 check
failure, 3 cost-cap abort, 4 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass

from .errors import (CheckFailureError, CostCapError, DworkZetaError,
                     InvalidInputError)

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_COST_CAP = 3
EXIT_INVALID = 4


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    q: int | None = None
    psi: int | None = None
    r: int = 1
    twist: str | None = None
    sigma: str | None = None
    orbit: str | None = None
    mode: str = "extract"
    format: str = "json"
    jobs: int = 1
    cost_cap: int | None = None
    output: str | None = None
    figures: bool = False
    suite: str = "acceptance"
    only: str | None = None


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dworkzeta",
        description="Predicted and verified zeta-function factorizations of "
                    "Dwork hypersurfaces.")
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command")

    def common(p, needs_instance=False):
        p.add_argument("--n", type=int)
        if needs_instance:
            p.add_argument("--q", type=int)
            p.add_argument("--psi", type=int)
        p.add_argument("--format", choices=("json", "csv", "md"))
        p.add_argument("--output")
        p.add_argument("--figures", action="store_true", default=None)
        p.add_argument("--jobs", type=int)
        p.add_argument("--cost-cap", type=int, dest="cost_cap")

    p = sub.add_parser("predict", help="predicted factorization table")
    common(p)

    p = sub.add_parser("verify-rep", help="representation-theory checks")
    common(p)

    p = sub.add_parser("count", help="exact twisted point counts")
    common(p, needs_instance=True)
    p.add_argument("--r", type=int)
    p.add_argument("--twist", help="comma-separated exponents t1,...,tn")
    p.add_argument("--sigma", help="permutation in 1-based cycle notation, "
                                   "e.g. '(1,3)(2,4)'")

    p = sub.add_parser("zeta", help="predictions, extracted factors, checks")
    common(p, needs_instance=True)
    p.add_argument("--orbit", help="comma-separated class a1,...,an")
    p.add_argument("--mode", choices=("predict", "extract", "check"))

    p = sub.add_parser("check", help="run a named verification suite")
    common(p)
    p.add_argument("--suite", choices=("acceptance",))
    p.add_argument("--only", help="run a single named criterion")
    return parser


def _merge_config(args) -> RunConfig:
    file_values = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_values = json.load(fh)
        if not isinstance(file_values, dict):
            raise InvalidInputError("--config must hold a JSON object")
    cfg = RunConfig(command=args.command)
    for key in vars(cfg):
        if key == "command":
            continue
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(cfg, key, flag)
        elif key in file_values:
            setattr(cfg, key, file_values[key])
    return cfg


def _parse_sigma(text: str | None, n: int):
    if not text:
        return tuple(range(n))
    perm = list(range(n))
    body = text.replace(" ", "")
    if not body.startswith("("):
        raise InvalidInputError("sigma must use cycle notation like (1,3)(2,4)")
    for cyc in body.strip(")").split(")"):
        entries = [int(x) - 1 for x in cyc.lstrip("(").split(",") if x]
        if any(not 0 <= e < n for e in entries) or len(set(entries)) != len(entries):
            raise InvalidInputError(f"bad cycle {cyc} for n={n}")
        for a, b in zip(entries, entries[1:] + entries[:1]):
            perm[a] = b
    return tuple(perm)


def _parse_ints(text: str | None, n: int, what: str):
    if text is None:
        return [0] * n
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"bad {what}: {text}") from exc
    if len(vals) != n:
        raise InvalidInputError(f"{what} must have {n} entries")
    return vals


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        print(f"wrote {cfg.output}")
        if cfg.figures:
            _figures(cfg, payload)
    else:
        sys.stdout.write(text)


def _figures(cfg, payload):
    from . import report as report_mod
    base, _ = os.path.splitext(cfg.output)
    if "instance" in payload:
        if payload.get("factors"):
            path = base + ".roots.png"
            report_mod.roots_figure(payload, path)
            print(f"wrote {path}")
        pred_path = base + ".predictions.png"
        report_mod.prediction_figure(payload["predictions"], pred_path)
        print(f"wrote {pred_path}")
    else:
        path = base + ".png"
        report_mod.prediction_figure(payload, path)
        print(f"wrote {path}")


def _with_config(cfg: RunConfig, payload: dict) -> dict:
    out = dict(payload)
    out["config"] = asdict(cfg)
    return out


def _render(cfg, payload) -> str:
    from . import report as report_mod
    if cfg.format == "json":
        return json.dumps(_with_config(cfg, payload), indent=2,
                          sort_keys=True, default=str) + "\n"
    text = report_mod.render(payload, cfg.format)
    header = "# config: " + json.dumps(asdict(cfg), sort_keys=True) + "\n"
    return header + text


def cmd_predict(cfg: RunConfig) -> int:
    from .chars import predict_report
    if cfg.n is None:
        raise InvalidInputError("predict requires --n")
    payload = predict_report(cfg.n)
    _emit(cfg, payload, _render(cfg, payload))
    return EXIT_OK


def cmd_verify_rep(cfg: RunConfig) -> int:
    from .acceptance import rep_checks
    n = cfg.n if cfg.n is not None else 4
    results = rep_checks(n)
    payload = {"n": n, "checks": results}
    text = json.dumps(_with_config(cfg, payload), indent=2, sort_keys=True,
                      default=str) + "\n"
    _emit(cfg, payload, text)
    return EXIT_OK if all(c["ok"] for c in results) else EXIT_CHECK_FAILED


def cmd_count(cfg: RunConfig) -> int:
    from .counting import DworkInstance, fixed_count_general, t_trace
    from .reptheory import GroupElement
    for field_name in ("n", "q", "psi"):
        if getattr(cfg, field_name) is None:
            raise InvalidInputError(f"count requires --{field_name}")
    inst = DworkInstance(cfg.n, cfg.q, cfg.psi)
    twist = _parse_ints(cfg.twist, cfg.n, "twist")
    sigma = _parse_sigma(cfg.sigma, cfg.n)
    g = GroupElement.make(cfg.n, twist, sigma)
    fix = fixed_count_general(inst, g, cfg.r, cost_cap=cfg.cost_cap)
    payload = {
        "n": cfg.n, "q": cfg.q, "psi": cfg.psi, "r": cfg.r,
        "twist": list(g.zeta), "sigma": list(g.sigma),
        "fixed_points": fix, "trace": t_trace(inst, fix, cfg.r),
    }
    text = json.dumps(_with_config(cfg, payload), indent=2, sort_keys=True) + "\n"
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_zeta(cfg: RunConfig) -> int:
    from .counting import DworkInstance
    from .zeta import zeta_report
    for field_name in ("n", "q", "psi"):
        if getattr(cfg, field_name) is None:
            raise InvalidInputError(f"zeta requires --{field_name}")
    inst = DworkInstance(cfg.n, cfg.q, cfg.psi)
    orbit = None
    if cfg.orbit:
        orbit = _parse_ints(cfg.orbit, cfg.n, "orbit")
    payload = zeta_report(inst, mode=cfg.mode, orbit_filter=orbit,
                          cost_cap=cfg.cost_cap, jobs=cfg.jobs)
    _emit(cfg, payload, _render(cfg, payload))
    if cfg.mode == "check":
        ok = all(c["equal"] for c in payload["consistency"].values())
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    from .acceptance import run_suite
    names = {cfg.only} if cfg.only else None
    failures = run_suite(names=names)
    return EXIT_OK if not failures else EXIT_CHECK_FAILED


COMMANDS = {
    "predict": cmd_predict,
    "verify-rep": cmd_verify_rep,
    "count": cmd_count,
    "zeta": cmd_zeta,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_INVALID
    try:
        cfg = _merge_config(args)
        if cfg.cost_cap is None and os.environ.get("DWORKZETA_COST_CAP"):
            cfg.cost_cap = int(os.environ["DWORKZETA_COST_CAP"])
        return COMMANDS[cfg.command](cfg)
    except InvalidInputError as exc:
        _error("invalid-input", exc)
        return EXIT_INVALID
    except CostCapError as exc:
        _error("cost-cap", exc, parameter=exc.parameter)
        return EXIT_COST_CAP
    except CheckFailureError as exc:
        _error("check-failure", exc)
        return EXIT_CHECK_FAILED
    except DworkZetaError as exc:
        _error("error", exc)
        return EXIT_INVALID


def _error(kind, exc, **extra):
    obj = {"error": {"type": kind, "message": str(exc), **extra}}
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
