"""Command line interface: construct, verify, decode, simulate, plan, bound.

Exit codes: 0 ok, 1 verification failure, 2 config error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .config import (
    SCHEMA,
    ConfigError,
    build_adversary,
    build_code,
    build_graph,
    build_ptc_from,
    build_rss,
    check_keys,
    code_document,
    fraction,
    integer,
    load_code,
    load_json,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"fraction": f"{v.numerator}/{v.denominator}", "decimal": float(v)}
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _flat_rows(d: dict, prefix: str = "") -> list:
    rows = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and set(v) != {"fraction", "decimal"}:
            rows.extend(_flat_rows(v, key + "."))
        elif isinstance(v, dict):
            rows.append((key, v["fraction"]))
        elif isinstance(v, list):
            rows.append((key, json.dumps(v)))
        else:
            rows.append((key, v))
    return rows


def emit(args, result: dict, table=None) -> None:
    """Print (or write under --out) a result dict and optional trial table."""
    res = _jsonable(result)
    if args.format == "json":
        text = json.dumps(res, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flat_rows(res))
        text = buf.getvalue()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.command}.{args.format}").write_text(text)
        if table is not None:
            (out / "trials.csv").write_text(table.to_csv())
            (out / "summary.json").write_text(table.to_json() + "\n")
    else:
        sys.stdout.write(text)
        if table is not None and args.format == "csv":
            sys.stdout.write(table.to_csv())


# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    cfg = load_json(args.config)
    check_keys(cfg, {"schema", "object"}, {"name", "code", "graph", "ptc"}, where=str(args.config))
    obj = cfg["object"]
    base = Path(args.config).parent
    name = cfg.get("name", obj)
    if obj == "code":
        css = build_code(cfg.get("code") or {}, base)
        doc = code_document(css, cfg["code"] if cfg["code"]["family"] not in ("file",) else None)
        target = Path(args.out or ".") / f"{name}.code"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(doc) + "\n")
        emit(_no_out(args), {"object": "code", "file": str(target), "n": css.n, "k": css.k, "q": css.spec.q, "ext": css.ext, "name": css.name})
        return EXIT_OK
    if obj == "graph":
        G = build_graph(cfg.get("graph") or {})
        doc = {"schema": SCHEMA, "kind": "graph", **G.to_config()}
        target = Path(args.out or ".") / f"{name}.graph"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(doc) + "\n")
        emit(_no_out(args), {"object": "graph", "file": str(target), "n": G.n, "r": G.r})
        return EXIT_OK
    if obj == "ptc":
        fam = build_ptc_from(cfg.get("ptc") or {})
        doc = {"schema": SCHEMA, "kind": "ptc", **fam.to_config()}
        target = Path(args.out or ".") / f"{name}.ptc"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(doc) + "\n")
        emit(_no_out(args), {"object": "ptc", "file": str(target), **fam.to_config(), "ok": fam.ok})
        return EXIT_OK if fam.ok else EXIT_FAIL
    raise ConfigError(f"unknown object {obj!r} (code, graph, ptc)")


def _no_out(args):
    ns = argparse.Namespace(**vars(args))
    ns.out = None
    return ns


def _load_graph(path):
    from .ael import BipartiteGraph

    doc = load_json(path)
    check_keys(doc, {"schema", "kind", "n", "r", "adjacency"}, {"note"}, where=str(path))
    try:
        return BipartiteGraph.from_config({k: doc[k] for k in ("n", "r", "adjacency", "note") if k in doc})
    except (ValueError, KeyError) as e:
        raise ConfigError(f"{path}: {e}") from e


def cmd_verify(args) -> int:
    check = args.check
    if check == "distance":
        css = _need_code(args)
        d = css.distance()
        ok = args.expect is None or d == args.expect
        emit(args, {"check": "distance", "distance": d, "n": css.n, "k": css.k, "expected": args.expect, "ok": ok})
        return EXIT_OK if ok else EXIT_FAIL
    if check == "qld":
        from .css import verify_qld

        css = _need_code(args)
        tau = fraction(args.tau or "0", "tau")
        rep = verify_qld(css, tau, args.ell)
        emit(args, {"check": "qld", "radius": rep.radius, "max_list": rep.max_count, "ell": rep.ell, "ok": rep.ok})
        return EXIT_OK if rep.ok else EXIT_FAIL
    if check == "pseudorandom":
        from .ael import check_pseudorandom, spectral_certificate

        if not args.graph:
            raise ConfigError("--graph is required for the pseudorandom check")
        G = _load_graph(args.graph)
        eps = float(fraction(args.eps, "eps")) if args.eps is not None else 1.0
        ok, rep = check_pseudorandom(G, eps)
        emit(args, {"check": "pseudorandom", "eps_measured": rep.eps, "eps_target": eps, "exhaustive": rep.exhaustive,
                    "spectral": spectral_certificate(G), "ok": ok})
        return EXIT_OK if ok else EXIT_FAIL
    if check == "ptc-eps":
        if not args.ptc:
            raise ConfigError("--ptc is required for the ptc-eps check")
        cfg = load_json(args.ptc)
        cfg = {k: v for k, v in cfg.items() if k not in ("schema", "kind", "eps_target", "eps_measured") and v is not None}
        fam = build_ptc_from(cfg)
        emit(args, {"check": "ptc-eps", "eps_measured": fam.eps_measured, "eps_target": fam.eps_target, "ok": fam.ok})
        return EXIT_OK if fam.ok else EXIT_FAIL
    if check == "rss-privacy":
        from .aqecc import rss_key_part_is_verbatim, rss_privacy_check

        if not args.rss:
            raise ConfigError("--rss is required for the rss-privacy check")
        cfg = load_json(args.rss)
        check_keys(cfg, {"schema", "a", "d", "n"}, {"s"}, where=str(args.rss))
        scheme = build_rss({k: v for k, v in cfg.items() if k != "schema"})
        A = list(range(scheme.d))
        s0 = np.zeros(scheme.s, dtype=np.int64)
        s1 = np.ones(scheme.s, dtype=np.int64)
        ok = rss_privacy_check(scheme, s0, s1, A) and rss_key_part_is_verbatim(scheme, A)
        emit(args, {"check": "rss-privacy", "players": A, "ok": ok})
        return EXIT_OK if ok else EXIT_FAIL
    raise ConfigError(f"unknown check {check!r}")


def _need_code(args):
    if not args.code:
        raise ConfigError("--code is required")
    return load_code(args.code)


def cmd_decode(args) -> int:
    from .css import qld_decode

    css = _need_code(args)
    try:
        s = np.array([int(t) for t in args.syndrome.replace(",", " ").split()], dtype=np.int64)
    except ValueError as e:
        raise ConfigError(f"syndrome: {e}") from e
    if s.size != css.stab.r:
        raise ConfigError(f"syndrome needs {css.stab.r} F_p digits, got {s.size}")
    tau = fraction(args.tau, "tau")
    L = qld_decode(css, s % css.spec.p, tau, prune=True)
    emit(args, {"syndrome": s.tolist(), "tau": tau, "list_size": len(L.frames),
                "candidates": [f.to_text() for f in L.frames], "weights": list(L.min_weights)})
    return EXIT_OK


def cmd_plan(args) -> int:
    from .aqecc import plan_parameters

    try:
        plan = plan_parameters(fraction(args.rate, "rate"), fraction(args.gamma, "gamma"), n=args.n, c=args.c)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    out = plan.to_dict()
    emit(args, out)
    return EXIT_OK


def cmd_bound(args) -> int:
    from .aqecc import singleton_check

    res = singleton_check(args.n, fraction(args.k, "k"), args.q, fraction(args.delta, "delta"), float(fraction(args.eps, "eps")))
    emit(args, {"n": args.n, "k": args.k, "q": args.q, "d": res.d, "bound": res.bound, "slack": res.slack, "ok": res.ok})
    return EXIT_OK if res.ok else EXIT_FAIL


_SIM_KEYS = {
    "private": ({"qld", "ptc", "delta", "adversary"}, {"strict", "L"}),
    "aqecc": ({"qld", "ptc", "delta", "rss", "adversary"}, {"L"}),
    "ael": ({"outer", "inner", "graph", "adversary"}, {"mode", "alpha_in"}),
    "direct": ({"outer", "inner", "ptc", "graph", "delta_in", "adversary"}, {"mode"}),
}


def cmd_simulate(args) -> int:
    from . import aqecc, sim
    from .ael import build_ael

    cfg = load_json(args.config)
    pipe = cfg.get("pipeline")
    if pipe not in _SIM_KEYS:
        raise ConfigError(f"pipeline must be one of {sorted(_SIM_KEYS)}")
    req, opt = _SIM_KEYS[pipe]
    check_keys(cfg, req | {"schema", "pipeline", "trials"}, opt, where=str(args.config))
    trials = integer(cfg["trials"], "trials")
    if trials < 0:
        raise ConfigError("trials must be nonnegative")
    base = Path(args.config).parent
    adv = build_adversary(cfg["adversary"])
    try:
        if pipe in ("private", "aqecc"):
            qld = build_code(cfg["qld"], base)
            ptc = build_ptc_from(cfg["ptc"])
            L = cfg.get("L")
            pa = aqecc.PrivateAQECC(qld, ptc, fraction(cfg["delta"], "delta"), L=None if L is None else integer(L, "L"))
            if pipe == "private":
                table = sim.run_private_trials(pa, adv, trials, args.seed, strict=bool(cfg.get("strict", False)), threads=args.threads)
            else:
                scheme = build_rss(cfg["rss"], qld.n)
                table = sim.run_aqecc_trials(aqecc.build_aqecc(pa, scheme), adv, trials, args.seed, threads=args.threads)
        elif pipe == "ael":
            ael = build_ael(build_code(cfg["outer"], base), build_code(cfg["inner"], base), build_graph(cfg["graph"]), cfg.get("mode", "basic"))
            a_in = cfg.get("alpha_in")
            table = sim.run_ael_trials(ael, adv, trials, args.seed, None if a_in is None else float(fraction(a_in)), threads=args.threads)
        else:
            d = aqecc.build_direct_aqecc(build_code(cfg["outer"], base), build_code(cfg["inner"], base), build_ptc_from(cfg["ptc"]),
                                         build_graph(cfg["graph"]), fraction(cfg["delta_in"], "delta_in"), cfg.get("mode", "reducing"))
            table = sim.run_direct_trials(d, adv, trials, args.seed, threads=args.threads)
    except ConfigError:
        raise
    except ValueError as e:
        raise ConfigError(str(e)) from e
    summary = table.summary()
    if args.format == "json" or args.out:
        emit(args, summary, table)
    else:
        sys.stdout.write(table.to_csv())
    ok = table.within_bound()
    return EXIT_FAIL if ok is False else EXIT_OK


# ---------------------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="master seed")
    parser.add_argument("--threads", type=int, default=d(1), help="worker threads for trial runners")
    parser.add_argument("--out", default=d(None), help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=d("json"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="listqec", description="List-decodable quantum codes and approximate QECC toolkit")
    _globals(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _globals(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a code, graph or PTC family from a config")
    c.add_argument("config")

    v = sub.add_parser("verify", parents=[common], help="run an exhaustive oracle")
    v.add_argument("--check", required=True, choices=("distance", "qld", "pseudorandom", "ptc-eps", "rss-privacy"))
    v.add_argument("--code")
    v.add_argument("--graph")
    v.add_argument("--ptc")
    v.add_argument("--rss")
    v.add_argument("--tau")
    v.add_argument("--eps")
    v.add_argument("--ell", type=int)
    v.add_argument("--expect", type=int)

    d = sub.add_parser("decode", parents=[common], help="list decode one syndrome")
    d.add_argument("--code", required=True)
    d.add_argument("--syndrome", required=True, help="F_p digits, comma or space separated")
    d.add_argument("--tau", required=True)

    s = sub.add_parser("simulate", parents=[common], help="run a trial pipeline from a config")
    s.add_argument("config")

    pl = sub.add_parser("plan", parents=[common], help="parameter planner")
    pl.add_argument("--rate", required=True)
    pl.add_argument("--gamma", required=True)
    pl.add_argument("--n", type=int)
    pl.add_argument("--c", type=float, default=1.0)

    b = sub.add_parser("bound", parents=[common], help="robust quantum Singleton bound")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--k", required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--delta", required=True)
    b.add_argument("--eps", default="0")
    return p


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "decode": cmd_decode,
    "simulate": cmd_simulate,
    "plan": cmd_plan,
    "bound": cmd_bound,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
