"""Strict JSON configs and code recipes.

Every config is a JSON object with ``"schema": 1``; unknown keys are
rejected.  Codes are described by recipes (family + parameters) so that
rebuilt objects keep their algebraic structure (e.g. GRS decoders).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

SCHEMA = 1


class ConfigError(ValueError):
    pass


def load_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    try:
        cfg = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: invalid JSON ({e})") from e
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be an object")
    if cfg.get("schema") != SCHEMA:
        raise ConfigError(f"{path}: expected \"schema\": {SCHEMA}")
    return cfg


def _reject_constant(name):
    raise ConfigError(f"non-finite constant {name} is not allowed")


def check_keys(cfg: dict, required: set, optional: set = frozenset(), where: str = "config") -> None:
    if not isinstance(cfg, dict):
        raise ConfigError(f"{where} must be an object")
    missing = required - set(cfg)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")
    extra = set(cfg) - required - set(optional)
    if extra:
        raise ConfigError(f"{where}: unknown keys {sorted(extra)}")


def fraction(v, where: str = "value") -> Fraction:
    try:
        if isinstance(v, float):
            return Fraction(v).limit_denominator(10**6)
        return Fraction(v)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"{where}: not a number ({v!r})") from e


def integer(v, where: str = "value") -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{where}: expected an integer, got {v!r}")
    return v


# ---------------------------------------------------------------------------
# code recipes

_CODE_FAMILIES = {
    "steane": (set(), set()),
    "css422": (set(), set()),
    "qgrs": ({"p", "n", "rate"}, {"m"}),
    "fqrs": ({"p", "n", "rate", "fold"}, {"m"}),
    "random_css": ({"p", "n", "k", "seed"}, {"m"}),
    "wozencraft": ({"p", "r", "s", "seed"}, {"m"}),
    "matrix": ({"p", "n", "c1", "c2"}, {"m", "ext", "x_logicals"}),
    "file": ({"path"}, set()),
}


def build_code(cfg: dict, base: Path | None = None):
    """CSSCode from a recipe ``{"family": ..., ...}``."""
    from .classical import LinearCode
    from .css import CSSCode, build_fqrs, css_422, quantum_grs, sample_qwozencraft, sample_random_css, steane_code
    from .gf import field

    if not isinstance(cfg, dict) or "family" not in cfg:
        raise ConfigError("code recipe needs a \"family\"")
    fam = cfg["family"]
    if fam not in _CODE_FAMILIES:
        raise ConfigError(f"unknown code family {fam!r} (choose from {sorted(_CODE_FAMILIES)})")
    req, opt = _CODE_FAMILIES[fam]
    check_keys(cfg, req | {"family"}, opt | {"name"}, where=f"code[{fam}]")
    try:
        if fam == "steane":
            return steane_code()
        if fam == "css422":
            return css_422()
        if fam == "file":
            p = Path(cfg["path"])
            if base is not None and not p.is_absolute():
                p = base / p
            return load_code(p)
        F = field(integer(cfg["p"], "p"), integer(cfg.get("m", 1), "m"))
        if fam == "qgrs":
            return quantum_grs(F, integer(cfg["n"], "n"), fraction(cfg["rate"], "rate"))
        if fam == "fqrs":
            return build_fqrs(integer(cfg["n"], "n"), fraction(cfg["rate"], "rate"), integer(cfg["fold"], "fold"), F)
        if fam == "random_css":
            return sample_random_css(integer(cfg["n"], "n"), integer(cfg["k"], "k"), F, np.random.default_rng(integer(cfg["seed"], "seed")))
        if fam == "wozencraft":
            return sample_qwozencraft(integer(cfg["r"], "r"), integer(cfg["s"], "s"), F, np.random.default_rng(integer(cfg["seed"], "seed")))
        ext = integer(cfg.get("ext", 1), "ext")
        n = integer(cfg["n"], "n")
        c1 = LinearCode(F, np.array(cfg["c1"], dtype=np.int64).reshape(-1, n * ext), n, ext)
        c2 = LinearCode(F, np.array(cfg["c2"], dtype=np.int64).reshape(-1, n * ext), n, ext)
        xl = cfg.get("x_logicals")
        return CSSCode(c1, c2, name=cfg.get("name", ""), x_logicals=None if xl is None else np.array(xl, dtype=np.int64))
    except ConfigError:
        raise
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"code[{fam}]: {e}") from e


def code_document(css, recipe: dict | None = None) -> dict:
    """Serializable code file: the recipe (if any) and explicit matrices."""
    doc = {
        "schema": SCHEMA,
        "kind": "css",
        "name": css.name,
        "field": {"p": css.spec.p, "m": css.spec.m},
        "n": css.n,
        "ext": css.ext,
        "k": str(css.k),
        "c1": css.c1.generator.tolist(),
        "c2": css.c2.generator.tolist(),
        "x_logicals": css.enc1.tolist(),
    }
    if recipe is not None:
        doc["recipe"] = recipe
    return doc


def load_code(path):
    from .classical import LinearCode
    from .css import CSSCode
    from .gf import field

    doc = load_json(path)
    check_keys(doc, {"schema", "kind", "field", "n", "ext", "c1", "c2"}, {"name", "k", "x_logicals", "recipe"}, where=str(path))
    if doc["kind"] != "css":
        raise ConfigError(f"{path}: unsupported code kind {doc['kind']!r}")
    if "recipe" in doc:
        return build_code(doc["recipe"], Path(path).parent)
    try:
        F = field(int(doc["field"]["p"]), int(doc["field"].get("m", 1)))
        n, ext = int(doc["n"]), int(doc["ext"])
        c1 = LinearCode(F, np.array(doc["c1"], dtype=np.int64).reshape(-1, n * ext), n, ext)
        c2 = LinearCode(F, np.array(doc["c2"], dtype=np.int64).reshape(-1, n * ext), n, ext)
        xl = doc.get("x_logicals")
        return CSSCode(c1, c2, name=doc.get("name", ""), x_logicals=None if xl is None else np.array(xl, dtype=np.int64))
    except (ValueError, KeyError, TypeError) as e:
        raise ConfigError(f"{path}: {e}") from e


# ---------------------------------------------------------------------------
# graphs, PTC, RSS, adversary


def build_graph(cfg: dict):
    from .ael import BipartiteGraph, build_expander, complete_graph, matching_graph, random_regular

    fam = cfg.get("family") if isinstance(cfg, dict) else None
    if fam == "complete":
        check_keys(cfg, {"family", "n"}, where="graph")
        return complete_graph(integer(cfg["n"], "n"))
    if fam == "matching":
        check_keys(cfg, {"family", "n"}, where="graph")
        return matching_graph(integer(cfg["n"], "n"))
    if fam == "random_regular":
        check_keys(cfg, {"family", "n", "r", "seed"}, where="graph")
        return random_regular(integer(cfg["n"], "n"), integer(cfg["r"], "r"), np.random.default_rng(integer(cfg["seed"], "seed")))
    if fam == "expander":
        check_keys(cfg, {"family", "n", "r", "eps", "seed"}, {"retries"}, where="graph")
        try:
            G, _ = build_expander(integer(cfg["n"], "n"), integer(cfg["r"], "r"), float(fraction(cfg["eps"], "eps")),
                                  seed=integer(cfg["seed"], "seed"), retries=integer(cfg.get("retries", 200), "retries"))
        except RuntimeError as e:
            raise ConfigError(f"graph: {e}") from e
        return G
    if fam == "edges":
        check_keys(cfg, {"family", "n", "r", "adjacency"}, {"note"}, where="graph")
        try:
            return BipartiteGraph.from_config({k: cfg[k] for k in cfg if k != "family"})
        except (ValueError, KeyError) as e:
            raise ConfigError(f"graph: {e}") from e
    raise ConfigError(f"unknown graph family {fam!r}")


def build_ptc_from(cfg: dict):
    from .aqecc import build_ptc
    from .gf import field

    check_keys(cfg, {"p", "lam", "n_ptc"}, {"m", "construction", "seed", "retries"}, where="ptc")
    try:
        return build_ptc(
            field(integer(cfg["p"], "p"), integer(cfg.get("m", 1), "m")),
            integer(cfg["lam"], "lam"),
            integer(cfg["n_ptc"], "n_ptc"),
            construction=cfg.get("construction", "explicit"),
            seed=integer(cfg.get("seed", 0), "seed"),
            retries=integer(cfg.get("retries", 50), "retries"),
        )
    except ValueError as e:
        raise ConfigError(f"ptc: {e}") from e


def build_rss(cfg: dict, n: int | None = None):
    from .aqecc import RSSScheme

    check_keys(cfg, {"a", "d"}, {"n", "s"}, where="rss")
    nn = integer(cfg.get("n", n), "n") if cfg.get("n", n) is not None else None
    if nn is None:
        raise ConfigError("rss: number of shares unknown")
    try:
        return RSSScheme(integer(cfg["a"], "a"), nn, integer(cfg["d"], "d"), integer(cfg.get("s", 1), "s"))
    except ValueError as e:
        raise ConfigError(f"rss: {e}") from e


def build_adversary(cfg: dict):
    from .sim import AdversaryModel

    check_keys(cfg, {"weight"}, {"support", "error", "fixed_support"}, where="adversary")
    try:
        return AdversaryModel(
            integer(cfg["weight"], "weight"),
            cfg.get("support", "random-subset"),
            cfg.get("error", "uniform-pauli-on-support"),
            tuple(int(i) for i in cfg.get("fixed_support", ())),
        )
    except ValueError as e:
        raise ConfigError(f"adversary: {e}") from e
