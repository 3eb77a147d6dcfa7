"""Configuration, deterministic target generation, result serialization, and
the command drivers behind the CLI.

CSV is the canonical artifact (fixed column order, floats with 12 significant
digits, exact integers as integers); JSON mirrors it.  Identical config and
seed produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from typing import Optional

from .fqpoly import (Poly, enumerate_monic, factorize, mangoldt_poly,
                     splitmix64)
from .laurent import Laurent
from .quadratic import IdealTable, QuadField, principality_spot_check
from .diophantine import (Target, dirichlet_search, exponent_scan,
                          omega_direct, omega_poisson, pnt_sum, screen_target,
                          seeded_target)
from .vaughan import VaughanParams, type_sums, vaughan_terms_ideal, \
    vaughan_terms_poly

__all__ = [
    "ConfigError",
    "ScaleCapError",
    "RunConfig",
    "parse_config",
    "build_field",
    "make_target",
    "emit",
    "run_command",
    "EXIT_OK",
    "EXIT_IDENTITY",
    "EXIT_CONFIG",
    "EXIT_SCALE",
]

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_CONFIG = 2
EXIT_SCALE = 3

COMMANDS = ("selftest", "factor", "unit", "vaughan-check", "poisson-check",
            "pnt", "dirichlet", "scan", "typesums")

# commands that require d to define a valid real quadratic field
FIELD_COMMANDS = frozenset(COMMANDS) - {"factor"}


class ConfigError(ValueError):
    """Invalid configuration (exit code 2)."""


class ScaleCapError(RuntimeError):
    """Requested enumeration exceeds the configured scale cap (exit code 3)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int = 3
    d: Poly = None  # type: ignore[assignment]
    tail_exp: Optional[int] = None   # None: the field default
    seed: int = 1
    nmin: int = 1
    nmax: int = 4
    delta_exp: Optional[int] = None  # None: scan picks per N; others use -1
    alpha: int = 3
    beta: int = 3
    c_exp: Optional[int] = None      # None: deg(d)/2 + abs_exp(u)
    max_norm_exp: int = 4
    epsilon: float = 0.01
    samples: int = 20
    x1: Optional[str] = None         # explicit target, Laurent text format
    x2: Optional[str] = None
    fmt: str = "csv"
    out: Optional[str] = None
    scale_cap: int = 1_000_000


def parse_config(command: str, flags: dict) -> RunConfig:
    """Validated RunConfig from a flag dictionary (unknown keys rejected;
    config-file contents pass through the same path)."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    known = {f.name for f in RunConfig.__dataclass_fields__.values()}
    known.discard("command")
    extra = set(flags) - known
    if extra:
        raise ConfigError(f"unknown config keys: {sorted(extra)}")
    cfg = RunConfig(command=command)
    clean = {}
    for k, v in flags.items():
        if v is None:
            continue
        if k == "d":
            try:
                v = Poly.parse(int(flags.get("q") or cfg.q), v) \
                    if isinstance(v, str) else v
            except Exception as exc:
                raise ConfigError(f"bad polynomial text for d: {exc}")
        clean[k] = v
    cfg = replace(cfg, **clean)
    if cfg.q < 3 or cfg.q % 2 == 0:
        raise ConfigError("q must be an odd prime >= 3")
    if cfg.d is None:
        cfg = replace(cfg, d=Poly.parse(cfg.q, "1,0,1"))
    if cfg.d.q != cfg.q:
        raise ConfigError("d parsed over a different q")
    if cfg.fmt not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if cfg.nmin < 1 or cfg.nmax < cfg.nmin:
        raise ConfigError("need 1 <= nmin <= nmax")
    if cfg.scale_cap < 1:
        raise ConfigError("scale cap must be positive")
    if command in FIELD_COMMANDS:
        try:
            build_field(cfg)
        except ConfigError:
            raise
        except Exception as exc:
            raise ConfigError(f"d does not define a valid field: {exc}")
    if command == "typesums":
        n = cfg.nmax
        if not (cfg.alpha >= 1 and cfg.beta >= 1
                and cfg.alpha * cfg.beta < cfg.q**n):
            raise ConfigError(
                "typesums requires alpha, beta >= 1 with alpha*beta < q^N "
                "(the identity's window)")
    return cfg


_FIELD_CACHE: dict = {}


def build_field(cfg: RunConfig) -> QuadField:
    key = (cfg.q, cfg.d.coeffs, cfg.tail_exp)
    if key not in _FIELD_CACHE:
        try:
            if cfg.tail_exp is not None:
                _FIELD_CACHE[key] = QuadField(cfg.q, cfg.d,
                                              tail_exp=cfg.tail_exp)
            else:
                _FIELD_CACHE[key] = QuadField(cfg.q, cfg.d)
        except (ValueError, ArithmeticError) as exc:
            raise ConfigError(str(exc))
    return _FIELD_CACHE[key]


def make_target(cfg: RunConfig, field: QuadField) -> Target:
    """Deterministic target: explicit x1/x2 when given (treated as exact
    values of the written finite sums), otherwise seeded; screened against
    exact small-height hits."""
    if (cfg.x1 is None) != (cfg.x2 is None):
        raise ConfigError("x1 and x2 must be given together")
    if cfg.x1 is not None:
        x1 = Laurent.parse(cfg.q, cfg.x1)
        x2 = Laurent.parse(cfg.q, cfg.x2)
        tgt = Target(Laurent(cfg.q, x1.lo, x1.coeffs, None),
                     Laurent(cfg.q, x2.lo, x2.coeffs, None),
                     provenance="explicit")
        if not screen_target(field, tgt):
            raise ConfigError("target rejected: exact sigma(K) hit at small "
                              "height (or x1 == x2)")
        return tgt
    seed = cfg.seed
    for retry in range(16):
        tgt = seeded_target(field, seed)
        if screen_target(field, tgt):
            if retry:
                tgt = Target(tgt.x1, tgt.x2,
                             provenance=f"{tgt.provenance}+retry{retry}")
            return tgt
        seed = splitmix64(seed)[1]
    raise ConfigError("no screenable target found from this seed")


# -- serialization ----------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def emit(columns: list[str], rows: list[dict], fmt: str,
         out: Optional[str]) -> str:
    """Serialize and (optionally) persist; returns the artifact text."""
    for row in rows:
        if set(row) != set(columns):
            raise ValueError("non-homogeneous rows")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row[c]) for c in columns])
        text = buf.getvalue()
    else:
        clean = []
        for row in rows:
            obj = {}
            for c in columns:
                v = row[c]
                obj[c] = float(_cell(v)) if isinstance(v, float) else v
            clean.append(obj)
        text = json.dumps(clean, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    return text


def _check_scale(cfg: RunConfig, exponent: int, what: str) -> None:
    if cfg.q**exponent > cfg.scale_cap:
        raise ScaleCapError(
            f"{what}: q^{exponent} = {cfg.q**exponent} exceeds the scale cap "
            f"{cfg.scale_cap} (raise --scale-cap to override)")


# -- command drivers ---------------------------------------------------------------


@dataclass
class CommandResult:
    columns: list[str]
    rows: list[dict]
    summary: str
    exit_code: int = EXIT_OK


def cmd_factor(cfg: RunConfig) -> CommandResult:
    unit, factors = factorize(cfg.d)
    rows = [{"factor": p.format(), "exponent": e, "degree": p.degree}
            for p, e in factors]
    cols = ["factor", "exponent", "degree"]
    summary = (f"factor: {cfg.d.format()} = {unit} * "
               + " * ".join(f"({p.format()})^{e}" for p, e in factors)
               + f" ({len(factors)} distinct)")
    return CommandResult(cols, rows, summary)


def cmd_unit(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    u = field.unit
    rows = [{
        "u_a": u.u.a.format(),
        "u_b": u.u.b.format(),
        "abs_exp": u.abs_exp,
        "norm_unit": u.norm_unit,
        "certified": u.certified,
    }]
    cols = ["u_a", "u_b", "abs_exp", "norm_unit", "certified"]
    summary = (f"unit: u = ({u.u.a.format()}) + ({u.u.b.format()}) sqrt(d), "
               f"|u| = {cfg.q}^{u.abs_exp}, Norm(u) = {u.norm_unit}, "
               f"certified={u.certified}")
    return CommandResult(cols, rows, summary)


def cmd_vaughan_check(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    rows = []
    poly_checks = poly_fails = 0
    max_deg = min(cfg.nmax, 5)
    for deg in range(1, max_deg + 1):
        for f in enumerate_monic(cfg.q, deg):
            lam = mangoldt_poly(f)
            for alpha in range(0, 5):
                for beta in range(0, deg):
                    a1, a2, a3 = vaughan_terms_poly(
                        f, VaughanParams(alpha, beta))
                    poly_checks += 1
                    if a1 + a2 + a3 != lam:
                        poly_fails += 1
    _check_scale(cfg, cfg.max_norm_exp, "vaughan-check ideal table")
    table = IdealTable(field, cfg.max_norm_exp)
    ideal_checks = ideal_fails = 0
    grid = sorted({1, 2, cfg.alpha, cfg.beta, cfg.q, cfg.q**2})
    for entry in table.entries:
        if entry.norm_exp == 0:
            continue
        lam = table.mangoldt(entry)
        norm = cfg.q**entry.norm_exp
        for alpha in grid:
            for beta in grid:
                if not (alpha >= 1 and 1 <= beta < norm):
                    continue
                a1, a2, a3 = vaughan_terms_ideal(
                    table, entry, VaughanParams(alpha, beta))
                ideal_checks += 1
                if a1 + a2 + a3 != lam:
                    ideal_fails += 1
    rows.append({"kind": "poly", "checks": poly_checks, "failures": poly_fails})
    rows.append({"kind": "ideal", "checks": ideal_checks,
                 "failures": ideal_fails})
    fails = poly_fails + ideal_fails
    summary = (f"vaughan-check: poly {poly_checks} checks "
               f"({poly_fails} failures), ideal {ideal_checks} checks "
               f"({ideal_fails} failures)")
    return CommandResult(["kind", "checks", "failures"], rows, summary,
                         EXIT_IDENTITY if fails else EXIT_OK)


def cmd_poisson_check(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    _check_scale(cfg, cfg.max_norm_exp, "poisson-check ideal table")
    table = IdealTable(field, cfg.max_norm_exp)
    entries = [e for e in table.entries if e.norm_exp >= 1]
    rows = []
    fails = 0
    state = cfg.seed
    for i in range(cfg.samples):
        state, r = splitmix64(state)
        entry = entries[r % len(entries)]
        state, r = splitmix64(state)
        tgt = seeded_target(field, r)
        state, r = splitmix64(state)
        de = -(r % 3)
        N = entry.norm_exp
        w_direct = omega_direct(field, entry.rep.gen, tgt, de, N)
        w_poisson = omega_poisson(field, entry.rep.gen, tgt, de, N)
        ok = w_direct == w_poisson
        fails += not ok
        rows.append({"sample": i, "norm_exp": N, "delta_exp": de,
                     "omega_direct": w_direct, "omega_poisson": w_poisson,
                     "match": ok})
    cols = ["sample", "norm_exp", "delta_exp", "omega_direct",
            "omega_poisson", "match"]
    summary = (f"poisson-check: {cfg.samples - fails}/{cfg.samples} exact")
    return CommandResult(cols, rows, summary,
                         EXIT_IDENTITY if fails else EXIT_OK)


def cmd_pnt(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    _check_scale(cfg, cfg.nmax, "pnt")
    rows = []
    worst = 0
    for N in range(cfg.nmin, cfg.nmax + 1):
        s = pnt_sum(field, N)
        dev = s - cfg.q**N
        worst = max(worst, abs(dev))
        rows.append({"N": N, "lambda_sum": s, "q_pow_N": cfg.q**N,
                     "deviation": dev})
    cols = ["N", "lambda_sum", "q_pow_N", "deviation"]
    summary = (f"pnt: N in [{cfg.nmin},{cfg.nmax}], worst |deviation| = "
               f"{worst}")
    return CommandResult(cols, rows, summary)


def cmd_dirichlet(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    _check_scale(cfg, cfg.max_norm_exp, "dirichlet")
    target = make_target(cfg, field)
    c_exp = cfg.c_exp if cfg.c_exp is not None \
        else field.m + field.unit.abs_exp
    recs = dirichlet_search(field, target, cfg.max_norm_exp, c_exp)
    rows = []
    for r in recs:
        rows.append({
            "p_a": r.p.a.format(), "p_b": r.p.b.format(),
            "v_a": r.v.a.format(), "v_b": r.v.b.format(),
            "norm_exp": r.v.norm_exp,
            "err1_exp": r.err1_exp, "err2_exp": r.err2_exp,
            "quality_exp": r.quality_exp,
        })
    cols = ["p_a", "p_b", "v_a", "v_b", "norm_exp", "err1_exp", "err2_exp",
            "quality_exp"]
    best = recs[0].quality_exp if recs else None
    summary = (f"dirichlet: {len(recs)} records within C_exp={c_exp} up to "
               f"norm q^{cfg.max_norm_exp}; best quality_exp = "
               f"{'exact' if recs and best is None else best}")
    return CommandResult(cols, rows, summary)


def cmd_scan(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    _check_scale(cfg, cfg.nmax, "scan")
    target = make_target(cfg, field)
    n_values = list(range(cfg.nmin, cfg.nmax + 1))
    rows_raw = exponent_scan(field, target, n_values, epsilon=cfg.epsilon,
                             fallback_exp=cfg.delta_exp)
    rows = []
    positive = 0
    for r in rows_raw:
        positive += r.tilde_t_value > 0
        frac = Fraction(r.t_value)
        rows.append({
            "N": r.N,
            "delta_exp": r.delta_exp,
            "lambda_sum": pnt_sum(field, r.N),
            "tildeT_num": r.tilde_t_value,
            "tildeT_den": 1,
            "T_num": frac.numerator,
            "T_den": frac.denominator,
            "prime_power_part": r.prime_power_part,
            "ratio": r.ratio,
            "witness_norm_exp": r.witness.v.norm_exp if r.witness else None,
            "achieved_theta": r.achieved_theta,
            "outside_theorem_range": "outside-theorem-range" in r.label,
            "label": r.label,
        })
    cols = ["N", "delta_exp", "lambda_sum", "tildeT_num", "tildeT_den",
            "T_num", "T_den", "prime_power_part", "ratio",
            "witness_norm_exp", "achieved_theta", "outside_theorem_range",
            "label"]
    summary = (f"scan: {len(rows)} rows, tilde-T positive in "
               f"{positive}/{len(rows)}")
    return CommandResult(cols, rows, summary)


def cmd_typesums(cfg: RunConfig) -> CommandResult:
    field = build_field(cfg)
    N = cfg.nmax
    _check_scale(cfg, N, "typesums")
    target = make_target(cfg, field)
    table = IdealTable(field, N)
    de = cfg.delta_exp if cfg.delta_exp is not None else -1
    res = type_sums(field, table, N, VaughanParams(cfg.alpha, cfg.beta),
                    target, de)
    exact = res.decomposition_exact
    rows = [{
        "N": N, "alpha": cfg.alpha, "beta": cfg.beta, "delta_exp": de,
        "t_one": res.t_one, "t_two": res.t_two,
        "scalar_exp": res.scalar_exp,
        "decomposition_exact": exact,
        "n_f_evaluations": res.n_f_evaluations,
    }]
    cols = ["N", "alpha", "beta", "delta_exp", "t_one", "t_two",
            "scalar_exp", "decomposition_exact", "n_f_evaluations"]
    summary = (f"typesums: N={N} alpha={cfg.alpha} beta={cfg.beta} "
               f"T_I={res.t_one:.6g} T_II={res.t_two:.6g} "
               f"decomposition_exact={exact}")
    return CommandResult(cols, rows, summary,
                         EXIT_OK if exact else EXIT_IDENTITY)


def cmd_selftest(cfg: RunConfig) -> CommandResult:
    from .selftest import run_all
    results = run_all()
    rows = [{"criterion": r.number, "name": r.name, "passed": r.passed,
             "detail": r.detail, "seconds": r.seconds} for r in results]
    cols = ["criterion", "name", "passed", "detail", "seconds"]
    n_fail = sum(not r.passed for r in results)
    summary = (f"selftest: {len(results) - n_fail}/{len(results)} criteria "
               f"passed")
    return CommandResult(cols, rows, summary,
                         EXIT_IDENTITY if n_fail else EXIT_OK)


_DRIVERS = {
    "selftest": cmd_selftest,
    "factor": cmd_factor,
    "unit": cmd_unit,
    "vaughan-check": cmd_vaughan_check,
    "poisson-check": cmd_poisson_check,
    "pnt": cmd_pnt,
    "dirichlet": cmd_dirichlet,
    "scan": cmd_scan,
    "typesums": cmd_typesums,
}


def run_command(cfg: RunConfig) -> tuple[int, str, str]:
    """(exit code, artifact text, one-line summary)."""
    res = _DRIVERS[cfg.command](cfg)
    text = emit(res.columns, res.rows, cfg.fmt, cfg.out)
    return res.exit_code, text, res.summary
