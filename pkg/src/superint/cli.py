"""Command-line front end.

    superint spectrum      --n 3 --gamma 1 --p 0,0 --system parabolic --qmax 2
    superint eigenfunction --n 3 --p 0,0 --qn 1,0,0 --point 1,1/2,pi/5
    superint verify        --all --n 3 --gamma 1 --p 1/2,3 --seed 42
    superint commutators   --n 5

Exit codes: 0 ok, 1 a check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .model import (
    ModelError,
    ModelParams,
    degeneracy,
    eigenfunction,
    quantum_numbers,
    spectrum,
    states_up_to,
)
from .polycore import parse_rational
from .verify import MUTATIONS, default_suite, dumps, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    """Invalid configuration; reported before any computation."""


@dataclass
class Config:
    n: int = 3
    gamma: Fraction = Fraction(1)
    p: tuple = ()
    system: str = "parabolic"
    qmax: int = 2
    seed: int = 0
    tol: dict = field(default_factory=dict)
    format: str = "text"

    def params(self) -> ModelParams:
        return ModelParams(self.n, self.gamma, self.p)


_CONFIG_KEYS = {"n", "gamma", "p", "system", "qmax", "seed", "tol", "format"}


def _rational(text, what: str) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ConfigError(f"{what} must be a 'num/den' string, got {text!r}")
    try:
        return parse_rational(text.strip())
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _rational_list(value, what: str) -> tuple:
    if isinstance(value, str):
        items = [v for v in value.split(",") if v.strip()] if value.strip() else []
    else:
        items = list(value)
    return tuple(_rational(v, what) for v in items)


def build_config(args: argparse.Namespace) -> Config:
    """Merge the optional JSON config file with flags (flags win) and validate."""
    raw = {}
    if args.config:
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("n", "gamma", "p", "system", "qmax", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            raw[key] = v
    if args.json:
        raw["format"] = "json"
    tol = dict(raw.get("tol", {}))
    if args.tol is not None:
        tol["eigen"] = args.tol
        tol["commutator"] = args.tol

    n = raw.get("n", 3)
    if isinstance(n, str):
        if not n.strip().isdigit():
            raise ConfigError(f"n must be a natural number, got {n!r}")
        n = int(n)
    if not isinstance(n, int) or n < 2:
        raise ConfigError(f"n must be an integer >= 2, got {n!r}")
    gamma = _rational(raw.get("gamma", "1"), "gamma")
    p = _rational_list(raw["p"], "p") if "p" in raw else (Fraction(0),) * (n - 1)
    if len(p) != n - 1:
        raise ConfigError(f"p length must be n-1 = {n - 1}, got {len(p)}")
    system = raw.get("system") or ("parabolic" if n >= 3 else "spherical")
    if system not in ("parabolic", "spherical"):
        raise ConfigError(f"system must be parabolic or spherical, got {system!r}")
    if system == "parabolic" and n < 3:
        raise ConfigError("parabolic coordinates need n >= 3")
    qmax = int(raw.get("qmax", 2))
    seed = int(raw.get("seed", 0))
    if qmax < 0 or not 0 <= seed < 2 ** 64:
        raise ConfigError("qmax must be >= 0 and seed a 64-bit natural")
    for k, v in tol.items():
        if k not in ("eigen", "commutator"):
            raise ConfigError(f"unknown tolerance {k!r}")
        tol[k] = float(v)
    fmt = raw.get("format", "text")
    if fmt not in ("text", "json"):
        raise ConfigError(f"format must be text or json, got {fmt!r}")
    cfg = Config(n, gamma, p, system, qmax, seed, tol, fmt)
    try:
        cfg.params()
    except ModelError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


# -- point parsing -------------------------------------------------------------

_PI_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?|-)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$")


def parse_point_entry(text: str):
    """'1/2' -> Fraction(1, 2); 'pi/5', '3pi/4', '2*pi' -> (Fraction, 'pi') multiples of pi."""
    text = text.strip()
    if "pi" in text:
        m = _PI_RE.match(text)
        if not m:
            raise ConfigError(f"bad angle {text!r}; use forms like pi/5 or 3pi/4")
        if m.group(1) == "-":
            coef = Fraction(-1)
        else:
            coef = parse_rational(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(2):
            coef /= int(m.group(2))
        return (coef, "pi")
    return _rational(text, "point coordinate")


def point_to_float(entry) -> float:
    if isinstance(entry, tuple):
        return float(entry[0]) * math.pi
    return float(entry)


def format_point_entry(entry) -> str:
    if isinstance(entry, tuple):
        return f"{entry[0]}*pi" if entry[0] != 1 else "pi"
    return str(entry)


# -- commands --------------------------------------------------------------------


def cmd_spectrum(cfg: Config, out) -> int:
    P = cfg.params()
    rows = []
    for qn in states_up_to(cfg.n, cfg.system, cfg.qmax):
        rec = spectrum(P, qn)
        rows.append((rec.E, qn.as_tuple(), qn, rec))
    rows.sort(key=lambda r: (r[0], r[1]))
    levels = {q: degeneracy(P, cfg.system, q)[0] for q in range(cfg.qmax + 1)}
    if cfg.format == "json":
        data = {
            "params": P.to_json(),
            "system": cfg.system,
            "rows": [dict(qn=list(qn.as_tuple()), label=qn.label(), **rec.to_json()) for _, _, qn, rec in rows],
            "degeneracy": {str(q): c for q, c in levels.items()},
        }
        out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    out.write(f"# n={cfg.n} gamma={cfg.gamma} p=({','.join(map(str, cfg.p))}) system={cfg.system}\n")
    head = ["qn", "D", "E"] + (["lambda"] if cfg.system == "parabolic" else []) + ["k", "m"]
    table = [head]
    for _, _, qn, rec in rows:
        k = ",".join(str(v) for _, v in sorted(rec.k.items()))
        m = ",".join(str(v) for _, v in sorted(rec.m.items()))
        line = [qn.label(), str(rec.D), str(rec.E)]
        if cfg.system == "parabolic":
            line.append(str(rec.lam))
        table.append(line + [f"[{k}]", f"[{m}]"])
    widths = [max(len(r[i]) for r in table) for i in range(len(head))]
    for r in table:
        out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    out.write("\n# level q: degeneracy\n")
    for q, c in levels.items():
        out.write(f"q={q}: {c}\n")
    return EXIT_OK


def cmd_eigenfunction(cfg: Config, qn_text: str, point_text: str | None, out) -> int:
    P = cfg.params()
    try:
        qn = quantum_numbers(cfg.system, [int(v) for v in qn_text.split(",") if v.strip()])
        ef = eigenfunction(P, qn)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    data = ef.to_json()
    if point_text:
        entries = [parse_point_entry(t) for t in point_text.split(",")]
        if len(entries) != len(ef.vars):
            raise ConfigError(f"point needs {len(ef.vars)} coordinates ({', '.join(ef.vars)}), got {len(entries)}")
        from .expr import lift

        pt = [point_to_float(e) for e in entries]
        data["point"] = [format_point_entry(e) for e in entries]
        data["psi"] = lift(ef.psi(), ef.vars, pt, 0).full_value()
    if cfg.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    out.write(f"state {qn.label()} ({cfg.system}), variables {', '.join(ef.vars)}\n")
    out.write(f"gauge: {data['gauge']}\n")
    out.write(f"polypart in ({', '.join(ef.gauge_vars)}): {data['polynomial']}\n")
    for key, val in data["eigenvalues"].items():
        if isinstance(val, dict):
            val = ", ".join(f"{key}_{l}={v}" for l, v in val.items())
        if key != "system":
            out.write(f"{key}: {val}\n")
    if point_text:
        out.write(f"psi({', '.join(data['point'])}) = {data['psi']!r}\n")
    return EXIT_OK


def cmd_verify(cfg: Config, selector: str, out, out_file: str | None = None,
               workers: int = 1, mutation: str | None = None, points: int = 20) -> int:
    P = cfg.params()
    specs = default_suite(
        P, cfg.seed, selector,
        tol_eigen=cfg.tol.get("eigen"), tol_commutator=cfg.tol.get("commutator"),
        qmax=min(cfg.qmax, 4), points=points,
    )
    if mutation:
        from .verify import with_mutation

        specs = with_mutation(specs, mutation)
    result = run_suite(specs, workers=workers)
    text = dumps(result)
    if out_file:
        with open(out_file, "w") as fh:
            fh.write(text + "\n")
    if cfg.format == "json":
        out.write(text + "\n")
    else:
        width = max((len(r.name) for r in result.reports), default=4)
        for r in result.reports:
            res = "-" if r.worst_residual is None else str(r.worst_residual)
            line = f"{r.name.ljust(width)}  {r.status:5s}  residual={res}  tol={r.tolerance}"
            if r.status != "pass":
                line += f"  witness={json.dumps(r.witness, sort_keys=True)}"
            out.write(line + "\n")
        s = result.summary
        out.write(f"{s['checks']} checks, {s['pass']} pass, {s['fail']} fail, {s['error']} error\n")
    return EXIT_OK if result.ok else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model and run options")
    g.add_argument("--n", type=int, help="dimension (>= 2)")
    g.add_argument("--gamma", help="Coulomb strength as num/den")
    g.add_argument("--p", help="comma-separated exponents p_1..p_{n-1} (num/den)")
    g.add_argument("--system", choices=["parabolic", "spherical"], help="separable coordinate system")
    g.add_argument("--qmax", type=int, help="highest level N1+N2+2*sum(J) (or Nr+2*sum(J))")
    g.add_argument("--seed", type=int, help="64-bit seed for sampled points and test jets")
    g.add_argument("--tol", type=float, help="override the numeric tolerances")
    g.add_argument("--json", action="store_true", help="machine-readable output")
    g.add_argument("--config", help="JSON config file; flags override it")

    parser = argparse.ArgumentParser(prog="superint", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="energies, separation constants and degeneracies")
    e = sub.add_parser("eigenfunction", parents=[common], help="gauge factor and polynomial part of a state")
    e.add_argument("--qn", required=True, help="quantum numbers N1,N2,J1,... or Nr,J1,...")
    e.add_argument("--point", help="evaluate psi at a curvilinear point, e.g. 1,1/2,pi/5")
    for name in ("verify", "commutators"):
        v = sub.add_parser(name, parents=[common], help="run verification suites")
        if name == "verify":
            sel = v.add_mutually_exclusive_group()
            for s in ("all", "exact", "numeric", "commutators", "tridiagonal"):
                sel.add_argument(f"--{s}", dest="selector", action="store_const", const=s)
        v.add_argument("--out", help="also write the JSON report to this file")
        v.add_argument("--workers", type=int, default=1, help="run checks in parallel processes")
        v.add_argument("--points", type=int, default=20, help="sampled points per numeric check")
        v.add_argument("--mutation", choices=sorted(MUTATIONS), help="corrupt one coefficient (suite self-test)")
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = build_config(args)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out)
        if args.command == "eigenfunction":
            return cmd_eigenfunction(cfg, args.qn, args.point, out)
        selector = "commutators" if args.command == "commutators" else (args.selector or "all")
        return cmd_verify(cfg, selector, out, args.out, args.workers, args.mutation, args.points)
    except (ConfigError, ModelError) as exc:
        sys.stderr.write(f"superint: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
