"""Command-line front end.

    bethe-asym thermo --model xxz --zeta 1.0 --field 1.0
    bethe-asym szsz --model xxz --delta 0.5 --field 1.0 --m 10:100:10
    bethe-asym verify --all
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from .numkit import NumericError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("thermo", "szsz", "jj", "generating", "gsk-check", "verify")
VERIFY_GROUPS = ("cycle", "lagrange", "fredholm", "shift", "free-fermion")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- parsing

def parse_m_list(text: str) -> list[int]:
    """'10,20,40' or 'a:b:step' (inclusive of b)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad range {text!r}")
        a, b = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        if step <= 0 or b < a:
            raise UsageError(f"bad range {text!r}")
        out = list(range(a, b + 1, step))
    else:
        out = [int(v) for v in text.split(",") if v.strip()]
    if not out or min(out) < 1:
        raise UsageError("m values must be positive and the list non-empty")
    return out


def read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment; keys use flag names without dashes."""
    out = {}
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{ln}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            out[k.replace("-", "_")] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bethe-asym", allow_abbrev=False, description="Ground-state thermodynamics and correlation asymptotics")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config")
    p.add_argument("--model", choices=("xxz", "ll"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--zeta", type=float)
    g.add_argument("--delta", type=float, help="anisotropy; zeta = arccos(delta)")
    p.add_argument("--field", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--beta-re", type=float, default=0.2)
    p.add_argument("--beta-im", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--q", type=float, default=1.0, help="interval half-width for gsk-check")
    p.add_argument("--m", default=None)
    p.add_argument("--nodes", type=int, default=128)
    p.add_argument("--contour-nodes", type=int, default=256)
    p.add_argument("--contour-height", type=float)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=4)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--all", action="store_true")
    p.add_argument("--only", choices=VERIFY_GROUPS, action="append")
    return p


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        cfg = read_config(known.config)
        valid = {a.dest: a for a in parser._actions}
        defaults = {}
        for k, v in cfg.items():
            if k not in valid or k in ("command", "help", "config"):
                raise UsageError(f"unknown config key {k!r}")
            act = valid[k]
            if isinstance(act, argparse._StoreTrueAction):
                defaults[k] = v.lower() in ("1", "true", "yes")
            elif k == "only":
                defaults[k] = [s.strip() for s in v.split(",")]
            else:
                defaults[k] = act.type(v) if act.type else v
        parser.set_defaults(**defaults)
    args = parser.parse_args(argv)
    if args.nodes <= 0 or args.contour_nodes <= 0 or args.workers <= 0:
        raise UsageError("node counts and workers must be positive")
    if args.contour_height is not None and args.contour_height <= 0:
        raise UsageError("--contour-height must be positive")
    if args.delta is not None:
        if not -1 < args.delta < 1:
            raise UsageError("--delta must lie in (-1, 1)")
        args.zeta = math.acos(args.delta)
    return args


def _model(args):
    from .models import ModelSpec
    if args.model is None:
        raise UsageError("--model is required")
    if args.field is None:
        raise UsageError("--field is required")
    if args.model == "xxz":
        if args.zeta is None:
            raise UsageError("--zeta or --delta is required for xxz")
        return ModelSpec.xxz(args.zeta, args.field)
    if args.c is None:
        raise UsageError("--c is required for ll")
    return ModelSpec.lieb_liniger(args.c, args.field)


# ---------------------------------------------------------------- output

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    return v


def serialize(table: dict, fmt: str) -> str:
    """table = {'scalars': {...}, 'columns': [...], 'rows': [[...], ...]}."""
    if fmt == "json":
        doc = {"scalars": {k: _jsonable(v) for k, v in table["scalars"].items()},
               "rows": [{c: _jsonable(v) for c, v in zip(table["columns"], r)} for r in table["rows"]]}
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    for k, v in table["scalars"].items():
        buf.write(f"# {k}={_fmt(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table["columns"])
    for r in table["rows"]:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _pool_map(fn, items, workers):
    # results come back in input order
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------- commands

def _thermo(args):
    from .thermo import dressed_quantities
    return dressed_quantities(_model(args), args.nodes)


def _amplitudes(args, th):
    from .asymptotics import Amplitudes, contour_for
    return Amplitudes(th, contour_for(th, d=args.contour_height, n=args.contour_nodes))


def cmd_thermo(args) -> dict:
    th = _thermo(args)
    sc = {"q": th.q, "p_F": th.p_F, "D": th.D, "Z_q": th.Z_q, "rho_q": th.rho_q}
    sc["D_minus_pF_over_pi"] = th.D - th.p_F / math.pi
    rows = [[x, r, z, e] for x, r, z, e in zip(th.grid.nodes, th.rho, th.Z, th.eps)]
    return {"scalars": sc, "columns": ["lambda", "rho", "Z", "eps"], "rows": rows}


def _expansion_table(args, leading) -> dict:
    th = _thermo(args)
    amp = _amplitudes(args, th)
    exp, c = leading(amp)
    ms = parse_m_list(args.m or "1:100:1")
    sc = {"Z_q": c.Z_q, "p_F": c.p_F, "D": c.D, "C0": c.C0, "C1": c.C1,
          "A_tilde": c.A_tilde, "F_sigma_sq": c.F_sigma_sq}
    rows = [[m, exp.const_term, float(exp.power_term(m)), float(exp.osc_term(m)),
             float(exp.total(m)), exp.osc_exp] for m in ms]
    return {"scalars": sc, "columns": ["m", "const_term", "power_term", "osc_term", "total", "exponent"],
            "rows": rows}


def cmd_szsz(args) -> dict:
    from .asymptotics import szsz_leading
    if args.model != "xxz":
        raise UsageError("szsz needs --model xxz")
    return _expansion_table(args, szsz_leading)


def cmd_jj(args) -> dict:
    from .asymptotics import ll_jj_leading
    if args.model != "ll":
        raise UsageError("jj needs --model ll")
    return _expansion_table(args, ll_jj_leading)


def cmd_generating(args) -> dict:
    from .asymptotics import generating_fn_full
    th = _thermo(args)
    amp = _amplitudes(args, th)
    beta = complex(args.beta_re, args.beta_im)
    ms = parse_m_list(args.m or "10,20,40,80")
    cache = {}

    def A_of(b):
        if b not in cache:
            cache[b] = amp.A(b)
        return cache[b]
    for s in (0, 1, -1):
        b = beta + 2j * math.pi * s
        if b != 0:
            A_of(b)
    vals = _pool_map(lambda m: generating_fn_full(amp, beta, m, limit=True, A_cache=A_of), ms, args.workers)
    rows = [[m, v.real, v.imag] for m, v in zip(ms, vals)]
    return {"scalars": {"beta_re": beta.real, "beta_im": beta.imag, "Z_q": th.Z_q, "D": th.D},
            "columns": ["m", "G_re", "G_im"], "rows": rows}


def cmd_gsk_check(args) -> dict:
    from .gsk import exact_gsk_logdet, sine_problem, w0, w_osc
    ms = parse_m_list(args.m or "100,200,400")
    if args.q <= 0:
        raise UsageError("--q must be positive")

    def row(m):
        p = sine_problem(args.q, args.gamma, m)
        ex = exact_gsk_logdet(p)
        a0 = w0(p)
        full = a0 + w_osc(p, 1) + w_osc(p, -1)
        return [m, ex.real, ex.imag, a0.real, a0.imag, full.real, full.imag, abs(ex - a0), abs(ex - full)]
    rows = _pool_map(row, ms, args.workers)
    cols = ["m", "exact_re", "exact_im", "w0_re", "w0_im", "w0_osc_re", "w0_osc_im",
            "residual_w0", "residual_w0_osc"]
    return {"scalars": {"gamma": args.gamma, "q": args.q}, "columns": cols, "rows": rows}


def verify_battery(groups: Sequence[str], seed: int = 42) -> list[tuple[str, object]]:
    """Run the selected verification groups; returns (group, CheckResult) pairs."""
    from . import verify as V
    from .fredholm import make_contour
    out = []

    def add(group, name, residual, tol):
        out.append((group, V.CheckResult(name, float(residual), tol)))

    rng = np.random.default_rng(seed)
    if "cycle" in groups:
        p_n = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11, 7: 15, 8: 22}
        for n in range(1, 7):
            A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            add("cycle", f"cycle expansion n={n}", V.cycle_expansion_check(A), 1e-11)
        worst = max(abs(V.cycle_expansion(np.eye(n))[1] - p_n[n]) for n in p_n)
        add("cycle", "configuration count = p(n)", worst, 0.5)
    if "lagrange" in groups:
        add("lagrange", "scalar t=0.2 N=30", V.lagrange_scalar_check(0.2, 30), 1e-10)
        add("lagrange", "scalar t=0.05 N=15", V.lagrange_scalar_check(0.05, 15), 1e-12)
        r12 = V.lagrange_matrix_check(V.default_matrix_problem(12))
        r24 = V.lagrange_matrix_check(V.default_matrix_problem(24))
        add("lagrange", "matrix N=2 truncation 12", r12, 1e-8)
        add("lagrange", "matrix truncation doubling gain (ratio)", r24 / r12, 0.1)
        c1 = V.lagrange_continuous_check(V.default_continuous_problem(8), 48)
        c2 = V.lagrange_continuous_check(V.default_continuous_problem(16), 96)
        add("lagrange", "continuous 48 nodes", c1, 1e-6)
        add("lagrange", "continuous doubling gain (ratio)", c2 / c1, 0.1)
        add("lagrange", "multi-series n=2 vs summed equation", V.multi_series_check(V.default_continuous_problem()), 1e-8)
    if "fredholm" in groups:
        zeta = math.pi / 3
        contour = make_contour(1.0, zeta / 4, 256)
        one = V.FiniteBetheData(zeta, 0.5, 0.1 + 0.05j, np.array([0.2]), np.array([0.2 + 0.1j]))
        add("fredholm", "contour vs det_1 (N=1)", V.fredholm_equiv_check(one, contour), 1e-9)
        data = V.random_bethe_data(rng, 3, zeta, 0.7 + 0.1j, 0.1 + 0.05j)
        add("fredholm", "contour vs det_3 (random)", V.fredholm_equiv_check(data, contour), 1e-8)
        add("fredholm", "theta independence of normalized det_3",
            V.comb_theta_check(data, 0.1 + 0.05j, -0.3 + 0.1j), 1e-8)
    if "shift" in groups:
        contour = make_contour(1.0, 0.4, 256)
        add("shift", "shift identity", V.shift_identity_random(rng, contour, 0.2 + 0.1j), 1e-8)
    if "free-fermion" in groups:
        for h in (2.0, 0.5):
            for r in V.free_fermion_suite(h, seed=seed).results:
                out.append(("free-fermion", V.CheckResult(f"h={h}: {r.name}", r.residual, r.tol)))
    return out


def cmd_verify(args) -> dict:
    if args.all and args.only:
        raise UsageError("--all and --only are exclusive")
    groups = VERIFY_GROUPS if (args.all or not args.only) else tuple(args.only)
    res = verify_battery(groups, args.seed)
    rows = [[g, r.name, r.residual, r.tol, r.passed] for g, r in res]
    n_fail = sum(not r.passed for _, r in res)
    return {"scalars": {"checks": len(res), "failed": n_fail},
            "columns": ["group", "check", "residual", "tol", "passed"], "rows": rows}


HANDLERS = {"thermo": cmd_thermo, "szsz": cmd_szsz, "jj": cmd_jj, "generating": cmd_generating,
            "gsk-check": cmd_gsk_check, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        table = HANDLERS[args.command](args)
    except SystemExit as e:
        return int(e.code or 0)
    except (UsageError, OSError) as e:
        build_parser().print_usage(sys.stderr)
        print(f"bethe-asym: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, ValueError, ZeroDivisionError) as e:
        print(f"bethe-asym: numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    text = serialize(table, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and table["scalars"]["failed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
