"""Command-line front end: ``qhowe compute``, ``qhowe verify`` and ``qhowe suite-all``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 for bad
parameters. Reports are written as deterministic JSON (sorted keys, no timing)
next to a ``.timing.json`` sidecar. The output directory defaults to
``$QHOWE_OUTPUT_DIR`` and then to the current directory.

A config file (``--config FILE``) holds flat ``key = value`` lines using the
long option names (``N = 3``, ``k = 1 2 1``, ``seed = 7``); command-line
flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from itertools import product
from pathlib import Path

from . import dynweyl, fock, howe, rmatrix, suite, yangian
from .report import Report
from .scalars import frac_to_json, poly_to_json

ENV_OUTPUT = "QHOWE_OUTPUT_DIR"

COMPUTE_KINDS = ("rmatrix", "braiding", "a-operator", "b-operator", "rational-r")
VERIFY_SUITES = ("hayashi", "howe", "intertwiner", "ybe", "inversion", "oracle-equivalence",
                 "theorem2", "symgroup", "appendix", "ev-compare", "yangian")

_INT_LISTS = {"k", "mu", "w1", "w2", "q_samples"}


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration


def read_config(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in _INT_LISTS:
            out[key] = [int(x) for x in value.replace(",", " ").split()]
        elif key in ("format", "output", "what", "suite"):
            out[key] = value
        elif key == "quick":
            out[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            out[key] = int(value)
    return out


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="flat key = value file with defaults for these options")
    p.add_argument("--output", "-o", help=f"output directory (default ${ENV_OUTPUT} or .)")
    p.add_argument("--seed", type=int, help="RNG seed; fixes every sample point (default 0)")
    p.add_argument("--points", type=int, help="sample points per exact check (default 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhowe",
        description="Exact fermionic R-matrices, commuting gl_N x gl_M actions and A operators.",
        epilog=f"Environment: {ENV_OUTPUT} sets the default output directory.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="export a matrix as symbolic and cleared-denominator dumps")
    c.add_argument("what", choices=COMPUTE_KINDS)
    c.add_argument("--N", type=int, help="dimension of V")
    c.add_argument("--k", type=int, help="first exterior degree")
    c.add_argument("--kp", type=int, help="second exterior degree")
    c.add_argument("--l", dest="ell", type=int, help="highest weight of L_l (a-/b-operator)")
    c.add_argument("--m", type=int, help="weight m (a-/b-operator)")
    c.add_argument("--format", choices=("json", "csv", "pretty"), help="stdout rendering (default pretty)")
    _common(c)

    v = sub.add_parser("verify", help="run one verification suite")
    v.add_argument("suite", choices=VERIFY_SUITES)
    v.add_argument("--N", type=int, help="dimension of V")
    v.add_argument("--M", type=int, help="number of tensor factors (howe, theorem2, symgroup)")
    v.add_argument("--k", type=int, nargs="+", help="exterior degrees: two for pair checks, three for ybe")
    v.add_argument("--mu", type=int, nargs="+", help="gl_M weight for theorem2")
    v.add_argument("--w1", type=int, nargs="+", help="first reduced word (symgroup)")
    v.add_argument("--w2", type=int, nargs="+", help="second reduced word (symgroup)")
    v.add_argument("--l", dest="ell", type=int, help="largest highest weight (appendix, ev-compare)")
    _common(v)

    s = sub.add_parser("suite-all", help="run the full acceptance grid")
    s.add_argument("--quick", action="store_true", default=None, help="reduced grid with N <= 3")
    _common(s)
    return parser


def resolve(args: argparse.Namespace) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        cfg.update(read_config(args.config))
    for key, value in vars(args).items():
        if value is not None and key != "config":
            cfg[key] = value
    cfg.setdefault("seed", 0)
    cfg.setdefault("points", 20)
    cfg.setdefault("format", "pretty")
    cfg.setdefault("output", os.environ.get(ENV_OUTPUT, "."))
    if cfg["points"] < 1:
        raise ConfigError("--points must be positive")
    return cfg


def _need(cfg, *keys):
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise ConfigError("missing " + ", ".join("--" + ("l" if k == "ell" else k) for k in missing))


def _check_degrees(N, ks):
    if N < 1:
        raise ConfigError("--N must be >= 1")
    for k in ks:
        if not 0 <= k <= N:
            raise ConfigError(f"degree {k} outside [0, {N}]")


# ---------------------------------------------------------------------------
# compute


def _sparse_json(op, nvars, rows, cols, label):
    ridx = {r: i for i, r in enumerate(rows)}
    entries = []
    for j, b in enumerate(cols):
        for r, val in sorted(op.column(b).items()):
            entries.append({"row": ridx[r], "col": j, "value": frac_to_json(val, nvars)})
    return {"rows": [label(r) for r in rows], "cols": [label(c) for c in cols], "entries": entries}


def _cleared_json(op, nvars, rows, cols, label):
    factors = []
    for _, _, v in op.entries():
        for f, mult in v.den:
            while factors.count(f) < mult:
                factors.append(f)
    factors.sort()
    ridx = {r: i for i, r in enumerate(rows)}
    entries = [{"row": ridx[r], "col": j, "value": poly_to_json(val.cleared(factors), nvars)}
               for j, b in enumerate(cols) for r, val in sorted(op.column(b).items())]
    return {"rows": [label(r) for r in rows], "cols": [label(c) for c in cols],
            "cleared_by": [_factor_str(f) for f in factors], "entries": entries}


def _factor_str(f):
    q = f"q^{f[0]}" if f[0] else ""
    zname = (lambda i: f"z{i + 1}") if len(f) > 2 else (lambda i: "z")
    z = "*".join(zname(i) + (f"^{e}" if e != 1 else "") for i, e in enumerate(f[1:]) if e)
    return "1-" + ("*".join(x for x in (q, z) if x) or "1")


def cmd_compute(cfg: dict) -> tuple[dict, dict, list]:
    """Returns (symbolic dump, cleared dump, basis labels)."""
    what = cfg["what"]
    if what in ("rmatrix", "braiding", "rational-r"):
        _need(cfg, "N", "k", "kp")
        N, k, kp = cfg["N"], cfg["k"], cfg["kp"]
        _check_degrees(N, (k, kp))
        if what == "braiding":
            B = rmatrix.braiding(k, kp, N)
            sym, clr = B.to_json(False), B.to_json(True)
            return sym, clr, sym["cols"]
        if what == "rmatrix":
            R = rmatrix.r_matrix(k, kp, N)
            head = {"kind": "rmatrix", "N": N, "k": k, "kp": kp, "variables": ["q", "z"]}
            sym = head | _sparse_json(R, 2, R.domain, R.domain, howe.tensor_str)
            clr = head | _cleared_json(R, 2, R.domain, R.domain, howe.tensor_str)
            return sym, clr, sym["cols"]
        R = yangian.rational_r(k, kp, N)
        sym = R.to_json()
        return sym, R.cleared_json(), sym["basis"]
    _need(cfg, "ell", "m")
    ell, m = cfg["ell"], cfg["m"]
    if ell < 0 or abs(m) > ell or (ell - m) % 2:
        raise ConfigError(f"m={m} is not a weight of L_{ell}")
    L = dynweyl.IrrepSl2(ell)
    if what == "a-operator":
        op = dynweyl.a_universal(L, m, [m])
        closed = dynweyl.closed_form_values(ell, m)[0]
        rows = [-m]
    else:
        op = dynweyl.b_operator_series(L, m, [m])
        closed = dynweyl.closed_form_values(ell, m)[1]
        rows = [m]
    head = {"kind": what, "l": ell, "m": m, "variables": ["q", "z"],
            "closed_form": frac_to_json(closed, 2),
            "matches_closed_form": op.column(m).get(rows[0]) == closed}
    label = lambda w: f"v_{w}"  # noqa: E731
    return (head | _sparse_json(op, 2, rows, [m], label),
            head | _cleared_json(op, 2, rows, [m], label), [f"v_{m}"])


def _entry_str(value: dict) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _render_compute(sym: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(sym, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["row", "col", "value"])
        for e in sym.get("entries", []):
            w.writerow([sym["rows"][e["row"]], sym["cols"][e["col"]], _entry_str(e["value"])])
        for t in sym.get("terms", []):
            for e in t["entries"]:
                w.writerow([f"j={t['j']}:{sym['basis'][e['row']]}", sym["basis"][e["col"]], e["value"]])
        return buf.getvalue().rstrip("\n")
    lines = []
    for e in sym.get("entries", []):
        lines.append(f"  [{sym['rows'][e['row']]} <- {sym['cols'][e['col']]}] {_pretty(e['value'])}")
    for t in sym.get("terms", []):
        lines.append(f"  term j={t['j']}: {len(t['entries'])} nonzero integer entries")
    return "\n".join(lines)


def _pretty(value: dict) -> str:
    num = _poly_pretty(value)
    den = value.get("denoms") or []
    if not den:
        return num
    return f"({num}) / " + "".join(f"({_factor_str((d['a'], *d['m']))})" for d in den)


def _poly_pretty(p: dict) -> str:
    names = ("q", "z", "z2", "z3")
    parts = []
    for t in p.get("terms", []):
        c = t["num"] if t["den"] == "1" else f"{t['num']}/{t['den']}"
        mono = "*".join(names[i] + (f"^{e}" if e != 1 else "") for i, e in enumerate(t["exp"]) if e)
        if not mono:
            parts.append(c)
        elif c in ("1", "-1"):
            parts.append(c[:-1] + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# verify


def cmd_verify(cfg: dict) -> Report:
    name = cfg["suite"]
    seed, points = cfg["seed"], cfg["points"]
    rep = Report(f"verify-{name}", config={key: cfg[key] for key in sorted(cfg)
                                           if key not in ("output", "format", "command", "config")})
    rep.config["rng"] = suite.RNG_NAME
    ks = cfg.get("k")
    if name == "hayashi":
        _need(cfg, "N")
        if not 2 <= cfg["N"] <= 62:
            raise ConfigError("hayashi needs 2 <= N <= 62")
        rep.extend(fock.verify_hayashi_relations(cfg["N"]))
    elif name == "howe":
        _need(cfg, "N", "M")
        rep.extend(howe.verify_howe_commutation(cfg["N"], cfg["M"]))
        howe.decompose_multiplicities(cfg["N"], cfg["M"], rep)
    elif name in ("intertwiner", "inversion"):
        _need(cfg, "N", "k")
        if len(ks) != 2:
            raise ConfigError(f"{name} needs --k K KP")
        _check_degrees(cfg["N"], ks)
        fn = rmatrix.verify_intertwiner if name == "intertwiner" else rmatrix.verify_inversion
        fn(ks[0], ks[1], cfg["N"], points, seed, rep)
    elif name == "ybe":
        _need(cfg, "N", "k")
        if len(ks) != 3:
            raise ConfigError("ybe needs --k K1 K2 K3")
        _check_degrees(cfg["N"], ks)
        rmatrix.verify_ybe(*ks, cfg["N"], points, seed, rep)
    elif name == "oracle-equivalence":
        _need(cfg, "N")
        _check_degrees(cfg["N"], ())
        for N in range(1, cfg["N"] + 1):
            rmatrix.oracle_equivalence(N, report=rep)
    elif name == "theorem2":
        _need(cfg, "N", "mu")
        mu = tuple(cfg["mu"])
        if cfg.get("M") is not None and cfg["M"] != len(mu):
            raise ConfigError("--M disagrees with the length of --mu")
        if len(mu) < 2:
            raise ConfigError("--mu needs at least two entries")
        _check_degrees(cfg["N"], mu)
        dynweyl.verify_theorem2(len(mu), cfg["N"], mu, points, seed, report=rep)
    elif name == "symgroup":
        _need(cfg, "N", "M", "w1", "w2")
        M = cfg["M"]
        if any(not 1 <= i < M for i in cfg["w1"] + cfg["w2"]):
            raise ConfigError(f"word letters must lie in [1, {M - 1}]")
        mus = [tuple(cfg["mu"])] if cfg.get("mu") else None
        try:
            dynweyl.symmetric_group_check(M, cfg["N"], cfg["w1"], cfg["w2"], points, seed, mus, rep)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    elif name == "appendix":
        dynweyl.appendix_suite(cfg.get("ell", 6), rep)
    elif name == "ev-compare":
        dynweyl.ev_compare(cfg.get("ell", 6), cfg.get("N", 3), rep)
    elif name == "yangian":
        _need(cfg, "N")
        N = cfg["N"]
        _check_degrees(N, ks or ())
        yangian.verify_classical_sl2(N, rep)
        if ks and len(ks) == 3:
            yangian.verify_rational_ybe(*ks, N, points, seed, rep)
        elif ks and len(ks) == 2:
            yangian.verify_rational_invariance(*ks, N, points, seed, rep)
            yangian.limit_check(*ks, N, report=rep)
        elif ks:
            raise ConfigError("yangian takes two or three --k values")
        else:
            for k, kp in product(range(N + 1), repeat=2):
                yangian.verify_rational_invariance(k, kp, N, points, seed, rep)
                yangian.limit_check(k, kp, N, report=rep)
            for triple in product(range(N + 1), repeat=3):
                yangian.verify_rational_ybe(*triple, N, points, seed, rep)
    return rep


# ---------------------------------------------------------------------------
# output


def _outdir(cfg) -> Path:
    path = Path(cfg["output"])
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_report(rep: Report, cfg: dict, stem: str) -> Path:
    out = _outdir(cfg) / f"{stem}.json"
    out.write_text(rep.dumps(include_timing=False) + "\n")
    (out.parent / f"{stem}.timing.json").write_text(json.dumps(rep.timing, indent=2, sort_keys=True) + "\n")
    return out


def _stem(cfg) -> str:
    bits = [cfg.get("what") or cfg.get("suite") or cfg["command"]]
    for key in ("N", "M", "k", "kp", "ell", "m", "mu"):
        v = cfg.get(key)
        if v is None:
            continue
        bits.append(f"{'l' if key == 'ell' else key}{'-'.join(map(str, v)) if isinstance(v, list) else v}")
    return "_".join(bits)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        if cfg["command"] == "compute":
            sym, clr, basis = cmd_compute(cfg)
            stem = _stem(cfg)
            d = _outdir(cfg)
            (d / f"{stem}.json").write_text(json.dumps(sym, indent=2, sort_keys=True) + "\n")
            (d / f"{stem}.cleared.json").write_text(json.dumps(clr, indent=2, sort_keys=True) + "\n")
            print(f"# basis ({len(basis)}): " + ", ".join(basis))
            print(_render_compute(sym, cfg["format"]))
            print(f"# wrote {d / (stem + '.json')} and {d / (stem + '.cleared.json')}")
            return 0
        if cfg["command"] == "verify":
            rep = cmd_verify(cfg)
            path = write_report(rep, cfg, _stem(cfg))
        else:
            rep = suite.run_suite_all(cfg["seed"], bool(cfg.get("quick")), cfg["points"])
            path = write_report(rep, cfg, f"suite-all_seed{cfg['seed']}" + ("_quick" if cfg.get("quick") else ""))
            for sec in rep.config["sections"]:
                print(f"{sec['key']:<20} {'PASS' if sec['passed'] else 'FAIL'}  ({sec['checks']} checks)")
        text = rep.render()
        print(text if not rep.passed or cfg["command"] == "verify" else text.splitlines()[0])
        print(f"# report {path}")
        return 0 if rep.passed else 1
    except (ConfigError, ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qhowe: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
