"""Command-line front end.

Usage::

    mannheim4 frenet --config curve.json --output csv --out frame.csv
    mannheim4 check-mannheim --curve "sqrt(2)*sinh(s)" "sqrt(2)*cosh(s)" "cos(s)" "sin(s)" --domain 0 2
    mannheim4 verify-pair --config curve.json --output json

Exit codes: 0 when everything was computed and every check passed, 2 when the
output was written but a check failed, 1 on bad input or a geometry error.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .curves import ParsedCurve, ensure_unit_speed
from .errors import GeometryError
from .frenet import frenet_samples
from .generator import GeneratedCurve, GeneratorSpec, generated_curvatures, verify_generator_relation
from .mannheim import TAU_RES, build_mate, estimate_beta, mannheim_residual, verify_mannheim_pair
from .lorentz import causal_character, minkowski_norm

COMMANDS = ("frenet", "check-mannheim", "mate", "generate", "verify-pair")
DEFAULT_SAMPLES = 64
DEFAULT_DOMAIN = (0.0, 1.0)
GENERATOR_TOL = 1e-6

FRENET_COLUMNS = (["t"] + [f"x{i}" for i in range(4)] + [f"T{i}" for i in range(4)]
                  + [f"N{i}" for i in range(4)] + [f"B1_{i}" for i in range(4)]
                  + [f"B2_{i}" for i in range(4)] + ["k1", "k2", "k3", "epsilon"])


class ConfigError(Exception):
    """Bad or inconsistent run configuration."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser():
    p = _Parser(prog="mannheim4", description="Frenet frames and Mannheim pairs in E_1^4.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--samples", type=int, help="number of sample points")
    p.add_argument("--beta", type=float, help="Mannheim constant (estimated when omitted)")
    p.add_argument("--output", choices=("csv", "json"), help="output format (default csv)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--curve", nargs=4, metavar="EXPR", help="four coordinate expressions in s")
    p.add_argument("--domain", nargs=2, type=float, metavar=("A", "B"), help="parameter interval")
    p.add_argument("--g", help="generator function g(s)")
    p.add_argument("--h", help="generator function h(s)")
    p.add_argument("--s-range", nargs=2, type=float, metavar=("A", "B"), help="generator parameter interval")
    return p


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(cfg, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return cfg


def resolve_config(args):
    """Merge the config file with command-line flags (flags win)."""
    cfg = load_config(args.config) if args.config else {}
    cfg = dict(cfg)
    cfg["command"] = args.command
    for key in ("samples", "beta", "output", "out", "curve", "domain"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    gen_flags = {"g": args.g, "h": args.h, "s_range": args.s_range}
    if any(v is not None for v in gen_flags.values()):
        gen = dict(cfg.get("generator") or {})
        gen.update({k: v for k, v in gen_flags.items() if v is not None})
        cfg["generator"] = gen
    if args.command == "generate" and args.beta is not None and "generator" in cfg:
        cfg["generator"] = dict(cfg["generator"], beta=args.beta)
    cfg.setdefault("samples", DEFAULT_SAMPLES)
    cfg.setdefault("output", "csv")
    if cfg["output"] not in ("csv", "json"):
        raise ConfigError(f"output must be csv or json, got {cfg['output']!r}")
    if not isinstance(cfg["samples"], int) or cfg["samples"] < 2:
        raise ConfigError("samples must be an integer >= 2")
    has_curve, has_gen = "curve" in cfg, "generator" in cfg
    if has_curve == has_gen:
        raise ConfigError("exactly one of 'curve' and 'generator' must be given")
    if args.command == "generate" and not has_gen:
        raise ConfigError("generate needs a 'generator' section")
    return cfg


def generator_spec(gen):
    missing = [k for k in ("g", "h", "beta", "s_range") if k not in gen]
    if missing:
        raise ConfigError(f"generator section lacks {', '.join(missing)}")
    extra = {k: gen[k] for k in ("n_nodes", "rtol") if k in gen}
    try:
        return GeneratorSpec(gen["g"], gen["h"], float(gen["beta"]), tuple(gen["s_range"]), **extra)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"generator: {exc}") from None


def config_curve(cfg):
    """Unit-speed curve described by the configuration."""
    if "generator" in cfg:
        return ensure_unit_speed(GeneratedCurve(generator_spec(cfg["generator"])))
    texts = cfg["curve"]
    if not (isinstance(texts, list) and len(texts) == 4 and all(isinstance(t, str) for t in texts)):
        raise ConfigError("'curve' must be a list of four expression strings")
    domain = cfg.get("domain", list(DEFAULT_DOMAIN))
    try:
        curve = ParsedCurve.from_strings(texts, tuple(float(x) for x in domain))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise ConfigError(f"curve: {exc}") from None
    return ensure_unit_speed(curve)


# -- output -----------------------------------------------------------------

def _num(x):
    x = float(x)
    return None if not math.isfinite(x) else x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _cell(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    return format(x, ".17g") if math.isfinite(x) else "nan"


def render(cfg, columns, rows, summary):
    if cfg["output"] == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()
    echo = {k: v for k, v in cfg.items() if k != "out"}
    doc = {
        "config": echo,
        "samples": [dict(zip(columns, row)) for row in rows],
        "summary": summary,
    }
    return json.dumps(_jsonable(doc), indent=2, allow_nan=False) + "\n"


def emit(cfg, text):
    out = cfg.get("out")
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------

def cmd_frenet(cfg):
    c = config_curve(cfg)
    fs = frenet_samples(c, c.grid(cfg["samples"]))
    fs.raise_first_failure()
    rows = []
    for i in range(len(fs)):
        rows.append([fs.t[i], *fs.point[i], *fs.T[i], *fs.N[i], *fs.B1[i], *fs.B2[i],
                     fs.k1[i], fs.k2[i], fs.k3[i], int(fs.epsilon[i])])
    summary = {"domain": list(c.domain), "min_k1": float(np.min(fs.k1)),
               "min_k2": float(np.min(fs.k2)), "min_abs_k3": float(np.min(np.abs(fs.k3)))}
    return FRENET_COLUMNS, rows, summary, 0


def cmd_check_mannheim(cfg):
    c = config_curve(cfg)
    chk = estimate_beta(c, cfg["samples"])
    rows = [[t, k1, k2, b, r] for t, k1, k2, b, r in
            zip(chk.samples, chk.k1, chk.k2, chk.beta_pointwise, chk.residuals)]
    summary = {"beta": chk.beta, "beta_spread": chk.beta_spread,
               "max_residual": chk.max_residual, "satisfied": chk.satisfied}
    code = 0 if chk.satisfied else 2
    if cfg.get("beta") is not None:
        given = float(cfg["beta"])
        resid = float(np.max(np.abs(mannheim_residual(np.asarray(chk.k1), np.asarray(chk.k2), given))))
        summary["given_beta"] = given
        summary["given_beta_residual"] = resid
        if resid > TAU_RES:
            code = 2
    return ["t", "k1", "k2", "beta_pointwise", "residual"], rows, summary, code


def _beta(cfg, c):
    if cfg.get("beta") is not None:
        return float(cfg["beta"]), "given"
    return estimate_beta(c, cfg["samples"]).beta, "estimated"


def cmd_mate(cfg):
    c = config_curve(cfg)
    beta, source = _beta(cfg, c)
    mate = build_mate(c, beta)
    t = c.grid(cfg["samples"])
    j = mate.jet(t, 1)
    pts, vel = j.value, j.d(1)
    classes = [causal_character(v).value for v in vel]
    spd = minkowski_norm(vel)
    rows = [[t[i], *pts[i], spd[i], classes[i]] for i in range(t.size)]
    kinds = sorted(set(classes))
    summary = {"beta": beta, "beta_source": source,
               "mate_causal": kinds[0] if len(kinds) == 1 else "mixed"}
    return ["t", "x0", "x1", "x2", "x3", "speed", "causal"], rows, summary, 0


def cmd_generate(cfg):
    spec = generator_spec(cfg["generator"])
    curve = GeneratedCurve(spec)
    s = curve.grid(cfg["samples"])
    pts = curve.point(s)
    k1, diff, k2 = generated_curvatures(spec, s)
    resid = verify_generator_relation(spec, cfg["samples"])
    rows = [[s[i], *pts[i], k1[i], diff[i], k2[i]] for i in range(s.size)]
    summary = {"relation_residual": resid, "verified": resid <= GENERATOR_TOL}
    code = 0 if resid <= GENERATOR_TOL else 2
    return ["s", "x0", "x1", "x2", "x3", "k1", "k2sq_minus_k1sq", "k2"], rows, summary, code


def cmd_verify_pair(cfg):
    c = config_curve(cfg)
    beta, source = _beta(cfg, c)
    rep = verify_mannheim_pair(c, beta, cfg["samples"])
    n = len(rep.f_prime_samples)
    nan = float("nan")
    col = lambda xs: xs if xs else [nan] * n  # noqa: E731
    rows = [[t, fp, ts, a, b, al, m1, m2, m3] for (t, fp), ts, a, b, al, m1, m2, m3 in zip(
        rep.f_prime_samples, col(rep.t_star), col(rep.N_dot_Tstar), col(rep.N_dot_Nstar),
        col(rep.alignment), col(rep.mate_k1), col(rep.mate_k2), col(rep.mate_k3))]
    summary = {
        "beta": beta, "beta_source": source, "mate_causal": rep.mate_causal.value,
        "max_N_dot_Tstar": rep.max_N_dot_Tstar, "max_N_dot_Nstar": rep.max_N_dot_Nstar,
        "b2star_alignment": rep.b2star_alignment, "verified_def31": rep.verified_def31,
        "verified_thm33": rep.verified_thm33, "failure": rep.failure,
    }
    columns = ["t", "f_prime", "t_star", "N_dot_Tstar", "N_dot_Nstar", "b2star_alignment",
               "k1_star", "k2_star", "k3_star"]
    return columns, rows, summary, 0 if rep.verified_def31 else 2


HANDLERS = {
    "frenet": cmd_frenet,
    "check-mannheim": cmd_check_mannheim,
    "mate": cmd_mate,
    "generate": cmd_generate,
    "verify-pair": cmd_verify_pair,
}


def _summary_line(command, summary, code):
    parts = [f"{k}={v}" for k, v in summary.items() if not isinstance(v, (list, dict))]
    status = {0: "ok", 2: "verification failed"}[code]
    return f"{command}: {status}; " + ", ".join(parts)


def run(argv=None):
    """Run the CLI and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        columns, rows, summary, code = HANDLERS[cfg["command"]](cfg)
        emit(cfg, render(cfg, columns, rows, summary))
    except ConfigError as exc:
        print(f"ConfigError: {exc}", file=sys.stderr)
        return 1
    except GeometryError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"OSError: {exc}", file=sys.stderr)
        return 1
    print(_summary_line(cfg["command"], summary, code), file=sys.stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
