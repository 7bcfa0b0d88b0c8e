"""Command line front end: ``pmfa synth``, ``pmfa analyze`` and ``pmfa report``.

Exit codes: 0 all checks pass, 1 a tolerance check failed, 2 usage or I/O
error, 3 estimation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import warnings
from pathlib import Path

import numpy as np
import scipy

from . import __version__
from . import generators as gen
from .exponents import (
    EstimationError,
    critical_lebesgue_index,
    estimate_hmin,
    log2_wavelet_structure,
    p_exponent_curve,
    pointwise_lacunarity,
    sparsity_exponent,
    wavelet_scaling_function,
)
from .leaders import p_leaders, wavelet_leaders
from .mfa import lacunarity_spectrum, p_spectrum
from .wavelet import CoefficientField, analyze, daubechies

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ESTIMATION = 0, 1, 2, 3
REPORT_SCHEMA = "pmfa-report"
REPORT_VERSION = 1
FIELD_FORMAT = "pmfa-field"

DEFAULT_CONFIG = {
    "input": None,
    "truth": None,
    "vanishing_moments": 8,
    "p_grid": [0.5, 1.0, 2.0, 4.0],
    "p0_grid": [0.05, 8.0, 0.05],
    "q_grid": [0.0, 0.25, 0.5, 1.0],
    "x0": None,
    "q0": "auto",
    "dq": None,
    "spectra_p": [2.0, "inf"],
    "lacunarity_spectrum": True,
    "r_grid": [-5.0, 5.0, 0.25],
    "H_grid": None,
    "j_range": None,
    "leader_j_range": None,
    "zero_policy": "exclude-undefined",
    "tolerances": {"hmin": 0.1, "eta": 0.1, "p0": 0.3, "p_exponent": 0.1, "lacunarity": 0.1},
    "output": "pmfa-out",
    "seed": None,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialization

def _num(x):
    """JSON-safe float: non-finite values become the strings inf, -inf, nan."""
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _parse_num(x) -> float:
    # float() already accepts the sentinel strings
    return float(x)


def _fmt(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n").encode()


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else _fmt(v) for v in row))
    _atomic_write(path, ("\n".join(lines) + "\n").encode())


def write_signal(out: Path, signal: np.ndarray, sidecar: dict) -> None:
    _atomic_write(out / "signal.f64", np.asarray(signal, dtype="<f8").tobytes())
    _atomic_write(out / "signal.json", _json_bytes(sidecar))


def write_field(out: Path, field: CoefficientField, header: dict | None = None) -> None:
    blob = b"".join(np.asarray(d, dtype="<f8").tobytes() for d in field.detail)
    meta = {"format": FIELD_FORMAT, "version": 1, "J": field.j_max + 1, "j_max": field.j_max,
            "normalization": field.normalization, "filter": field.filter,
            "approx": _num(field.approx[0]), "data": "field.f64"}
    meta.update(header or {})
    _atomic_write(out / "field.f64", blob)
    _atomic_write(out / "field.json", _json_bytes(meta))


def read_field(path: Path) -> CoefficientField:
    meta = json.loads(path.read_text())
    if meta.get("format") != FIELD_FORMAT:
        raise UsageError(f"{path}: not a coefficient field header")
    j_max = int(meta["j_max"])
    raw = np.fromfile(path.parent / meta.get("data", "field.f64"), dtype="<f8")
    if raw.size != 2 ** (j_max + 1) - 1:
        raise UsageError(f"{path}: expected {2 ** (j_max + 1) - 1} coefficients, found {raw.size}")
    detail, start = [], 0
    for j in range(j_max + 1):
        detail.append(raw[start:start + 2 ** j].astype(float))
        start += 2 ** j
    return CoefficientField(j_max, tuple(detail), np.array([_parse_num(meta.get("approx", 0.0))]),
                            meta.get("normalization", "linf"), meta.get("filter"))


def read_signal(path: Path) -> np.ndarray:
    if path.suffix == ".csv":
        return np.loadtxt(path, delimiter=",", ndmin=1, dtype=float)
    data = np.fromfile(path, dtype="<f8")
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        length = json.loads(sidecar.read_text()).get("length")
        if length is not None and int(length) != data.size:
            raise UsageError(f"{path}: sidecar says {length} samples, file has {data.size}")
    return data


# ---------------------------------------------------------------- generators

def build(name: str, params: dict, bank=None):
    """Run a generator by CLI name; returns (kind, data, truth) with kind 'signal' or 'field'."""
    p = dict(params)
    if name == "cusp":
        mode = p.get("mode", "coefficient")
        field, truth = gen.cusp(float(p["alpha"]), int(p["J"]), mode, bank)
        if mode in ("time", "time-domain"):
            return "signal", gen.cusp_signal(float(p["alpha"]), int(p["J"])), truth
        return "field", field, truth
    if name == "comb":
        args = float(p["alpha"]), float(p["omega"]), float(p["gamma"]), int(p["J"])
        _, truth = gen.lacunary_comb(*args, bank=bank)
        return "signal", gen.lacunary_comb_signal(*args), truth
    if name == "chirp":
        field, truth = gen.thin_chirp(float(p["a"]), float(p["b"]), float(p["alpha"]), int(p["J"]))
        return "field", field, truth
    if name == "lws":
        seed = None if p.get("seed") is None else int(p["seed"])
        field, truth = gen.lacunary_wavelet_series(float(p["alpha"]), float(p["eta"]), int(p["J"]), seed)
        return "field", field, truth
    if name == "weierstrass":
        n_terms = None if p.get("n_terms") is None else int(p["n_terms"])
        signal, truth = gen.weierstrass(float(p["a"]), float(p["b"]), n_terms, int(p.get("n", 2 ** 14)))
        return "signal", signal, truth
    if name == "noise":
        seed = None if p.get("seed") is None else int(p["seed"])
        signal, truth = gen.white_noise(int(p.get("n", 2 ** 14)), seed)
        return "signal", signal, truth
    if name == "cantor":
        J = int(p["J"])
        _, truth = gen.cantor_measure(J, bank)
        return "signal", gen.cantor_masses(J) * 2.0 ** J, truth
    if name == "eta0":
        field, truth = gen.eta_zero_counterexample(int(p["J"]))
        return "field", field, truth
    raise UsageError(f"unknown generator {name!r}; choose from {sorted(gen.GENERATORS)}")


_SYNTH_PARAMS = {
    "cusp": [("alpha", float, None), ("J", int, 14), ("mode", str, "coefficient")],
    "comb": [("alpha", float, None), ("omega", float, None), ("gamma", float, None), ("J", int, 14)],
    "chirp": [("a", float, None), ("b", float, None), ("alpha", float, None), ("J", int, 14)],
    "lws": [("alpha", float, None), ("eta", float, None), ("J", int, 14), ("seed", int, None)],
    "weierstrass": [("a", float, None), ("b", float, None), ("n", int, 2 ** 14), ("n_terms", int, None)],
    "noise": [("n", int, 2 ** 14), ("seed", int, None)],
    "cantor": [("J", int, 14)],
    "eta0": [("J", int, 14)],
}


def cmd_synth(args) -> int:
    params = {name: getattr(args, name) for name, _, _ in _SYNTH_PARAMS[args.generator]}
    out = Path(args.out)
    kind, data, truth = build(args.generator, params)
    if kind == "signal":
        domain = "[0, 2)" if args.generator == "weierstrass" else "[0, 1)"
        write_signal(out, data, {"length": int(data.size), "sample_domain": domain,
                                 "generator": args.generator, "params": params,
                                 "seed": params.get("seed")})
    else:
        write_field(out, data, {"generator": args.generator, "params": params})
    _atomic_write(out / "truth.json", _json_bytes(truth.to_dict()))
    print(f"wrote {kind} for {args.generator} to {out}")
    return EXIT_OK


# ---------------------------------------------------------------- analysis

def load_config(path: str | None, overrides: dict) -> dict:
    cfg = json.loads(json.dumps(DEFAULT_CONFIG))
    if path:
        try:
            user = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(user, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(user) - set(DEFAULT_CONFIG)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        tol = dict(cfg["tolerances"])
        tol.update(user.get("tolerances") or {})
        cfg.update(user)
        cfg["tolerances"] = tol
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    if cfg["input"] is None:
        raise UsageError("no input given (config key 'input' or --input)")
    for key in ("p_grid", "q_grid", "spectra_p"):
        if not isinstance(cfg[key], list):
            raise UsageError(f"{key} must be a list")
    if not cfg["p_grid"]:
        raise UsageError("p_grid must be nonempty")
    return cfg


def config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _grid(spec, name: str) -> np.ndarray:
    if spec is None:
        return None
    if len(spec) != 3:
        raise UsageError(f"{name} must be [start, stop, step]")
    start, stop, step = map(float, spec)
    if step <= 0 or stop < start:
        raise UsageError(f"{name} must be an increasing nonempty range")
    return np.arange(start, stop + step / 2, step)


def _range(spec):
    return None if spec is None else (int(spec[0]), int(spec[1]))


def load_input(cfg: dict, bank):
    """Returns (field, truth or None)."""
    src = cfg["input"]
    truth = None
    if isinstance(src, dict):
        params = dict(src.get("params", {}))
        if "seed" not in params and cfg.get("seed") is not None:
            params["seed"] = cfg["seed"]
        kind, data, truth = build(src.get("generator", ""), params, bank)
        field = data if kind == "field" else analyze(data, bank)
    else:
        path = Path(src)
        if not path.exists():
            raise UsageError(f"input not found: {path}")
        if path.suffix == ".json":
            field = read_field(path)
        else:
            try:
                field = analyze(read_signal(path), bank)
            except ValueError as exc:
                raise UsageError(f"{path}: {exc}") from exc
    if cfg.get("truth"):
        try:
            truth = gen.GroundTruth.from_dict(json.loads(Path(cfg["truth"]).read_text()))
        except (OSError, json.JSONDecodeError, TypeError) as exc:
            raise UsageError(f"cannot read truth file: {exc}") from exc
    return field, truth


def _p_value(p) -> float:
    return math.inf if str(p) == "inf" else float(p)


def run_analysis(cfg: dict) -> tuple[dict, dict]:
    """Runs every configured estimator; returns (report, csv tables)."""
    try:
        bank = daubechies(int(cfg["vanishing_moments"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    field, truth = load_input(cfg, bank)
    j_range, lj_range = _range(cfg["j_range"]), _range(cfg["leader_j_range"])
    p_grid = np.array([float(p) for p in cfg["p_grid"]])
    tables: dict = {}
    estimates: dict = {}
    diagnostics: dict = {}

    hmin, fit = estimate_hmin(field, j_range)
    estimates["hmin"] = hmin
    diagnostics["hmin"] = fit.as_dict()

    eta = wavelet_scaling_function(field, p_grid, j_range)
    for p, v, f in zip(eta.grid, eta.values, eta.fits):
        estimates[f"eta[p={p:g}]"] = float(v)
        diagnostics[f"eta[p={p:g}]"] = f.as_dict()
    tables["eta.csv"] = (["p", "eta", "intercept", "residual_rms"],
                         [(p, v, f.intercept, f.residual_rms) for p, v, f in zip(eta.grid, eta.values, eta.fits)])
    logs = np.array([log2_wavelet_structure(field, p) for p in p_grid])
    tables["structure_wavelet.csv"] = (["j"] + [f"log2S[p={p:g}]" for p in p_grid],
                                       [(j, *logs[:, j]) for j in range(field.j_max + 1)])

    p0_grid = _grid(cfg["p0_grid"], "p0_grid")
    if p0_grid[0] <= 0:
        raise UsageError("p0_grid must be positive")
    p0_lo, p0_hi = critical_lebesgue_index(wavelet_scaling_function(field, p0_grid, j_range))
    p0_hat = p0_hi if math.isinf(p0_hi) else 0.5 * (p0_lo + p0_hi)
    estimates["p0"] = p0_hat
    diagnostics["p0_bracket"] = [_num(p0_lo), _num(p0_hi)]

    s, sfit = sparsity_exponent(field, j_range)
    bound = math.inf if hmin >= 0 else (1.0 - s) / -hmin
    diagnostics["sparsity"] = {"exponent": s, "sparse": bool(s < 1.0),
                               "p0_lower_bound": _num(bound) if s < 1.0 else 0.0,
                               "counts": field.nonzero_counts().tolist(), "fit": sfit.as_dict()}

    if cfg["q0"] == "auto":
        q0 = 0.0 if math.isinf(p0_hat) else 1.0 / p0_hat
    else:
        q0 = float(cfg["q0"])
    dq = None if cfg["dq"] is None else float(cfg["dq"])
    diagnostics["q0"] = q0

    x0 = cfg["x0"]
    if x0 is None and truth is not None:
        x0 = truth.x0
    if x0 is not None:
        x0 = float(x0)
        # only q above q0 = 1/p0 are admissible; q = 0 needs p0 = inf
        qs = [float(q) for q in cfg["q_grid"] if (q == 0 and q0 == 0) or (q > 0 and q > q0)]
        if qs:
            curve = p_exponent_curve(field, x0, qs, lj_range)
            for q, h in curve:
                estimates[f"h[q={q:g}]"] = h
            tables["p_exponent.csv"] = (["q", "h", "intercept", "residual_rms"],
                                        [(q, h, f.intercept, f.residual_rms)
                                         for (q, h), f in zip(curve, curve.fits)])
            leaders = [wavelet_leaders(field) if q == 0 else p_leaders(field, 1.0 / q) for q in qs]
            with np.errstate(divide="ignore", invalid="ignore"):
                along = np.array([np.log2(lead.along(x0)) for lead in leaders])
            tables["leaders_x0.csv"] = (["j"] + [f"log2d[q={q:g}]" for q in qs],
                                        [(j, *along[:, j]) for j in range(field.j_max + 1)])
            if len(qs) >= 2:
                slope, intercept = curve.affine()
                estimates["p_exponent.slope"] = slope
                estimates["p_exponent.intercept"] = intercept
        L, lfit = pointwise_lacunarity(field, x0, q0, dq, lj_range)
        estimates["lacunarity"] = L
        diagnostics["lacunarity"] = lfit.as_dict()

    r_grid = _grid(cfg["r_grid"], "r_grid")
    H_grid = None
    if cfg["H_grid"] is not None:
        start, stop, n = cfg["H_grid"]
        H_grid = np.linspace(float(start), float(stop), int(n))
    spectra = {}
    for p in cfg["spectra_p"]:
        p = _p_value(p)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            spec = p_spectrum(field, p, r_grid, H_grid, lj_range, cfg["zero_policy"])
        tag = "inf" if math.isinf(p) else f"{p:g}"
        tables[f"zeta_p{tag}.csv"] = (["r", "zeta"], list(zip(spec.zeta.grid, spec.zeta.values)))
        tables[f"spectrum_p{tag}.csv"] = (["H", "d", "interior"],
                                          [(h, d, str(int(i))) for h, d, i in zip(spec.H, spec.d, spec.interior)])
        mode = spec.mode
        spectra[f"p={tag}"] = {"support": [_num(v) for v in spec.support] if spec.support else None,
                               "mode": [_num(v) for v in mode],
                               "warnings": [str(w.message) for w in caught]}
    if cfg["lacunarity_spectrum"]:
        spec = lacunarity_spectrum(field, q0, dq, r_grid, H_grid, lj_range, cfg["zero_policy"])
        tables["spectrum_lacunarity.csv"] = (["L", "d", "interior"],
                                             [(h, d, str(int(i))) for h, d, i in zip(spec.H, spec.d, spec.interior)])
        spectra["lacunarity"] = {"support": [_num(v) for v in spec.support] if spec.support else None,
                                 "mode": [_num(v) for v in spec.mode]}
    diagnostics["spectra"] = spectra

    quantities = compare(estimates, truth, cfg["tolerances"])
    report = {
        "schema": REPORT_SCHEMA,
        "schema_version": REPORT_VERSION,
        "provenance": {"config_hash": config_hash(cfg), "seed": cfg.get("seed"),
                       "versions": {"pmfa": __version__, "numpy": np.__version__,
                                    "scipy": scipy.__version__}},
        "config": cfg,
        "ground_truth": truth.to_dict() if truth is not None else None,
        "quantities": quantities,
        "diagnostics": _sanitize(diagnostics),
        "passed": all(q["pass"] is not False for q in quantities),
    }
    return report, tables


def _target(name: str, truth) -> float | None:
    if truth is None:
        return None
    if name == "hmin":
        return truth.hmin
    if name == "p0":
        return None if truth.p0 is None or math.isinf(truth.p0) else truth.p0
    if name.startswith("eta[p=") and truth.eta is not None:
        return truth.eta_of_p(float(name[6:-1]))
    if name.startswith("h[q=") and truth.p_exponent is not None:
        return truth.h_of_q(float(name[4:-1]))
    if name == "p_exponent.slope" and truth.p_exponent is not None:
        return truth.p_exponent[1]
    if name == "p_exponent.intercept" and truth.p_exponent is not None:
        return truth.p_exponent[0]
    if name == "lacunarity":
        return truth.lacunarity
    return None


def _tolerance(name: str, tolerances: dict) -> float:
    key = name.split("[")[0].split(".")[0]
    key = {"h": "p_exponent"}.get(key, key)
    return float(tolerances.get(key, 0.1))


def compare(estimates: dict, truth, tolerances: dict) -> list[dict]:
    out = []
    for name in sorted(estimates):
        est = float(estimates[name])
        target = _target(name, truth)
        tol = _tolerance(name, tolerances)
        ok = None
        if target is not None:
            ok = bool(math.isfinite(est) and abs(est - target) <= tol)
        out.append({"name": name, "estimate": _num(est), "ground_truth": _num(target),
                    "tolerance": tol, "pass": ok})
    return out


def _sanitize(obj):
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def cmd_analyze(args) -> int:
    overrides = {"input": args.input, "truth": args.truth, "output": args.output, "seed": args.seed,
                 "x0": args.x0, "q0": args.q0, "dq": args.dq, "zero_policy": args.zero_policy,
                 "vanishing_moments": args.vanishing_moments,
                 "p_grid": args.p_grid, "q_grid": args.q_grid,
                 "j_range": args.j_range, "leader_j_range": args.leader_j_range}
    cfg = load_config(args.config, overrides)
    if isinstance(cfg["input"], str) and args.config and not Path(cfg["input"]).is_absolute() \
            and args.input is None:
        # relative paths in a config file are relative to the file
        cfg["input"] = str(Path(args.config).parent / cfg["input"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report, tables = run_analysis(cfg)
    out = Path(cfg["output"])
    for name, (header, rows) in sorted(tables.items()):
        _write_csv(out / name, header, rows)
    _atomic_write(out / "report.json", _json_bytes(report))
    _print_quantities(report["quantities"])
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _print_quantities(quantities: list[dict]) -> None:
    for q in quantities:
        status = {True: "PASS", False: "FAIL", None: "-"}[q["pass"]]
        truth = "" if q["ground_truth"] is None else f" truth={q['ground_truth']} tol={q['tolerance']}"
        print(f"{status:4s} {q['name']} = {q['estimate']}{truth}")


def cmd_report(args) -> int:
    path = Path(args.report)
    if path.is_dir():
        path = path / "report.json"
    try:
        report = json.loads(path.read_text())
        truth = gen.GroundTruth.from_dict(json.loads(Path(args.compare).read_text()))
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if report.get("schema") != REPORT_SCHEMA:
        raise UsageError(f"{path}: not a pmfa report")
    if report.get("schema_version") != REPORT_VERSION:
        raise UsageError(f"{path}: unsupported report version {report.get('schema_version')}")
    tolerances = dict(report.get("config", {}).get("tolerances", DEFAULT_CONFIG["tolerances"]))
    if args.tolerance is not None:
        tolerances = {k: args.tolerance for k in tolerances}
    estimates = {q["name"]: _parse_num(q["estimate"]) for q in report["quantities"]}
    quantities = compare(estimates, truth, tolerances)
    _print_quantities(quantities)
    return EXIT_OK if all(q["pass"] is not False for q in quantities) else EXIT_FAIL


# ---------------------------------------------------------------- argparse

def _floats(raw: str) -> list[float]:
    return [float(x) for x in raw.split(",") if x.strip()]


def _pair(raw: str) -> list[int]:
    vals = [int(x) for x in raw.split(",")]
    if len(vals) != 2:
        raise argparse.ArgumentTypeError("expected j1,j2")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmfa", description="p-exponent and lacunarity multifractal analysis")
    parser.add_argument("--version", action="version", version=f"pmfa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="write a synthetic signal or coefficient field with its ground truth")
    gsub = synth.add_subparsers(dest="generator", required=True)
    for name, params in _SYNTH_PARAMS.items():
        g = gsub.add_parser(name)
        for pname, typ, default in params:
            flag = "--" + pname.replace("_", "-")
            g.add_argument(flag, dest=pname, type=typ, default=default, required=default is None
                           and pname not in ("seed", "n_terms"))
        g.add_argument("--out", default=".", help="output directory")

    ana = sub.add_parser("analyze", help="run the estimators and write CSVs plus report.json")
    ana.add_argument("--config", help="JSON config; flags override its keys")
    ana.add_argument("--input", help="signal (.f64 or .csv) or coefficient field header (.json)")
    ana.add_argument("--truth", help="ground truth JSON to check against")
    ana.add_argument("--output", help="output directory")
    ana.add_argument("--seed", type=int)
    ana.add_argument("--x0", type=float)
    ana.add_argument("--q0")
    ana.add_argument("--dq", type=float)
    ana.add_argument("--zero-policy", dest="zero_policy", choices=["exclude-undefined", "strict"])
    ana.add_argument("--vanishing-moments", dest="vanishing_moments", type=int)
    ana.add_argument("--p-grid", dest="p_grid", type=_floats)
    ana.add_argument("--q-grid", dest="q_grid", type=_floats)
    ana.add_argument("--j-range", dest="j_range", type=_pair)
    ana.add_argument("--leader-j-range", dest="leader_j_range", type=_pair)

    rep = sub.add_parser("report", help="check an existing report against a ground truth file")
    rep.add_argument("report", help="report.json or the directory holding it")
    rep.add_argument("--compare", required=True, help="truth.json")
    rep.add_argument("--tolerance", type=float, help="override every tolerance")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"synth": cmd_synth, "analyze": cmd_analyze, "report": cmd_report}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"pmfa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EstimationError as exc:
        print(f"pmfa: estimation error: {exc}", file=sys.stderr)
        return EXIT_ESTIMATION
    except (ValueError, KeyError) as exc:
        print(f"pmfa: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"pmfa: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
