"""Experiment driver: one subcommand per capability, seeded and reproducible.

All randomness flows from --seed and the trial index through a splittable
seed derivation, so --jobs never changes results.  Reports are JSON or CSV,
written atomically when --output is given, and byte-stable when re-run with
identical flags (--deterministic drops the one timestamp field).

Exit status: 0 when the run's check passes, 1 on a tolerance failure or a
trial-level error (reported as a structured record), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from typing import Callable

import numpy as np

from .combin import binom, sset_unrank
from .errors import HyperlapError
from .hypergraph import (
    Hypergraph,
    RandomModel,
    complete,
    degree_stats,
    read_hypergraph,
    sample,
)
from .laplacian import (
    Laplacian,
    build_aux,
    complete_spectrum,
    centered_weight,
    dump_matrix,
    normalized_laplacian,
)
from .spectra import (
    Ecdf,
    eigenvalues_sym,
    ks_distance,
    scaled_ecdf,
    semicircle_cdf,
    spectral_radius,
)
from .walks import census, census_upper_bound
from . import apps


# jobs and output are execution mechanics, not part of the experiment: the
# echo omits them so runs that differ only there compare byte-identical
_CORE_FIELDS = (
    "subcommand", "n", "r", "s", "p", "t", "seed", "trials",
    "format", "budget", "deterministic",
)
_EXTRA_FIELDS = {
    "spectrum": ("use_complete", "input_path", "dump_path", "tol"),
    "radius": ("slack",),
    "semicircle": ("bins", "ks_tol"),
    "mixing": ("use_complete", "input_path", "steps", "tol"),
    "diameter": ("use_complete", "input_path", "tol"),
    "expansion": ("use_complete", "input_path", "family_frac", "tol"),
    "monotonicity": ("use_complete", "input_path", "tol"),
    "diagnostics": ("tol",),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; two configs compare equal iff runs are identical."""

    subcommand: str
    n: int | None = None
    r: int | None = None
    s: int | None = None
    p: float | None = None
    t: int | None = None
    seed: int = 0
    trials: int = 1
    jobs: int = 1
    format: str = "json"
    output: str | None = None
    budget: int | None = None
    deterministic: bool = False
    use_complete: bool = False
    input_path: str | None = None
    dump_path: str | None = None
    slack: float = 3.0
    bins: int = 40
    ks_tol: float = 0.05
    steps: int = 3
    family_frac: float = 0.25
    tol: float = 1e-9

    def echo(self) -> dict:
        # config echo keeps only the fields that matter for this subcommand
        d = asdict(self)
        keep = _CORE_FIELDS + _EXTRA_FIELDS.get(self.subcommand, ())
        return {k: d[k] for k in keep if d[k] is not None}


@dataclass
class ExperimentReport:
    config: dict
    records: list
    summary: dict
    passed: bool
    timestamp: str | None = None


def trial_seed(base: int, trial: int) -> int:
    """Derived 64-bit seed for one trial; stable under any execution order."""
    ss = np.random.SeedSequence(entropy=base, spawn_key=(trial,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _resolve_budget(cfg: ExperimentConfig) -> int | None:
    if cfg.budget is not None:
        return cfg.budget
    env = os.environ.get("HYPERLAP_BUDGET")
    return int(env) if env else None


def _map_trials(cfg: ExperimentConfig, fn: Callable[[int, int], dict]) -> list[dict]:
    """Run fn(trial, derived_seed) for every trial, results in trial order.

    Module errors become structured records instead of aborting the run.
    """

    def one(k: int) -> dict:
        try:
            return fn(k, trial_seed(cfg.seed, k))
        except HyperlapError as exc:
            return {"trial": k, "error": type(exc).__name__, "message": str(exc)}

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(one, range(cfg.trials)))
    return [one(k) for k in range(cfg.trials)]


def _instance(cfg: ExperimentConfig, seed: int) -> Hypergraph:
    """One hypergraph from --input, --complete, or the seeded random model."""
    if cfg.input_path:
        with open(cfg.input_path) as fh:
            return read_hypergraph(fh)
    if cfg.use_complete:
        return complete(cfg.n, cfg.r)
    model = RandomModel(cfg.n, cfg.r, cfg.p, seed)
    return sample(model, _resolve_budget(cfg))


def _laplacian_of(h: Hypergraph, s: int) -> Laplacian:
    return normalized_laplacian(build_aux(h, s))


# ---------------------------------------------------------------- subcommands


def _run_spectrum(cfg: ExperimentConfig):
    if cfg.use_complete:
        pairs = complete_spectrum(cfg.n, cfg.r, cfg.s)
        lap = _laplacian_of(complete(cfg.n, cfg.r), cfg.s)
        spec = eigenvalues_sym(lap.matrix)
        closed = np.repeat([e.value for e in pairs], [e.multiplicity for e in pairs])
        err = float(np.max(np.abs(closed - spec.values)))
        if cfg.dump_path:
            _dump_to(cfg.dump_path, lap)
        records = [
            {"value": e.value, "multiplicity": e.multiplicity} for e in pairs
        ]
        summary = {
            "dim": spec.dim,
            "max_abs_error": err,
            "tolerance": cfg.tol,
            "excluded": int(lap.excluded.size),
        }
        return records, summary, err <= cfg.tol
    h = _instance(cfg, trial_seed(cfg.seed, 0))
    lap = _laplacian_of(h, cfg.s)
    spec = eigenvalues_sym(lap.matrix)
    if cfg.dump_path:
        _dump_to(cfg.dump_path, lap)
    records = [{"k": i, "value": float(v)} for i, v in enumerate(spec.values)]
    summary = {
        "dim": spec.dim,
        "edges": h.num_edges,
        "trivial_count": spec.trivial_count,
        "excluded": int(lap.excluded.size),
    }
    if spec.dim >= 2 and spec.trivial_count == 1:
        summary["lambda1"] = spec.lambda1
        summary["lambda_max"] = spec.lambda_max
        summary["lambda_bar"] = spec.lambda_bar
    return records, summary, True


def _dump_to(path: str, lap: Laplacian) -> None:
    with open(path, "w") as fh:
        dump_matrix(lap.matrix, fh)


def _radius_reference(n: int, r: int, s: int, p: float, slack: float) -> float:
    d = binom(n - s, r - s) * p
    return s / (n - s) + slack * math.sqrt((1.0 - p) / d)


def _run_radius(cfg: ExperimentConfig):
    bound = _radius_reference(cfg.n, cfg.r, cfg.s, cfg.p, cfg.slack)

    def one(k: int, seed: int) -> dict:
        h = sample(RandomModel(cfg.n, cfg.r, cfg.p, seed), _resolve_budget(cfg))
        spec = eigenvalues_sym(_laplacian_of(h, cfg.s).matrix)
        lam = spectral_radius(spec)
        return {
            "trial": k,
            "seed": seed,
            "edges": h.num_edges,
            "lambda_bar": lam,
            "bound": bound,
            "within": bool(lam <= bound),
        }

    records = _map_trials(cfg, one)
    good = [rec for rec in records if "error" not in rec]
    within = sum(rec["within"] for rec in good)
    summary = {
        "trials": cfg.trials,
        "errors": len(records) - len(good),
        "within": within,
        "bound": bound,
        "slack": cfg.slack,
        "max_lambda_bar": max((rec["lambda_bar"] for rec in good), default=None),
    }
    return records, summary, within == cfg.trials


def _run_semicircle(cfg: ExperimentConfig):
    radius = 2.0 * math.sqrt(
        binom(cfg.r - cfg.s, cfg.s)
        * binom(cfg.n - cfg.s, cfg.r - cfg.s)
        * cfg.p
        * (1.0 - cfg.p)
    )

    def one(k: int, seed: int) -> dict:
        h = sample(RandomModel(cfg.n, cfg.r, cfg.p, seed), _resolve_budget(cfg))
        c = centered_weight(h, cfg.s, cfg.p)
        scaled = scaled_ecdf(eigenvalues_sym(c), 0.0, radius)
        return {"trial": k, "points": scaled.points}

    per_trial = _map_trials(cfg, one)
    errors = [rec for rec in per_trial if "error" in rec]
    pooled = np.concatenate([rec["points"] for rec in per_trial if "points" in rec])
    ks = ks_distance(Ecdf(pooled), semicircle_cdf)
    lo, hi = -1.25, 1.25
    counts, edges = np.histogram(pooled, bins=cfg.bins, range=(lo, hi))
    records = [
        {"bin_left": float(edges[i]), "bin_right": float(edges[i + 1]),
         "count": int(counts[i])}
        for i in range(cfg.bins)
    ]
    summary = {
        "trials": cfg.trials,
        "errors": len(errors),
        "pooled": int(pooled.size),
        "outside_range": int(pooled.size - counts.sum()),
        "radius": radius,
        "ks_distance": ks,
        "ks_tol": cfg.ks_tol,
    }
    return records, summary, not errors and ks <= cfg.ks_tol


def _run_walk_count(cfg: ExperimentConfig):
    cen = census(cfg.n, cfg.r, cfg.s, cfg.t, _resolve_budget(cfg))
    records = []
    violations = 0
    for (i, j), cnt in sorted(cen.counts.items()):
        bnd = census_upper_bound(cfg.n, cfg.r, cfg.s, cfg.t, i, j)
        violations += cnt > bnd
        records.append(
            {"n": cfg.n, "r": cfg.r, "s": cfg.s, "t": cfg.t,
             "i": i, "j": j, "count": cnt, "bound": bnd}
        )
    summary = {"cells": len(records), "total": cen.total, "violations": violations}
    return records, summary, violations == 0


def _run_mixing(cfg: ExperimentConfig):
    single = cfg.use_complete or cfg.input_path

    def one(k: int, seed: int) -> dict:
        h = _instance(cfg, seed)
        g = build_aux(h, cfg.s)
        spec = eigenvalues_sym(normalized_laplacian(g).matrix)
        lam = spectral_radius(spec)
        rep = apps.mixing_contraction(
            apps.transition_system(g), lam, steps=cfg.steps, tol=cfg.tol
        )
        rec = {
            "trial": k,
            "factors": [float(f) for f in rep.factors],
            "bound": rep.bound,
            "skipped": rep.skipped,
            "holds": rep.holds,
        }
        if not single:
            rec["seed"] = seed
        return rec

    records = _map_trials(cfg, one)
    holds = sum(rec.get("holds", False) for rec in records)
    summary = {"trials": cfg.trials, "holds": holds, "steps": cfg.steps}
    return records, summary, holds == cfg.trials


def _run_diameter(cfg: ExperimentConfig):
    single = cfg.use_complete or cfg.input_path

    def one(k: int, seed: int) -> dict:
        h = _instance(cfg, seed)
        g = build_aux(h, cfg.s)
        spec = eigenvalues_sym(normalized_laplacian(g).matrix)
        diam = apps.s_diameter(g)
        bnd = apps.diameter_bound(spec, h, cfg.s)
        rec = {"trial": k, "diameter": diam, "bound": bnd,
               "within": bool(diam <= bnd)}
        if not single:
            rec["seed"] = seed
        return rec

    records = _map_trials(cfg, one)
    good = [rec for rec in records if "error" not in rec]
    within = sum(rec["within"] for rec in good)
    summary = {"trials": cfg.trials, "errors": len(records) - len(good),
               "within": within}
    return records, summary, within == cfg.trials


def _run_expansion(cfg: ExperimentConfig):
    def one(k: int, seed: int) -> dict:
        h = _instance(cfg, seed)
        spec = eigenvalues_sym(_laplacian_of(h, cfg.s).matrix)
        lam = spectral_radius(spec)
        count = binom(h.n, cfg.s)
        size = max(1, round(cfg.family_frac * count))
        # family draws get their own stream so instance sampling is untouched
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=cfg.seed, spawn_key=(k, 1))
        )
        fam_s = [sset_unrank(int(x), h.n, cfg.s)
                 for x in rng.choice(count, size, replace=False)]
        fam_t = [sset_unrank(int(x), h.n, cfg.s)
                 for x in rng.choice(count, size, replace=False)]
        rep = apps.edge_expansion(h, cfg.s, fam_s, fam_t, lam, tol=cfg.tol)
        rec = {
            "trial": k,
            "family_size": size,
            "e_st": rep.e_st,
            "e_s": rep.e_s,
            "e_t": rep.e_t,
            "lhs": rep.lhs,
            "rhs": rep.rhs,
            "holds": rep.holds,
        }
        if not (cfg.use_complete or cfg.input_path):
            rec["seed"] = seed
        return rec

    records = _map_trials(cfg, one)
    holds = sum(rec.get("holds", False) for rec in records)
    summary = {"trials": cfg.trials, "holds": holds}
    return records, summary, holds == cfg.trials


def _run_ekr(cfg: ExperimentConfig):
    sizes = [cfg.s] if cfg.s else list(range(1, cfg.n // 2 + 1))
    records = []
    for s in sizes:
        b = apps.ekr_bound(cfg.n, s)
        records.append(
            {"n": cfg.n, "s": s, "n_plus": b.n_plus, "n_minus": b.n_minus,
             "bound": b.bound, "star": b.star, "match": b.bound == b.star}
        )
    matches = sum(rec["match"] for rec in records)
    summary = {"rows": len(records), "matches": matches}
    return records, summary, matches == len(records)


def _run_monotonicity(cfg: ExperimentConfig):
    single = cfg.use_complete or cfg.input_path

    def one(k: int, seed: int) -> dict:
        h = _instance(cfg, seed)
        rep = apps.monotonicity_check(h, tol=cfg.tol)
        rec = {
            "trial": k,
            "rows": [
                {"s": row.s, "lambda1": row.lambda1, "lambda_max": row.lambda_max}
                for row in rep.rows
            ],
            "lambda1_nonincreasing": rep.lambda1_nonincreasing,
            "lambda_max_nondecreasing": rep.lambda_max_nondecreasing,
        }
        if not single:
            rec["seed"] = seed
        return rec

    records = _map_trials(cfg, one)
    ok = sum(
        rec.get("lambda1_nonincreasing", False)
        and rec.get("lambda_max_nondecreasing", False)
        for rec in records
    )
    summary = {"trials": cfg.trials, "holds": ok}
    return records, summary, ok == cfg.trials


def _run_diagnostics(cfg: ExperimentConfig):
    d = binom(cfg.n - cfg.s, cfg.r - cfg.s) * cfg.p
    count = binom(cfg.n, cfg.s)
    window = 3.0 * math.sqrt(d * math.log(count))
    reference = count * d * (1.0 - cfg.p)

    def one(k: int, seed: int) -> dict:
        h = sample(RandomModel(cfg.n, cfg.r, cfg.p, seed), _resolve_budget(cfg))
        stats = degree_stats(h, cfg.s, d_ref=d)
        degs = stats.degrees
        outside = int(((degs <= d - window) | (degs >= d + window)).sum())
        pert = apps.perturbation_diagnostics(h, cfg.s, cfg.p)
        return {
            "trial": k,
            "seed": seed,
            "degree_min": int(stats.min),
            "degree_max": int(stats.max),
            "outside_window": outside,
            "sum_sq_ratio": float(stats.sum_sq_dev / reference),
            "norms": pert.norms,
            "identity_residual": pert.identity_residual,
            "triangle_holds": pert.triangle_holds,
        }

    records = _map_trials(cfg, one)
    good = [rec for rec in records if "error" not in rec]
    ok = sum(
        rec["outside_window"] == 0
        and rec["triangle_holds"]
        and rec["identity_residual"] <= cfg.tol
        for rec in good
    )
    summary = {
        "trials": cfg.trials,
        "errors": len(records) - len(good),
        "holds": int(ok),
        "expected_degree": d,
        "window": window,
        "sum_sq_reference": reference,
    }
    return records, summary, ok == cfg.trials


_RUNNERS = {
    "spectrum": _run_spectrum,
    "radius": _run_radius,
    "semicircle": _run_semicircle,
    "walk-count": _run_walk_count,
    "mixing": _run_mixing,
    "diameter": _run_diameter,
    "expansion": _run_expansion,
    "ekr": _run_ekr,
    "monotonicity": _run_monotonicity,
    "diagnostics": _run_diagnostics,
}


def run(config: ExperimentConfig) -> ExperimentReport:
    """Execute one experiment; deterministic given the config."""
    records, summary, passed = _RUNNERS[config.subcommand](config)
    stamp = None
    if not config.deterministic:
        stamp = datetime.now(timezone.utc).isoformat()
    return ExperimentReport(config.echo(), records, summary, passed, stamp)


# ------------------------------------------------------------------- output


def _plain(x):
    """Recursively strip numpy types so json sees only built-ins."""
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def _format_json(rep: ExperimentReport) -> str:
    doc = {"config": _plain(rep.config)}
    if rep.timestamp is not None:
        doc["timestamp"] = rep.timestamp
    doc["records"] = _plain(rep.records)
    doc["summary"] = _plain(rep.summary)
    doc["pass"] = rep.passed
    return json.dumps(doc, indent=2) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(_plain(v), separators=(";", ":"))
    return str(v)


def _format_csv(rep: ExperimentReport) -> str:
    lines = ["# config " + json.dumps(_plain(rep.config), separators=(",", ":"))]
    if rep.timestamp is not None:
        lines.append("# timestamp " + rep.timestamp)
    recs = _plain(rep.records)
    if recs:
        keys = list(recs[0])
        for rec in recs[1:]:
            for k in rec:
                if k not in keys:
                    keys.append(k)
        lines.append(",".join(keys))
        for rec in recs:
            lines.append(",".join(_csv_cell(rec.get(k, "")) for k in keys))
    for k, v in _plain(rep.summary).items():
        lines.append(f"# {k}={_csv_cell(v)}")
    lines.append(f"# pass={_csv_cell(rep.passed)}")
    return "\n".join(lines) + "\n"


def _atomic_write(path: str, text: str) -> None:
    # full document lands in one rename; a failed run leaves no partial file
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def emit(rep: ExperimentReport, cfg: ExperimentConfig) -> None:
    text = _format_json(rep) if cfg.format == "json" else _format_csv(rep)
    if cfg.output:
        _atomic_write(cfg.output, text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="hyperlap",
        description="Spectra of loose Laplacians of uniform hypergraphs.",
    )
    sub = top.add_subparsers(dest="subcommand", required=True)

    def common(p, trials_default=1):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=trials_default)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", default=None, metavar="PATH")
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--deterministic", action="store_true")
        p.add_argument("--tol", type=float, default=1e-9)

    def source(p, with_input=True):
        p.add_argument("--complete", action="store_true", dest="use_complete")
        p.add_argument("--p", type=float, default=None)
        if with_input:
            p.add_argument("--input", default=None, metavar="PATH",
                           dest="input_path")

    ps = sub.add_parser("spectrum", help="eigenvalues of the s-th Laplacian")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--r", type=int, required=True)
    ps.add_argument("--s", type=int, required=True)
    ps.add_argument("--dump-matrix", default=None, metavar="PATH",
                    dest="dump_path")
    source(ps)
    common(ps)

    pr = sub.add_parser("radius", help="lambda_bar of random instances vs bound")
    for flag in ("--n", "--r", "--s"):
        pr.add_argument(flag, type=int, required=True)
    pr.add_argument("--p", type=float, required=True)
    pr.add_argument("--slack", type=float, default=3.0)
    common(pr, trials_default=10)

    pc = sub.add_parser("semicircle", help="scaled spectrum of W - E(W) vs the law")
    for flag in ("--n", "--r", "--s"):
        pc.add_argument(flag, type=int, required=True)
    pc.add_argument("--p", type=float, required=True)
    pc.add_argument("--bins", type=int, default=40)
    pc.add_argument("--ks-tol", type=float, default=0.05, dest="ks_tol")
    common(pc, trials_default=10)

    pw = sub.add_parser("walk-count", help="good closed walk census with bounds")
    for flag in ("--n", "--r", "--s", "--t"):
        pw.add_argument(flag, type=int, required=True)
    common(pw)

    for name, helptext in (
        ("mixing", "random-walk contraction factors vs lambda_bar"),
        ("diameter", "BFS s-distance diameter vs the spectral bound"),
        ("expansion", "edge counts between random s-set families vs the bound"),
        ("monotonicity", "lambda_1 and lambda_max across stop sizes"),
    ):
        pp = sub.add_parser(name, help=helptext)
        pp.add_argument("--n", type=int, required=True)
        pp.add_argument("--r", type=int, required=True)
        if name != "monotonicity":
            pp.add_argument("--s", type=int, required=True)
        if name == "mixing":
            pp.add_argument("--steps", type=int, default=3)
        if name == "expansion":
            pp.add_argument("--family-frac", type=float, default=0.25,
                            dest="family_frac")
        source(pp)
        common(pp)

    pe = sub.add_parser("ekr", help="intersecting-family bound from eigenvalue counts")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--s", type=int, default=None)
    common(pe)

    pd = sub.add_parser("diagnostics", help="degree concentration and perturbation split")
    for flag in ("--n", "--r", "--s"):
        pd.add_argument(flag, type=int, required=True)
    pd.add_argument("--p", type=float, required=True)
    common(pd, trials_default=5)

    return top


def _config_from(ns: argparse.Namespace) -> ExperimentConfig:
    known = {f.name for f in fields(ExperimentConfig)}
    return ExperimentConfig(**{k: v for k, v in vars(ns).items() if k in known})


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    cfg = _config_from(ns)

    needs_p = cfg.subcommand in {"radius", "semicircle", "diagnostics"}
    if not needs_p and cfg.subcommand in {
        "spectrum", "mixing", "diameter", "expansion", "monotonicity"
    }:
        if not (cfg.use_complete or cfg.input_path or cfg.p is not None):
            parser.error(f"{cfg.subcommand} needs --complete, --input, or --p")
        if (cfg.use_complete or cfg.input_path) and cfg.trials > 1:
            parser.error("--trials > 1 only makes sense with --p")
    if cfg.trials < 1:
        parser.error("--trials must be at least 1")
    if cfg.jobs < 1:
        parser.error("--jobs must be at least 1")

    try:
        report = run(cfg)
    except HyperlapError as exc:
        # setup-level failure: still a complete, structured document
        report = ExperimentReport(
            cfg.echo(),
            [],
            {"error": type(exc).__name__, "message": str(exc)},
            False,
            None if cfg.deterministic else datetime.now(timezone.utc).isoformat(),
        )
        emit(report, cfg)
        return 2
    emit(report, cfg)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
