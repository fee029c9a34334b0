"""Spectral applications: random s-walk mixing, s-diameter bounds, edge
expansion, intersecting-family bounds, cross-order monotonicity, and the
four-part perturbation split against the complete reference.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .combin import as_sset, binom, kneser_adjacency, sset_rank
from .errors import (
    BadParams,
    DegenerateKneser,
    DimMismatch,
    Disconnected,
    EmptyFamily,
    EmptySample,
    NotLoose,
    ZeroDegree,
)
from .hypergraph import Hypergraph, degree_stats
from .laplacian import AuxGraph, build_aux, normalized_laplacian
from .spectra import Spectrum, eigenvalues_sym, spectral_norm


def _kept_neighbors(g: AuxGraph) -> tuple[np.ndarray, list[np.ndarray]]:
    kept = np.flatnonzero(g.stop_degrees > 0)
    adj = g.weights[np.ix_(kept, kept)] > 0
    return kept, [np.flatnonzero(adj[i]) for i in range(kept.size)]


def _bfs(nbrs: list[np.ndarray], src: int) -> np.ndarray:
    dist = np.full(len(nbrs), -1, dtype=np.int64)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(g: AuxGraph) -> bool:
    """True when every s-set has positive degree and the auxiliary graph
    is one component."""
    kept, nbrs = _kept_neighbors(g)
    if kept.size < g.dim or kept.size == 0:
        return kept.size == g.dim == 0
    return bool((_bfs(nbrs, 0) >= 0).all())


def s_diameter(g: AuxGraph) -> int:
    """Largest BFS eccentricity over the positive-degree part of the
    auxiliary graph."""
    kept, nbrs = _kept_neighbors(g)
    if kept.size == 0:
        raise Disconnected("auxiliary graph has no positive-degree stops")
    best = 0
    for src in range(kept.size):
        dist = _bfs(nbrs, src)
        if (dist < 0).any():
            raise Disconnected("auxiliary graph is disconnected")
        best = max(best, int(dist.max()))
    return best


def diameter_bound(spec: Spectrum, h: Hypergraph, s: int) -> int:
    """Spectral upper bound on the s-diameter.

    ceil(log(|E| C(r,s) / delta) / log((l_max + l_1)/(l_max - l_1))) with
    delta the minimum s-set degree.  Returns 1 outright when the spectral
    gap at the top closes (l_max = l_1 forces a complete auxiliary graph).
    """
    delta = degree_stats(h, s).min
    if delta == 0:
        raise Disconnected("a zero-degree s-set makes the s-diameter infinite")
    if spec.trivial_count != 1:
        raise Disconnected("spectrum does not look connected (extra zeros)")
    lam1 = spec.lambda1
    lmax = spec.lambda_max
    num = math.log(h.num_edges * binom(h.r, s) / delta)
    if lmax - lam1 <= 1e-12:
        return 1
    return math.ceil(num / math.log((lmax + lam1) / (lmax - lam1)))


@dataclass(frozen=True)
class TransitionSystem:
    """Random s-walk on the positive-degree stops: row-stochastic matrix
    and its stationary distribution."""

    matrix: np.ndarray = field(repr=False)
    stationary: np.ndarray = field(repr=False)
    kept: np.ndarray = field(repr=False)


def transition_system(g: AuxGraph) -> TransitionSystem:
    """P = D_aux^{-1} W restricted to positive-degree stops; the stationary
    distribution is degree / volume."""
    kept = np.flatnonzero(g.stop_degrees > 0)
    if kept.size == 0:
        raise EmptySample("no positive-degree stops")
    w = g.weights[np.ix_(kept, kept)].astype(np.float64)
    deg = g.degrees[kept].astype(np.float64)
    return TransitionSystem(w / deg[:, None], deg / deg.sum(), kept)


@dataclass(frozen=True)
class MixingReport:
    """Worst pi-weighted L2 contraction factor per step, against a bound."""

    factors: np.ndarray
    bound: float
    holds: bool
    skipped: int


def mixing_contraction(
    ts: TransitionSystem,
    bound: float,
    steps: int = 1,
    initial: np.ndarray | None = None,
    tol: float = 1e-9,
) -> MixingReport:
    """Push start distributions through the walk and measure contraction.

    Each step reports max ||(q - pi) P||_pi / ||q - pi||_pi over the start
    rows (point masses on every stop by default).  Start/step pairs whose
    incoming deviation is already ~0 are vacuous and counted in skipped.
    """
    if steps < 1:
        raise BadParams(f"need steps >= 1, got {steps}")
    dim = ts.stationary.size
    if initial is None:
        starts = np.eye(dim)
    else:
        starts = np.atleast_2d(np.asarray(initial, dtype=np.float64))
        if starts.shape[1] != dim:
            raise DimMismatch(f"start rows have size {starts.shape[1]}, need {dim}")
        if np.any(starts < -1e-12) or np.any(np.abs(starts.sum(axis=1) - 1) > 1e-9):
            raise BadParams("start rows must be probability distributions")
    weight = 1.0 / ts.stationary
    x = starts - ts.stationary
    prev = np.sqrt((x * x * weight).sum(axis=1))
    factors = np.zeros(steps)
    skipped = 0
    for m in range(steps):
        x = x @ ts.matrix
        cur = np.sqrt((x * x * weight).sum(axis=1))
        live = prev > 1e-14
        skipped += int((~live).sum())
        factors[m] = float((cur[live] / prev[live]).max()) if live.any() else 0.0
        prev = cur
    holds = bool(np.all(factors <= bound + tol))
    return MixingReport(factors, float(bound), holds, skipped)


@dataclass(frozen=True)
class ExpansionReport:
    """Edge expansion of a pair of s-set families against the mixing bound."""

    e_st: float
    e_s: float
    e_t: float
    lhs: float
    rhs: float
    holds: bool


def edge_expansion(
    h: Hypergraph,
    s: int,
    fam_s,
    fam_t,
    lambda_bar: float,
    tol: float = 1e-9,
) -> ExpansionReport:
    """Compare |e(S,T) - e(S)e(T)| with lambda_bar sqrt(e(S)e(T)(1-e(S))(1-e(T))).

    e(S,T) is the fraction of edges containing a disjoint pair from the two
    families.  Since r >= 2s, every edge contains at least one disjoint
    pair of s-sets, so the normalizer is just the edge count.
    """
    if s < 1 or 2 * s > h.r:
        raise NotLoose(f"need 1 <= s <= r/2, got s={s}, r={h.r}")
    fam_a = {as_sset(x, h.n) for x in fam_s}
    fam_b = {as_sset(x, h.n) for x in fam_t}
    if not fam_a or not fam_b:
        raise EmptyFamily("both families must be nonempty")
    for fam in (fam_a, fam_b):
        for x in fam:
            if len(x) != s:
                raise BadParams(f"{x} is not an {s}-set")
    if h.num_edges == 0:
        raise EmptySample("hypergraph has no edges")
    hit = 0
    for e in h.edges:
        subs = [c for c in combinations(e, s)]
        found = False
        for a in subs:
            if a in fam_a:
                sa = set(a)
                if any(b in fam_b and sa.isdisjoint(b) for b in subs):
                    found = True
                    break
        hit += found
    degs = degree_stats(h, s).degrees
    vol = int(degs.sum())
    e_st = hit / h.num_edges
    e_s = sum(int(degs[sset_rank(x, h.n)]) for x in fam_a) / vol
    e_t = sum(int(degs[sset_rank(x, h.n)]) for x in fam_b) / vol
    lhs = abs(e_st - e_s * e_t)
    rhs = lambda_bar * math.sqrt(e_s * e_t * (1 - e_s) * (1 - e_t))
    return ExpansionReport(e_st, e_s, e_t, lhs, rhs, lhs <= rhs + tol)


@dataclass(frozen=True)
class EkrBound:
    """Eigenvalue-interlacing bound on intersecting families of s-sets."""

    n_plus: int
    n_minus: int
    bound: int
    star: int


def ekr_bound(n: int, s: int) -> EkrBound:
    """Count complete-hypergraph Laplacian eigenvalues above and below 1.

    An intersecting family of s-sets is no larger than min(N+, N-), which
    collapses to the star size C(n-1, s-1).
    """
    if s < 1 or n < 2 * s:
        raise DegenerateKneser(f"need n >= 2s >= 2, got n={n}, s={s}")
    n_plus = sum(binom(n, 2 * i + 1) - binom(n, 2 * i) for i in range((s - 1) // 2 + 1))
    n_minus = sum(
        binom(n, 2 * i) - (binom(n, 2 * i - 1) if i else 0) for i in range(s // 2 + 1)
    )
    return EkrBound(n_plus, n_minus, min(n_plus, n_minus), binom(n - 1, s - 1))


@dataclass(frozen=True)
class MonotonicityRow:
    s: int
    lambda1: float
    lambda_max: float


@dataclass(frozen=True)
class MonotonicityReport:
    """lambda_1 and lambda_max across every valid stop size."""

    rows: tuple[MonotonicityRow, ...]
    lambda1_nonincreasing: bool
    lambda_max_nondecreasing: bool


def monotonicity_check(h: Hypergraph, tol: float = 1e-9) -> MonotonicityReport:
    """Eigensolve the s-th Laplacian for every s up to r/2 and check that
    lambda_1 never rises and lambda_max never falls as s grows."""
    if h.r < 2:
        raise NotLoose(f"no valid stop size for r={h.r}")
    rows = []
    for s in range(1, h.r // 2 + 1):
        g = build_aux(h, s)
        lap = normalized_laplacian(g)
        if lap.excluded.size:
            raise Disconnected(f"zero-degree {s}-sets present")
        spec = eigenvalues_sym(lap.matrix)
        if spec.trivial_count != 1:
            raise Disconnected(f"auxiliary graph at s={s} is disconnected")
        rows.append(MonotonicityRow(s, spec.lambda1, spec.lambda_max))
    lam1_ok = all(
        rows[i].lambda1 >= rows[i + 1].lambda1 - tol for i in range(len(rows) - 1)
    )
    lmax_ok = all(
        rows[i].lambda_max <= rows[i + 1].lambda_max + tol
        for i in range(len(rows) - 1)
    )
    return MonotonicityReport(tuple(rows), lam1_ok, lmax_ok)


@dataclass(frozen=True)
class PerturbationReport:
    """Norms of the four-part split of the Laplacian perturbation.

    identity_residual is the largest entry of M - (M1+M2+M3+M4), which is
    an algebraic identity and should vanish to rounding.  ratios compare
    each part's norm with its theoretical rate.
    """

    norms: dict[str, float]
    identity_residual: float
    triangle_holds: bool
    ratios: dict[str, float]


def perturbation_diagnostics(h: Hypergraph, s: int, p: float) -> PerturbationReport:
    """Split the deviation of the s-th Laplacian from the complete
    reference into centered, scaled, expectation, and flat parts.

    M = D^{-1/2} W D^{-1/2} / C(r-s,s) - K / C(n-s,s) against the pieces
    M1 (recentring of the degree scaling), M2 (centered weights at expected
    degree), M3 (expectation vs Kneser), M4 (flat degree fluctuation).
    """
    if not 0 < p < 1:
        raise BadParams(f"need 0 < p < 1, got {p}")
    g = build_aux(h, s)
    if (g.stop_degrees == 0).any():
        raise ZeroDegree("every s-set needs positive degree")
    n, r = h.n, h.r
    cap_n = g.dim
    d = binom(n - s, r - s) * p
    kn = kneser_adjacency(n, s).astype(np.float64)
    w = g.weights.astype(np.float64)
    ew = binom(n - 2 * s, r - 2 * s) * p * kn
    c = w - ew
    inv_sqrt = 1.0 / np.sqrt(g.stop_degrees.astype(np.float64))
    scale = np.outer(inv_sqrt, inv_sqrt)
    ones = np.ones((cap_n, cap_n))
    rs = binom(r - s, s)
    m1 = (c * scale - c / d) / rs
    m2 = c / (rs * d)
    m3 = (
        (ew * scale) / rs
        - (d / cap_n) * (ones * scale)
        - kn / binom(n - s, s)
        + ones / cap_n
    )
    m4 = (d * (ones * scale) - ones) / cap_n
    m = (w * scale) / rs - kn / binom(n - s, s)
    resid = float(np.abs(m - (m1 + m2 + m3 + m4)).max())
    norms = {
        "m": spectral_norm(m),
        "m1": spectral_norm(m1),
        "m2": spectral_norm(m2),
        "m3": spectral_norm(m3),
        "m4": spectral_norm(m4),
    }
    triangle = norms["m"] <= norms["m1"] + norms["m2"] + norms["m3"] + norms["m4"] + 1e-9
    log_n = math.log(cap_n)
    ratios = {
        "m1": norms["m1"] / (math.sqrt((1 - p) * log_n) / d),
        "m2": norms["m2"] / math.sqrt((1 - p) / d),
        "m3": norms["m3"] / (math.sqrt(log_n) / (n * math.sqrt(d))),
        "m4": norms["m4"] / math.sqrt((1 - p) / d),
    }
    return PerturbationReport(norms, resid, triangle, ratios)
