"""Auxiliary weighted graph on s-sets and its normalized Laplacian.

The auxiliary graph of a hypergraph puts weight W(S,T) = number of edges
containing S u T on every pair of disjoint s-sets S, T (zero otherwise).
Its weighted degree is C(r-s,s) d_S, with d_S the number of edges through
S, so the normalized Laplacian I - D^{-1/2} W D^{-1/2} restricted to
positive-degree s-sets captures the s-th spectral structure of the
hypergraph.  All matrices are dense; s-sets are indexed in colex order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import IO

import numpy as np

from .combin import EigenPair, binom, kneser_adjacency, sset_rank
from .errors import BadParams, DimMismatch, NotLoose, TooLarge, ZeroDegree
from .hypergraph import Hypergraph

MAX_DENSE_DIM = 2048


def _check_loose(r: int, s: int) -> None:
    if s < 1 or 2 * s > r:
        raise NotLoose(f"need 1 <= s <= r/2, got s={s}, r={r}")


@dataclass(frozen=True)
class SymMatrix:
    """A dense real symmetric matrix."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimMismatch(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise DimMismatch("matrix is not symmetric")
        if a.size and not np.all(np.isfinite(a)):
            raise BadParams("matrix has non-finite entries")
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class AuxGraph:
    """Auxiliary weighted graph of a hypergraph at stop size s.

    weights[a, b] is the codegree of the disjoint s-sets of colex ranks a
    and b; stop_degrees[a] is the hypergraph degree of the a-th s-set.
    """

    n: int
    r: int
    s: int
    weights: np.ndarray = field(repr=False)
    stop_degrees: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.weights.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        """Weighted degrees of the auxiliary graph: C(r-s,s) * stop degree."""
        return binom(self.r - self.s, self.s) * self.stop_degrees

    @property
    def volume(self) -> int:
        return int(self.degrees.sum())


def build_aux(h: Hypergraph, s: int, max_dim: int = MAX_DENSE_DIM) -> AuxGraph:
    """Assemble the dense auxiliary weight matrix of h at stop size s."""
    _check_loose(h.r, s)
    dim = binom(h.n, s)
    if dim > max_dim:
        raise TooLarge(f"{dim} s-sets exceed the dense budget of {max_dim}")
    weights = np.zeros((dim, dim), dtype=np.int64)
    degrees = np.zeros(dim, dtype=np.int64)
    for e in h.edges:
        ranks = [sset_rank(sub, h.n) for sub in combinations(e, s)]
        masks = [sum(1 << v for v in sub) for sub in combinations(e, s)]
        for a, ma in zip(ranks, masks):
            degrees[a] += 1
            for b, mb in zip(ranks, masks):
                if ma & mb == 0:
                    weights[a, b] += 1
    return AuxGraph(h.n, h.r, s, weights, degrees)


@dataclass(frozen=True)
class Laplacian:
    """Normalized Laplacian of an auxiliary graph, restricted to the
    positive-degree s-sets (colex ranks in `kept`)."""

    matrix: SymMatrix
    kept: np.ndarray = field(repr=False)
    excluded: np.ndarray = field(repr=False)


def normalized_laplacian(g: AuxGraph) -> Laplacian:
    """I - D^{-1/2} W D^{-1/2} on the positive-degree part of the aux graph."""
    pos = g.stop_degrees > 0
    kept = np.flatnonzero(pos)
    excluded = np.flatnonzero(~pos)
    w = g.weights[np.ix_(kept, kept)].astype(np.float64)
    inv_sqrt = 1.0 / np.sqrt(g.degrees[kept].astype(np.float64))
    lap = np.eye(kept.size) - w * np.outer(inv_sqrt, inv_sqrt)
    return Laplacian(SymMatrix(lap), kept, excluded)


def complete_spectrum(n: int, r: int, s: int) -> list[EigenPair]:
    """Closed-form Laplacian spectrum of the complete r-uniform hypergraph.

    Eigenvalue 1 - (-1)^i C(n-s-i, s-i)/C(n-s, s) with multiplicity
    C(n,i) - C(n,i-1) for i = 0..s, returned ascending by value.
    Multiplicities sum to C(n,s).
    """
    _check_loose(r, s)
    if n < r:
        raise BadParams(f"complete hypergraph needs n >= r, got n={n}, r={r}")
    denom = binom(n - s, s)
    pairs = []
    for i in range(s + 1):
        val = 1.0 - (-1) ** i * binom(n - s - i, s - i) / denom
        mult = binom(n, i) - (binom(n, i - 1) if i >= 1 else 0)
        pairs.append(EigenPair(val, mult))
    return sorted(pairs, key=lambda pr: pr.value)


def centered_weight(
    h: Hypergraph, s: int, p: float, max_dim: int = MAX_DENSE_DIM
) -> SymMatrix:
    """W minus its Bernoulli(p) expectation C(n-2s, r-2s) p K, with K the
    Kneser adjacency on s-sets."""
    _check_loose(h.r, s)
    if not 0 <= p <= 1:
        raise BadParams(f"probability must lie in [0, 1], got {p}")
    g = build_aux(h, s, max_dim=max_dim)
    c = g.weights.astype(np.float64)
    if h.n >= 2 * s:
        coef = binom(h.n - 2 * s, h.r - 2 * s) * p
        c -= coef * kneser_adjacency(h.n, s)
    return SymMatrix(c)


def dump_matrix(m: SymMatrix, fh: IO[str]) -> None:
    """Write dim header, then one lower-triangle row per line.

    Entries are shortest round-trip float reprs, so load_matrix recovers
    the matrix exactly.
    """
    fh.write(f"{m.dim}\n")
    a = m.entries
    for i in range(m.dim):
        fh.write(" ".join(repr(float(x)) for x in a[i, : i + 1]) + "\n")


def load_matrix(fh: IO[str]) -> SymMatrix:
    """Parse the format written by dump_matrix."""
    header = fh.readline().split()
    if len(header) != 1:
        raise DimMismatch(f"expected a lone dimension header, got {header!r}")
    dim = int(header[0])
    if dim < 0:
        raise DimMismatch(f"dimension must be nonnegative, got {dim}")
    a = np.zeros((dim, dim))
    for i in range(dim):
        row = fh.readline().split()
        if len(row) != i + 1:
            raise DimMismatch(f"row {i} has {len(row)} entries, expected {i + 1}")
        vals = [float(x) for x in row]
        a[i, : i + 1] = vals
        a[: i + 1, i] = vals
    return SymMatrix(a)
