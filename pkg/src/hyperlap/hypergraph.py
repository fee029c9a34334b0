"""r-uniform hypergraphs: construction, Bernoulli sampling, degrees, text io.

A hypergraph is a frozen set of canonical r-tuples over range(n).  The
Bernoulli model keeps each of the C(n,r) possible edges independently
with probability p; sampling is deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import IO, Iterable

import numpy as np

from .combin import SSet, as_sset, binom, sset_rank, ssets_colex
from .errors import BadParams, BadRank, BadVertex, EmptySample, StopTooLarge, TooLarge

MAX_SAMPLE_EDGES = 10**8


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertex set range(n)."""

    n: int
    r: int
    edges: frozenset[SSet]

    def __post_init__(self):
        if self.n < 0:
            raise BadParams(f"need n >= 0, got {self.n}")
        if self.r < 1:
            raise BadParams(f"need r >= 1, got {self.r}")
        for e in self.edges:
            if len(e) != self.r:
                raise BadVertex(f"edge {e} does not have {self.r} vertices")
            if as_sset(e, self.n) != e:
                raise BadVertex(f"edge {e} is not canonical over range({self.n})")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, vertices: Iterable[int]) -> int:
        """Number of edges containing the given s-set, for any 1 <= s < r."""
        vs = as_sset(vertices, self.n)
        if len(vs) >= self.r:
            raise StopTooLarge(f"{len(vs)}-set is not a proper subset of {self.r}-edges")
        want = set(vs)
        return sum(1 for e in self.edges if want.issubset(e))


def hypergraph(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a hypergraph from an iterable of edges, canonicalizing each."""
    canon = set()
    for e in edges:
        vs = as_sset(e, n)
        if len(vs) != r:
            raise BadVertex(f"edge {tuple(e)} does not have {r} distinct vertices")
        canon.add(vs)
    return Hypergraph(n, r, frozenset(canon))


def complete(n: int, r: int) -> Hypergraph:
    """The complete r-uniform hypergraph on range(n)."""
    if r < 1 or r > n:
        raise BadRank(f"need 1 <= r <= n, got r={r}, n={n}")
    return Hypergraph(n, r, frozenset(ssets_colex(n, r)))


@dataclass(frozen=True)
class RandomModel:
    """Bernoulli edge model: keep each r-set with probability p."""

    n: int
    r: int
    p: float
    seed: int

    def __post_init__(self):
        if self.r < 1 or self.r > self.n:
            raise BadParams(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if not 0 < self.p < 1:
            raise BadParams(f"need 0 < p < 1, got {self.p}")
        if self.seed < 0 or self.seed >= 2**64:
            raise BadParams(f"seed must fit in 64 bits, got {self.seed}")


def expected_stop_degree(n: int, r: int, s: int, p: float) -> float:
    """Expected number of edges through a fixed s-set: C(n-s, r-s) p."""
    if s < 1 or s > r:
        raise StopTooLarge(f"need 1 <= s <= r, got s={s}, r={r}")
    return binom(n - s, r - s) * p


def sample(model: RandomModel, budget: int | None = None) -> Hypergraph:
    """Draw one hypergraph from the Bernoulli model.

    One PCG64 stream seeded by model.seed, one uniform draw per candidate
    edge in colex order; identical models produce identical hypergraphs.
    """
    limit = MAX_SAMPLE_EDGES if budget is None else budget
    count = binom(model.n, model.r)
    if count > limit:
        raise TooLarge(f"{count} candidate edges exceed budget {limit}")
    rng = np.random.default_rng(model.seed)
    draws = rng.random(count)
    edges = frozenset(
        e for e, u in zip(ssets_colex(model.n, model.r), draws) if u < model.p
    )
    return Hypergraph(model.n, model.r, edges)


@dataclass(frozen=True)
class DegreeStats:
    """Degrees of all s-sets in colex order, with summary statistics.

    sum_sq_dev is the sum of squared deviations from d_ref when a
    reference degree is supplied, else from the empirical mean.
    """

    s: int
    degrees: np.ndarray = field(repr=False)
    d_ref: float | None

    @property
    def min(self) -> int:
        return int(self.degrees.min())

    @property
    def max(self) -> int:
        return int(self.degrees.max())

    @property
    def mean(self) -> float:
        return float(self.degrees.mean())

    @property
    def sum_sq_dev(self) -> float:
        center = self.mean if self.d_ref is None else self.d_ref
        return float(((self.degrees - center) ** 2).sum())


def degree_stats(h: Hypergraph, s: int, d_ref: float | None = None) -> DegreeStats:
    """Degree of every s-set of range(n), in colex order."""
    if s < 1 or s > h.r:
        raise StopTooLarge(f"need 1 <= s <= r, got s={s}, r={h.r}")
    if s > h.n:
        raise EmptySample(f"no {s}-sets on {h.n} vertices")
    degs = np.zeros(binom(h.n, s), dtype=np.int64)
    for e in h.edges:
        for sub in combinations(e, s):
            degs[sset_rank(sub, h.n)] += 1
    return DegreeStats(s, degs, d_ref)


def write_hypergraph(h: Hypergraph, fh: IO[str]) -> None:
    """Write the text format: header "n r m", then one sorted edge per line."""
    fh.write(f"{h.n} {h.r} {h.num_edges}\n")
    for e in sorted(h.edges):
        fh.write(" ".join(str(v) for v in e) + "\n")


def read_hypergraph(fh: IO[str]) -> Hypergraph:
    """Parse the text format written by write_hypergraph."""
    header = fh.readline().split()
    if len(header) != 3:
        raise BadParams(f"header must be 'n r m', got {header!r}")
    n, r, m = (int(x) for x in header)
    edges = []
    for k in range(m):
        line = fh.readline().split()
        if not line:
            raise BadParams(f"header promises {m} edges, file ends after {k}")
        if len(line) != r:
            raise BadVertex(f"edge line {k + 1} has {len(line)} fields, expected {r}")
        edges.append([int(x) for x in line])
    got = hypergraph(n, r, edges)
    if got.num_edges != m:
        raise BadParams(f"header promises {m} edges, file holds {got.num_edges}")
    return got
