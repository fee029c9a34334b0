"""Exact combinatorics: binomials, colex ranking of s-sets, Kneser spectra.

s-sets are canonical tuples of strictly increasing vertex ids in
range(n).  Ranking is colexicographic: rank(S) = sum_i C(v_i, i+1) for
S = (v_0 < v_1 < ... < v_{s-1}), so {0,...,s-1} has rank 0 and the rank
of S does not depend on n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import BadParams, BadRank, BadVertex, DegenerateKneser

SSet = tuple[int, ...]


def binom(n: int, k: int) -> int:
    """Exact C(n,k); 0 when k > n, error when either argument is negative."""
    if n < 0 or k < 0:
        raise BadParams(f"binom needs nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


def catalan(k: int) -> int:
    """k-th Catalan number C(2k,k)/(k+1)."""
    if k < 0:
        raise BadParams(f"catalan needs k >= 0, got {k}")
    return math.comb(2 * k, k) // (k + 1)


def as_sset(vertices: Iterable[int], n: int) -> SSet:
    """Canonicalize an iterable of vertex ids into an s-set tuple.

    Checks that labels are distinct integers in range(n).
    """
    vs = tuple(sorted(vertices))
    if not vs:
        raise BadVertex("empty vertex set")
    for v in vs:
        if not isinstance(v, (int, np.integer)):
            raise BadVertex(f"vertex {v!r} is not an integer")
        if v < 0 or v >= n:
            raise BadVertex(f"vertex {v} outside range(0, {n})")
    if len(set(vs)) != len(vs):
        raise BadVertex(f"repeated vertex in {vs}")
    return tuple(int(v) for v in vs)


def sset_rank(vertices: Iterable[int], n: int) -> int:
    """Colex rank of an s-set among all s-subsets of range(n)."""
    vs = as_sset(vertices, n)
    return sum(math.comb(v, i + 1) for i, v in enumerate(vs))


def sset_unrank(idx: int, n: int, s: int) -> SSet:
    """Inverse of sset_rank: the s-set of colex rank idx in range(n)."""
    if s < 1 or s > n:
        raise BadParams(f"need 1 <= s <= n, got s={s}, n={n}")
    total = math.comb(n, s)
    if idx < 0 or idx >= total:
        raise BadRank(f"rank {idx} outside [0, {total})")
    out = []
    rem = idx
    v = n - 1
    for i in range(s, 0, -1):
        while math.comb(v, i) > rem:
            v -= 1
        out.append(v)
        rem -= math.comb(v, i)
        v -= 1
    out.reverse()
    return tuple(out)


def ssets_colex(n: int, s: int) -> Iterator[SSet]:
    """All s-subsets of range(n) in colex order (rank order)."""
    if s == 0:
        yield ()
        return
    for m in range(s - 1, n):
        for rest in ssets_colex(m, s - 1):
            yield rest + (m,)


@dataclass(frozen=True)
class EigenPair:
    """An eigenvalue together with its multiplicity."""

    value: float
    multiplicity: int


def kneser_adjacency(n: int, s: int) -> np.ndarray:
    """0/1 adjacency of the Kneser graph K(n,s) on colex-ordered s-sets.

    Vertices are the C(n,s) s-sets, adjacent iff disjoint.  Defined for
    any n >= s >= 1 (all-zero when n < 2s).
    """
    if s < 1 or n < s:
        raise BadParams(f"need 1 <= s <= n, got s={s}, n={n}")
    sets = list(ssets_colex(n, s))
    masks = [sum(1 << v for v in t) for t in sets]
    dim = len(sets)
    adj = np.zeros((dim, dim), dtype=np.int64)
    for a in range(dim):
        ma = masks[a]
        for b in range(a + 1, dim):
            if ma & masks[b] == 0:
                adj[a, b] = adj[b, a] = 1
    return adj


def kneser_spectrum(n: int, s: int) -> list[EigenPair]:
    """Adjacency spectrum of K(n,s) in closed form.

    Eigenvalue (-1)^i C(n-s-i, s-i) with multiplicity C(n,i) - C(n,i-1),
    for i = 0..s.  Multiplicities sum to C(n,s).
    """
    if s < 1:
        raise BadParams(f"need s >= 1, got {s}")
    if n < 2 * s:
        raise DegenerateKneser(f"K({n},{s}) needs n >= 2s")
    pairs = []
    for i in range(s + 1):
        val = (-1) ** i * math.comb(n - s - i, s - i)
        mult = math.comb(n, i) - (math.comb(n, i - 1) if i >= 1 else 0)
        pairs.append(EigenPair(float(val), mult))
    return pairs
