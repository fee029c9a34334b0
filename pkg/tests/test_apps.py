"""Spectral applications: mixing, diameter, expansion, intersecting families."""

import numpy as np
import pytest

from hyperlap import (
    BadParams,
    Disconnected,
    EmptyFamily,
    RandomModel,
    binom,
    build_aux,
    complete,
    diameter_bound,
    edge_expansion,
    eigenvalues_sym,
    ekr_bound,
    hypergraph,
    is_connected,
    mixing_contraction,
    monotonicity_check,
    normalized_laplacian,
    perturbation_diagnostics,
    s_diameter,
    sample,
    spectral_radius,
    transition_system,
)


def _spec_of(h, s):
    return eigenvalues_sym(normalized_laplacian(build_aux(h, s)).matrix)


TWO_TRIANGLES = hypergraph(5, 3, [[0, 1, 2], [2, 3, 4]])  # aux at s=1: bowtie
SPLIT = hypergraph(6, 3, [[0, 1, 2], [3, 4, 5]])


def test_is_connected():
    assert is_connected(build_aux(complete(10, 4), 2))
    assert is_connected(build_aux(TWO_TRIANGLES, 1))
    assert not is_connected(build_aux(SPLIT, 1))


def test_s_diameter_hand_cases():
    # overlapping 2-sets are non-adjacent in the auxiliary graph, so even
    # the complete hypergraph needs two hops between them
    assert s_diameter(build_aux(complete(10, 4), 2)) == 2
    assert s_diameter(build_aux(complete(7, 2), 1)) == 1
    assert s_diameter(build_aux(TWO_TRIANGLES, 1)) == 2
    with pytest.raises(Disconnected):
        s_diameter(build_aux(SPLIT, 1))


def test_transition_system():
    ts = transition_system(build_aux(TWO_TRIANGLES, 1))
    assert np.allclose(ts.matrix.sum(axis=1), 1.0)
    assert ts.stationary.sum() == pytest.approx(1.0)
    assert np.allclose(ts.stationary @ ts.matrix, ts.stationary)


def test_mixing_complete():
    g = build_aux(complete(10, 4), 2)
    lam = spectral_radius(_spec_of(complete(10, 4), 2))
    rep = mixing_contraction(transition_system(g), lam, steps=3)
    assert rep.holds
    assert len(rep.factors) == 3
    assert np.all(rep.factors <= lam + 1e-9)


def test_mixing_random_connected():
    for seed in range(5):
        h = sample(RandomModel(12, 3, 0.5, seed))
        g = build_aux(h, 1)
        spec = eigenvalues_sym(normalized_laplacian(g).matrix)
        lam = spectral_radius(spec)
        rep = mixing_contraction(transition_system(g), lam, steps=2)
        assert rep.holds, f"seed {seed}: factors {rep.factors} vs {lam}"


def test_mixing_custom_start():
    g = build_aux(TWO_TRIANGLES, 1)
    lam = spectral_radius(_spec_of(TWO_TRIANGLES, 1))
    q = np.zeros(5)
    q[0] = 1.0
    rep = mixing_contraction(transition_system(g), lam, steps=4, initial=q[None, :])
    assert rep.holds
    with pytest.raises(BadParams):
        mixing_contraction(transition_system(g), lam, initial=np.full((1, 5), 0.3))


def test_diameter_bound_complete():
    h = complete(10, 4)
    spec = _spec_of(h, 2)
    assert diameter_bound(spec, h, 2) == 2
    assert s_diameter(build_aux(h, 2)) <= 2


def test_diameter_bound_degenerate_two_point_spectrum():
    # complete graph: the only nontrivial eigenvalue is n/(n-1), bound is 1
    h = complete(7, 2)
    assert diameter_bound(_spec_of(h, 1), h, 1) == 1


def test_diameter_bound_random():
    hits = 0
    for seed in range(10):
        h = sample(RandomModel(12, 3, 0.5, seed))
        g = build_aux(h, 1)
        if not is_connected(g):
            continue
        hits += 1
        spec = eigenvalues_sym(normalized_laplacian(g).matrix)
        assert s_diameter(g) <= diameter_bound(spec, h, 1)
    assert hits >= 8  # p=0.5 at n=12 is far above the connectivity threshold


def test_diameter_bound_disconnected():
    with pytest.raises(Disconnected):
        diameter_bound(_spec_of(SPLIT, 1), SPLIT, 1)


def test_expansion_pinned_singletons():
    """Two disjoint singleton families in complete(8,4) at s=2."""
    h = complete(8, 4)
    lam = spectral_radius(_spec_of(h, 2))
    rep = edge_expansion(h, 2, [(0, 1)], [(2, 3)], lam)
    assert rep.e_st == pytest.approx(1 / 70)  # exactly one edge contains both
    assert rep.e_s == pytest.approx(15 / 420)
    assert rep.e_t == pytest.approx(15 / 420)
    assert rep.lhs == pytest.approx(abs(1 / 70 - (1 / 28) ** 2))
    # the printed inequality fails on this instance and the report says so
    assert rep.lhs > rep.rhs
    assert not rep.holds


def test_expansion_full_families():
    h = complete(8, 4)
    lam = spectral_radius(_spec_of(h, 2))
    from hyperlap import ssets_colex

    fam = list(ssets_colex(8, 2))
    rep = edge_expansion(h, 2, fam, fam, lam)
    assert rep.e_st == 1.0
    assert rep.e_s == rep.e_t == 1.0
    assert rep.lhs == pytest.approx(0.0)
    assert rep.holds


def test_expansion_errors():
    h = complete(8, 4)
    with pytest.raises(EmptyFamily):
        edge_expansion(h, 2, [], [(0, 1)], 0.25)
    with pytest.raises(BadParams):
        edge_expansion(h, 2, [(0, 1, 2)], [(0, 1)], 0.25)
    from hyperlap import EmptySample

    with pytest.raises(EmptySample):
        edge_expansion(hypergraph(8, 4, []), 2, [(0, 1)], [(2, 3)], 0.25)


def test_ekr_pinned():
    b = ekr_bound(10, 3)
    assert (b.n_plus, b.n_minus, b.bound, b.star) == (84, 36, 36, 36)
    b = ekr_bound(10, 1)
    assert b.bound == b.star == 1
    b = ekr_bound(16, 8)
    assert b.bound == b.star == binom(15, 7)


def test_ekr_counts_match_spectrum_signs():
    """N+ and N- really count eigenvalues above and below 1."""
    for n, s in [(8, 2), (9, 3), (10, 4)]:
        # any r with r >= 2s works: the counts depend only on the Kneser part
        r = 2 * s
        spec = _spec_of(complete(n, r), s)
        above = int((spec.values > 1 + 1e-9).sum())
        below = int((spec.values < 1 - 1e-9).sum())
        b = ekr_bound(n, s)
        assert above == b.n_plus
        assert below == b.n_minus


def test_monotonicity_complete():
    rep = monotonicity_check(complete(10, 4))
    assert [row.s for row in rep.rows] == [1, 2]
    assert rep.rows[0].lambda1 == pytest.approx(10 / 9)
    assert rep.rows[1].lambda1 == pytest.approx(27 / 28)
    assert rep.rows[1].lambda_max == pytest.approx(1.25)
    assert rep.lambda1_nonincreasing
    assert rep.lambda_max_nondecreasing


def test_monotonicity_random():
    for seed in range(3):
        h = sample(RandomModel(12, 4, 0.6, seed))
        rep = monotonicity_check(h)
        assert rep.lambda1_nonincreasing
        assert rep.lambda_max_nondecreasing


def test_monotonicity_disconnected():
    with pytest.raises(Disconnected):
        monotonicity_check(SPLIT)


def test_perturbation_identity_and_triangle():
    rep = perturbation_diagnostics(complete(10, 4), 2, 0.5)
    assert set(rep.norms) == {"m", "m1", "m2", "m3", "m4"}
    assert rep.identity_residual < 1e-12
    assert rep.triangle_holds
    assert rep.norms["m"] <= sum(rep.norms[k] for k in ("m1", "m2", "m3", "m4")) + 1e-9


def test_perturbation_random():
    for seed in range(3):
        h = sample(RandomModel(12, 3, 0.5, seed))
        rep = perturbation_diagnostics(h, 1, 0.5)
        assert rep.identity_residual < 1e-9
        assert rep.triangle_holds
        assert all(v >= 0 for v in rep.ratios.values())
