import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twlab import dlpp
from twlab.dlpp import ModelSpec
from twlab.errors import DomainError, KindError, RangeError, TooLargeError


def test_scaling_constants_quarter():
    mu, sigma, d = dlpp.scaling_constants(0.25)
    assert mu == pytest.approx(2.0, abs=1e-15)
    assert sigma == pytest.approx(2 * 2 ** (-1 / 3) * 1.5 ** (1 / 3), rel=1e-14)
    assert sigma == pytest.approx(1.81712, abs=1e-5)
    assert d == pytest.approx(2 ** (-1 / 3) / 1.5 ** (2 / 3), rel=1e-14)
    assert d == pytest.approx(0.60570, abs=1e-5)
    with pytest.raises(RangeError):
        dlpp.scaling_constants(1.0)


def test_geometric_moments():
    rng = np.random.Generator(np.random.PCG64(3))
    k = dlpp.geometric_from_uniform(rng.random(10**6), 0.5)
    assert k.min() == 0
    assert k.mean() == pytest.approx(1.0, abs=0.01)
    assert k.var() == pytest.approx(2.0, abs=0.05)


def test_geometric_scalar_and_limits():
    rng = np.random.Generator(np.random.PCG64(4))
    assert all(dlpp.sample_geometric(rng, 1e-12) == 0 for _ in range(1000))
    assert dlpp.geometric_from_uniform(np.array([0.0]), 0.5)[0] == 0
    for p in (0.0, 1.0, -0.2):
        with pytest.raises(RangeError):
            dlpp.sample_geometric(rng, p)


def test_geometric_pmf():
    rng = np.random.Generator(np.random.PCG64(5))
    k = dlpp.geometric_from_uniform(rng.random(200_000), 0.3)
    freq = np.bincount(k, minlength=4)[:4] / k.size
    np.testing.assert_allclose(freq, 0.7 * 0.3 ** np.arange(4), atol=4e-3)


def test_trial_seed_is_deterministic_and_distinct():
    assert dlpp.trial_seed(1, 2) == dlpp.trial_seed(1, 2)
    seeds = {dlpp.trial_seed(m, t) for m in range(20) for t in range(50)}
    assert len(seeds) == 1000
    assert all(0 <= s < 2**64 for s in seeds)


def test_model_validation():
    with pytest.raises(KindError):
        ModelSpec("square", 4, 0.5)
    with pytest.raises(RangeError):
        ModelSpec("point_to_point", 0, 0.5)
    with pytest.raises(RangeError):
        ModelSpec("point_to_point", 4, 1.5)
    with pytest.raises(RangeError):
        ModelSpec("stationary", 4, 0.25, w_plus=5.0)  # alpha sqrt(q) < 0
    with pytest.raises(RangeError):
        ModelSpec("stationary", 8, 0.81, w_minus=-3.0)  # alpha sqrt(q) > 1
    with pytest.raises(RangeError):
        ModelSpec("spiked", 2, 0.5, ws=(0.0, 0.0, 0.0))
    assert ModelSpec("spiked", 8, 0.5, ws=[0, 1]).ws == (0.0, 1.0)


def test_lpp_small_example():
    t = dlpp.lpp_table(np.array([[1, 2], [3, 4]]))
    assert t.at(2, 2) == 8
    assert t.at(0, 5) == 0
    assert not dlpp.lpp_table(np.zeros((5, 3), int)).G.any()


def test_brute_force_counts_and_single_cell():
    assert sum(1 for _ in dlpp.lattice_paths(3, 3)) == 6
    w = np.array([[7, 1], [2, 3]])
    assert dlpp.brute_force_lpp(w, 1, 1) == 7
    with pytest.raises(TooLargeError):
        dlpp.brute_force_lpp(np.zeros((15, 15), int), 15, 15)


@pytest.mark.parametrize("shape", [(1, 1), (2, 3), (4, 4), (3, 4)])
def test_dp_matches_brute_force(shape):
    rng = np.random.default_rng(shape[0] * 10 + shape[1])
    for _ in range(100):
        w = rng.geometric(0.5, size=shape) - 1
        g = dlpp.lpp_table(w)
        for m in range(1, shape[0] + 1):
            for n in range(1, shape[1] + 1):
                assert g.at(m, n) == dlpp.brute_force_lpp(w, m, n)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32))
def test_table_monotone(r, c, seed):
    w = np.random.default_rng(seed).integers(0, 5, size=(r, c))
    g = dlpp.lpp_table(w).G
    assert np.all(np.diff(g, axis=0) >= 0)
    assert np.all(np.diff(g, axis=1) >= 0)


def test_rotational_symmetry_and_n1():
    g = dlpp.build_grid(ModelSpec("rotational", 1, 0.5), 0, 0)
    w = g.w
    assert w[1, 1] == w[0, 0] and w[1, 0] == w[0, 1]
    a, b, c = g.at(1, 1), g.at(1, 2), g.at(2, 1)
    assert dlpp.rotational_decomposition(g) == (2 * a + max(b, c), 2 * a + max(b, c))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 20), st.integers(0, 10**6))
def test_rotational_grid_symmetric(n, t):
    w = dlpp.build_grid(ModelSpec("rotational", n, 0.5), 9, t).w
    np.testing.assert_array_equal(w, w[::-1, ::-1])


def test_rotational_crossing_terms_reflect():
    g = dlpp.build_grid(ModelSpec("rotational", 6, 0.5), 1, 1)
    G = dlpp.lpp_table(g).G
    m = 12
    u = np.arange(m)
    terms = G[u, m - 1 - u] + G[m - 1 - u, u] - g.w[u, m - 1 - u]
    np.testing.assert_array_equal(terms, terms[::-1])


def test_decompositions_against_brute_force():
    for t in range(30):
        g = dlpp.build_grid(ModelSpec("rotational", 2, 0.5), 5, t)
        assert dlpp.rotational_decomposition(g)[0] == dlpp.brute_force_lpp(g, 4, 4)
        g = dlpp.build_grid(ModelSpec("stationary", 3, 0.5, w_plus=0.2, w_minus=-0.1), 5, t)
        assert dlpp.stationary_decomposition(g)[1] == dlpp.brute_force_lpp(g, 3, 3)
        g = dlpp.build_grid(ModelSpec("spiked", 4, 0.5, ws=(0.3, -0.2)), 5, t)
        assert dlpp.spiked_decomposition(g)[1] == dlpp.brute_force_lpp(g, 4, 4)


def test_stationary_origin_and_hand_case():
    g = dlpp.build_grid(ModelSpec("stationary", 1, 0.5, w_plus=0.1, w_minus=0.1), 3, 4)
    assert g.at(0, 0) == 0
    expect = max(g.at(1, 0), g.at(0, 1)) + g.at(1, 1)
    assert dlpp.stationary_decomposition(g) == (expect, expect)


def test_stationary_zero_boundary():
    w = np.zeros((5, 5), np.int64)
    w[1:, 1:] = np.random.default_rng(0).integers(0, 4, size=(4, 4))
    g = dlpp.WeightGrid(w, ModelSpec("stationary", 4, 0.5), seed=0, origin=0)
    bulk = dlpp.lpp_table(w[1:, 1:]).at(4, 4)
    assert dlpp.stationary_decomposition(g) == (bulk, bulk)


def test_spiked_hand_case_k1():
    w = np.array([[3, 1], [0, 5]])
    g = dlpp.WeightGrid(w, ModelSpec("spiked", 2, 0.5, ws=(0.0,)), seed=0)
    # leave row 1 at column 1 or 2, then finish in row 2
    assert dlpp.spiked_decomposition(g) == (9, max(3 + 0 + 5, 3 + 1 + 5))


def test_spiked_all_rows_special():
    for t in range(50):
        g = dlpp.build_grid(ModelSpec("spiked", 3, 0.5, ws=(0.1, 0.2, 0.3)), 2, t)
        lhs, rhs = dlpp.spiked_decomposition(g)
        assert lhs == rhs


def test_decomposition_kind_errors():
    g = dlpp.build_grid(ModelSpec("point_to_point", 3, 0.5), 0, 0)
    for f in (dlpp.rotational_decomposition, dlpp.stationary_decomposition, dlpp.spiked_decomposition):
        with pytest.raises(KindError):
            f(g)


def test_determinism_and_square_prefix():
    m = ModelSpec("point_to_point", 6, 0.5)
    a = dlpp.build_grid(m, 11, 3)
    b = dlpp.build_grid(m, 11, 3)
    assert a.w.tobytes() == b.w.tobytes()
    s = dlpp.build_grid(m, 11, 3, region="square")
    np.testing.assert_array_equal(a.w[:6, :6], s.w)
    assert dlpp.build_grid(m, 11, 4).w.tobytes() != a.w.tobytes()


def test_triangle_outside_is_zero():
    w = dlpp.build_grid(ModelSpec("point_to_point", 5, 0.9), 0, 0).w
    i, j = np.indices(w.shape)
    assert not w[i + j + 2 > 10].any()


def test_spiked_rows_use_their_parameters():
    m = ModelSpec("spiked", 400, 0.5, ws=(3.0,))
    w = dlpp.build_grid(m, 0, 0).w
    p = m.boundary_parameters()[0]
    assert w[0].mean() == pytest.approx(p / (1 - p), rel=0.3)
    assert w[1:].mean() == pytest.approx(1.0, rel=0.02)


def test_h_process():
    n, q = 5, 0.5
    g = dlpp.build_grid(ModelSpec("point_to_point", n, q), 1, 1)
    table = dlpp.lpp_table(g)
    tau, h = dlpp.h_process(table, n, q)
    mu, sigma, d = dlpp.scaling_constants(q)
    assert tau.size == 2 * n - 1
    assert tau[n - 1] == 0.0
    assert h[n - 1] == pytest.approx((table.at(n, n) - mu * n) / (sigma * n ** (1 / 3)))
    np.testing.assert_allclose(np.diff(tau), d * n ** (-2 / 3))
    small = dlpp.lpp_table(dlpp.build_grid(ModelSpec("point_to_point", n, q), 1, 1, region="square"))
    with pytest.raises(DomainError):
        dlpp.h_process(small, n, q)


def test_statistics_definitions():
    n, q = 6, 0.5
    mu, sigma, _ = dlpp.scaling_constants(q)
    m = ModelSpec("point_to_point", n, q)
    g = dlpp.build_grid(m, 2, 2)
    _, h = dlpp.h_process(dlpp.lpp_table(g), n, q)
    assert dlpp.statistic(m, g, "sup") == pytest.approx(2 ** (2 / 3) * h.max())
    assert dlpp.statistic(m, g, "origin") == pytest.approx(h[n - 1])
    rot = ModelSpec("rotational", n, q)
    zero = dlpp.WeightGrid(np.zeros((2 * n, 2 * n), np.int64), rot, seed=0)
    expect = -2 * n * mu / (2 ** (2 / 3) * (2 * n) ** (1 / 3) * sigma)
    assert dlpp.statistic(rot, zero) == pytest.approx(expect)
    with pytest.raises(KindError):
        dlpp.statistic(rot, g)
    with pytest.raises(KindError):
        dlpp.statistic(m, g, "maxu")


def test_aa_variants_close():
    rot = ModelSpec("rotational", 64, 0.5)
    for t in range(20):
        g = dlpp.build_grid(rot, 0, t)
        direct = dlpp.statistic(rot, g, "direct")
        maxu = dlpp.statistic(rot, g, "maxu")
        assert maxu <= direct + 1e-12  # the long form drops the final crossing step


MODELS = [
    (ModelSpec("point_to_point", 9, 0.5), "origin"),
    (ModelSpec("point_to_point", 9, 0.5), "sup"),
    (ModelSpec("rotational", 9, 0.5), "direct"),
    (ModelSpec("rotational", 9, 0.5), "maxu"),
    (ModelSpec("stationary", 9, 0.25, w_plus=0.4, w_minus=-0.4), None),
    (ModelSpec("spiked", 9, 0.5, ws=(0.2, -0.3)), None),
    (ModelSpec("two_point_independent", 9, 0.5), None),
]


@pytest.mark.parametrize("model, variant", MODELS)
def test_streaming_matches_full_tables(model, variant):
    for t in range(10):
        full = dlpp.sample_statistic(model, 4, t, variant, streaming=False)
        stream = dlpp.sample_statistic(model, 4, t, variant, streaming=True)
        assert full == stream


def test_large_n_uses_streaming(monkeypatch):
    monkeypatch.setattr(dlpp, "FULL_TABLE_MAX_N", 8)
    called = []
    orig = dlpp.streamed_statistic
    monkeypatch.setattr(dlpp, "streamed_statistic", lambda *a: called.append(1) or orig(*a))
    dlpp.sample_statistic(ModelSpec("point_to_point", 9, 0.5), 0, 0)
    assert called
