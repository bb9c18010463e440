from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.hypotest import (
    ConfigError,
    Status,
    TruncationTooSmall,
    WindowSearchConfig,
    assemble_form,
    basis_vector_bound,
    boundary_sweep,
    certify_hyponormal,
    certify_onset,
    decide,
    exact_value,
    hncon_value,
    kl_ratio_bound,
    lambda_ratio,
    lambda_ratio_limit,
    margin_ratio,
    refute_onset,
    refute_truncated,
    refute_window,
    tzero_bound,
    window_value,
)
from artifact.sequences import SymbolParams, lambda_eig, omega, sigma


def P(n, m, s=0, t=0, a=0):
    return SymbolParams(n, m, s, t, a)


# -- form assembly -------------------------------------------------------------


def test_form_a_zero():
    p = P(1, 1, 1, 1, 0)
    Q = assemble_form(p, 10)
    assert len(Q.band) == 10 - 2
    assert all(b == 0 for b in Q.band)
    assert Q.diag == [sigma(p, k) for k in range(10)]


def test_form_symmetric_boundary():
    Q = assemble_form(P(1, 1, 1, 1, 1), 10)
    assert all(d == 0 for d in Q.diag)
    assert all(b == 0 for b in Q.band)


def test_form_basis_value_float():
    p = P(1, 2, 1, 2, 0.1)
    Q = assemble_form(p, 64, exact=False)
    e0 = [1.0] + [0.0] * 63
    assert Q.value(e0) == pytest.approx(float(sigma(p, 0)) + 0.01 * float(omega(p, 0)))


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        assemble_form(P(2, 3, 0, 0, 1), 5)


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.fractions(0, 4, max_denominator=4),
    st.fractions(0, 4, max_denominator=4),
    st.fractions(0, 3, max_denominator=6),
    st.lists(st.fractions(-3, 3, max_denominator=5), min_size=1, max_size=30),
)
def test_form_value_matches_direct_sum(n, m, s, t, a, u):
    p = P(n, m, s, t, a)
    K = max(len(u), n + m + 1)
    u = [x for x in u] + [F(0)] * (K - len(u))
    Q = assemble_form(p, K)
    # nonnegative vectors realise the worst-case phases exactly
    v = [abs(x) for x in u]
    assert Q.value(v) == hncon_value(p.exact(), v)
    # any phase choice can only increase the form
    assert hncon_value(p.exact(), u) >= Q.value(v)


def test_complex_phases_never_beat_real_worst_case():
    rng = np.random.default_rng(7)
    p = P(1, 2, F(1, 2), 3, F(3, 10)).floating()
    Q = assemble_form(p, 40, exact=False)
    for _ in range(20):
        u = rng.normal(size=40) + 1j * rng.normal(size=40)
        assert hncon_value(p, u) >= Q.value(np.abs(u)) - 1e-12


# -- certification -------------------------------------------------------------


@pytest.mark.parametrize("params", [P(1, 1, 1, 1), P(3, 2, F(1, 2), 7), P(1, 5, 0, 0)])
def test_a_zero_certified(params):
    assert certify_hyponormal(params).certified


def test_certify_large_t_below_threshold():
    v = certify_hyponormal(P(1, 1, 1, 100, F(1, 100)))
    assert v.certified
    cert = v.certificate
    assert cert["min_finite_margin"] > 0 and cert["tail_value_at_start"] > 0


def test_huge_a_never_certified():
    v = decide(P(1, 1, 1, 10, 10))
    assert not v.certified


def test_certificate_consistent_with_dense_eigenvalue():
    p = P(1, 2, 1, 2, F(1, 10))
    assert certify_hyponormal(p).certified
    Q = assemble_form(p, 400)
    assert np.linalg.eigvalsh(Q.dense())[0] > 0


# -- refutation ----------------------------------------------------------------


def test_basis_witness():
    v = refute_truncated(P(1, 1, 1, 1, 2), 16)
    assert v.refuted and v.witness.kind == "basis"
    assert v.witness_value == exact_value(P(1, 1, 1, 1, 2), v.witness) < 0
    # sigma + 4 omega = -3 sigma under the symmetry
    assert v.witness_value == -3 * sigma(P(1, 1, 1), v.witness.support_start)


def test_degenerate_boundary_inconclusive():
    v = decide(P(1, 1, 1, 1, 1), K=64, K_max=256)
    assert v.status is Status.INCONCLUSIVE
    assert v.diagnostics.get("degenerate_form")


def test_eigenvector_witness_is_exact():
    p = P(1, 1, 1, 16, F(3, 16))
    v = decide(p)
    assert v.refuted
    assert v.witness_value == exact_value(p, v.witness)
    assert v.witness_value < 0


def test_witness_values_positive_and_in_support():
    p = P(1, 1, 1, 16, F(3, 16))
    w = refute_truncated(p, 512).witness
    assert all(x >= 0 for x in w.values)
    assert any(w.values)


# -- window construction -------------------------------------------------------


def test_window_refutes_c2():
    v = refute_window(1, 1, 1, 2)
    assert v.refuted
    d = v.diagnostics
    assert d["a"] == F(2) / d["t"]
    assert all(x == 1 for x in v.witness.values)
    assert len(v.witness.values) == d["k2"] + 1
    p = P(1, 1, 1, d["t"], d["a"])
    assert window_value(p, d["k1"], d["k2"]) == v.witness_value < 0


def test_window_eta_threshold():
    with pytest.raises(ConfigError):
        refute_window(1, 1, 1, 1)


def test_window_config_inequality_holds():
    cfg = WindowSearchConfig.for_family(1, 1, 1, 2)
    lhs = margin_ratio(cfg.eta, cfg.k2, cfg.offset) * (1 - cfg.epsilon) / (1 + cfg.epsilon)
    assert lhs > 1
    with pytest.raises(ConfigError):
        WindowSearchConfig(eta=cfg.eta, epsilon=cfg.epsilon, k2=2, offset=2)


@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**5), st.integers(1, 50))
def test_window_length_one_has_no_cross_terms(n, m, k1, t):
    p = P(n, m, 1, t, F(2, t))
    assert window_value(p, k1, 0) == sigma(p, k1) + F(4, t * t) * omega(p, k1)


def test_onsets_dichotomy_small_t():
    t_grid = [2**j for j in range(0, 8)]
    on = certify_onset(1, 1, 1, 1, t_grid)
    assert on.t is not None
    off = refute_onset(1, 1, 1, 2, t_grid)
    assert off.t is not None


# -- sweep ---------------------------------------------------------------------


def test_sweep_brackets_one():
    r = boundary_sweep(1, 1, 1, 1, F(1, 100))
    assert r.status == "bracketed"
    assert r.a_lo <= 1 <= r.a_hi
    assert r.width <= F(1, 100)
    assert r.lo_verdict.certified and r.hi_verdict.refuted


def test_sweep_large_t_threshold_reported():
    r = boundary_sweep(1, 1, 1, 100, F(1, 1000))
    assert r.status in ("bracketed", "inconclusive")
    # the asymptotic threshold 1.5/t lies near the bracket (report, not equality)
    assert r.a_hi > F(1, 100)


def test_sweep_tolerance_already_met():
    r = boundary_sweep(1, 1, 1, 1, F(1), a_hi=F(1, 2))
    assert r.status == "unverified"
    assert len(r.evaluations) == 1


# -- necessary bounds ----------------------------------------------------------


def test_basis_bound_tzero():
    b = basis_vector_bound(P(1, 1, 1, 0))
    assert b.value == F(4, 9) == tzero_bound(1, 1, 1)
    assert b.limit == 3


def test_basis_bound_symmetric_is_one():
    b = basis_vector_bound(P(2, 2, F(1, 3), F(1, 3)))
    assert b.value == 1


def test_tzero_example():
    assert tzero_bound(2, 3, F(1, 2)) == F(2, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.fractions(0, 5, max_denominator=4))
def test_tzero_entries_and_scan(n, m, s):
    b = basis_vector_bound(P(n, m, s, 0), K_scan=300)
    assert min(b.first, b.limit) == tzero_bound(n, m, s)
    assert b.first == F((m + 1) * (n + 1)) / (n + s + 1) ** 2
    assert b.limit == n * (n + 2 * s) / F(m * m)
    # every basis vector gives a necessary condition, so the scan is never weaker
    assert b.value <= tzero_bound(n, m, s)


def test_basis_scan_sharper_than_two_terms():
    b = basis_vector_bound(P(1, 2, 1, 0))
    assert b.value == F(11, 36) < tzero_bound(1, 2, 1) == F(2, 3)


@pytest.mark.parametrize("m,q,expected", [(3, 1, F(9, 16)), (10, 3, F(64, 121)), (6, 5, F(4, 49))])
def test_kl_bound(m, q, expected):
    b = kl_ratio_bound(m, q)
    assert b.value == expected
    assert b.min_is_first


def test_lambda_ratio_identity():
    for k in range(1, 50):
        assert lambda_ratio(2, 0, k) == 1


def test_lambda_ratio_limit():
    L = lambda_ratio_limit(5, 2)
    e4 = abs(lambda_ratio(5, 2, 10**4) - L)
    e5 = abs(lambda_ratio(5, 2, 10**5) - L)
    assert e4 < F(11, 10**4) and e5 < F(11, 10**5)
    assert 9 < e4 / e5 < 11


def test_lambda_ratio_first_values():
    # (m=3, q=1): the ratio grows from k=1 to k=2
    r1, r2 = lambda_ratio(3, 1, 1), lambda_ratio(3, 1, 2)
    assert r1 == lambda_eig(3, 2, 1) / lambda_eig(2, 1, 1)
    assert r1 < r2
    assert r1 >= F(9, 16)
