from fractions import Fraction as F

import pytest

from spinhl.arith import SpinParams, sample_point
from spinhl.identities import (
    check_cor_main2,
    check_hl_corollary,
    check_kawanaka,
    check_key_lemma2,
    check_key_lemma2_A,
    check_lemma1_report,
    check_lemma2_report,
    check_main1,
    check_main2,
    check_rec1,
    check_rec2,
    check_rec2v,
    check_reduction_chain,
    key_lemma1_sides,
    lemma_point,
    polynomial_expansion_equal,
    run_all,
    run_check,
    series_parameters,
    weight_cor,
    weight_main1,
    weight_main2,
)


def test_weights_trivial_partition():
    spin = SpinParams((F(1, 5),), F(1, 3))
    t = F(1, 2)
    q = t * t
    lam = (0, 0)
    assert weight_main1(lam, spin, q) == (1 + spin.lookup(0)) * (1 + spin.lookup(0) * q) / ((1 - q) * (1 - q * q))
    # at gamma = 1 the refined weight collapses to the plain one
    assert weight_main2(lam, spin, t, F(1), spin.lookup(0)) == weight_cor(lam, spin, t)


def test_main1_degenerate_cases():
    t, spin, _ = series_parameters(3, 1)
    assert check_main1(0, 1, spin, t, 4).passed
    assert check_main1(1, 1, spin, t, 5).passed


def test_main1_small():
    t, spin, _ = series_parameters(5, 1)
    rep = check_main1(2, 1, spin, t, 4)
    assert rep.passed
    assert rep.to_dict()["status"] == "pass"


def test_cor_and_main2_small():
    cache = {}
    t, spin, gamma = series_parameters(7, 1)
    assert check_cor_main2(2, 1, spin, t, 4, cache=cache).passed
    assert check_main2(2, 1, spin, t, 4, gamma, cache=cache).passed
    assert check_main2(2, 1, spin, t, 4, F(1), cache=cache).passed


def test_main2_rejects_gamma_zero_without_limit_data():
    t, spin, _ = series_parameters(7, 1)
    with pytest.raises(ValueError):
        check_main2(1, 1, spin, t, 3, F(0))


def test_hl_and_kawanaka_small():
    t, _, _ = series_parameters(11, 0)
    assert check_hl_corollary(1, t, 5).passed
    assert check_hl_corollary(2, t, 4).passed
    assert check_kawanaka(2, t, 4).passed


def test_smoke_bounded_specialization():
    # tail spin -1/q stays well defined and internally consistent
    t = F(2, 5)
    spin = SpinParams((), -1 / (t * t))
    assert check_main1(2, 0, spin, t, 3).passed


def test_recurrences_small():
    cache = {}
    t, spin, gamma = series_parameters(13, 1)
    assert check_rec1(2, 1, spin, t, 3, cache=cache).passed
    assert check_rec2v(2, 1, spin, t, 3, cache=cache).passed
    assert check_rec2(2, 1, spin, t, 3, gamma, cache=cache).passed
    assert check_rec1(1, 1, spin, t, 4, cache=cache).passed


def test_key_lemma1_length_one_is_exact_identity():
    # (1 - s u) = (1 + s)(1 - u) + (u - s) for every u, s
    for u in (F(3, 7), F(9, 2)):
        for s in (F(1, 5), F(4, 3)):
            lhs, rhs = key_lemma1_sides((u,), F(2, 9), s)
            assert lhs == (1 - s * u)
            assert lhs == rhs


def test_key_lemma1_vanishes_at_coincident_values():
    pt = lemma_point(19, 3)
    u = (pt.u[0], pt.u[1], pt.u[1])
    lhs, rhs = key_lemma1_sides(u, pt.q, pt.spin.tail)
    assert lhs == 0 and rhs == 0


def test_key_lemma1_at_u_equals_s():
    pt = lemma_point(23, 3)
    s = pt.spin.tail
    u = pt.u[:2] + (s,)
    lhs, rhs = key_lemma1_sides(u, pt.q, s)
    assert lhs == rhs


def test_key_lemma_reports():
    for n in (1, 2, 3):
        assert check_lemma1_report(n, seed=29).passed
        assert check_lemma2_report(n, seed=31).passed


def test_key_lemma2_gamma_one():
    pt = lemma_point(37, 2)
    assert check_key_lemma2(2, pt, pt.spin.tail, F(1))
    assert check_key_lemma2_A(2, pt, pt.spin.tail, pt.gamma)


def test_key_lemma2_empty_family():
    from spinhl.identities import key_lemma2_sides

    pt = sample_point(41, 0)
    lhs, rhs = key_lemma2_sides(pt, pt.spin.tail, pt.gamma)
    assert lhs == 1 and rhs == 1


def test_rec2_at_gamma_one_reduces_to_rec2v():
    # the gamma exponent is an Iverson bracket at the smallest part zero, so
    # gamma = 1 collapses the refined recurrence onto the plain one termwise
    cache = {}
    t, spin, _ = series_parameters(17, 1)
    assert check_rec2(2, 1, spin, t, 3, F(1), cache=cache).passed
    assert check_rec2v(2, 1, spin, t, 3, cache=cache).passed


def test_recurrences_with_empty_prefix():
    # p = 0 exercises the pure geometric-tail path (no explicit l terms for
    # the plain recurrences, a single gamma term for the refined one)
    cache = {}
    t, spin, gamma = series_parameters(19, 0)
    assert check_rec1(2, 0, spin, t, 3, cache=cache).passed
    assert check_rec2v(2, 0, spin, t, 3, cache=cache).passed
    assert check_rec2(2, 0, spin, t, 3, gamma, cache=cache).passed


def test_polynomial_expansion_helper():
    nodes = [F(k, 3) for k in range(1, 9)]
    f = lambda x: 2 * x * x + x - 3
    g = lambda x: (2 * x - 1) * x + 2 * x - 3
    assert polynomial_expansion_equal(f, g, 2, nodes, nodes[5:])
    assert not polynomial_expansion_equal(f, lambda x: f(x) + 1, 2, nodes, nodes[5:])


def test_reduction_chains():
    for n in (1, 2):
        for which in ("main1", "cor", "main2"):
            rep = check_reduction_chain(n, 1, which, seed=7)
            assert rep.passed, (n, which, rep.witness)
    rep0 = check_reduction_chain(2, 0, "main1", seed=9)
    assert rep0.passed


def test_run_check_dispatch_and_reports():
    rep = run_check("main1", n=1, p=0, D=4, seed=3)
    assert rep.passed and rep.params["seed"] == 3
    with pytest.raises(ValueError):
        run_check("nonsense")


def test_run_all_battery():
    reports = run_all(n=2, p=1, D=3, seed=7)
    assert all(r.passed for r in reports), [(r.check, r.status) for r in reports]
    names = [r.check for r in reports]
    assert names.count("main2") == 2
    d = reports[0].to_dict()
    assert set(d) == {"check", "params", "status", "witness"}


def test_run_all_jobs_flag_keeps_results():
    serial = [r.to_dict() for r in run_all(n=1, p=1, D=3, seed=5)]
    threaded = [r.to_dict() for r in run_all(n=1, p=1, D=3, seed=5, jobs=4)]
    assert serial == threaded
