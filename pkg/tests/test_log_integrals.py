"""Tests for the spectral and quadrature evaluators of |A|^2 log|B|^2 integrals."""

import json
import math

import numpy as np
import pytest

import circentropy as ce
from circentropy.corpus import instance_rng, random_circle_poly
from circentropy.log_integrals import polar_q_coefficients, polar_roots_certified
from circentropy.polycircle import eval_poly


def test_trig_square_examples():
    ts = ce.trig_square([1.0, 1.0])
    assert np.allclose(ts.coefficients, [1, 2, 1])
    ts = ce.trig_square([1.0, -2.0, 1.0])
    assert np.allclose(ts.coefficients, [1, -4, 6, -4, 1])
    ts = ce.trig_square([0, 0, 0, 1.0])  # z^3
    assert ts.degree == 3
    assert ts.coefficient(0) == 1.0
    assert all(ts.coefficient(k) == 0 for k in (1, 2, 3, 5))
    with pytest.raises(ce.ZeroPolynomial):
        ce.trig_square([0.0, 0.0])


def test_trig_square_hermitian_and_pointwise():
    rng = instance_rng(30)
    a = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    ts = ce.trig_square(a)
    c = ts.coefficients
    assert np.max(np.abs(c - np.conj(c[::-1]))) == 0.0
    assert abs(ts.coefficient(0) - ce.parseval_norm(a)) < 1e-12
    t = np.arange(1024) * (2 * np.pi / 1024)
    direct = np.abs(eval_poly(a, np.exp(1j * t))) ** 2
    assert np.max(np.abs(ts(t) - direct)) < 1e-10 * np.max(direct)


def test_poly_roots_basics():
    cert = ce.poly_roots([1.0, -1.0])  # 1 - z
    assert np.allclose(cert.roots, [1.0])
    assert cert.infinite_count == 0
    # constant (the polar factor of a binomial): no roots
    cert = ce.poly_roots([3.0 + 0j])
    assert cert.roots.size == 0
    # trailing zeros count as roots at infinity
    cert = ce.poly_roots([2.0, 1.0, 0.0, 0.0])
    assert cert.infinite_count == 2
    assert np.allclose(cert.roots, [-2.0])
    with pytest.raises(ce.ZeroPolynomial):
        ce.poly_roots([0.0])


def test_poly_roots_residual_certificates():
    rng = instance_rng(31)
    b = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    cert = ce.poly_roots(b)
    resid = np.abs(eval_poly(b, cert.roots))
    assert np.max(resid) < 1e-9 * np.sum(np.abs(b))
    assert np.max(cert.residuals) < 1e-12
    # a high-multiplicity zero fails certification
    with pytest.raises(ce.IllConditioned):
        ce.poly_roots(ce.from_roots([1.0] * 8).coefficients)


def test_log_pair_spectral_frozen_values():
    assert abs(ce.log_pair_spectral([1, 1], [1, 1]) - 2.0) < 1e-14
    assert abs(ce.log_pair_spectral([1, -2, 1], [1, -2, 1]) - 14.0) < 1e-13
    assert abs(ce.log_pair_spectral([1, -2, 1], [1, -1]) - 7.0) < 1e-13


def test_log_pair_spectral_mahler_and_scaling():
    # mean of log|e^{it} - rho|^2 is 0 inside, log|rho|^2 outside
    assert abs(ce.log_pair_spectral([1.0], [-1.0, 1.0])) < 1e-14
    assert abs(ce.log_pair_spectral([1.0], [1.0, -0.5]) - 0.0) < 1e-14
    val = ce.log_pair_spectral([1.0, 1.0], [1.0, -0.5])
    assert abs(val - (-1.0)) < 1e-14


def test_log_pair_quadrature_matches_spectral_frozen():
    assert abs(ce.log_pair_quadrature([1, 1], [1, 1]) - 2.0) < 1e-8
    assert abs(ce.log_pair_quadrature([1, -2, 1], [1, -1]) - 7.0) < 1e-8
    assert abs(ce.log_pair_quadrature([1.0], [-1.0, 1.0])) < 1e-8


def test_route_agreement_random_sample():
    for n in (1, 3, 7, 12, 16):
        for i in range(8):
            p = random_circle_poly(n, instance_rng(32, n, i), unit_norm=True)
            a = p.coefficients
            q = polar_q_coefficients(a, n)
            s = ce.log_pair_spectral(a, a, b_roots=p.roots)
            qd = ce.log_pair_quadrature(a, a, b_roots=p.roots)
            assert abs(s - qd) < 1e-7
            s = ce.log_pair_spectral(a, q)
            qd = ce.log_pair_quadrature(a, q)
            assert abs(s - qd) < 1e-7


def test_rotation_invariance():
    p = random_circle_poly(6, instance_rng(33, 6))
    gamma = np.exp(0.37j)
    rotated = ce.from_roots(p.roots * np.conj(gamma), p.leading * gamma**p.degree)
    for poly in (p,):
        base_e = ce.log_pair_spectral(p.coefficients, p.coefficients, b_roots=p.roots)
        rot_e = ce.log_pair_spectral(
            rotated.coefficients, rotated.coefficients, b_roots=rotated.roots
        )
        assert abs(base_e - rot_e) < 1e-9
    q = polar_q_coefficients(p.coefficients, 6)
    qr = polar_q_coefficients(rotated.coefficients, 6)
    assert abs(
        ce.log_pair_spectral(p.coefficients, q)
        - ce.log_pair_spectral(rotated.coefficients, qr)
    ) < 1e-9


def test_scaling_law():
    rng = instance_rng(34)
    a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    b = ce.from_angles(rng.uniform(0, 2 * np.pi, 4)).coefficients
    c = 2.5 - 1.3j
    base = ce.log_pair_spectral(a, b)
    scaled = ce.log_pair_spectral(a, c * b)
    expected = base + ce.parseval_norm(a) * math.log(abs(c) ** 2)
    assert abs(scaled - expected) < 1e-9


def test_ratio_functional_frozen_values():
    n = 6
    p = ce.from_angles((np.pi + 2 * np.pi * np.arange(n)) / n)  # 1 + z^6
    rf = ce.ratio_functional(p)
    assert abs(rf.value - 2.0) < 1e-12
    assert abs(rf.jensen_integral) < 1e-12

    rf = ce.ratio_functional(ce.from_roots([1.0, 1.0]))
    assert abs(rf.value - 7.0) < 1e-12
    assert abs(rf.entropy_integral - 14.0) < 1e-12

    p1 = ce.from_roots([-1.0])  # 1 + z, n = 1
    rf = ce.ratio_functional(p1)
    assert abs(rf.value - ce.parseval_norm(p1)) < 1e-13
    assert rf.routes["entropy"] == "spectral"


def test_polar_roots_certified_multiplicity():
    # triple zero of p gives a double zero of q at the same point
    p = ce.normalize_self_inversive(ce.from_roots([1.0, 1.0, 1.0, -1.0, 1j])).normalized
    q = polar_q_coefficients(p.coefficients, 5)
    roots = polar_roots_certified(p, q)
    near_one = np.sum(np.abs(roots - 1.0) < 1e-8)
    assert near_one == 2
    assert np.max(np.abs(eval_poly(q, roots[np.abs(roots - 1.0) >= 1e-8]))) < 1e-10


def test_log_continuity_along_coalescence():
    # perturbed values converge to the difference-form values on p itself
    p = ce.normalize_self_inversive(
        ce.from_roots([1.0, 1.0, np.exp(2j), np.exp(2j), np.exp(4.5j)])
    ).normalized
    rf = ce.ratio_functional(p)
    prev_e = prev_j = np.inf
    for k in (2, 6, 10, 14, 20):
        pe = ce.perturb_roots(p, 2.0**-k)
        rfe = ce.ratio_functional(pe)
        dev_e = abs(rfe.entropy_integral - rf.entropy_integral)
        dev_j = abs(rfe.jensen_integral - rf.jensen_integral)
        assert dev_e < max(prev_e, 1e-12) * 1.5
        assert dev_j < max(prev_j, 1e-12) * 1.5
        prev_e, prev_j = dev_e, dev_j
    assert prev_e < 1e-4 and prev_j < 1e-4


def test_finiteness_at_maximal_multiplicity():
    for n in (2, 5, 8):
        p = ce.normalize_self_inversive(ce.from_roots([np.exp(0.4j)] * n)).normalized
        rf = ce.ratio_functional(p)
        assert math.isfinite(rf.value)
        assert math.isfinite(rf.entropy_integral)
        assert math.isfinite(rf.jensen_integral)


def test_quadrature_config_io(tmp_path):
    path = tmp_path / "quad.json"
    path.write_text(json.dumps({"base_nodes": 1024, "tolerance": 1e-7}))
    cfg = ce.QuadratureConfig.from_file(path)
    assert cfg.base_nodes == 1024
    assert cfg.tolerance == 1e-7
    assert cfg.max_depth == 40
    with pytest.raises(ValueError):
        ce.QuadratureConfig.from_dict({"nodes": 12})


def test_budget_exceeded():
    cfg = ce.QuadratureConfig(base_nodes=8, tolerance=1e-30, max_depth=2)
    with pytest.raises(ce.BudgetExceeded):
        ce.log_pair_quadrature([1, 1], [1, -2, 1], config=cfg)
