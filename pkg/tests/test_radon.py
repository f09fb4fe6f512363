import math

import pytest
from scipy.integrate import quad

from supertransform.harmonics import harmonic_basis
from supertransform.hermite import psi_tilde_element
from supertransform.operators import bosonic_derivative, fermionic_derivative
from supertransform.radon import (RadonResult, hermite_1d, omega_universe,
                                  one_dim_fourier, radon,
                                  radon_expected_eigenbasis,
                                  reduce_mod_sphere)
from supertransform.scalars import ExactScalar, to_float
from supertransform.superalg import (GaussianFunction, SuperPolynomial,
                                     VariableUniverse, vector_square)
from tests.conftest import random_poly


def test_hermite_1d_small():
    assert hermite_1d(0) == {0: 1}
    assert hermite_1d(1) == {1: 1}
    assert hermite_1d(2) == {2: 1, 0: -1}
    assert hermite_1d(3) == {3: 1, 1: -3}
    with pytest.raises(ValueError):
        hermite_1d(-1)


def test_one_dim_fourier_against_quadrature():
    # oracle: numeric integral of e^{ipr} r^k e^{-r^2/2} at p in {0, 1}
    for k in (0, 1, 2, 3):
        sym = one_dim_fourier({k: ExactScalar.one()})
        for p in (0.0, 1.0):
            sym_val = sum(to_float(c) * p ** e for e, c in sym.items()) \
                * math.exp(-p * p / 2)
            re = quad(lambda r: math.cos(p * r) * r ** k
                      * math.exp(-r * r / 2), -14, 14, limit=200)[0]
            im = quad(lambda r: math.sin(p * r) * r ** k
                      * math.exp(-r * r / 2), -14, 14, limit=200)[0]
            assert abs(complex(re, im) - sym_val) < 1e-10, (k, p)


def test_one_dim_fourier_k0():
    got = one_dim_fourier({0: ExactScalar.one()})
    assert got == {0: ExactScalar.two_pi_half_power(1)}


def test_reduce_mod_sphere_examples():
    # omega^2 + 1 -> 0
    for m, n in [(1, 0), (2, 1), (3, 1)]:
        uo = omega_universe(m, n)
        f = vector_square(uo) + SuperPolynomial.one(uo)
        assert not reduce_mod_sphere(f)
    # m=1, n=0: w1^4 -> 1
    uo = omega_universe(1, 0)
    f = SuperPolynomial(uo, {((4,), 0): ExactScalar.one()})
    assert reduce_mod_sphere(f) == SuperPolynomial.one(uo)
    # m=2, n=1: w2^2 -> 1 + wf1 wf2 - w1^2
    uo = omega_universe(2, 1)
    f = SuperPolynomial(uo, {((0, 2), 0): ExactScalar.one()})
    want = (SuperPolynomial.one(uo)
            + SuperPolynomial(uo, {((0, 0), 0b11): ExactScalar.one()})
            - SuperPolynomial(uo, {((2, 0), 0): ExactScalar.one()}))
    assert reduce_mod_sphere(f) == want
    with pytest.raises(ValueError):
        reduce_mod_sphere(SuperPolynomial.one(omega_universe(0, 1)))


def test_radon_rejects_pure_fermionic():
    u = VariableUniverse.standard(0, 1)
    with pytest.raises(ValueError, match="fermionic"):
        radon(GaussianFunction(SuperPolynomial.one(u)))


def test_radon_of_gaussian():
    for m, n in [(1, 0), (1, 1), (2, 1), (3, 1)]:
        u = VariableUniverse.standard(m, n)
        env = GaussianFunction(SuperPolynomial.one(u))
        got = radon(env)
        uo = omega_universe(m, n)
        want = RadonResult.from_omega_poly(
            SuperPolynomial.one(uo),
            {0: ExactScalar.two_pi_half_power(u.superdim - 1)})
        assert got == want


def test_radon_closed_form_spot():
    for m, n in [(1, 1), (2, 1)]:
        u = VariableUniverse.standard(m, n)
        for k in (0, 1, 2):
            for j in range((4 - k) // 2 + 1):
                for h in harmonic_basis(k, "full", u).elements[:2]:
                    got = radon(psi_tilde_element(j, h))
                    want = radon_expected_eigenbasis(j, k, h, u)
                    assert got == want, (m, n, j, k)


def test_radon_derivative_rules(rng):
    u = VariableUniverse.standard(2, 1)
    uo = omega_universe(2, 1)
    for _ in range(6):
        g = GaussianFunction(random_poly(u, rng, degree=3, nterms=4))
        rg = radon(g)
        # bosonic: R(d_{ x_i } g) = w_i d_p R(g)
        for i in range(u.m):
            lhs = radon(bosonic_derivative(g, i))
            wi = SuperPolynomial.bosonic_var(uo, i)
            assert lhs == rg.p_derivative().mul_omega(wi)
        # paper's d_{x`_{2i}} (internal odd index): +1/2 wf_{2i-1} d_p
        lhs = radon(fermionic_derivative(g, 1))
        w_odd = SuperPolynomial.fermionic_var(uo, 0,
                                              ExactScalar.rational(1, 2))
        assert lhs == rg.p_derivative().mul_omega(w_odd)
        # paper's d_{x`_{2i-1}} (internal even index): -1/2 wf_{2i} d_p
        lhs = radon(fermionic_derivative(g, 0))
        w_even = SuperPolynomial.fermionic_var(uo, 1,
                                               ExactScalar.rational(-1, 2))
        assert lhs == rg.p_derivative().mul_omega(w_even)


def test_radon_result_algebra():
    uo = omega_universe(1, 0)
    one = SuperPolynomial.one(uo)
    r1 = RadonResult.from_omega_poly(one, {0: ExactScalar.one()})
    r2 = RadonResult.from_omega_poly(one, {1: ExactScalar.one()})
    s = r1 + r2
    assert s.terms == {((0,), 0): {0: ExactScalar.one(),
                                   1: ExactScalar.one()}}
    assert (s - r2) == r1
    # d/dp of e^{-p^2/2} is -p e^{-p^2/2}
    assert r1.p_derivative() == r2.scale(ExactScalar.rational(-1))
    js = s.to_json()
    assert js["envelope"] == "exp(-p^2/2)"
    assert js["terms"][0]["p_poly"]


def test_radon_output_reduced():
    u = VariableUniverse.standard(2, 1)
    f = GaussianFunction(SuperPolynomial(
        u, {((0, 4), 0): ExactScalar.one()}))
    res = radon(f)
    last = res.universe.m - 1
    assert all(key[0][last] < 2 for key in res.terms)
