from fractions import Fraction

import pytest

from supertransform.fourier import (berezin, convolution_fermionic,
                                    delta_fourier, fermionic_delta,
                                    fermionic_fourier,
                                    fermionic_fourier_gaussian,
                                    fermionic_kernel, bosonic_fourier,
                                    grassmann_shift,
                                    operator_exponential_fourier,
                                    parseval_check, super_fourier,
                                    super_integral, super_integral_pair)
from supertransform.harmonics import (fermionic_square_power, harmonic_basis)
from supertransform.hermite import psi_span
from supertransform.operators import laplace
from supertransform.scalars import ExactScalar
from supertransform.superalg import (GaussianFunction, SuperPolynomial,
                                     VariableUniverse,
                                     fermionic_envelope_poly, sp_mul,
                                     sp_rename)
from tests.conftest import random_poly


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def test_berezin_basics():
    u = VariableUniverse.standard(0, 1)
    top = SuperPolynomial(u, {((), 0b11): ExactScalar.one()})
    got = berezin(top)
    assert got.terms == {((), 0): ExactScalar.pi_half_power(-2)}
    assert not berezin(SuperPolynomial.one(u))
    with pytest.raises(ValueError, match="odd"):
        berezin(top, over=[0])
    with pytest.raises(ValueError, match="pairs"):
        berezin(SuperPolynomial.one(VariableUniverse.standard(0, 2)),
                over=[1, 2])


def test_berezin_exponential_formula(rng):
    # Berezin of exp(x`^2/2) R equals sum_k (-1)^k (2pi)^-n / (2^k k!)
    # (Delta_f^k R)(0)
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        for _ in range(6):
            r = random_poly(u, rng, degree=2 * n, nterms=6)
            lhs = berezin(sp_mul(fermionic_envelope_poly(u), r))
            lhs_const = lhs.terms.get(((), 0), ExactScalar.zero())
            rhs = ExactScalar.zero()
            g = r
            for k in range(n + 1):
                c0 = g.terms.get(((), 0), ExactScalar.zero())
                w = ExactScalar.two_pi_half_power(-2 * n) \
                    * ExactScalar.rational(Fraction((-1) ** k, 2 ** k
                                                    * _factorial(k)))
                rhs = rhs + c0 * w
                g = laplace(g, "fermionic")
            assert lhs_const == rhs


def test_fermionic_power_formula():
    # F(x`^(2k)) = 2^(2k-n) k!/(n-k)! y`^(2n-2k), both signs, n <= 4
    for n in range(1, 5):
        u = VariableUniverse.standard(0, n)
        for k in range(n + 1):
            f = fermionic_square_power(u, k)
            want = fermionic_square_power(u, n - k).scale(
                ExactScalar.rational(
                    Fraction(2 ** (2 * k) * _factorial(k),
                             2 ** n * _factorial(n - k))))
            for sign in ("+", "-"):
                assert fermionic_fourier(f, sign) == want, (n, k, sign)


def test_fermionic_transform_of_one_n1():
    u = VariableUniverse.standard(0, 1)
    got = fermionic_fourier(SuperPolynomial.one(u), "+")
    want = SuperPolynomial(u, {((), 0b11): ExactScalar.rational(1, 2)})
    assert got == want
    assert fermionic_fourier(SuperPolynomial.one(u), "-") == want


def test_gaussian_invariance_fermionic():
    for n in range(1, 5):
        u = VariableUniverse.standard(0, n)
        env = fermionic_envelope_poly(u)
        for sign in ("+", "-"):
            assert fermionic_fourier(env, sign) == env


def test_kernel_symmetry():
    # K(x,y) = K(y,x) under block exchange
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        for sign in ("+", "-"):
            dbl, kernel = fermionic_kernel(u, sign)
            n2 = 2 * n
            swap = {j: (j + n2) % (2 * n2) for j in range(2 * n2)}
            assert sp_rename(kernel, dbl, {}, swap) == kernel


def test_homogeneity_flip():
    for n in range(1, 5):
        u = VariableUniverse.standard(0, n)
        n2 = 2 * n
        for mask in range(1 << n2):
            f = SuperPolynomial(u, {((), mask): ExactScalar.one()})
            img = fermionic_fourier(f, "+")
            degs = {mk.bit_count() for (_, mk) in img.terms}
            assert degs in ({n2 - mask.bit_count()}, set())
            assert img, mask   # transform never kills a monomial


def test_fermionic_inversion_all_monomials():
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        for mask in range(1 << (2 * n)):
            f = SuperPolynomial(u, {((), mask): ExactScalar.one()})
            assert fermionic_fourier(fermionic_fourier(f, "-"), "+") == f
            assert fermionic_fourier(fermionic_fourier(f, "+"), "-") == f


def test_fermionic_eigen_theorem():
    # F(H_l exp) = (+/- i)^l H_l exp for every fermionic harmonic, l <= 2n
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        env = fermionic_envelope_poly(u)
        for l in range(2 * n + 1):
            for h in harmonic_basis(l, "fermionic", u):
                f = sp_mul(h, env)
                for sign in ("+", "-"):
                    phase = ExactScalar.i_power(l)
                    if sign == "-":
                        phase = phase.conjugate()
                    assert fermionic_fourier(f, sign) == \
                        sp_mul(h, env).scale(phase), (n, l, sign)


def test_power_times_harmonic_theorem():
    # F(x`^(2k) H_l) = (+/-i)^l 2^(2k+l-n) k!/(n-k-l)! y`^(2n-2k-2l) H_l
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        for l in range(n + 1):
            basis = harmonic_basis(l, "fermionic", u)
            for k in range(n - l + 1):
                power = fermionic_square_power(u, k)
                opower = fermionic_square_power(u, n - k - l)
                factor = ExactScalar.rational(
                    Fraction(2 ** (2 * k + l) * _factorial(k),
                             2 ** n * _factorial(n - k - l)))
                for h in basis:
                    f = sp_mul(power, h)
                    for sign in ("+", "-"):
                        phase = ExactScalar.i_power(l)
                        if sign == "-":
                            phase = phase.conjugate()
                        want = sp_mul(opower, h).scale(factor * phase)
                        assert fermionic_fourier(f, sign) == want


def test_bosonic_fourier_basics():
    u = VariableUniverse.standard(1, 0)
    env = GaussianFunction(SuperPolynomial.one(u))
    for sign in ("+", "-"):
        assert bosonic_fourier(env, sign) == env
    x1 = GaussianFunction(SuperPolynomial.bosonic_var(u, 0))
    assert bosonic_fourier(x1, "+") == x1.scale(ExactScalar.i())
    assert bosonic_fourier(x1, "-") == x1.scale(-ExactScalar.i())
    x1sq = GaussianFunction(SuperPolynomial(u, {((2,), 0): ExactScalar.one()}))
    want = GaussianFunction(SuperPolynomial.one(u)
                            - SuperPolynomial(u, {((2,), 0):
                                              ExactScalar.one()}))
    assert bosonic_fourier(x1sq, "+") == want
    assert bosonic_fourier(x1sq, "-") == want
    with pytest.raises(ValueError, match="envelope"):
        bosonic_fourier(GaussianFunction(SuperPolynomial.one(u), False), "+")


def test_super_fourier_composition_orders_agree(rng):
    for m, n in [(1, 1), (2, 1)]:
        u = VariableUniverse.standard(m, n)
        for _ in range(6):
            f = GaussianFunction(random_poly(u, rng, degree=3, nterms=4))
            for sign in ("+", "-"):
                a = fermionic_fourier_gaussian(bosonic_fourier(f, sign), sign)
                b = bosonic_fourier(fermionic_fourier_gaussian(f, sign), sign)
                assert a == b
                assert super_fourier(f, sign) == a


def test_gaussian_invariance_full():
    for m, n in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        u = VariableUniverse.standard(m, n)
        env = GaussianFunction(SuperPolynomial.one(u))
        for sign in ("+", "-"):
            assert super_fourier(env, sign) == env


def test_super_fourier_psi_phases():
    u = VariableUniverse.standard(2, 1)
    for (j, k, _, psi) in psi_span(u, 3):
        for sign in ("+", "-"):
            phase = ExactScalar.i_power(2 * j + k)
            if sign == "-":
                phase = phase.conjugate()
            assert super_fourier(psi, sign) == psi.scale(phase)


def test_super_fourier_inversion_random(rng):
    for m, n in [(1, 1), (2, 2)]:
        u = VariableUniverse.standard(m, n)
        for _ in range(5):
            f = GaussianFunction(random_poly(u, rng, degree=4, nterms=4))
            assert super_fourier(super_fourier(f, "-"), "+") == f


def test_super_integral_examples():
    # int e^{-x^2} over one bosonic variable: sqrt(pi)
    u = VariableUniverse.standard(1, 0)
    env = GaussianFunction(SuperPolynomial.one(u))
    assert super_integral_pair(env, env) == ExactScalar.pi_half_power(1)
    # Berezin of exp(x`^2) at n=1: 1/pi
    u = VariableUniverse.standard(0, 1)
    env = GaussianFunction(SuperPolynomial.one(u))
    assert super_integral_pair(env, env) == ExactScalar.pi_half_power(-2)
    # product of the two at (1,1): pi^(-1/2)
    u = VariableUniverse.standard(1, 1)
    env = GaussianFunction(SuperPolynomial.one(u))
    assert super_integral_pair(env, env) == ExactScalar.pi_half_power(-1)
    # width 1/2 lane at (1,1): bosonic sqrt(2 pi) times the Berezin value
    # of exp(xfer^2/2), whose top coefficient is 1/2: sqrt(2pi)/(2 pi)
    got = super_integral(env)
    assert got == ExactScalar.two_pi_half_power(1) \
        * ExactScalar.pi_half_power(-2) * ExactScalar.rational(1, 2)
    with pytest.raises(ValueError, match="non-damped"):
        super_integral(SuperPolynomial.one(VariableUniverse.standard(1, 0)))


def test_parseval_fermionic_gaussian_pair():
    u = VariableUniverse.standard(0, 1)
    env = fermionic_envelope_poly(u)
    assert parseval_check(env, env, "fermionic")


def test_parseval_fermionic_random(rng):
    for n in (1, 2, 3):
        u = VariableUniverse.standard(0, n)
        for _ in range(25):
            f = random_poly(u, rng, degree=2 * n, nterms=5, rational=False)
            g = random_poly(u, rng, degree=2 * n, nterms=5, rational=False)
            assert parseval_check(f, g, "fermionic")


def test_parseval_full(rng):
    u = VariableUniverse.standard(1, 1)
    env = GaussianFunction(SuperPolynomial.one(u))
    assert parseval_check(env, env, "full")
    for _ in range(10):
        f = GaussianFunction(random_poly(u, rng, degree=3, nterms=4))
        g = GaussianFunction(random_poly(u, rng, degree=3, nterms=4))
        assert parseval_check(f, g, "full")


def test_delta_convolution_is_identity(rng):
    u = VariableUniverse.standard(0, 1)
    delta = fermionic_delta(u)
    for _ in range(10):
        g = random_poly(u, rng, degree=2, nterms=4)
        assert convolution_fermionic(delta, g) == g


def test_convolution_theorem(rng):
    # F(f*g) = (2 pi)^(M/2) F(f) F(g) with M = -2n
    for n in (1, 2):
        u = VariableUniverse.standard(0, n)
        for _ in range(25):
            f = random_poly(u, rng, degree=2 * n, nterms=4)
            g = random_poly(u, rng, degree=2 * n, nterms=4)
            for sign in ("+", "-"):
                lhs = fermionic_fourier(convolution_fermionic(f, g), sign)
                rhs = sp_mul(fermionic_fourier(f, sign),
                             fermionic_fourier(g, sign)).scale(
                    ExactScalar.two_pi_half_power(-2 * n))
                assert lhs == rhs


def test_convolution_order_identity(rng):
    # int f(u-x) g(x) = int f(y) g(u-y)
    for n in (1, 2):
        u = VariableUniverse.standard(0, n)
        n2 = 2 * n
        for _ in range(10):
            f = random_poly(u, rng, degree=n2, nterms=4)
            g = random_poly(u, rng, degree=n2, nterms=4)
            lhs = convolution_fermionic(f, g)
            dbl = VariableUniverse(
                (), u.fermionic + tuple(f"xc{j+1}" for j in range(n2)))
            g_shift = grassmann_shift(g, dbl, block_out=0, block_in=n2)
            f_emb = sp_rename(f, dbl, {}, {j: n2 + j for j in range(n2)})
            prod = sp_mul(f_emb, g_shift)
            rhs = sp_rename(berezin(prod, over=range(n2, 2 * n2)),
                            u, {}, {j: j for j in range(n2)})
            assert lhs == rhs


def test_delta_fourier():
    for m, n in [(1, 0), (0, 1), (1, 1), (3, 1)]:
        u = VariableUniverse.standard(m, n)
        want = ExactScalar.two_pi_half_power(-(m - 2 * n))
        for sign in ("+", "-"):
            assert delta_fourier(u, sign) == want
    assert delta_fourier(VariableUniverse.standard(0, 1), "+") == \
        ExactScalar.rational(2) * ExactScalar.pi_half_power(2)


def test_operator_exponential_matches_transform(rng):
    for m, n in [(1, 1), (2, 1)]:
        u = VariableUniverse.standard(m, n)
        span = psi_span(u, 4)
        for _ in range(4):
            f = GaussianFunction(SuperPolynomial.zero(u), True)
            for (_, _, _, psi) in span:
                if rng.random() < 0.3:
                    c = ExactScalar.rational(rng.randint(-3, 3),
                                             rng.randint(1, 3))
                    f = f + psi.scale(c)
            for sign in ("+", "-"):
                assert operator_exponential_fourier(f, sign, cap=4) == \
                    super_fourier(f, sign)


def test_operator_exponential_identity_on_gaussian():
    u = VariableUniverse.standard(1, 1)
    env = GaussianFunction(SuperPolynomial.one(u))
    assert operator_exponential_fourier(env, "+", cap=2) == env


def test_operator_exponential_cap_exceeded():
    u = VariableUniverse.standard(1, 1)
    f = GaussianFunction(SuperPolynomial(u, {((3,), 0): ExactScalar.one()}))
    with pytest.raises(ValueError, match="cap"):
        operator_exponential_fourier(f, "+", cap=2)


def test_full_transform_calculus_rules(rng):
    # the variable/derivative exchange rules of the full transform, plus
    # the Dirac/Laplace consequences, exact on random Gaussian inputs
    from supertransform.cliffweyl import CValued, dirac_apply, vector_mul
    from supertransform.fourier import super_fourier_cvalued
    from supertransform.operators import (bosonic_derivative,
                                          fermionic_derivative, laplace,
                                          multiply_bosonic_var,
                                          multiply_fermionic_var,
                                          multiply_vector_square)
    for m, n in [(1, 1), (2, 2)]:
        u = VariableUniverse.standard(m, n)
        for _ in range(4):
            g = GaussianFunction(random_poly(u, rng, degree=3, nterms=4))
            for sign in ("+", "-"):
                s = 1 if sign == "+" else -1
                fg = super_fourier(g, sign)
                i_s = ExactScalar.i_power(1 if s > 0 else 3)
                for i in range(m):
                    # F(d_{x_i} g) = -/+ i y_i F(g)
                    assert super_fourier(bosonic_derivative(g, i), sign) \
                        == multiply_bosonic_var(fg, i).scale(-i_s)
                    # F(x_i g) = -/+ i d_{y_i} F(g)
                    assert super_fourier(multiply_bosonic_var(g, i), sign) \
                        == bosonic_derivative(fg, i).scale(-i_s)
                half = ExactScalar.rational(1, 2)
                for p in range(n):
                    odd, even = 2 * p, 2 * p + 1
                    # F(d_{q_even} g) = -/+ (i/2) q_odd F(g)
                    assert super_fourier(fermionic_derivative(g, even),
                                         sign) == \
                        multiply_fermionic_var(fg, odd).scale(-i_s * half)
                    # F(d_{q_odd} g) = +/- (i/2) q_even F(g)
                    assert super_fourier(fermionic_derivative(g, odd),
                                         sign) == \
                        multiply_fermionic_var(fg, even).scale(i_s * half)
                    # F(q_even g) = +/- 2i d_{q_odd} F(g)
                    assert super_fourier(multiply_fermionic_var(g, even),
                                         sign) == \
                        fermionic_derivative(fg, odd).scale(
                            i_s * ExactScalar.rational(2))
                    # F(q_odd g) = -/+ 2i d_{q_even} F(g)
                    assert super_fourier(multiply_fermionic_var(g, odd),
                                         sign) == \
                        fermionic_derivative(fg, even).scale(
                            -(i_s * ExactScalar.rational(2)))
                # F(Delta g) = -y^2 F(g) and F(x^2 g) = -Delta F(g)
                assert super_fourier(laplace(g), sign) == \
                    multiply_vector_square(fg).scale(-1)
                assert super_fourier(multiply_vector_square(g), sign) == \
                    laplace(fg).scale(-1)
                # F(d_x g) = +/- i y F(g) and F(x g) = +/- i d_y F(g)
                lifted = CValued.from_scalar(g)
                flifted = CValued.from_scalar(fg)
                assert super_fourier_cvalued(dirac_apply(lifted), sign) \
                    == vector_mul(flifted).scale(i_s)
                assert super_fourier_cvalued(vector_mul(lifted), sign) \
                    == dirac_apply(flifted).scale(i_s)


def test_super_fourier_matches_defining_integral(rng):
    # independent oracle at (m,n)=(1,1): the transform's defining integral
    # (2 pi)^(-M/2) int dV int_B e^{-/+ i<x,y>} f, with the pairing kernel
    # expanded by hand here and the bosonic integral done by quadrature
    import math
    from scipy.integrate import quad
    from supertransform.scalars import QQi
    u = VariableUniverse.standard(1, 1)
    env_f = fermionic_envelope_poly(u)

    def eval_masks(poly, xval):
        out = {}
        for ((p,), mask), c in poly.terms.items():
            out[mask] = out.get(mask, 0j) + c.to_complex() * xval ** p
        return out

    for sign, s in (("+", 1), ("-", -1)):
        for _ in range(3):
            f = GaussianFunction(random_poly(u, rng, degree=3, nterms=3))
            got = super_fourier(f, sign)
            got_exp = sp_mul(got.poly, env_f)
            src_exp = sp_mul(f.poly, env_f)
            # hand expansion of exp(-/+ (i/2)(q1 s2 - q2 s1)) over the
            # doubled fermionic block: x-block (0,1), y-block (2,3)
            dbl = VariableUniverse(("x1",), ("q1", "q2", "s1", "s2"))
            w = ExactScalar({(0, 0): QQi(0, Fraction(-s, 2))})
            aterm = (sp_mul(SuperPolynomial.fermionic_var(dbl, 0),
                            SuperPolynomial.fermionic_var(dbl, 3))
                     - sp_mul(SuperPolynomial.fermionic_var(dbl, 1),
                              SuperPolynomial.fermionic_var(dbl, 2))) \
                .scale(w)
            kernel = SuperPolynomial.one(dbl) + aterm \
                + sp_mul(aterm, aterm).scale(Fraction(1, 2))
            # fermionic Berezin by definition: pi^-1 d_{q2} d_{q1},
            # applied inside the product with each source mask component
            fer_map = {}
            for mask in (0, 1, 2, 3):
                mono = SuperPolynomial(dbl, {((0,), mask): ExactScalar.one()})
                prod = sp_mul(kernel, mono)
                integ = prod.fermionic_derivative(0).fermionic_derivative(1)
                integ = integ.scale(ExactScalar.pi_half_power(-2))
                # remaining content lives on the y block; map s -> q
                fer_map[mask] = {
                    mk >> 2: c for ((_,), mk), c in integ.terms.items()}
            # defining prefactor (2 pi)^(-M/2) at M = -1
            pref = (2 * math.pi) ** 0.5
            for y in (-1.2, 0.4, 1.1):
                numeric = {}
                for mask in (0, 1, 2, 3):
                    def integrand(x, mask=mask):
                        gx = eval_masks(src_exp, x).get(mask, 0j)
                        if not gx:
                            return 0j
                        return gx * complex(math.cos(s * x * y),
                                            math.sin(s * x * y)) \
                            * math.exp(-x * x / 2)
                    re = quad(lambda x: integrand(x).real, -12, 12,
                              limit=200)[0]
                    im = quad(lambda x: integrand(x).imag, -12, 12,
                              limit=200)[0]
                    val = pref * complex(re, im)
                    for omask, cc in fer_map[mask].items():
                        numeric[omask] = numeric.get(omask, 0j) \
                            + val * cc.to_complex()
                spec = eval_masks(got_exp, y)
                envy = math.exp(-y * y / 2)
                for mask in (0, 1, 2, 3):
                    assert abs(spec.get(mask, 0j) * envy
                               - numeric.get(mask, 0j)) < 1e-9
