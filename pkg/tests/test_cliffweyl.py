import pytest

from supertransform.cliffweyl import (CValued, CWElement, cw_mul, dirac_apply,
                                      euler_cvalued, power_rule_check,
                                      monogenic_basis, vector_mul,
                                      vector_pow_mul)
from supertransform.operators import laplace
from supertransform.scalars import ExactScalar
from supertransform.superalg import SuperPolynomial, VariableUniverse
from tests.conftest import random_poly


def test_orthogonal_square():
    e1 = CWElement.e(2, 1, 0)
    assert cw_mul(e1, e1) == CWElement.one(2, 1, ExactScalar.rational(-1))


def test_weyl_reordering():
    # E2 * E1 = E1 E2 - 1 in the ordered basis
    g1 = CWElement.eg(0, 1, 0)
    g2 = CWElement.eg(0, 1, 1)
    got = cw_mul(g2, g1)
    want = cw_mul(g1, g2) - CWElement.one(0, 1)
    assert got == want
    assert (0, (1, 1)) in got.terms


def test_mixed_anticommutation():
    e1 = CWElement.e(1, 1, 0)
    g1 = CWElement.eg(1, 1, 0)
    assert not (cw_mul(e1, g1) + cw_mul(g1, e1))


def test_cross_pair_and_same_parity_commute():
    for i, j in [(0, 2), (1, 3), (0, 3), (2, 1)]:
        a = CWElement.eg(0, 2, i)
        b = CWElement.eg(0, 2, j)
        assert cw_mul(a, b) == cw_mul(b, a)


def test_normal_ordering_confluent(rng):
    # random words of <= 6 generators reduce identically when folded
    # left-to-right and right-to-left
    m, n = 2, 2
    gens = [CWElement.e(m, n, i) for i in range(m)] + \
        [CWElement.eg(m, n, j) for j in range(2 * n)]
    for _ in range(40):
        word = [rng.choice(gens) for _ in range(rng.randint(2, 6))]
        left = word[0]
        for g in word[1:]:
            left = cw_mul(left, g)
        right = word[-1]
        for g in reversed(word[:-1]):
            right = cw_mul(g, right)
        assert left == right


def test_dirac_on_x_gives_superdimension():
    for m, n in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 2)]:
        u = VariableUniverse.standard(m, n)
        one = CValued.from_scalar(SuperPolynomial.one(u))
        got = dirac_apply(vector_mul(one))
        want = one.scale(u.superdim) if u.superdim else CValued(u, {})
        assert got == want


def test_dirac_squared_is_laplace(rng):
    for m, n in [(1, 1), (2, 2)]:
        u = VariableUniverse.standard(m, n)
        for _ in range(10):
            f = random_poly(u, rng, degree=4, nterms=4)
            twice = dirac_apply(dirac_apply(f))
            assert twice.scalar_function() == laplace(f, "full")


def test_anticommutator_x_dirac(rng):
    # x d_x + d_x x = 2E + M on random C-valued polynomials
    for m, n in [(1, 1), (2, 1)]:
        u = VariableUniverse.standard(m, n)
        for _ in range(8):
            f = CValued.from_scalar(random_poly(u, rng, degree=3, nterms=4))
            lhs = vector_mul(dirac_apply(f)) + dirac_apply(vector_mul(f))
            rhs = euler_cvalued(f).scale(2) + f.scale(u.superdim)
            assert lhs == rhs


def test_dirac_of_x_squared():
    # Lemma with s=1, k=0: d_x(x^2 * 1) = 2x
    u = VariableUniverse.standard(2, 1)
    one = CValued.from_scalar(SuperPolynomial.one(u))
    got = dirac_apply(vector_pow_mul(one, 2))
    assert got == vector_mul(one).scale(2)


def test_x_squared_scalar_part_is_vector_square():
    from supertransform.superalg import vector_square
    for m, n in [(1, 1), (2, 2)]:
        u = VariableUniverse.standard(m, n)
        one = CValued.from_scalar(SuperPolynomial.one(u))
        xx = vector_pow_mul(one, 2)
        assert xx.scalar_function() == vector_square(u)


def test_power_rules_all_variants(rng):
    u = VariableUniverse.standard(2, 1)
    samples = {
        0: [CValued.from_scalar(SuperPolynomial.one(u))],
        1: [CValued.from_scalar(SuperPolynomial.bosonic_var(u, 0)),
            CValued.from_scalar(SuperPolynomial.fermionic_var(u, 1))],
        2: [CValued.from_scalar(_homog(u, rng, 2))],
    }
    for k, rks in samples.items():
        for r_k in rks:
            for s in range(0, 4):
                for variant in ("dirac_even", "dirac_odd", "laplace"):
                    assert power_rule_check(s, r_k, variant), (k, s, variant)


def _homog(u, rng, k):
    f = random_poly(u, rng, degree=k, nterms=6)
    kept = {key: c for key, c in f.terms.items()
            if sum(key[0]) + key[1].bit_count() == k}
    if not kept:
        kept = {((k,) + (0,) * (u.m - 1), 0): ExactScalar.one()}
    return SuperPolynomial(u, kept)


def test_power_rules_s_zero_degenerates():
    u = VariableUniverse.standard(1, 1)
    r = CValued.from_scalar(SuperPolynomial.bosonic_var(u, 0))
    for variant in ("dirac_even", "laplace"):
        assert power_rule_check(0, r, variant)


def test_power_rules_reject_inhomogeneous():
    u = VariableUniverse.standard(1, 1)
    f = SuperPolynomial.one(u) + SuperPolynomial.bosonic_var(u, 0)
    with pytest.raises(ValueError, match="homogeneous"):
        power_rule_check(1, f, "laplace")


def test_monogenic_basis_small():
    for m, n in [(1, 1), (2, 1)]:
        u = VariableUniverse.standard(m, n)
        for k in (1, 2):
            basis = monogenic_basis(k, u)
            assert basis, (m, n, k)
            for b in basis:
                assert not dirac_apply(b)
                assert b.is_homogeneous() and b.degree() == k


def test_shape_mismatch():
    with pytest.raises(ValueError, match="shape"):
        cw_mul(CWElement.e(1, 1, 0), CWElement.e(2, 1, 0))


def test_render():
    el = cw_mul(CWElement.e(2, 1, 0), CWElement.e(2, 1, 1))
    assert "e1 e2" in el.render()
    el2 = CWElement.eg(0, 1, 0)
    assert "f1" in el2.render()
