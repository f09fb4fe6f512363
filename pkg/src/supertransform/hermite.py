"""Clifford-Hermite polynomials and the scalar eigenfunction bases.

The operator (Rodrigues) definitions are authoritative: CH_{2t} comes
from t applications of the scalar (d_x+x)^2 and the rescaled CH~_{2t}
from t applications of the Gaussian-aware Laplacian.  ch_explicit
implements the closed coefficient formula as stated; the
two disagree by 2^(t-i) per coefficient (see tests), and both are kept.
"""

from __future__ import annotations

from fractions import Fraction

from .harmonics import _binom, _factorial, harmonic_basis
from .operators import (bosonic_derivative, fermionic_derivative, laplace,
                        scalar_square)
from .scalars import ExactScalar, rising_factorial
from .superalg import GaussianFunction, SuperPolynomial, mask_bits


def ch_rodrigues(t, h_k):
    """exp(-x^2/2) (d_x+x)^t exp(x^2/2) h_k for even t and harmonic h_k.

    Returns the polynomial CH_{t,M,k} * h_k (envelope stripped).
    """
    if t % 2:
        raise ValueError("scalar pathway needs even t")
    if laplace(h_k, "full"):
        raise ValueError("input is not harmonic")
    g = GaussianFunction(h_k)
    for _ in range(t // 2):
        g = scalar_square(g)
    return g.poly


def ch_rodrigues_rescaled(t, h_k):
    """exp(-x^2/2) (d_x)^t exp(x^2/2) h_k = Delta^(t/2) through the
    envelope; the rescaled variant used by the Radon eigenbasis."""
    if t % 2:
        raise ValueError("scalar pathway needs even t")
    if laplace(h_k, "full"):
        raise ValueError("input is not harmonic")
    g = GaussianFunction(h_k)
    for _ in range(t // 2):
        g = laplace(g, "full")
    return g.poly


def ch_explicit(t, m_value, k):
    """Displayed coefficient formula for CH~_{2t,M,k}; even polynomial in
    x^2, returned as a list of ExactScalar coefficients of (x^2)^i.

    For M <= -2 even the factorial variant (with n = -M/2) is
    used; elsewhere the Gamma-ratio form, as a rising factorial so only
    genuine poles error out.
    """
    coeffs = []
    if m_value <= -2 and m_value % 2 == 0:
        n = -m_value // 2
        if n - k - t < 0:
            raise ValueError("gamma pole")
        for i in range(t + 1):
            c = Fraction(4 ** (t - i) * _binom(t, i)
                         * _factorial(n - k - i), _factorial(n - k - t))
            if (t - i) % 2:
                c = -c
            coeffs.append(ExactScalar.rational(c))
        return coeffs
    base = Fraction(2 * k + m_value, 2)
    for i in range(t + 1):
        ratio = rising_factorial(base + i, t - i)
        c = 4 ** (t - i) * _binom(t, i) * ratio
        coeffs.append(ExactScalar.rational(c))
    return coeffs


def psi_element(j, h_k):
    """psi_{j,k,l} = (d_x+x)^(2j) H_k^(l) exp(x^2/2) as a Gaussian function."""
    g = GaussianFunction(h_k)
    for _ in range(j):
        g = scalar_square(g)
    return g


def psi_tilde_element(j, h_k):
    """psi~_{j,k,l} = (d_x)^(2j) H_k^(l) exp(x^2/2) via the Laplacian."""
    g = GaussianFunction(h_k)
    for _ in range(j):
        g = laplace(g, "full")
    return g


def psi_basis(j, k, universe):
    """All psi_{j,k,l} over the echelon harmonic basis of degree k."""
    return [psi_element(j, h)
            for h in harmonic_basis(k, "full", universe)]


def phi_element(j, m_k):
    """phi_{j,k,l} = (d_x + x)^j M_k^(l) exp(x^2/2) for a spherical
    monogenic; Clifford-Weyl-valued, the odd-order pathway."""
    from .cliffweyl import CValued, dirac_apply, vector_mul
    g = m_k
    if not isinstance(g, CValued):
        g = CValued.from_scalar(g)
    g = CValued(g.universe, g.parts, envelope=True)
    for _ in range(j):
        g = dirac_apply(g) + vector_mul(g)
    return g


def phi_basis(j, k, universe, weyl_cap=None):
    """phi family over the capped monogenic basis; exercised only at
    small (m, n) and k."""
    from .cliffweyl import monogenic_basis
    return [phi_element(j, mk)
            for mk in monogenic_basis(k, universe, weyl_cap)]


def psi_span(universe, cap, _cache={}):
    """Indexed psi family for 2j+k <= cap: list of (j, k, l, function).

    Memoized per universe: transforms expand against it repeatedly.
    """
    key = (universe.bosonic, universe.fermionic, cap)
    if key in _cache:
        return _cache[key]
    out = []
    for k in range(cap + 1):
        basis = harmonic_basis(k, "full", universe)
        for j in range((cap - k) // 2 + 1):
            for l, h in enumerate(basis):
                out.append((j, k, l, psi_element(j, h)))
    _cache[key] = out
    return out


def substitute_derivatives(h, target):
    """Apply H(d_x) to a Gaussian-class function, where H(d_x) replaces
    x_i -> -d/dx_i, q_{2i} -> 2 d/dq_{2i-1}, q_{2i-1} -> -2 d/dq_{2i}.

    Monomial factors act as composed operators in written order (the
    rightmost factor applies first)."""
    u = h.universe
    out = GaussianFunction(SuperPolynomial.zero(u), target.envelope)
    for (bos, mask), c in h.terms.items():
        g = target
        factors = []
        for i, e in enumerate(bos):
            factors.extend([("b", i)] * e)
        for jdx in mask_bits(mask):
            factors.append(("f", jdx))
        for kind, idx in reversed(factors):
            if kind == "b":
                g = bosonic_derivative(g, idx).scale(-1)
            elif idx % 2 == 0:
                g = fermionic_derivative(g, idx + 1).scale(-2)
            else:
                g = fermionic_derivative(g, idx - 1).scale(2)
        out = out + g.scale(c)
    return out


def substhermite_check(k, l, j, m, n):
    """Exact verdict on the combinatorial identity coupling the two
    explicit Clifford-Hermite families to f_{k,l-2k-j,j}.

    Both sides are expanded as polynomials in (u, v) = (xbos^2, xfer^2)
    and compared coefficient-wise.
    """
    p = l - 2 * k - j
    if p < 0 or j > n or k + j > n:
        raise ValueError("indices outside the identity's ranges")
    lhs = {}
    for i in range(k + 1):
        gamma_inv = _inv_gamma_half(m + 2 * (l - k - j - i))
        outer = ExactScalar.rational(
            _binom(k, i) * _factorial(n - j - i)) * gamma_inv
        bos = ch_explicit(k - i, m, l - 2 * k - j)
        fer = ch_explicit(i, -2 * n, j)
        for pu, cu in enumerate(bos):
            for pv, cv in enumerate(fer):
                key = (pu, pv)
                add = outer * cu * cv
                lhs[key] = lhs.get(key, ExactScalar.zero()) + add
    rhs = {}
    for i in range(k + 1):
        gamma_inv = _inv_gamma_half(m + 2 * (p + k - i))
        rhs[(k - i, i)] = ExactScalar.rational(
            _binom(k, i) * _factorial(n - j - i)) * gamma_inv
    keys = set(lhs) | set(rhs)
    return all(lhs.get(key, ExactScalar.zero())
               == rhs.get(key, ExactScalar.zero()) for key in keys)


def _inv_gamma_half(numerator):
    from .scalars import gamma_half_integer
    return gamma_half_integer(numerator).inverse()
