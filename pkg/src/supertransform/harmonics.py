"""Spherical-harmonic bases via exact nullspaces, and the decomposition
of the full harmonic space into SO(m) x Sp(2n) pieces.

Bases come from rational row reduction of the sector Laplacian on the
homogeneous component, so representatives are deterministic echelon
forms.  The f_{k,p,q} coupling polynomials and the dimension identity of
the decomposition are evaluated as stated; a failed check is reported
in the result, never patched.
"""

from __future__ import annotations

from ._linalg import nullspace, solve_rational
from .operators import laplace
from .scalars import ExactScalar, gamma_half_integer
from .superalg import (SuperPolynomial, fermionic_square,
                       homogeneous_monomials, sp_mul)


class HarmonicBasis:
    """Degree-k sector harmonics; elements are echelon representatives."""

    __slots__ = ("degree", "sector", "elements")

    def __init__(self, degree, sector, elements):
        self.degree = degree
        self.sector = sector
        self.elements = elements

    @property
    def dimension(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return (f"HarmonicBasis(degree={self.degree}, "
                f"sector={self.sector!r}, dim={self.dimension})")


def harmonic_basis(k, sector, universe):
    """Exact nullspace of the sector Laplacian on degree-k homogeneous
    polynomials of that sector."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if sector not in ("bosonic", "fermionic", "full"):
        raise ValueError(f"unknown sector {sector!r}")
    monos = homogeneous_monomials(universe, k, sector)
    if not monos:
        return HarmonicBasis(k, sector, [])

    def image(mono):
        f = SuperPolynomial(universe, {mono: ExactScalar.one()})
        lf = laplace(f, sector)
        return {key: c.rational_value() for key, c in lf.terms.items()}

    vecs = nullspace(monos, image)
    elements = []
    for vec in vecs:
        terms = {monos[ci]: ExactScalar.rational(val)
                 for ci, val in vec.items()}
        elements.append(SuperPolynomial(universe, terms))
    return HarmonicBasis(k, sector, elements)


def bosonic_square_power(u, j):
    """(x_bos^2)^j = (-sum x_i^2)^j."""
    out = SuperPolynomial.one(u)
    if j == 0:
        return out
    sq = SuperPolynomial(u, {})
    for i in range(u.m):
        exp = tuple(2 if t == i else 0 for t in range(u.m))
        sq = sq + SuperPolynomial(u, {(exp, 0): ExactScalar.rational(-1)})
    for _ in range(j):
        out = sp_mul(out, sq)
    return out


def fermionic_square_power(u, j):
    out = SuperPolynomial.one(u)
    sq = fermionic_square(u)
    for _ in range(j):
        out = sp_mul(out, sq)
    return out


def _factorial(k):
    if k < 0:
        raise ValueError("factorial argument negative")
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _binom(a, b):
    if b < 0 or b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def f_poly(k, p, q, universe):
    """Coupling polynomial sum_i C(k,i) (n-q-i)!/Gamma(m/2+p+k-i)
    * xbos^(2k-2i) * xfer^(2i)."""
    u = universe
    n = u.pairs
    out = SuperPolynomial.zero(u)
    for i in range(k + 1):
        gamma = gamma_half_integer(u.m + 2 * (p + k - i))
        coeff = (ExactScalar.rational(_binom(k, i) * _factorial(n - q - i))
                 * gamma.inverse())
        piece = sp_mul(bosonic_square_power(u, k - i),
                       fermionic_square_power(u, i)).scale(coeff)
        out = out + piece
    return out


def harmonic_dimension(k, sector, universe, _cache={}):
    key = (k, sector, universe.bosonic, universe.fermionic)
    if key not in _cache:
        _cache[key] = harmonic_basis(k, sector, universe).dimension
    return _cache[key]


def decomposition_check(k, universe):
    """Verify the degree-k decomposition: dimension identity plus
    Laplace-annihilation of every f * H_bos * H_fer product.

    Returns a report dict; failures are recorded, not corrected.
    """
    u = universe
    n = u.pairs
    dim_nullspace = harmonic_basis(k, "full", u).dimension

    dim_formula = 0
    for i in range(min(n, k) + 1):
        dim_formula += (harmonic_dimension(k - i, "bosonic", u)
                        * harmonic_dimension(i, "fermionic", u))
    product_failures = []
    for j in range(0, min(n, k - 1)):          # j <= min(n, k-1) - 1
        for l in range(1, min(n - j, (k - j) // 2) + 1):
            p = k - 2 * l - j
            dim_formula += (harmonic_dimension(p, "bosonic", u)
                            * harmonic_dimension(j, "fermionic", u))
            fp = f_poly(l, p, j, u)
            for hb in harmonic_basis(p, "bosonic", u):
                for hf in harmonic_basis(j, "fermionic", u):
                    prod = sp_mul(fp, sp_mul(hb, hf))
                    if laplace(prod, "full"):
                        product_failures.append((l, p, j))
    return {
        "k": k,
        "dim_nullspace": dim_nullspace,
        "dim_formula": dim_formula,
        "dims_match": dim_nullspace == dim_formula,
        "product_failures": product_failures,
        "products_harmonic": not product_failures,
    }


def fischer_fermionic(k, universe):
    """Spanning family of the degree-k Grassmann component organised as
    xfer^(2j) * H_fermionic(k-2j).

    Returns (j, harmonic, product) triples; products that vanish by
    nilpotency (harmonic degree + j beyond the pair count) are dropped,
    which reproduces the j <= n-k bound of the decomposition.
    """
    u = universe
    if not 0 <= k <= len(u.fermionic):
        raise ValueError("degree outside Grassmann range")
    family = []
    for j in range(k // 2 + 1):
        power = fermionic_square_power(u, j)
        for h in harmonic_basis(k - 2 * j, "fermionic", u):
            prod = sp_mul(power, h)
            if prod:
                family.append((j, h, prod))
    return family


def fischer_decompose(f, k=None):
    """Write a degree-k Grassmann element as sum_j xfer^(2j) h_j.

    Returns list of (j, h_j) with h_j fermionic-harmonic; exact solve
    against the Fischer family.
    """
    u = f.universe
    if k is None:
        k = f.degree()
    if k < 0:
        return []
    family = fischer_fermionic(k, u)
    coeffs = express_in_basis(f, [prod for _, _, prod in family])
    if coeffs is None:
        raise ValueError("element is not in the degree-k component")
    harmonics_by_j = {}
    for (j, h, _), c in zip(family, coeffs):
        if c:
            cur = harmonics_by_j.get(j, SuperPolynomial.zero(u))
            harmonics_by_j[j] = cur + h.scale(c)
    return sorted(harmonics_by_j.items())


def express_in_basis(target, basis):
    """Exact coefficients writing `target` in the given rational-coefficient
    basis, or None if it is outside the span.

    Works with arbitrary ExactScalar targets by solving one rational
    system per (pi-power, sqrt2) component.
    """
    columns = []
    for el in basis:
        col = {}
        for key, c in el.terms.items():
            col[key] = c.rational_value()
        columns.append(col)
    ncols = len(basis)
    rhs_by_radical = {}
    for key, c in target.terms.items():
        for rad, q in c.terms.items():
            rhs_by_radical.setdefault(rad, {})[key] = q
    out = [ExactScalar.zero() for _ in range(ncols)]
    for rad, rhs in rhs_by_radical.items():
        sol = solve_rational(columns, rhs, ncols)
        if sol is None:
            return None
        for j, q in enumerate(sol):
            if q:
                out[j] = out[j] + ExactScalar({rad: q})
    return out
