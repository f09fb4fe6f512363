"""Super-polynomial arithmetic over commuting and anticommuting variables.

A universe fixes an ordered list of bosonic symbols and an even-length
ordered list of fermionic symbols.  Monomials are (bosonic multi-index,
fermionic bitmask) pairs with fermionic factors implicitly in ascending
index order; products carry the Koszul sign of the merge.  Fermionic pair
j (1-based in rendered names) occupies internal indices (2j-2, 2j-1).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ExactScalar


class VariableUniverse:
    """Ordered symbol lists; fermionic count must be even."""

    __slots__ = ("bosonic", "fermionic")

    def __init__(self, bosonic, fermionic):
        bosonic = tuple(bosonic)
        fermionic = tuple(fermionic)
        if len(fermionic) % 2:
            raise ValueError("fermionic symbol count must be even")
        names = bosonic + fermionic
        if len(set(names)) != len(names):
            raise ValueError("universe symbol names must be unique")
        self.bosonic = bosonic
        self.fermionic = fermionic

    @staticmethod
    def standard(m, n, bos_prefix="x", fer_prefix="q"):
        return VariableUniverse(
            [f"{bos_prefix}{i + 1}" for i in range(m)],
            [f"{fer_prefix}{j + 1}" for j in range(2 * n)],
        )

    @property
    def m(self):
        return len(self.bosonic)

    @property
    def pairs(self):
        return len(self.fermionic) // 2

    @property
    def superdim(self):
        """The super-dimension M = m - 2n."""
        return self.m - len(self.fermionic)

    def __eq__(self, other):
        return (isinstance(other, VariableUniverse)
                and self.bosonic == other.bosonic
                and self.fermionic == other.fermionic)

    def __hash__(self):
        return hash((self.bosonic, self.fermionic))

    def __repr__(self):
        return f"VariableUniverse({self.bosonic}, {self.fermionic})"


def doubled_universe(u, bos_prefix="y", fer_prefix="s"):
    """Universe holding u's symbols followed by a renamed second copy.

    The second copy's fermionic block sits at indices 2n..4n-1, which is
    what the transform kernels need.
    """
    return VariableUniverse(
        u.bosonic + tuple(f"{bos_prefix}{i + 1}" for i in range(u.m)),
        u.fermionic + tuple(f"{fer_prefix}{j + 1}"
                            for j in range(len(u.fermionic))),
    )


def merge_masks(a, b):
    """Sign and union of two fermionic masks, or None on overlap."""
    if a & b:
        return None
    inv = 0
    m = b
    while m:
        low = m & -m
        inv += (a >> low.bit_length()).bit_count()
        m ^= low
    return (-1 if inv & 1 else 1, a | b)


def mask_bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def compositions(total, slots):
    """All tuples of `slots` nonnegative ints summing to `total`."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, slots - 1):
            yield (first,) + rest


def masks_of_weight(width, weight):
    if weight == 0:
        yield 0
        return
    for mask in range(1 << width):
        if mask.bit_count() == weight:
            yield mask


def homogeneous_monomials(u, k, sector="full"):
    """Monomial keys of total degree k, optionally restricted to a sector."""
    out = []
    nf = len(u.fermionic)
    if sector == "bosonic":
        return [(bos, 0) for bos in compositions(k, u.m)]
    if sector == "fermionic":
        if k > nf:
            return []
        return [((0,) * u.m, mask) for mask in masks_of_weight(nf, k)]
    for fdeg in range(min(k, nf) + 1):
        for mask in masks_of_weight(nf, fdeg):
            for bos in compositions(k - fdeg, u.m):
                out.append((bos, mask))
    return out


class SuperPolynomial:
    """Finite linear combination of super monomials.

    Coefficients are ExactScalar on the exact lane or complex on the
    float lane; the two lanes are never mixed inside one polynomial.
    """

    __slots__ = ("universe", "terms")

    def __init__(self, universe, terms=None):
        self.universe = universe
        canon = {}
        if terms:
            for key, c in terms.items():
                if c:
                    canon[key] = canon[key] + c if key in canon else c
                    if not canon[key]:
                        del canon[key]
        self.terms = canon

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(u):
        return SuperPolynomial(u)

    @staticmethod
    def scalar(u, c):
        if isinstance(c, (int, Fraction)):
            c = ExactScalar.rational(c)
        return SuperPolynomial(u, {((0,) * u.m, 0): c})

    @staticmethod
    def one(u):
        return SuperPolynomial.scalar(u, ExactScalar.one())

    @staticmethod
    def bosonic_var(u, i, coeff=1):
        if not 0 <= i < u.m:
            raise IndexError("bosonic index out of range")
        exp = tuple(1 if j == i else 0 for j in range(u.m))
        if isinstance(coeff, (int, Fraction)):
            coeff = ExactScalar.rational(coeff)
        return SuperPolynomial(u, {(exp, 0): coeff})

    @staticmethod
    def fermionic_var(u, j, coeff=1):
        if not 0 <= j < len(u.fermionic):
            raise IndexError("fermionic index out of range")
        if isinstance(coeff, (int, Fraction)):
            coeff = ExactScalar.rational(coeff)
        return SuperPolynomial(u, {((0,) * u.m, 1 << j): coeff})

    @staticmethod
    def monomial(u, bos_exp, fer_mask, coeff):
        return SuperPolynomial(u, {(tuple(bos_exp), fer_mask): coeff})

    # -- ring structure ---------------------------------------------------

    def _check(self, other):
        if self.universe != other.universe:
            raise ValueError("universe mismatch")

    def __add__(self, other):
        self._check(other)
        merged = dict(self.terms)
        for key, c in other.terms.items():
            s = merged.get(key)
            s = c if s is None else s + c
            if s:
                merged[key] = s
            elif key in merged:
                del merged[key]
        out = SuperPolynomial.__new__(SuperPolynomial)
        out.universe = self.universe
        out.terms = merged
        return out

    def __neg__(self):
        out = SuperPolynomial.__new__(SuperPolynomial)
        out.universe = self.universe
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            return sp_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return SuperPolynomial.zero(self.universe)
        out = SuperPolynomial.__new__(SuperPolynomial)
        out.universe = self.universe
        out.terms = {}
        for k, v in self.terms.items():
            s = v * c
            if s:
                out.terms[k] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.universe == other.universe and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def map_coefficients(self, fn):
        out = SuperPolynomial.__new__(SuperPolynomial)
        out.universe = self.universe
        out.terms = {}
        for k, v in self.terms.items():
            s = fn(v)
            if s:
                out.terms[k] = s
        return out

    def conjugate(self):
        """Complex conjugation: fixes variables, conjugates scalars."""
        return self.map_coefficients(lambda c: c.conjugate()
                                     if isinstance(c, ExactScalar)
                                     else c.conjugate())

    def parity_signed(self):
        """Multiply every term by (-1)^(fermionic degree)."""
        out = SuperPolynomial.__new__(SuperPolynomial)
        out.universe = self.universe
        out.terms = {k: (-c if k[1].bit_count() & 1 else c)
                     for k, c in self.terms.items()}
        return out

    # -- calculus ---------------------------------------------------------

    def bosonic_derivative(self, i):
        u = self.universe
        if not 0 <= i < u.m:
            raise IndexError("bosonic index out of range")
        out = {}
        for (bos, mask), c in self.terms.items():
            e = bos[i]
            if e == 0:
                continue
            nb = bos[:i] + (e - 1,) + bos[i + 1:]
            key = (nb, mask)
            s = c * e
            out[key] = out[key] + s if key in out else s
        return SuperPolynomial(u, out)

    def fermionic_derivative(self, j):
        """Left derivative: sign (-1)^(# set bits below j)."""
        u = self.universe
        if not 0 <= j < len(u.fermionic):
            raise IndexError("fermionic index out of range")
        bit = 1 << j
        out = {}
        for (bos, mask), c in self.terms.items():
            if not mask & bit:
                continue
            sign = -1 if (mask & (bit - 1)).bit_count() & 1 else 1
            key = (bos, mask ^ bit)
            s = c * sign
            out[key] = out[key] + s if key in out else s
        return SuperPolynomial(u, out)

    # -- structure info ----------------------------------------------------

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(b) + m.bit_count() for (b, m) in self.terms)

    def is_homogeneous(self):
        degs = {sum(b) + m.bit_count() for (b, m) in self.terms}
        return len(degs) <= 1

    def constant_term(self):
        key = ((0,) * self.universe.m, 0)
        return self.terms.get(key, ExactScalar.zero())

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (-(sum(kv[0][0]) + kv[0][1].bit_count()),
                            tuple(-e for e in kv[0][0]), kv[0][1]))

    def __repr__(self):
        from .expr import render_poly_text
        return f"SuperPolynomial<{render_poly_text(self)}>"


def is_float_lane(p):
    """True when the polynomial carries complex (float-backend) scalars."""
    for v in p.terms.values():
        return not isinstance(v, ExactScalar)
    return False


def scale_exact(p, s):
    """Scale by an ExactScalar, degrading it on the float lane."""
    return p.scale(s.to_complex() if is_float_lane(p) else s)


def neutral_bosonic_var(u, i, c=Fraction(1)):
    """Variable polynomial with a lane-neutral Fraction coefficient, for
    product rules that must work on either scalar backend."""
    exp = tuple(1 if j == i else 0 for j in range(u.m))
    return SuperPolynomial(u, {(exp, 0): c})


def neutral_fermionic_var(u, j, c=Fraction(1)):
    return SuperPolynomial(u, {((0,) * u.m, 1 << j): c})


def sp_mul(f, g):
    """Product with the Koszul sign convention on fermionic merges."""
    if f.universe != g.universe:
        raise ValueError("universe mismatch")
    out = {}
    for (b1, m1), c1 in f.terms.items():
        for (b2, m2), c2 in g.terms.items():
            merged = merge_masks(m1, m2)
            if merged is None:
                continue
            sign, mask = merged
            key = (tuple(e1 + e2 for e1, e2 in zip(b1, b2)), mask)
            c = c1 * c2
            if sign < 0:
                c = -c
            s = out.get(key)
            s = c if s is None else s + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    res = SuperPolynomial.__new__(SuperPolynomial)
    res.universe = f.universe
    res.terms = out
    return res


def sp_rename(f, target, bos_map, fer_map):
    """Carry f into `target` along index maps, with reordering signs.

    bos_map/fer_map send source variable indices to target indices; the
    fermionic map may permute, and each monomial picks up the parity of
    the induced reordering.
    """
    out = {}
    tm = target.m
    for (bos, mask), c in f.terms.items():
        nb = [0] * tm
        for i, e in enumerate(bos):
            if e:
                nb[bos_map[i]] += e
        images = [fer_map[j] for j in mask_bits(mask)]
        inv = 0
        for a in range(len(images)):
            for b in range(a + 1, len(images)):
                if images[a] > images[b]:
                    inv += 1
        nmask = 0
        for j in images:
            if nmask & (1 << j):
                raise ValueError("fermionic rename collision")
            nmask |= 1 << j
        key = (tuple(nb), nmask)
        s = c if not inv & 1 else -c
        out[key] = out[key] + s if key in out else s
    return SuperPolynomial(target, out)


def sp_substitute_fermionic(f, images):
    """Substitute fermionic variable j by the polynomial images[j].

    Images live in f's universe (each must have odd parity for the result
    to be consistent); bosonic factors pass through untouched.  Used for
    linear symplectic changes of variables and Grassmann shifts, with the
    monomial's factors multiplied out in written (ascending) order.
    """
    u = f.universe
    out = SuperPolynomial.zero(u)
    for (bos, mask), c in f.terms.items():
        piece = SuperPolynomial(u, {(bos, 0): c})
        for j in mask_bits(mask):
            piece = sp_mul(piece, images[j])
        out = out + piece
    return out


def vector_square(u):
    """The polynomial x^2 = sum q_{2j-1} q_{2j} - sum x_i^2."""
    terms = {}
    zero_b = (0,) * u.m
    for p in range(u.pairs):
        terms[(zero_b, (1 << (2 * p)) | (1 << (2 * p + 1)))] = \
            ExactScalar.one()
    for i in range(u.m):
        exp = tuple(2 if j == i else 0 for j in range(u.m))
        terms[(exp, 0)] = ExactScalar.rational(-1)
    return SuperPolynomial(u, terms)


def fermionic_square(u):
    """The fermionic part sum q_{2j-1} q_{2j} of x^2."""
    terms = {}
    zero_b = (0,) * u.m
    for p in range(u.pairs):
        terms[(zero_b, (1 << (2 * p)) | (1 << (2 * p + 1)))] = \
            ExactScalar.one()
    return SuperPolynomial(u, terms)


def pairing(u_x, u_y):
    """Symplectic pairing <x,y> in the doubled universe.

    <x,y> = -sum x_i y_i + (1/2) sum (x`_{2j-1} y`_{2j} - x`_{2j} y`_{2j-1});
    u_x and u_y must have the same shape.
    """
    if (u_x.m, u_x.pairs) != (u_y.m, u_y.pairs):
        raise ValueError("shape mismatch")
    m, n = u_x.m, u_x.pairs
    dbl = VariableUniverse(u_x.bosonic + u_y.bosonic,
                           u_x.fermionic + u_y.fermionic)
    terms = {}
    zero_b = (0,) * dbl.m
    for i in range(m):
        exp = [0] * dbl.m
        exp[i] = 1
        exp[m + i] = 1
        terms[(tuple(exp), 0)] = ExactScalar.rational(-1)
    half = ExactScalar.rational(1, 2)
    for p in range(n):
        x_odd, x_even = 2 * p, 2 * p + 1
        y_odd, y_even = 2 * n + 2 * p, 2 * n + 2 * p + 1
        terms[(zero_b, (1 << x_odd) | (1 << y_even))] = half
        terms[(zero_b, (1 << x_even) | (1 << y_odd))] = -half
    return SuperPolynomial(dbl, terms)


class GaussianFunction:
    """Super polynomial times an optional super-Gaussian envelope.

    The envelope exp(x^2/2) is a flag, never a series: operators act
    through it by product rules.  All transforms require the envelope.
    """

    __slots__ = ("poly", "envelope")

    def __init__(self, poly, envelope=True):
        self.poly = poly
        self.envelope = envelope

    @property
    def universe(self):
        return self.poly.universe

    def __add__(self, other):
        if self.envelope != other.envelope:
            raise ValueError("cannot add different envelopes")
        return GaussianFunction(self.poly + other.poly, self.envelope)

    def __sub__(self, other):
        if self.envelope != other.envelope:
            raise ValueError("cannot add different envelopes")
        return GaussianFunction(self.poly - other.poly, self.envelope)

    def __neg__(self):
        return GaussianFunction(-self.poly, self.envelope)

    def scale(self, c):
        return GaussianFunction(self.poly.scale(c), self.envelope)

    def mul_poly(self, g):
        """Multiply by a plain polynomial from the left."""
        return GaussianFunction(sp_mul(g, self.poly), self.envelope)

    def mul_poly_right(self, g):
        return GaussianFunction(sp_mul(self.poly, g), self.envelope)

    def __eq__(self, other):
        if not isinstance(other, GaussianFunction):
            return NotImplemented
        return self.envelope == other.envelope and self.poly == other.poly

    def __bool__(self):
        return bool(self.poly)

    def map_coefficients(self, fn):
        return GaussianFunction(self.poly.map_coefficients(fn), self.envelope)

    def conjugate(self):
        return GaussianFunction(self.poly.conjugate(), self.envelope)

    def __repr__(self):
        tail = "*G" if self.envelope else ""
        return f"GaussianFunction<{self.poly!r}{tail}>"


def fermionic_envelope_poly(u, width=Fraction(1, 2), sign=1):
    """exp(sign*width*x`^2) expanded: prod_j (1 + sign*width q_{2j-1}q_{2j})."""
    out = SuperPolynomial.one(u)
    for p in range(u.pairs):
        pair = SuperPolynomial(
            u, {((0,) * u.m, 0): ExactScalar.one(),
                ((0,) * u.m, (1 << (2 * p)) | (1 << (2 * p + 1))):
                    ExactScalar.rational(Fraction(sign) * width)})
        out = sp_mul(out, pair)
    return out


def substitute_ray(f, ray_universe=None):
    """Substitute x_i -> r*w_i and q_j -> r*w`_j into a Gaussian function.

    Output lives in a universe with bosonic (r, w1..wm) and the fermionic
    w-symbols; the envelope becomes exp(r^2 * w^2 / 2) with w^2 left
    symbolic for the mod (w^2+1) reduction downstream.
    """
    if not f.envelope:
        raise ValueError("envelope missing")
    u = f.universe
    if ray_universe is None:
        ray_universe = VariableUniverse(
            ("r",) + tuple(f"w{i + 1}" for i in range(u.m)),
            tuple(f"wf{j + 1}" for j in range(len(u.fermionic))))
    t = ray_universe
    out = {}
    for (bos, mask), c in f.poly.terms.items():
        deg = sum(bos) + mask.bit_count()
        key = ((deg,) + bos, mask)
        out[key] = out[key] + c if key in out else c
    return RaySubstituted(SuperPolynomial(t, out))


class RaySubstituted:
    """Polynomial in (r, w) carrying the symbolic envelope exp(r^2 w^2/2)."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = poly

    @property
    def universe(self):
        return self.poly.universe

    def __repr__(self):
        return f"RaySubstituted<{self.poly!r} * exp(r^2*w^2/2)>"
