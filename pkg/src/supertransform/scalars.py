"""Exact scalar ring for all coefficients of the engine.

Every constant appearing in the transforms lives in the ring of finite sums

    q * sqrt2^eps * pi^(b/2)

with q a complex rational, eps in {0, 1} and b an integer.  The basis
{pi^(b/2) * sqrt2^eps} is linearly independent over the complex rationals,
so keeping term maps canonical (no zero coefficients, sqrt2^2 folded into q)
gives decidable exact equality.
"""

from __future__ import annotations

from fractions import Fraction


class QQi:
    """Complex rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _as_qqi(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_as_qqi(other))

    def __mul__(self, other):
        other = _as_qqi(other)
        return QQi(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self):
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return QQi(self.re / d, -self.im / d)

    def conjugate(self):
        return QQi(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QQi(other)
        if not isinstance(other, QQi):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QQi({self.re!r}, {self.im!r})"


def _as_qqi(v):
    if isinstance(v, QQi):
        return v
    if isinstance(v, (int, Fraction)):
        return QQi(v)
    raise TypeError(f"cannot interpret {v!r} as complex rational")


class ExactScalar:
    """Element of the ring sum_j q_j * sqrt2^eps_j * pi^(b_j/2).

    Immutable; term map keyed by (b, eps) in canonical form (no zero q,
    eps in {0,1}).  Inversion is only defined for single-term scalars,
    which covers every division the engine performs.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        canon = {}
        if terms:
            for (b, eps), q in terms.items():
                q = _as_qqi(q)
                if not q:
                    continue
                if eps not in (0, 1):
                    q = q * (Fraction(2) ** (eps // 2))
                    eps %= 2
                key = (b, eps)
                acc = canon.get(key)
                q = q if acc is None else acc + q
                if q:
                    canon[key] = q
                elif key in canon:
                    del canon[key]
        self.terms = canon

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero():
        return ExactScalar()

    @staticmethod
    def one():
        return ExactScalar({(0, 0): QQi(1)})

    @staticmethod
    def rational(p, q=1):
        return ExactScalar({(0, 0): QQi(Fraction(p, q))})

    @staticmethod
    def from_qqi(q):
        return ExactScalar({(0, 0): _as_qqi(q)})

    @staticmethod
    def i():
        return ExactScalar({(0, 0): QQi(0, 1)})

    @staticmethod
    def sqrt2():
        return ExactScalar({(0, 1): QQi(1)})

    @staticmethod
    def pi_half_power(b):
        """pi^(b/2) for any integer b."""
        return ExactScalar({(b, 0): QQi(1)})

    @staticmethod
    def sqrt2_power(j):
        """2^(j/2) for any integer j."""
        q, r = divmod(j, 2)
        return ExactScalar({(0, r): QQi(Fraction(2) ** q)})

    @staticmethod
    def two_pi_half_power(j):
        """(2*pi)^(j/2) for any integer j."""
        return ExactScalar.sqrt2_power(j) * ExactScalar.pi_half_power(j)

    @staticmethod
    def i_power(k):
        k %= 4
        re = {0: 1, 1: 0, 2: -1, 3: 0}[k]
        im = {0: 0, 1: 1, 2: 0, 3: -1}[k]
        return ExactScalar({(0, 0): QQi(re, im)})

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            return NotImplemented
        merged = dict(self.terms)
        for key, q in other.terms.items():
            acc = merged.get(key)
            s = q if acc is None else acc + q
            if s:
                merged[key] = s
            elif key in merged:
                del merged[key]
        out = ExactScalar.__new__(ExactScalar)
        out.terms = merged
        return out

    def __neg__(self):
        out = ExactScalar.__new__(ExactScalar)
        out.terms = {k: -q for k, q in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi)):
            other = _as_qqi(other)
            if not other:
                return ExactScalar.zero()
            out = ExactScalar.__new__(ExactScalar)
            out.terms = {k: q * other for k, q in self.terms.items()}
            return out
        if not isinstance(other, ExactScalar):
            return NotImplemented
        acc = {}
        for (b1, e1), q1 in self.terms.items():
            for (b2, e2), q2 in other.terms.items():
                e = e1 + e2
                q = q1 * q2
                if e == 2:          # sqrt2 * sqrt2 folds to 2
                    e = 0
                    q = q * 2
                key = (b1 + b2, e)
                cur = acc.get(key)
                q = q if cur is None else cur + q
                if q:
                    acc[key] = q
                elif key in acc:
                    del acc[key]
        out = ExactScalar.__new__(ExactScalar)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        """Inverse of a single-term scalar; 1/sqrt2 = sqrt2/2."""
        if not self.terms:
            raise ZeroDivisionError("division by zero")
        if len(self.terms) > 1:
            raise ValueError("non-monomial scalar not invertible")
        ((b, eps), q), = self.terms.items()
        qinv = q.inverse()
        if eps:
            qinv = qinv * Fraction(1, 2)
        return ExactScalar({(-b, eps): qinv})

    def conjugate(self):
        out = ExactScalar.__new__(ExactScalar)
        out.terms = {k: q.conjugate() for k, q in self.terms.items()}
        return out

    # -- predicates and conversions -----------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_rational(self):
        return all(k == (0, 0) and not q.im for k, q in self.terms.items())

    def rational_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return self.terms[(0, 0)].re

    def is_gaussian_rational(self):
        return all(k == (0, 0) for k in self.terms)

    def qqi_value(self):
        if not self.terms:
            return QQi(0)
        if not self.is_gaussian_rational():
            raise ValueError("scalar is not a complex rational")
        return self.terms[(0, 0)]

    def to_complex(self):
        total = 0j
        pi = 3.14159265358979323846264338327950288
        sq2 = 1.4142135623730950488016887242096981
        for (b, eps), q in self.terms.items():
            total += complex(q) * (pi ** (b / 2.0)) * (sq2 if eps else 1.0)
        return total

    # -- rendering ------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for (b, eps), q in sorted(self.terms.items()):
            parts.append(_render_term(b, eps, q))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def to_json(self):
        return [{"q": [t.re.numerator, t.re.denominator,
                       t.im.numerator, t.im.denominator],
                 "b": b, "eps": eps}
                for (b, eps), t in sorted(self.terms.items())]

    def __repr__(self):
        return f"ExactScalar<{self.render()}>"


def _render_qqi(q):
    """Render a complex rational; parenthesize genuine sums."""
    if not q.im:
        return str(q.re)
    if not q.re:
        if q.im == 1:
            return "i"
        if q.im == -1:
            return "-i"
        return f"{q.im}*i"
    im = "i" if q.im == 1 else ("-i" if q.im == -1 else f"{q.im}*i")
    sep = "+" if not im.startswith("-") else ""
    return f"({q.re}{sep}{im})"


def _render_term(b, eps, q):
    radicals = []
    if eps:
        radicals.append("sqrt2")
    if b:
        if b == 1:
            radicals.append("sqrtpi")
        elif b % 2 == 0:
            radicals.append(f"pi^{b // 2}" if b != 2 else "pi")
        else:
            radicals.append(f"pi^({b}/2)")
    qs = _render_qqi(q)
    if not radicals:
        return qs
    if qs == "1":
        return "*".join(radicals)
    if qs == "-1":
        return "-" + "*".join(radicals)
    return "*".join([qs] + radicals)


# -- gamma at half-integer steps ---------------------------------------

def gamma_half_integer(numerator):
    """Gamma(numerator/2) exactly; argument must be positive.

    Even numerator gives a factorial, odd numerator lands in Q*sqrt(pi).
    """
    if numerator <= 0:
        raise ValueError("gamma argument <= 0")
    if numerator % 2 == 0:
        k = numerator // 2
        return ExactScalar.rational(_factorial(k - 1))
    k = numerator // 2          # Gamma(k + 1/2)
    val = Fraction(_factorial(2 * k), 4 ** k * _factorial(k))
    return ExactScalar({(1, 0): QQi(val)})


def _factorial(k):
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


def rising_factorial(base, count):
    """base*(base+1)*...*(base+count-1) as a Fraction; empty product is 1."""
    out = Fraction(1)
    b = Fraction(base)
    for v in range(count):
        out *= b + v
    return out


#: Float backend scalar; conversion from ExactScalar is total.
FloatScalar = complex


def to_float(a):
    """Total conversion ExactScalar -> complex backend value."""
    return a.to_complex()
