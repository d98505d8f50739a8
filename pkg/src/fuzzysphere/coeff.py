"""Exact coefficients: Gaussian rationals and polynomials in (kappa, u = R^2).

Everything here is exact; no floats are produced except by the explicit
``to_complex`` helpers used by the numerical sphere code.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import DegreeExceeded, DivisionByZero, DuplicateNode


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {x!r}")


class GaussRational:
    """A complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussRational(a * c, 0)
            return GaussRational(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.coerce(other)
        if not other:
            raise DivisionByZero("division of a Gaussian rational by zero")
        c, d = other.re, other.im
        den = c * c + d * d
        return GaussRational((self.re * c + self.im * d) / den, (self.im * c - self.re * d) / den)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __pow__(self, k: int):
        out = GaussRational(1)
        base = self
        if k < 0:
            base = 1 / base
            k = -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return format_gauss(self)


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(c: GaussRational) -> str:
    if not c.im:
        return _fmt_frac(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_frac(c.im)}*i"
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    im = "i" if mag == 1 else f"{_fmt_frac(mag)}*i"
    return f"({_fmt_frac(c.re)}{sign}{im})"


class ParamPoly:
    """Polynomial in kappa (Laurent allowed) and u with Gaussian-rational coefficients.

    ``terms`` maps ``(kappa_exp, u_exp)`` to a nonzero :class:`GaussRational`.
    Instances are treated as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                c = GaussRational.coerce(c)
                if c:
                    if key[1] < 0:
                        raise ValueError("negative u exponent")
                    clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "ParamPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, kexp: int = 0, uexp: int = 0) -> "ParamPoly":
        return cls({(kexp, uexp): c})

    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    # predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def const_value(self) -> GaussRational:
        if not self.is_const():
            raise ValueError(f"{self} is not a constant")
        return self.terms.get((0, 0), ZERO)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRational)):
            return self.terms == ParamPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            if isinstance(other, (int, Fraction, GaussRational)):
                other = ParamPoly.const(other)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                s = v + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = ParamPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            if not other:
                return ParamPoly._raw({})
            return ParamPoly._raw({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, ParamPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ParamPoly._raw({})
        out: dict = {}
        for (k1, e1), c1 in self.terms.items():
            for (k2, e2), c2 in other.terms.items():
                key = (k1 + k2, e1 + e2)
                v = out.get(key)
                out[key] = c1 * c2 if v is None else v + c1 * c2
        return ParamPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift_kappa(self, d: int) -> "ParamPoly":
        """Multiply by kappa**d (d may be negative)."""
        if not d:
            return self
        return ParamPoly._raw({(k + d, e): c for (k, e), c in self.terms.items()})

    def conjugate(self) -> "ParamPoly":
        return ParamPoly._raw({k: c.conjugate() for k, c in self.terms.items()})

    # inspection -----------------------------------------------------------
    def min_kappa(self) -> int:
        return min((k for k, _ in self.terms), default=0)

    def weights(self) -> set[int]:
        return {k + 2 * e for k, e in self.terms}

    def is_laurent(self) -> bool:
        return any(k < 0 for k, _ in self.terms)

    def u_degree(self) -> int:
        return max((e for _, e in self.terms), default=-1)

    def kappa_part(self, kexp: int) -> "ParamPoly":
        """The u-polynomial multiplying kappa**kexp (returned with kappa exponent 0)."""
        return ParamPoly._raw({(0, e): c for (k, e), c in self.terms.items() if k == kexp})

    def subs_kappa(self, k0) -> "ParamPoly":
        """Substitute a rational value for kappa, leaving u symbolic."""
        k0 = _frac(k0)
        out: dict = {}
        for (k, e), c in self.terms.items():
            if k < 0 and k0 == 0:
                raise DivisionByZero("kappa=0 meets a Laurent term")
            v = c * (k0 ** k)
            out[(0, e)] = out.get((0, e), ZERO) + v
        return ParamPoly(out)

    def subs_u(self, u0) -> "ParamPoly":
        """Substitute a rational value for u, leaving kappa symbolic."""
        u0 = _frac(u0)
        out: dict = {}
        for (k, e), c in self.terms.items():
            v = c * (u0**e)
            out[(k, 0)] = out.get((k, 0), ZERO) + v
        return ParamPoly(out)

    def to_complex(self, kappa: float, u: float) -> complex:
        s = 0j
        for (k, e), c in self.terms.items():
            s += complex(c) * (kappa ** k) * (u ** e)
        return s

    def __repr__(self):
        return f"ParamPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: ParamPoly) -> str:
    """Render as text, e.g. ``1/12*k^-2 + 2/3*u``; ``0`` for the zero polynomial."""
    if not p.terms:
        return "0"
    parts = []
    for (k, e) in sorted(p.terms):
        c = p.terms[(k, e)]
        neg = False
        if not c.im and c.re < 0:
            neg, c = True, -c
        elif not c.re and c.im < 0:
            neg, c = True, -c
        factors = []
        if k:
            factors.append("k" if k == 1 else f"k^{k}")
        if e:
            factors.append("u" if e == 1 else f"u^{e}")
        cs = format_gauss(c)
        if cs == "1" and factors:
            body = "*".join(factors)
        else:
            body = "*".join([cs] + factors)
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


KAPPA = ParamPoly.monomial(1, 1, 0)
U = ParamPoly.monomial(1, 0, 1)
PONE = ParamPoly.const(1)
PZERO = ParamPoly()


def poly_eval(p: ParamPoly, kappa0, u0) -> GaussRational:
    """Exact value of ``p`` at kappa=kappa0, u=u0."""
    k0, u0 = _frac(kappa0), _frac(u0)
    s = ZERO
    for (k, e), c in p.terms.items():
        if k < 0 and k0 == 0:
            raise DivisionByZero("kappa=0 meets a Laurent term")
        s = s + c * (k0 ** k) * (u0 ** e)
    return s


def poly_interpolate(samples: Iterable[tuple[object, object]], degree_bound: int) -> ParamPoly:
    """Interpolating polynomial in u (Newton divided differences, exact).

    Raises DegreeExceeded when the interpolant through *all* samples has degree
    above ``degree_bound``; pass more than ``degree_bound + 1`` samples to make
    that check meaningful.
    """
    pts = [(_frac(x), GaussRational.coerce(y)) for x, y in samples]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateNode("two samples share a u-value")
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} samples, got {len(pts)}")
    n = len(pts)
    coef = [y for _, y in pts]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial coefficients
    poly = [ZERO] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (u - xs[i]) + coef[i]
        new = [ZERO] * n
        for d in range(n - 1):
            if poly[d]:
                new[d + 1] = new[d + 1] + poly[d]
                new[d] = new[d] - poly[d] * xs[i]
        new[0] = new[0] + coef[i]
        poly = new
    deg = max((d for d, c in enumerate(poly) if c), default=-1)
    if deg > degree_bound:
        raise DegreeExceeded(f"interpolant has degree {deg} > bound {degree_bound}")
    return ParamPoly({(0, d): c for d, c in enumerate(poly) if c})


def weight_lift(q: ParamPoly, total_weight: int, word_degree: int) -> ParamPoly:
    """Restore kappa-dependence of a kappa=1 specialization by weight homogeneity.

    Each ``c*u^e`` becomes ``c*kappa^(total_weight - word_degree - 2e)*u^e``.
    """
    out = {}
    for (k, e), c in q.terms.items():
        if k:
            raise ValueError("weight_lift expects a polynomial in u only")
        out[(total_weight - word_degree - 2 * e, e)] = c
    return ParamPoly(out)


def set_kappa_one(p: ParamPoly) -> ParamPoly:
    return p.subs_kappa(1)
