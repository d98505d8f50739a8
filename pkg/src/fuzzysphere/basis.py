"""The orthogonal basis T(n, m) = e_-^(n-m)(J+^n), norms, signs and related operators.

Everything is kept square-root free by working with the unnormalized T(n, m);
the normalized basis only appears inside :func:`omega_apply` (where the roots
cancel) and numerically in :mod:`fuzzysphere.sphere`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from .coeff import KAPPA, PONE, PZERO, U, GaussRational, ParamPoly, poly_eval
from .errors import DegenerateSigmaWarning, DomainError
from .freealg import (
    NF_JM,
    NF_JP,
    NF_ONE,
    NF_Z,
    NormalForm,
    commutator,
    nf_dagger,
    nf_mul,
    nf_pow,
    zp_add,
    zp_scale,
    zp_shift,
)


@dataclass
class BasisDecomp:
    """Coefficients against T(n, m); ``terms[(n, m)]`` may be Laurent in kappa."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if v}

    def __eq__(self, other):
        return isinstance(other, BasisDecomp) and self.terms == other.terms

    def reconstruct(self) -> NormalForm:
        out = NormalForm()
        for (n, m), c in self.terms.items():
            out = out + build_T(n, m).scale(c)
        return out

    def specialize(self, kappa0, u0) -> dict:
        """Exact coefficient values at a point; warns if a used degree has sigma_n = 0."""
        degenerate = sorted({n for n, _ in self.terms if sigma_n(n, kappa0, u0) == 0})
        if degenerate:
            warnings.warn(
                f"degrees {degenerate} vanish in the representation at kappa={kappa0}, u={u0}",
                DegenerateSigmaWarning,
                stacklevel=2,
            )
        return {k: poly_eval(v, kappa0, u0) for k, v in self.terms.items()}

    def __str__(self):
        return " + ".join(f"({c})*T{n, m}" for (n, m), c in sorted(self.terms.items())) or "0"


def _check_nm(n: int, m: int):
    if n < 0 or abs(m) > n:
        raise DomainError(f"need |m| <= n, got n={n}, m={m}")


@lru_cache(maxsize=None)
def build_T(n: int, m: int) -> NormalForm:
    """T(n, m) = e_-^(n-m)(J+^n) with e_-(f) = [J-, f]."""
    _check_nm(n, m)
    if m == n:
        return nf_pow(NF_JP, n)
    return commutator(NF_JM, build_T(n, m + 1))


def _leading(n: int, m: int) -> tuple[GaussRational, int]:
    """Leading z-coefficient of T(n, m) in its sector, as (constant, kappa power)."""
    p = build_T(n, m).sectors()[m]
    lc = p[-1]
    if len(p) - 1 != n - abs(m) or len(lc.terms) != 1:
        raise AssertionError(f"unexpected shape of T({n},{m})")
    (k, e), c = next(iter(lc.terms.items()))
    if e:
        raise AssertionError(f"leading coefficient of T({n},{m}) involves u")
    return c, k


def decompose(f: NormalForm, sectors=None) -> BasisDecomp:
    """Coefficients of f against T(n, m) by triangular elimination in each e_z sector."""
    out = {}
    for m, p in f.sectors().items():
        if sectors is not None and m not in sectors:
            continue
        p = list(p)
        while p:
            n = abs(m) + len(p) - 1
            c, k = _leading(n, m)
            coef = (p[-1] * (1 / c)).shift_kappa(-k)
            out[(n, m)] = coef
            p = zp_add(p, zp_scale(build_T(n, m).sectors()[m], -coef))
            if len(p) > n - abs(m):
                raise AssertionError("elimination failed to reduce the degree")
    return BasisDecomp(out)


def pi0(f: NormalForm) -> ParamPoly:
    """Projection onto the scalar part (coefficient of T(0, 0))."""
    return decompose(f, sectors={0}).terms.get((0, 0), PZERO)


def inner(f: NormalForm, g: NormalForm) -> ParamPoly:
    """<f, g> = pi0(f^dagger g)."""
    return pi0(nf_mul(nf_dagger(f), g))


def nu(n: int) -> ParamPoly:
    """pi0(J-^n J+^n) in closed product form."""
    out = ParamPoly.const(Fraction(factorial(n) ** 2, factorial(2 * n + 1)))
    for r in range(1, n + 1):
        out = out * (U * 4 + KAPPA * KAPPA * (1 - r * r))
    return out


def norm_T(n: int, m: int) -> ParamPoly:
    """<T(n,m), T(n,m)> = kappa^(2(n-m)) (2n)! (n-m)!/(n+m)! * nu(n)."""
    _check_nm(n, m)
    c = Fraction(factorial(2 * n) * factorial(n - m), factorial(n + m))
    return (nu(n) * c).shift_kappa(2 * (n - m))


def _ceil_sqrt(q: Fraction) -> int:
    r = isqrt(q.numerator // q.denominator)
    while r * r < q:
        r += 1
    return r


def sigma_n(n: int, kappa0, u0) -> int:
    """Sign of pi0(J-^n J+^n) at a point, from the threshold N0 = ceil(sqrt(4u/kappa^2 + 1))."""
    kappa0, u0 = Fraction(kappa0), Fraction(u0)
    if u0 < 0:
        raise DomainError("u = R^2 must be nonnegative")
    if kappa0 == 0:
        if u0 == 0 and n > 0:
            return 0
        return 1
    s = 4 * u0 / kappa0**2 + 1
    n0 = _ceil_sqrt(s)
    if n <= n0 - 1:
        return 1
    if n0 * n0 == s:
        return 0
    return -1 if (n - n0 + 1) % 2 else 1


def hahn_p(n: int, m: int, N: int) -> list[Fraction]:
    """Hahn-polynomial form of the z-part of T(n, m) at kappa=1, up to a constant.

    For m >= 0 returns (-1)^(n-m) h^(m,m)_(n-m)(z + (N-1)/2, N-m) as z-coefficients
    (terminating 3F2 sum).  For m < 0 the argument is shifted by -|m| and the
    sign (-1)^|m| applied; the result then multiplies J-^|m| from the right
    (J-^|m| p(z)).
    """
    _check_nm(n, m)
    if N <= n:
        raise DomainError(f"need N > n, got N={N}, n={n}")
    mm = abs(m)
    d = n - mm
    half = Fraction(N - 1, 2) - (mm if m < 0 else 0)

    def poch(a, k):
        out = Fraction(1)
        for j in range(k):
            out *= a + j
        return out

    # (-x)_k with x = z + half, as a polynomial in z
    total = [Fraction(0)] * (d + 1)
    negx = [Fraction(1)]
    for k in range(d + 1):
        c = poch(mm - n, k) * poch(n + mm + 1, k) / (poch(mm + 1, k) * poch(mm + 1 - N, k) * factorial(k))
        for i, a in enumerate(negx):
            total[i] += c * a
        # multiply by (-x + k) = (-half + k) - z
        nxt = [Fraction(0)] * (len(negx) + 1)
        for i, a in enumerate(negx):
            nxt[i] += a * (k - half)
            nxt[i + 1] -= a
        negx = nxt
    pref = Fraction((-1) ** d) * poch(mm + 1, d) * poch(mm + 1 - N, d) / factorial(d)
    if m < 0:
        pref *= (-1) ** mm
    return [pref * t for t in total]


def hahn_nf(n: int, m: int, N: int) -> NormalForm:
    """J+^m hahn_p (m >= 0) or J-^|m| hahn_p (m < 0) at kappa=1, u=(N^2-1)/4."""
    p = NormalForm({(0, b, 0): c for b, c in enumerate(hahn_p(n, m, N)) if c})
    gen = nf_pow(NF_JP, m) if m >= 0 else nf_pow(NF_JM, -m)
    return nf_mul(gen, p).specialize(1, Fraction(N * N - 1, 4))


_OPS = ("e_x", "e_y", "e_z", "e_plus", "e_minus", "laplacian")


def apply_operator(which: str, d: BasisDecomp) -> BasisDecomp:
    """Action of e_x, e_y, e_z, e_plus, e_minus or the Laplacian on a T-decomposition."""
    if which not in _OPS:
        raise DomainError(f"unknown operator {which!r}; expected one of {_OPS}")
    if which == "e_x":
        a, b = apply_operator("e_plus", d), apply_operator("e_minus", d)
        return _combine(a, b, Fraction(1, 2), Fraction(1, 2))
    if which == "e_y":
        a, b = apply_operator("e_plus", d), apply_operator("e_minus", d)
        half_i = GaussRational(0, Fraction(-1, 2))  # 1/(2i)
        return _combine(a, b, half_i, -half_i)
    out: dict = {}
    for (n, m), c in d.terms.items():
        if which == "e_z":
            key, v = (n, m), c * m * KAPPA
        elif which == "laplacian":
            key, v = (n, m), c * (n * (n + 1)) * KAPPA * KAPPA
        elif which == "e_minus":
            if m == -n:
                continue
            key, v = (n, m - 1), c
        else:
            if m == n:
                continue
            key, v = (n, m + 1), (c * ((n - m) * (n + m + 1))).shift_kappa(2)
        out[key] = out.get(key, PZERO) + v
    return BasisDecomp(out)


def _combine(a: BasisDecomp, b: BasisDecomp, ca, cb) -> BasisDecomp:
    out = {k: v * ca for k, v in a.terms.items()}
    for k, v in b.terms.items():
        out[k] = out.get(k, PZERO) + v * cb
    return BasisDecomp(out)


def omega_apply(p: int, f: NormalForm, kappa0, u0) -> NormalForm:
    """sum_m P(p,m)^dagger f P(p,m) at kappa=kappa0, u=u0 (exact, roots cancel pairwise).

    When sigma_p vanishes at the point the normalization is taken as 1 and a
    DegenerateSigmaWarning is issued.
    """
    kappa0, u0 = Fraction(kappa0), Fraction(u0)
    if kappa0 == 0:
        raise DomainError("omega_apply needs kappa != 0")
    sig = sigma_n(p, kappa0, u0)
    if sig == 0:
        warnings.warn(f"sigma_{p} = 0 at kappa={kappa0}, u={u0}; using alpha=1", DegenerateSigmaWarning, stacklevel=2)
        alpha_sq = Fraction(1)
    else:
        alpha_sq = 1 / abs(poly_eval(nu(p), kappa0, u0).re)
    fs = f.specialize(kappa0, u0)
    total = NormalForm()
    for m in range(-p, p + 1):
        t = build_T(p, m).specialize(kappa0, u0)
        scale = alpha_sq * kappa0 ** (2 * (m - p)) * Fraction(factorial(p + m), factorial(2 * p) * factorial(p - m))
        term = nf_mul(nf_mul(nf_dagger(t), fs), t).specialize(kappa0, u0)
        total = total + term.scale(scale)
    return total


def left_ideal_z_member(f: NormalForm) -> bool:
    """True iff f lies in the left ideal P*z (every J-form polynomial vanishes at z=0)."""
    for m, p in f.sectors().items():
        if m >= 0:
            if p[0]:
                return False
        else:
            # p(z) J-^c = J-^c p(z - c kappa)
            shifted = zp_shift(p, m)
            if shifted and shifted[0]:
                return False
    return True


def check_eigen(f: NormalForm, m: int) -> bool:
    """True iff e_z f = kappa m f."""
    return commutator(NF_Z, f) == f.scale(KAPPA * m)


__all__ = [
    "BasisDecomp",
    "build_T",
    "decompose",
    "pi0",
    "inner",
    "nu",
    "norm_T",
    "sigma_n",
    "hahn_p",
    "hahn_nf",
    "apply_operator",
    "omega_apply",
    "left_ideal_z_member",
    "NF_ONE",
    "PONE",
]
