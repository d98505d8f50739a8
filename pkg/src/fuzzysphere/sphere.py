"""The commutative limit kappa -> 0: functions on the sphere of radius R.

Coordinates: x = R sin(phi) sin(theta), y = R cos(phi) sin(theta), z = R cos(theta),
so J+ = i R sin(theta) e^{-i phi}.  Harmonics are Y(n, m) = sqrt(4 pi) i^m Y_cs(n, m),
with Y_cs the Condon-Shortley orthonormal harmonics; they are orthonormal for the
averaged measure (1/4pi) dOmega and the limit of the normalized basis element of
charge m is (-1)^n Y(n, -m).

A J-form is a dict {m: [p_0, p_1, ...]} meaning sum_m J+^m p_m(z) (m >= 0) or
J-^|m| p_m(z) (m < 0), with coefficients exact polynomials in u = R^2.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .basis import BasisDecomp, build_T, decompose
from .coeff import PZERO, U, GaussRational, ParamPoly
from .errors import DivergentLimit, DomainError, MissingExactForm, NotDivisible
from .freealg import NormalForm, nf_mul, zp_add, zp_mul, zp_scale, zp_trim

_I = GaussRational(0, 1)

# ---------------------------------------------------------------------------
# harmonics


def _legendre_normalized(n: int, am: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal associated Legendre values sqrt((2l+1)/4pi (l-m)!/(l+m)!) P_l^m(x), Condon-Shortley phase."""
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    p = np.full_like(x, 1.0 / math.sqrt(4 * math.pi))
    for k in range(1, am + 1):
        p = -math.sqrt((2 * k + 1) / (2 * k)) * s * p
    if n == am:
        return p
    prev, cur = p, math.sqrt(2 * am + 3) * x * p
    for l in range(am + 2, n + 1):
        a = math.sqrt((4 * l * l - 1) / (l * l - am * am))
        b = math.sqrt(((l - 1) ** 2 - am * am) / (4 * (l - 1) ** 2 - 1))
        prev, cur = cur, a * (x * cur - b * prev)
    return cur


def ylm_cs(n: int, m: int, theta, phi) -> np.ndarray:
    """Condon-Shortley orthonormal harmonic (unit norm for dOmega)."""
    if n < 0 or abs(m) > n:
        raise DomainError(f"need |m| <= n, got n={n}, m={m}")
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    p = _legendre_normalized(n, abs(m), np.cos(theta))
    y = p * np.exp(1j * abs(m) * phi)
    if m < 0:
        y = (-1) ** abs(m) * np.conj(y)
    return y


def ylm(n: int, m: int, theta, phi) -> np.ndarray:
    """Harmonic normalized for the averaged measure, with phase i^m."""
    return math.sqrt(4 * math.pi) * (1j**m) * ylm_cs(n, m, theta, phi)


# ---------------------------------------------------------------------------
# J-form algebra at kappa = 0 (J+ J- = u - z^2)

_CASIMIR = [U, PZERO, ParamPoly.const(-1)]


def _clean(jf: dict) -> dict:
    out = {}
    for m, p in jf.items():
        p = zp_trim(list(p))
        if p:
            out[m] = p
    return out


def jf_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for m, p in g.items():
        out[m] = zp_add(out.get(m, []), p)
    return _clean(out)


def jf_scale(f: dict, c) -> dict:
    if not isinstance(c, ParamPoly):
        c = ParamPoly.const(c)
    return _clean({m: zp_scale(p, c) for m, p in f.items()})


def jf_neg(f: dict) -> dict:
    return jf_scale(f, -1)


def _zp_pow(p: list, k: int) -> list:
    out = [ParamPoly.const(1)]
    for _ in range(k):
        out = zp_mul(out, p)
    return out


def _monomial_product(m1: int, m2: int) -> tuple[int, list]:
    """J^m1 J^m2 = J^(m1+m2) times a polynomial in z (signed charges)."""
    if m1 >= 0 and m2 >= 0 or m1 <= 0 and m2 <= 0:
        return m1 + m2, [ParamPoly.const(1)]
    return m1 + m2, _zp_pow(_CASIMIR, min(abs(m1), abs(m2)))


def jf_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, p in f.items():
        for m2, q in g.items():
            m, r = _monomial_product(m1, m2)
            out[m] = zp_add(out.get(m, []), zp_mul(zp_mul(p, q), r))
    return _clean(out)


def zp_deriv(p: list) -> list:
    return zp_trim([a * k for k, a in enumerate(p)][1:])


def _bracket_pair(m1: int, p: list, m2: int, q: list) -> dict:
    """Poisson bracket of two single-charge J-forms."""
    if m1 < 0 and m2 >= 0:
        return jf_neg(_bracket_pair(m2, q, m1, p))
    dp, dq = zp_deriv(p), zp_deriv(q)
    if m2 >= 0 or m1 < 0 and m2 < 0:
        # same sign: -i J+^(a+b)(b p'q - a p q'), +i J-^(a+b)(...) for negatives
        a, b = abs(m1), abs(m2)
        body = zp_add(zp_scale(zp_mul(dp, q), ParamPoly.const(b)), zp_scale(zp_mul(p, dq), ParamPoly.const(-a)))
        c = -_I if m1 >= 0 else _I
        return _clean({m1 + m2: zp_scale(body, ParamPoly.const(c))})
    # m1 >= 0 > m2: i[(a p q' + b p' q) J+^a J-^b - 2ab z p q J+^(a-1) J-^(b-1)]
    a, b = m1, -m2
    first = zp_add(zp_scale(zp_mul(p, dq), ParamPoly.const(a)), zp_scale(zp_mul(dp, q), ParamPoly.const(b)))
    out = {}
    m, r = _monomial_product(a, -b)
    out = jf_add(out, {m: zp_mul(first, r)})
    if a and b:
        second = zp_mul([PZERO, ParamPoly.const(-2 * a * b)], zp_mul(p, q))
        m, r = _monomial_product(a - 1, -(b - 1))
        out = jf_add(out, {m: zp_mul(second, r)})
    return jf_scale(out, _I)


def jf_bracket(f: dict, g: dict) -> dict:
    out: dict = {}
    for m1, p in f.items():
        for m2, q in g.items():
            out = jf_add(out, _bracket_pair(m1, p, m2, q))
    return out


def jf_degree(f: dict) -> int:
    return max((abs(m) + len(p) - 1 for m, p in f.items()), default=0)


# generators as J-forms
_ONE = ParamPoly.const(1)
_HALF = ParamPoly.const(Fraction(1, 2))
JF_Z = {0: [PZERO, _ONE]}
JF_JP = {1: [_ONE]}
JF_JM = {-1: [_ONE]}
JF_X = {1: [_HALF], -1: [_HALF]}
JF_Y = {1: [ParamPoly.const(GaussRational(0, Fraction(-1, 2)))], -1: [ParamPoly.const(GaussRational(0, Fraction(1, 2)))]}
GENERATORS = {"x": JF_X, "y": JF_Y, "z": JF_Z}


def jform_of_nf(f: NormalForm) -> dict:
    """The kappa = 0 value of a kappa-regular normal form, read as a J-form."""
    out = {}
    for m, p in f.sectors().items():
        for c in p:
            if c.min_kappa() < 0:
                raise DivergentLimit("normal form has a pole at kappa = 0")
        out[m] = [c.kappa_part(0) for c in p]
    return _clean(out)


# ---------------------------------------------------------------------------
# grid evaluation


def _zp_values(p: list, z: np.ndarray, u: float) -> np.ndarray:
    out = np.zeros_like(z, dtype=complex)
    for c in reversed(p):
        out = out * z + c.to_complex(0.0, u)
    return out


def _ladder_values(m: int, theta, phi, R: float) -> np.ndarray:
    jp = 1j * R * np.sin(theta) * np.exp(-1j * phi)
    return jp ** m if m >= 0 else np.conj(jp) ** (-m)


def jf_values(f: dict, theta, phi, R: float) -> np.ndarray:
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    z = R * np.cos(theta)
    out = np.zeros(theta.shape, dtype=complex)
    for m, p in f.items():
        out += _ladder_values(m, theta, phi, R) * _zp_values(p, z, R * R)
    return out


def jf_partials(f: dict, theta, phi, R: float) -> tuple[np.ndarray, np.ndarray]:
    """(d/dtheta, d/dphi) of a J-form; theta must avoid the poles."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    z = R * np.cos(theta)
    dth = np.zeros(theta.shape, dtype=complex)
    dph = np.zeros(theta.shape, dtype=complex)
    for m, p in f.items():
        lad = _ladder_values(m, theta, phi, R)
        val = lad * _zp_values(p, z, R * R)
        dph += -1j * m * val
        dth += abs(m) / np.tan(theta) * val - lad * R * np.sin(theta) * _zp_values(zp_deriv(p), z, R * R)
    return dth, dph


def poisson_grid(f: dict, g: dict, theta, phi, R: float) -> np.ndarray:
    """{f, g} = (1/(R sin theta)) (f_phi g_theta - f_theta g_phi), from analytic partials."""
    fth, fph = jf_partials(f, theta, phi, R)
    gth, gph = jf_partials(g, theta, phi, R)
    return (fph * gth - fth * gph) / (R * np.sin(theta))


def uniform_grid(ntheta: int, nphi: int) -> tuple[np.ndarray, np.ndarray]:
    """Mesh with theta in [0, pi] (poles included) and periodic phi."""
    th = np.linspace(0.0, math.pi, ntheta)
    ph = 2 * math.pi * np.arange(nphi) / nphi
    return np.meshgrid(th, ph, indexing="ij")


def interior_grid(ntheta: int, nphi: int) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint theta nodes (no poles), periodic phi."""
    th = math.pi * (np.arange(ntheta) + 0.5) / ntheta
    ph = 2 * math.pi * np.arange(nphi) / nphi
    return np.meshgrid(th, ph, indexing="ij")


# ---------------------------------------------------------------------------
# limit of the basis


@lru_cache(maxsize=None)
def limit_sector(n: int, m: int) -> tuple:
    """z-polynomial of lim kappa^(m-n) T(n, m) in sector m."""
    p = build_T(n, m).sectors()[m]
    if any(c.min_kappa() < n - m for c in p if c):
        raise AssertionError(f"T({n},{m}) is not of order kappa^{n - m}")
    return tuple(zp_trim([c.kappa_part(n - m) for c in p]))


def conversion_factor(n: int, m: int) -> Fraction:
    """c(n, m) = (n+m)!/((2n)!(n-m)!), so P = alpha kappa^(m-n) sqrt(c) T."""
    return Fraction(math.factorial(n + m), math.factorial(2 * n) * math.factorial(n - m))


def alpha_limit(n: int, R: float) -> float:
    """Normalization of the charge-n top element at kappa = 0."""
    return math.sqrt(math.factorial(2 * n + 1)) / (math.factorial(n) * (2 * R) ** n)


def limit_harmonic(n: int, m: int, g: complex, R: float) -> tuple[tuple[int, int], complex]:
    """Harmonic component of g * lim kappa^(m-n) T(n, m): a multiple of Y(n, -m)."""
    scale = (-1) ** n / (alpha_limit(n, R) * math.sqrt(conversion_factor(n, m)))
    return (n, -m), g * scale


def jform_decompose(f: dict) -> dict:
    """Coefficients g(n, m) (exact u-polynomials) with f = sum g lim kappa^(m-n) T(n, m)."""
    out = {}
    for m, p in f.items():
        p = list(p)
        while p:
            n = abs(m) + len(p) - 1
            basis = list(limit_sector(n, m))
            lead = basis[-1]
            if not lead.is_const():
                raise AssertionError("limit basis leading coefficient is not constant")
            coef = p[-1] * (1 / lead.const_value())
            out[(n, m)] = coef
            p = zp_add(p, zp_scale(basis, -coef))
            if len(p) > n - abs(m):
                raise AssertionError("elimination failed to reduce the degree")
    return out


def jform_harmonics(f: dict, R: float) -> dict:
    out = {}
    for (n, m), g in jform_decompose(f).items():
        key, v = limit_harmonic(n, m, g.to_complex(0.0, R * R), R)
        if v != 0:
            out[key] = out.get(key, 0j) + v
    return out


# ---------------------------------------------------------------------------


@dataclass
class SphereFunction:
    """A finite harmonic sum on the sphere of radius R, optionally with an exact J-form.

    ``harmonics[(n, m)]`` multiplies ylm(n, m).  The exact form, when present,
    is multiplied by the float ``jform_scale`` on evaluation.
    """

    R: float
    harmonics: dict = field(default_factory=dict)
    jform: dict | None = None
    jform_scale: float = 1.0

    @classmethod
    def from_jform(cls, jf: dict, R: float, scale: float = 1.0) -> "SphereFunction":
        h = {k: v * scale for k, v in jform_harmonics(jf, R).items()}
        return cls(R, h, _clean(jf), scale)

    def degree(self) -> int:
        if self.jform is not None:
            return jf_degree(self.jform)
        return max((n for n, _ in self.harmonics), default=0)

    def evaluate(self, theta, phi, route: str = "harmonics") -> np.ndarray:
        theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        if route == "jform":
            if self.jform is None:
                raise MissingExactForm("no exact J-form attached")
            return self.jform_scale * jf_values(self.jform, theta, phi, self.R)
        if route != "harmonics":
            raise ValueError(f"unknown route {route!r}")
        out = np.zeros(theta.shape, dtype=complex)
        for (n, m), c in self.harmonics.items():
            out += c * ylm(n, m, theta, phi)
        return out

    def harmonics_json(self) -> list[dict]:
        return [
            {"n": n, "m": m, "re": float(c.real), "im": float(c.imag)}
            for (n, m), c in sorted(self.harmonics.items())
        ]


def _require_exact(*fs: SphereFunction):
    for f in fs:
        if f.jform is None:
            raise MissingExactForm("operation needs an exact J-form")


def to_sphere(d: BasisDecomp, R0: float, kappa0=0) -> SphereFunction:
    """kappa -> 0 limit of sum f(n,m) T(n,m) on the sphere of radius R0."""
    if kappa0 != 0:
        raise DomainError("the sphere limit is taken at kappa = 0")
    if R0 <= 0:
        raise DomainError("radius must be positive")
    jf: dict = {}
    for (n, m), c in d.terms.items():
        g = c.shift_kappa(n - m)
        if g.min_kappa() < 0:
            raise DivergentLimit(f"coefficient of T({n},{m}) has a pole at kappa = 0")
        g0 = g.kappa_part(0)
        if g0:
            jf = jf_add(jf, {m: zp_scale(list(limit_sector(n, m)), g0)})
    return SphereFunction.from_jform(jf, R0)


def nf_to_sphere(f: NormalForm, R0: float) -> SphereFunction:
    return to_sphere(decompose(f), R0)


def normalized_basis_limit(n: int, m: int, R0: float) -> SphereFunction:
    """Limit of the normalized basis element: exact form times alpha_0 sqrt(c)."""
    scale = alpha_limit(n, R0) * math.sqrt(conversion_factor(n, m))
    return SphereFunction.from_jform({m: list(limit_sector(n, m))}, R0, scale)


def scaled_T(n: int, m: int) -> NormalForm:
    """kappa^(m-n) T(n, m), the kappa-regular multiple with a nonzero limit."""
    return build_T(n, m).scale(ParamPoly.monomial(1, m - n, 0))


def quadrature(nmax: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes (theta, phi) and weights of the averaged measure, exact to total degree nmax."""
    nt = nmax // 2 + 1
    nphi = nmax + 2
    x, w = np.polynomial.legendre.leggauss(nt)
    th = np.arccos(x)
    ph = 2 * math.pi * np.arange(nphi) / nphi
    TH, PH = np.meshgrid(th, ph, indexing="ij")
    W = np.repeat(w[:, None] / (2 * nphi), nphi, axis=1)
    return TH, PH, W


def sphere_inner(F: SphereFunction, G: SphereFunction, route: str = "harmonics") -> complex:
    """(1/4pi) integral of conj(F) G over the sphere."""
    TH, PH, W = quadrature(F.degree() + G.degree() + 1)
    vals = np.conj(F.evaluate(TH, PH, route)) * G.evaluate(TH, PH, route)
    return complex(np.sum(W * vals))


def poisson(F: SphereFunction, G: SphereFunction) -> SphereFunction:
    """Exact bracket of J-forms (scales multiply)."""
    _require_exact(F, G)
    if not math.isclose(F.R, G.R):
        raise DomainError("functions live on spheres of different radius")
    return SphereFunction.from_jform(jf_bracket(F.jform, G.jform), F.R, F.jform_scale * G.jform_scale)


def moyal_limit(f: NormalForm, g: NormalForm, R0: float) -> SphereFunction:
    """lim (i kappa)^(-1) [f, g], through the basis decomposition of the commutator."""
    nf_to_sphere(f, R0), nf_to_sphere(g, R0)  # regularity of the inputs
    c = nf_mul(f, g) - nf_mul(g, f)
    out = {}
    for (n, m), coef in decompose(c).terms.items():
        h = coef.shift_kappa(n - m)
        if h.min_kappa() < 1:
            raise NotDivisible(f"coefficient of T({n},{m}) in the commutator is not O(kappa)")
        out[(n, m)] = coef.shift_kappa(-1) * (-_I)
    return to_sphere(BasisDecomp(out), R0)


_FIELDS = ("e_x", "e_y", "e_z", "e_plus", "e_minus", "laplacian")


def _harmonic_field(which: str, h: dict) -> dict:
    out: dict = {}

    def put(key, v):
        out[key] = out.get(key, 0j) + v

    for (n, mu), c in h.items():
        if which == "e_z":
            put((n, mu), 1j * mu * c)
        elif which == "laplacian":
            put((n, mu), -n * (n + 1) * c)
        elif which in ("e_plus", "e_minus"):
            if which == "e_plus" and mu > -n:
                put((n, mu - 1), -1j * math.sqrt((n + mu) * (n - mu + 1)) * c)
            if which == "e_minus" and mu < n:
                put((n, mu + 1), -1j * math.sqrt((n - mu) * (n + mu + 1)) * c)
        else:
            plus = _harmonic_field("e_plus", {(n, mu): c})
            minus = _harmonic_field("e_minus", {(n, mu): c})
            if which == "e_x":
                fp, fm = 0.5, 0.5
            else:
                fp, fm = -0.5j, 0.5j
            for k, v in plus.items():
                put(k, fp * v)
            for k, v in minus.items():
                put(k, fm * v)
    return {k: v for k, v in out.items() if v != 0}


def _exact_field(which: str, jf: dict) -> dict:
    if which == "laplacian":
        out: dict = {}
        for gen in GENERATORS.values():
            out = jf_add(out, jf_bracket(gen, jf_bracket(gen, jf)))
        return out
    gen = {"e_x": JF_X, "e_y": JF_Y, "e_z": JF_Z, "e_plus": JF_JP, "e_minus": JF_JM}[which]
    return jf_bracket(gen, jf)


def vector_field(which: str, F: SphereFunction) -> SphereFunction:
    """Limit of (i kappa)^(-1) e_a (a bracket with a coordinate) or of -kappa^(-2) times the Laplacian.

    Harmonic coefficients come from the ladder rules; the exact form, when
    present, from brackets with the generators.  The two are independent routes.
    """
    if which not in _FIELDS:
        raise DomainError(f"unknown field {which!r}; expected one of {_FIELDS}")
    h = _harmonic_field(which, F.harmonics)
    jf = None if F.jform is None else _exact_field(which, F.jform)
    return SphereFunction(F.R, h, jf, F.jform_scale)


def coordinate(axis: str, R: float) -> SphereFunction:
    return SphereFunction.from_jform(GENERATORS[axis], R)


def grid_dump(F: SphereFunction, ntheta: int, nphi: int, route: str = "harmonics") -> str:
    """Rows 'theta phi Re Im' on the uniform grid."""
    TH, PH = uniform_grid(ntheta, nphi)
    vals = F.evaluate(TH, PH, route)
    rows = [
        f"{float(t)!r} {float(p)!r} {float(v.real)!r} {float(v.imag)!r}"
        for t, p, v in zip(TH.ravel(), PH.ravel(), vals.ravel())
    ]
    return "\n".join(rows) + "\n"


def harmonics_dumps(F: SphereFunction) -> str:
    return json.dumps(F.harmonics_json())
