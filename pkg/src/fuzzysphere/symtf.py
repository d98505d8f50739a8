"""Totally symmetric expressions Ssym(a, b, c): sums of all distinct arrangements of x^a y^b z^c.

Commutators are computed in the enveloping algebra U (only the su(2)
relations, no Casimir) using the PBW order x < y < z, and converted back to
symmetric form by peeling top-degree symbols.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping

from .coeff import KAPPA, PONE, PZERO, GaussRational, ParamPoly
from .freealg import FreeElement, NormalForm, NF_X, NF_Y, NF_Z, NF_ONE, mul_free, nf_mul
from .basis import decompose


class SExpr:
    """``terms[(a, b, c)]`` multiplies Ssym(a, b, c)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        clean: dict = {}
        for key, c in (terms or {}).items():
            if min(key) < 0:
                continue
            if not isinstance(c, ParamPoly):
                c = ParamPoly.const(c)
            clean[key] = clean[key] + c if key in clean else c
        self.terms = {k: v for k, v in clean.items() if v}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, SExpr) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SExpr(out)

    def __neg__(self):
        return SExpr({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SExpr":
        if not isinstance(c, ParamPoly):
            c = ParamPoly.const(c)
        return SExpr({k: v * c for k, v in self.terms.items()})

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def is_trace_free(self) -> bool:
        return not formal_trace(self)

    def __repr__(self):
        body = " + ".join(f"({c})*S{k}" for k, c in sorted(self.terms.items()))
        return f"SExpr({body or '0'})"


def _arrangements(counts: tuple[int, int, int]) -> Iterator[tuple]:
    letters = "xyz"
    total = sum(counts)
    if total == 0:
        yield ()
        return
    for i, ch in enumerate(letters):
        if counts[i]:
            rest = list(counts)
            rest[i] -= 1
            for tail in _arrangements(tuple(rest)):
                yield (ch,) + tail


def multinomial(a: int, b: int, c: int) -> int:
    return factorial(a + b + c) // (factorial(a) * factorial(b) * factorial(c))


def ssym_expand(a: int, b: int, c: int) -> FreeElement:
    """Ssym(a, b, c) as a free-algebra element (zero if an index is negative)."""
    if min(a, b, c) < 0:
        return FreeElement()
    return FreeElement({w: PONE for w in _arrangements((a, b, c))})


def sexpr_expand(S: SExpr) -> FreeElement:
    out = FreeElement()
    for (a, b, c), v in S.terms.items():
        out = out + ssym_expand(a, b, c).scale(v)
    return out


def formal_trace(S: SExpr) -> SExpr:
    """Tr Ssym(a,b,c) = Ssym(a-2,b,c) + Ssym(a,b-2,c) + Ssym(a,b,c-2), extended linearly."""
    out: dict = {}
    for (a, b, c), v in S.terms.items():
        for key in ((a - 2, b, c), (a, b - 2, c), (a, b, c - 2)):
            if min(key) >= 0:
                out[key] = out[key] + v if key in out else v
    return SExpr(out)


def free_trace(f: FreeElement) -> FreeElement:
    """Contract the first two tensor slots: w1 w2 rest -> rest when w1 == w2."""
    out: dict = {}
    for w, v in f.terms.items():
        if len(w) >= 2 and w[0] == w[1]:
            rest = w[2:]
            out[rest] = out[rest] + v if rest in out else v
    return FreeElement(out)


# ---------------------------------------------------------------------------
# PBW form in U with x < y < z

_ORDER = {"x": 0, "y": 1, "z": 2}
_IK = ParamPoly.monomial(GaussRational(0, 1), 1, 0)
# (q, p) with q > p:  q p = p q + coefficient * letter
_SWAP = {
    ("y", "x"): (-_IK, "z"),  # [x,y] = i k z
    ("z", "x"): (_IK, "y"),  # [z,x] = i k y
    ("z", "y"): (-_IK, "x"),  # [y,z] = i k x
}


@lru_cache(maxsize=None)
def _u_word(w: tuple) -> tuple:
    for i in range(len(w) - 1):
        if _ORDER[w[i]] > _ORDER[w[i + 1]]:
            coef, letter = _SWAP[(w[i], w[i + 1])]
            out: dict = {}
            for key, v in _u_word(w[:i] + (w[i + 1], w[i]) + w[i + 2 :]):
                out[key] = out[key] + v if key in out else v
            for key, v in _u_word(w[:i] + (letter,) + w[i + 2 :]):
                v = v * coef
                out[key] = out[key] + v if key in out else v
            return tuple((k, v) for k, v in out.items() if v)
    return (((w.count("x"), w.count("y"), w.count("z")), PONE),)


def u_normalize(f: FreeElement) -> dict:
    """PBW coefficients {(a, b, c): coeff of x^a y^b z^c} of an xyz element in U."""
    if f.alphabet == "ladder":
        raise ValueError("u_normalize expects the xyz alphabet")
    out: dict = {}
    for w, c in f.terms.items():
        for key, v in _u_word(w):
            v = v * c
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _u_ssym(a: int, b: int, c: int) -> tuple:
    return tuple(u_normalize(ssym_expand(a, b, c)).items())


def sexpr_from_u(g: Mapping) -> SExpr:
    """Invert symmetrization: the SExpr whose image in U equals the PBW element g."""
    g = dict(g)
    out: dict = {}
    while g:
        d = max(sum(k) for k in g)
        top = [(k, v) for k, v in g.items() if sum(k) == d]
        for key, v in top:
            coef = v * Fraction(1, multinomial(*key))
            out[key] = out[key] + coef if key in out else coef
            for k2, v2 in _u_ssym(*key):
                t = g.get(k2, PZERO) - v2 * coef
                if t:
                    g[k2] = t
                else:
                    g.pop(k2, None)
    return SExpr(out)


def sexpr_from_free(f: FreeElement) -> SExpr:
    return sexpr_from_u(u_normalize(f))


def ad_gen(axis: str, S: SExpr) -> SExpr:
    """[axis, S] in U, computed in the free algebra and re-symmetrized."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be x, y or z, got {axis!r}")
    g = FreeElement.letter(axis)
    e = sexpr_expand(S)
    return sexpr_from_free(mul_free(g, e) - mul_free(e, g))


def ad_pattern(axis: str, S: SExpr) -> SExpr:
    """The index pattern of the tabulated commutator rule, without the factor i.

    For x: -k(b+1) Ssym(a,b+1,c-1) + k(c+1) Ssym(a,b-1,c+1); y, z by cyclic permutation.
    """
    rot = {"x": 0, "y": 1, "z": 2}[axis]
    out = SExpr()
    for key, v in S.terms.items():
        # rotate so the axis sits first
        k = key[rot:] + key[:rot]
        a, b, c = k
        for (na, nb, nc), coef in (((a, b + 1, c - 1), -(b + 1)), ((a, b - 1, c + 1), c + 1)):
            if min(na, nb, nc) < 0:
                continue
            idx = (na, nb, nc)
            back = idx[3 - rot :] + idx[: 3 - rot] if rot else idx
            out = out + SExpr({back: v * KAPPA * coef})
    return out


def split_check(a: int, b: int, c: int, m: int) -> bool:
    """Check Ssym(a,b,c) = sum_{d+e+f=m} Ssym(a-d,b-e,c-f) Ssym(d,e,f) in the free algebra."""
    if m > a + b + c:
        raise ValueError("split order exceeds the degree")
    rhs = FreeElement()
    for d in range(m + 1):
        for e in range(m - d + 1):
            f = m - d - e
            rhs = rhs + mul_free(ssym_expand(a - d, b - e, c - f), ssym_expand(d, e, f))
    return rhs == ssym_expand(a, b, c)


# ---------------------------------------------------------------------------
# conversions with the quotient algebra

_NF_GEN = {"x": NF_X, "y": NF_Y, "z": NF_Z}


@lru_cache(maxsize=None)
def ssym_nf(a: int, b: int, c: int) -> NormalForm:
    """Canonical form of Ssym(a,b,c), built by first-letter recursion."""
    if min(a, b, c) < 0:
        return NormalForm()
    if a + b + c == 0:
        return NF_ONE
    out = NormalForm()
    for gen, key in (("x", (a - 1, b, c)), ("y", (a, b - 1, c)), ("z", (a, b, c - 1))):
        if min(key) >= 0:
            out = out + nf_mul(_NF_GEN[gen], ssym_nf(*key))
    return out


def sexpr_to_nf(S: SExpr) -> NormalForm:
    out = NormalForm()
    for key, v in S.terms.items():
        out = out + ssym_nf(*key).scale(v)
    return out


@lru_cache(maxsize=None)
def T_sexpr(n: int, m: int) -> SExpr:
    """Trace-free symmetric form of T(n, m): J+^n = sum_r i^r Ssym(n-r, r, 0), then e_- = ad_x - i ad_y."""
    if m == n:
        return SExpr({(n - r, r, 0): GaussRational(0, 1) ** r for r in range(n + 1)})
    prev = T_sexpr(n, m + 1)
    return ad_gen("x", prev) - ad_gen("y", prev).scale(GaussRational(0, 1))


def nf_to_sexpr(f: NormalForm) -> SExpr:
    """The trace-free symmetric representative of f."""
    out = SExpr()
    for (n, m), c in decompose(f).terms.items():
        out = out + T_sexpr(n, m).scale(c)
    return out
