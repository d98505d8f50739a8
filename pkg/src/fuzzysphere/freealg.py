"""Noncommutative expressions and their canonical form in the fuzzy-sphere algebra.

Words are tuples of letters.  Two alphabets exist: ``x y z`` and the ladder
alphabet ``P`` (J+), ``M`` (J-), ``z``.  A word consisting only of ``z`` belongs
to both.

The canonical form of an element is a sum of monomials ``J+^a z^b J-^c`` with
``min(a, c) == 0``; each monomial is keyed by ``(a, b, c)``.
"""
from __future__ import annotations

import random
import re
from functools import lru_cache
from math import comb
from typing import Iterator, Mapping

from .coeff import I, KAPPA, PONE, PZERO, U, GaussRational, ParamPoly
from .errors import ExpressionSyntaxError, MixedAlphabet

XYZ_LETTERS = frozenset("xyz")
LADDER_LETTERS = frozenset("PMz")

Word = tuple  # tuple[str, ...]


def word_alphabet(word: Word) -> str | None:
    kinds = set(word) - {"z"}
    if not kinds:
        return None
    if kinds <= {"x", "y"}:
        return "xyz"
    if kinds <= {"P", "M"}:
        return "ladder"
    raise MixedAlphabet(f"word {''.join(word)} mixes alphabets")


def _merge_alphabets(a: str | None, b: str | None) -> str | None:
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise MixedAlphabet("cannot combine x/y words with J+/J- words")


class FreeElement:
    """Linear combination of words with :class:`ParamPoly` coefficients."""

    __slots__ = ("terms", "alphabet")

    def __init__(self, terms: Mapping[Word, ParamPoly] | None = None):
        clean: dict = {}
        alpha = None
        for w, c in (terms or {}).items():
            if not isinstance(c, ParamPoly):
                c = ParamPoly.const(c)
            if c:
                w = tuple(w)
                alpha = _merge_alphabets(alpha, word_alphabet(w))
                clean[w] = clean[w] + c if w in clean else c
        self.terms = {w: c for w, c in clean.items() if c}
        self.alphabet = alpha

    @classmethod
    def scalar(cls, c) -> "FreeElement":
        return cls({(): c})

    @classmethod
    def letter(cls, ch: str) -> "FreeElement":
        return cls({(ch,): PONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FreeElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeElement(out)

    def __neg__(self):
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FreeElement":
        if not isinstance(c, ParamPoly):
            c = ParamPoly.const(c)
        return FreeElement({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return mul_free(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        body = " + ".join(f"({c})*{''.join(w) or '1'}" for w, c in self.terms.items())
        return f"FreeElement({body or '0'})"


def mul_free(f: FreeElement, g: FreeElement) -> FreeElement:
    _merge_alphabets(f.alphabet, g.alphabet)
    out: dict = {}
    for w1, c1 in f.terms.items():
        for w2, c2 in g.terms.items():
            w = w1 + w2
            v = c1 * c2
            out[w] = out[w] + v if w in out else v
    return FreeElement(out)


def free_pow(f: FreeElement, n: int) -> FreeElement:
    out = FreeElement.scalar(1)
    for _ in range(n):
        out = mul_free(out, f)
    return out


_DAGGER_LETTER = {"x": "x", "y": "y", "z": "z", "P": "M", "M": "P"}


def dagger_free(f: FreeElement) -> FreeElement:
    return FreeElement(
        {tuple(_DAGGER_LETTER[ch] for ch in reversed(w)): c.conjugate() for w, c in f.terms.items()}
    )


# x = (J+ + J-)/2,  y = (J+ - J-)/(2i) = -i/2 J+ + i/2 J-
_HALF = GaussRational(1, 0) / 2
_LADDER_SUB = {
    "x": [("P", ParamPoly.const(_HALF)), ("M", ParamPoly.const(_HALF))],
    "y": [("P", ParamPoly.const(GaussRational(0, -1) / 2)), ("M", ParamPoly.const(GaussRational(0, 1) / 2))],
    "z": [("z", PONE)],
}


def to_ladder(f: FreeElement) -> FreeElement:
    if f.alphabet == "ladder":
        return f
    out: dict = {}
    for w, c in f.terms.items():
        partial = {(): c}
        for ch in w:
            nxt: dict = {}
            for pw, pc in partial.items():
                for sub, sc in _LADDER_SUB[ch]:
                    key = pw + (sub,)
                    v = pc * sc
                    nxt[key] = nxt[key] + v if key in nxt else v
            partial = nxt
        for pw, pc in partial.items():
            out[pw] = out[pw] + pc if pw in out else pc
    return FreeElement(out)


# ---------------------------------------------------------------------------
# expression parser

_TOKEN = re.compile(r"\s*(?:(\d+)|(Jp|Jm|[xyzikRu])|([-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise ExpressionSyntaxError(f"expected {op!r}", t[2])
        return t

    def parse(self) -> FreeElement:
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ExpressionSyntaxError("unexpected trailing input", t[2])
        return e

    def expr(self) -> FreeElement:
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> FreeElement:
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            e = mul_free(e, self.unary())
        return e

    def unary(self) -> FreeElement:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            e = self.unary()
            return -e if t[1] == "-" else e
        return self.power()

    def _exponent(self) -> int:
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "num":
            raise ExpressionSyntaxError("exponent must be an integer", t[2])
        return sign * t[1]

    def power(self) -> FreeElement:
        t = self.peek()
        if t[0] == "name" and t[1] == "R":
            self.take()
            nt = self.peek()
            if not (nt[0] == "op" and nt[1] == "^"):
                raise ExpressionSyntaxError("bare R is not allowed; use R^2 or u", t[2])
            self.take()
            e = self._exponent()
            if e < 0 or e % 2:
                raise ExpressionSyntaxError("R must appear with an even nonnegative power", t[2])
            return FreeElement.scalar(ParamPoly.monomial(1, 0, e // 2))
        if t[0] == "name" and t[1] == "k":
            self.take()
            e = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                e = self._exponent()
            return FreeElement.scalar(ParamPoly.monomial(1, e, 0))
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            pt = self.take()
            e = self._exponent()
            if e < 0:
                raise ExpressionSyntaxError("negative powers are only allowed on k", pt[2])
            base = free_pow(base, e)
        return base

    def atom(self) -> FreeElement:
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    raise ExpressionSyntaxError("expected integer denominator", d[2])
                if d[1] == 0:
                    raise ExpressionSyntaxError("zero denominator", d[2])
                from fractions import Fraction

                return FreeElement.scalar(Fraction(val, d[1]))
            return FreeElement.scalar(val)
        if kind == "name":
            if val in ("x", "y", "z"):
                return FreeElement.letter(val)
            if val == "Jp":
                return FreeElement.letter("P")
            if val == "Jm":
                return FreeElement.letter("M")
            if val == "i":
                return FreeElement.scalar(I)
            if val == "u":
                return FreeElement.scalar(U)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExpressionSyntaxError("unexpected token", pos)


def parse(text: str) -> FreeElement:
    """Parse an ASCII expression such as ``"x*y - y*x"`` or ``"Jp^2*z"``."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# z-polynomials with ParamPoly coefficients (list index = power of z)

def zp_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def zp_add(p: list, q: list) -> list:
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else PZERO) + (q[i] if i < len(q) else PZERO) for i in range(n)]
    return zp_trim(out)


def zp_scale(p: list, c: ParamPoly) -> list:
    return zp_trim([a * c for a in p])


def zp_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [PZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return zp_trim(out)


def zp_shift(p: list, t: int) -> list:
    """p(z + t*kappa)."""
    if not t or not p:
        return list(p)
    out = [PZERO] * len(p)
    for j, a in enumerate(p):
        if not a:
            continue
        for i in range(j + 1):
            c = comb(j, i) * t ** (j - i)
            out[i] = out[i] + a.shift_kappa(j - i) * c
    return zp_trim(out)


@lru_cache(maxsize=None)
def _rho(c: int, sign: int) -> tuple:
    # sign=+1: J-^c J+^c = prod_s (u - (z+s k)(z+(s+1) k)); sign=-1: J+^c J-^c with z-s k.
    out = [PONE]
    for s in range(c):
        a = sign * s
        b = sign * (s + 1)
        # u - (z + a k)(z + b k) = u - a b k^2 - (a+b) k z - z^2
        factor = zp_trim([U - KAPPA * KAPPA * (a * b), -KAPPA * (a + b), -PONE])
        out = zp_mul(out, factor)
    return tuple(out)


def rho_plus(c: int) -> list:
    """Canonical z-polynomial equal to J-^c J+^c."""
    return list(_rho(c, 1))


def rho_minus(c: int) -> list:
    """Canonical z-polynomial equal to J+^c J-^c."""
    return list(_rho(c, -1))


# ---------------------------------------------------------------------------
# canonical form

class NormalForm:
    """Canonical element: ``terms[(a, b, c)]`` multiplies ``J+^a z^b J-^c`` (min(a, c) == 0)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int, int], object] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, ParamPoly):
                c = ParamPoly.const(c)
            if c:
                a, b, cc = key
                if min(a, cc) != 0 or min(a, b, cc) < 0:
                    raise ValueError(f"{key} is not a canonical monomial")
                clean[(a, b, cc)] = clean[(a, b, cc)] + c if (a, b, cc) in clean else c
        self.terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def scalar(cls, c) -> "NormalForm":
        return cls({(0, 0, 0): c})

    # sector view -----------------------------------------------------------
    def sectors(self) -> dict[int, list]:
        """Map e_z-charge m to the z-polynomial p in J+^m p(z) or p(z) J-^|m|."""
        sec: dict[int, list] = {}
        for (a, b, c), v in self.terms.items():
            m = a - c
            p = sec.setdefault(m, [])
            while len(p) <= b:
                p.append(PZERO)
            p[b] = p[b] + v
        return {m: zp_trim(p) for m, p in sec.items() if zp_trim(p)}

    @classmethod
    def from_sectors(cls, sec: Mapping[int, list]) -> "NormalForm":
        terms = {}
        for m, p in sec.items():
            for b, v in enumerate(p):
                if v:
                    key = (m, b, 0) if m >= 0 else (0, b, -m)
                    terms[key] = v
        return cls._raw(terms)

    # algebra ---------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NormalForm) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = v
        return NormalForm._raw(out)

    def __neg__(self):
        return NormalForm._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NormalForm":
        if not isinstance(c, ParamPoly):
            c = ParamPoly.const(c)
        if not c:
            return NormalForm._raw({})
        return NormalForm._raw({k: v * c for k, v in self.terms.items() if v * c})

    def __mul__(self, other):
        if isinstance(other, NormalForm):
            return nf_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def dagger(self) -> "NormalForm":
        return nf_dagger(self)

    def degree(self) -> int:
        return max((a + b + c for a, b, c in self.terms), default=0)

    def charges(self) -> set[int]:
        return {a - c for a, _, c in self.terms}

    def specialize(self, kappa0, u0) -> "NormalForm":
        from .coeff import poly_eval

        return NormalForm({k: ParamPoly.const(poly_eval(v, kappa0, u0)) for k, v in self.terms.items()})

    def subs_kappa(self, kappa0) -> "NormalForm":
        return NormalForm({k: v.subs_kappa(kappa0) for k, v in self.terms.items()})

    def subs_u(self, u0) -> "NormalForm":
        return NormalForm({k: v.subs_u(u0) for k, v in self.terms.items()})

    def weight_parts(self) -> dict[int, "NormalForm"]:
        """Split into weight-homogeneous parts, w(J+-)=w(z)=w(kappa)=1, w(u)=2."""
        parts: dict[int, dict] = {}
        for (a, b, c), v in self.terms.items():
            for (k, e), coef in v.terms.items():
                w = a + b + c + k + 2 * e
                d = parts.setdefault(w, {})
                d.setdefault((a, b, c), {})[(k, e)] = coef
        return {w: NormalForm({key: ParamPoly(t) for key, t in d.items()}) for w, d in parts.items()}

    def __repr__(self):
        return f"NormalForm({format_nf(self)})"

    def __str__(self):
        return format_nf(self)


def format_nf(f: NormalForm) -> str:
    if not f.terms:
        return "0"
    parts = []
    for (a, b, c) in sorted(f.terms):
        mono = []
        if a:
            mono.append("Jp" if a == 1 else f"Jp^{a}")
        if b:
            mono.append("z" if b == 1 else f"z^{b}")
        if c:
            mono.append("Jm" if c == 1 else f"Jm^{c}")
        parts.append(f"({f.terms[(a, b, c)]})" + ("*" + "*".join(mono) if mono else ""))
    return " + ".join(parts)


def nf_dagger(f: NormalForm) -> NormalForm:
    # (J+^a z^b J-^c)^dagger = J+^c z^b J-^a
    return NormalForm._raw({(c, b, a): v.conjugate() for (a, b, c), v in f.terms.items()})


def _sector_product(m1: int, p: list, m2: int, q: list) -> tuple[int, list]:
    if m1 >= 0 and m2 >= 0:
        return m1 + m2, zp_mul(zp_shift(p, m2), q)
    if m1 < 0 and m2 < 0:
        return m1 + m2, zp_mul(p, zp_shift(q, -m1))
    if m1 >= 0:  # J+^a p(z) * q(z) J-^d
        a, d = m1, -m2
        r = zp_mul(p, q)
        if a >= d:
            return a - d, zp_mul(rho_minus(d), zp_shift(r, -d))
        return a - d, zp_mul(rho_minus(a), zp_shift(r, -a))
    # p(z) J-^c * J+^b q(z)
    c, b = -m1, m2
    if c >= b:
        k = c - b
        return -k, zp_mul(p, zp_shift(zp_mul(rho_plus(b), q), k))
    k = b - c
    return k, zp_mul(zp_shift(zp_mul(p, rho_plus(c)), k), q)


def nf_mul(f: NormalForm, g: NormalForm) -> NormalForm:
    """Product in the quotient algebra, computed sector by sector."""
    out: dict[int, list] = {}
    for m1, p in f.sectors().items():
        for m2, q in g.sectors().items():
            m, r = _sector_product(m1, p, m2, q)
            out[m] = zp_add(out.get(m, []), r)
    return NormalForm.from_sectors(out)


def nf_pow(f: NormalForm, n: int) -> NormalForm:
    out = NF_ONE
    for _ in range(n):
        out = nf_mul(out, f)
    return out


NF_ONE = NormalForm.scalar(1)
NF_JP = NormalForm({(1, 0, 0): 1})
NF_JM = NormalForm({(0, 0, 1): 1})
NF_Z = NormalForm({(0, 1, 0): 1})
NF_X = NormalForm({(1, 0, 0): _HALF, (0, 0, 1): _HALF})
NF_Y = NormalForm({(1, 0, 0): GaussRational(0, -1) / 2, (0, 0, 1): GaussRational(0, 1) / 2})


def commutator(f: NormalForm, g: NormalForm) -> NormalForm:
    return nf_mul(f, g) - nf_mul(g, f)


def e_minus(f: NormalForm) -> NormalForm:
    return commutator(NF_JM, f)


def e_plus(f: NormalForm) -> NormalForm:
    return commutator(NF_JP, f)


def e_z(f: NormalForm) -> NormalForm:
    return commutator(NF_Z, f)


def is_weight_homogeneous(f: NormalForm) -> bool:
    return len(f.weight_parts()) <= 1


# ---------------------------------------------------------------------------
# rewriting normalizer (the literal route through the defining relations)

def _is_canonical(w: Word) -> bool:
    if "P" in w and "M" in w:
        return False
    if "P" in w:
        # P^a z^b
        seen_z = False
        for ch in w:
            if ch == "z":
                seen_z = True
            elif seen_z:
                return False
        return True
    if "M" in w:
        # z^b M^c
        seen_m = False
        for ch in w:
            if ch == "M":
                seen_m = True
            elif seen_m:
                return False
        return True
    return True


def _redexes(w: Word) -> Iterator[tuple[int, int]]:
    """Yield (start, end) spans of rule left-hand sides in w."""
    n = len(w)
    for i in range(n - 1):
        a, b = w[i], w[i + 1]
        if (a, b) in (("z", "P"), ("M", "z"), ("M", "P")):
            yield i, i + 2
        if a == "P":
            j = i + 1
            while j < n and w[j] == "z":
                j += 1
            if j < n and w[j] == "M":
                yield i, j + 1


def _rewrite(w: Word, span: tuple[int, int]) -> list[tuple[Word, ParamPoly]]:
    i, j = span
    pre, lhs, post = w[:i], w[i:j], w[j:]
    if lhs == ("z", "P"):
        rhs = [(("P", "z"), PONE), (("P",), KAPPA)]
    elif lhs == ("M", "z"):
        rhs = [(("z", "M"), PONE), (("M",), KAPPA)]
    elif lhs == ("M", "P"):
        rhs = [((), U), (("z",), -KAPPA), (("z", "z"), -PONE)]
    else:
        # P z^k M -> (u + kappa z - z^2)(z - kappa)^k
        k = len(lhs) - 2
        poly = zp_trim([U, KAPPA, -PONE])
        for _ in range(k):
            poly = zp_mul(poly, [-KAPPA, PONE])
        rhs = [(("z",) * d, c) for d, c in enumerate(poly) if c]
    return [(pre + r + post, c) for r, c in rhs]


def normalize_with_stats(
    f: FreeElement,
    *,
    order: str = "leftmost",
    rng: random.Random | None = None,
    merge: bool = True,
) -> tuple[NormalForm, int]:
    """Rewrite to canonical form; returns (normal form, number of rule applications).

    ``order`` is ``"leftmost"`` or ``"random"`` (needs ``rng``).  With
    ``merge=False`` equal intermediate words are not combined, which is the
    naive term-by-term procedure.
    """
    f = to_ladder(f) if f.alphabet == "xyz" else f
    if order == "random" and rng is None:
        rng = random.Random(0)
    steps = 0
    result: dict = {}

    def pick(w):
        spans = list(_redexes(w)) if order == "random" else [next(_redexes(w))]
        return spans[0] if len(spans) == 1 else rng.choice(spans)

    def emit(w, c):
        nz = w.count("z")
        a = w.count("P")
        cc = w.count("M")
        key = (a, nz, cc)
        result[key] = result[key] + c if key in result else c

    if merge:
        current = dict(f.terms)
        while current:
            nxt: dict = {}
            for w, c in current.items():
                if not c:
                    continue
                if _is_canonical(w):
                    emit(w, c)
                    continue
                steps += 1
                for w2, c2 in _rewrite(w, pick(w)):
                    v = c * c2
                    nxt[w2] = nxt[w2] + v if w2 in nxt else v
            current = nxt
    else:
        stack = list(f.terms.items())
        while stack:
            w, c = stack.pop()
            if _is_canonical(w):
                emit(w, c)
                continue
            steps += 1
            for w2, c2 in _rewrite(w, pick(w)):
                stack.append((w2, c * c2))
    return NormalForm(result), steps


def normalize(f: FreeElement, **kw) -> NormalForm:
    return normalize_with_stats(f, **kw)[0]


def nf_from_text(text: str) -> NormalForm:
    return normalize(parse(text))


def nf_to_free(f: NormalForm) -> FreeElement:
    return FreeElement({("P",) * a + ("z",) * b + ("M",) * c: v for (a, b, c), v in f.terms.items()})
