"""Exact N x N representations at kappa=1, u=(N^2-1)/4, and the evaluate-and-interpolate decomposition.

The weight basis v_0..v_{N-1} is non-unitary so that every entry is rational:

    J+ v_r = (r+1) v_{r+1},   J- v_r = (N-r) v_{r-1},   z v_r = (r - (N-1)/2) v_r.

Any element of fixed e_z charge m is represented by a single band: the image
of v_r is ``band[r] * v_{r+m}``.
"""
from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .coeff import GaussRational, ParamPoly, poly_eval, poly_interpolate, weight_lift
from .basis import BasisDecomp, decompose
from .freealg import FreeElement, NormalForm, normalize_with_stats, to_ladder

ZERO_F = Fraction(0)


def u_of(N: int) -> Fraction:
    return Fraction(N * N - 1, 4)


class MatrixRep:
    """Dense N x N matrix of Gaussian rationals."""

    __slots__ = ("N", "entries")

    def __init__(self, N: int, entries: Sequence[Sequence[object]] | None = None):
        self.N = N
        if entries is None:
            self.entries = [[GaussRational(0) for _ in range(N)] for _ in range(N)]
        else:
            self.entries = [[GaussRational.coerce(v) for v in row] for row in entries]

    @classmethod
    def identity(cls, N: int) -> "MatrixRep":
        M = cls(N)
        for r in range(N):
            M.entries[r][r] = GaussRational(1)
        return M

    def __matmul__(self, other: "MatrixRep") -> "MatrixRep":
        N = self.N
        A, B = self.entries, other.entries
        out = MatrixRep(N)
        for i in range(N):
            row = A[i]
            orow = out.entries[i]
            for k in range(N):
                a = row[k]
                if not a:
                    continue
                bk = B[k]
                for j in range(N):
                    if bk[j]:
                        orow[j] = orow[j] + a * bk[j]
        return out

    def __add__(self, other):
        return MatrixRep(self.N, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return MatrixRep(self.N, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def scale(self, c) -> "MatrixRep":
        return MatrixRep(self.N, [[a * c for a in row] for row in self.entries])

    def __eq__(self, other):
        return isinstance(other, MatrixRep) and self.N == other.N and self.entries == other.entries

    def is_zero(self) -> bool:
        return not any(v for row in self.entries for v in row)

    def trace(self) -> GaussRational:
        s = GaussRational(0)
        for r in range(self.N):
            s = s + self.entries[r][r]
        return s

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]

    def __repr__(self):
        return f"MatrixRep(N={self.N}, {self.to_strings()})"


# ---------------------------------------------------------------------------
# bands

@lru_cache(maxsize=None)
def monomial_band(a: int, b: int, c: int, N: int) -> tuple:
    """Band of J+^a z^b J-^c (charge a-c) at size N, indexed by source r."""
    half = Fraction(N - 1, 2)
    out = []
    for r in range(N):
        t = r - c
        if t < 0 or t + a > N - 1:
            out.append(ZERO_F)
            continue
        v = Fraction(1)
        for k in range(c):  # J- applied at index r-k
            v *= N - (r - k)
        if b:
            v *= (t - half) ** b
        for k in range(a):  # J+ applied at index t+k
            v *= t + k + 1
        out.append(v)
    return tuple(out)


def word_band(word, N: int) -> tuple[int, tuple]:
    """(charge, band) of a ladder-alphabet word."""
    half = Fraction(N - 1, 2)
    charge = word.count("P") - word.count("M")
    out = []
    for r in range(N):
        idx, v = r, Fraction(1)
        for ch in reversed(word):
            if ch == "P":
                if idx + 1 > N - 1:
                    v = ZERO_F
                    break
                v *= idx + 1
                idx += 1
            elif ch == "M":
                if idx - 1 < 0:
                    v = ZERO_F
                    break
                v *= N - idx
                idx -= 1
            elif ch == "z":
                v *= idx - half
            else:
                raise ValueError(f"letter {ch!r} is not in the ladder alphabet")
        out.append(v)
    return charge, tuple(out)


def _element_terms(f):
    """Iterate (charge, band-factory key, ParamPoly coeff, word degree) over NF or ladder words."""
    if isinstance(f, NormalForm):
        for (a, b, c), v in f.terms.items():
            yield a - c, ("nf", a, b, c), v, a + b + c
    else:
        f = to_ladder(f) if f.alphabet == "xyz" else f
        for w, v in f.terms.items():
            yield w.count("P") - w.count("M"), ("word", w), v, len(w)


def _band_of(key, N):
    if key[0] == "nf":
        return monomial_band(key[1], key[2], key[3], N)
    return word_band(key[1], N)[1]


def element_bands(f, N: int) -> dict[int, tuple[list, list]]:
    """charge -> (real band, imaginary band) of phi_N(f)."""
    u = u_of(N)
    out: dict[int, tuple[list, list]] = {}
    for m, key, coeff, _ in _element_terms(f):
        val = poly_eval(coeff, 1, u)
        if not val:
            continue
        band = _band_of(key, N)
        re, im = out.setdefault(m, ([ZERO_F] * N, [ZERO_F] * N))
        for r, x in enumerate(band):
            if x:
                if val.re:
                    re[r] += val.re * x
                if val.im:
                    im[r] += val.im * x
    return out


def phi_N(f, N: int) -> MatrixRep:
    """Matrix of an element (NormalForm or FreeElement) in the N-dimensional representation."""
    M = MatrixRep(N)
    for m, (re, im) in element_bands(f, N).items():
        for r in range(N):
            if (re[r] or im[r]) and 0 <= r + m < N:
                M.entries[r + m][r] = M.entries[r + m][r] + GaussRational(re[r], im[r])
    return M


def generator_matrices(N: int) -> dict[str, MatrixRep]:
    from .freealg import FreeElement as FE

    return {ch: phi_N(FE.letter(ch), N) for ch in ("P", "M", "z")}


def pi0_trace(f, N: int) -> GaussRational:
    """(1/N) tr phi_N(f); only the charge-0 band contributes."""
    bands = element_bands(f, N)
    if 0 not in bands:
        return GaussRational(0)
    re, im = bands[0]
    return GaussRational(sum(re, ZERO_F) / N, sum(im, ZERO_F) / N)


# ---------------------------------------------------------------------------
# T(n, m) bands, built by matrix commutators with J-

@lru_cache(maxsize=None)
def _T_bands(n: int, N: int) -> dict[int, tuple]:
    bands = {n: monomial_band(n, 0, 0, N)}
    A = list(bands[n])
    for k in range(n, -n, -1):
        # [J-, A] for A of charge k: B_r = A_r (N-r-k) - (N-r) A_{r-1}
        B = []
        for r in range(N):
            v = ZERO_F
            if 0 <= r + k < N and r + k - 1 >= 0 and A[r]:
                v += A[r] * (N - r - k)
            if r >= 1 and 0 <= r - 1 + k < N and A[r - 1]:
                v -= (N - r) * A[r - 1]
            B.append(v)
        bands[k - 1] = tuple(B)
        A = B
    return bands


def T_band(n: int, m: int, N: int) -> tuple:
    return _T_bands(n, N)[m]


@lru_cache(maxsize=None)
def _pairing_weights(n: int, m: int, N: int) -> tuple[tuple, Fraction]:
    """Weights w_r with tr(phi(T^dagger) phi(g)) = sum_r w_r g_r, and <T,T> * N."""
    A = T_band(n, m, N)
    w = []
    for r in range(N):
        if A[r] and 0 <= r + m < N:
            w.append(A[r] * Fraction(comb(N - 1, r + m), comb(N - 1, r)))
        else:
            w.append(ZERO_F)
    norm = sum((wi * ai for wi, ai in zip(w, A)), ZERO_F)
    return tuple(w), norm


def decompose_fast(f) -> BasisDecomp:
    """T-basis decomposition from exact traces at several N plus interpolation in u.

    Accepts a NormalForm or a ladder/xyz FreeElement (evaluated word by word).
    """
    parts: dict[int, dict[int, list]] = {}
    for m, key, coeff, deg in _element_terms(f):
        for (k, e), c in coeff.terms.items():
            w = deg + k + 2 * e
            parts.setdefault(w, {}).setdefault(m, []).append((key, ParamPoly({(k, e): c}), deg))
    out: dict = {}
    for w, sectors in parts.items():
        for m, items in sectors.items():
            kmin = min(0, min(p.min_kappa() for _, p, _ in items))
            dmax = max(d for _, _, d in items)
            band_cache: dict[int, tuple[list, list]] = {}

            def band_at(N):
                if N not in band_cache:
                    u = u_of(N)
                    re, im = [ZERO_F] * N, [ZERO_F] * N
                    for key, coeff, _ in items:
                        val = poly_eval(coeff, 1, u)
                        band = _band_of(key, N)
                        for r, x in enumerate(band):
                            if x:
                                if val.re:
                                    re[r] += val.re * x
                                if val.im:
                                    im[r] += val.im * x
                    band_cache[N] = (re, im)
                return band_cache[N]

            for n in range(abs(m), dmax + 1):
                bound = (w - kmin - n) // 2
                if bound < 0:
                    continue
                samples = []
                for N in range(n + 1, n + bound + 3):
                    weights, norm = _pairing_weights(n, m, N)
                    re, im = band_at(N)
                    sr = sum((a * b for a, b in zip(weights, re) if a), ZERO_F)
                    si = sum((a * b for a, b in zip(weights, im) if a), ZERO_F)
                    samples.append((u_of(N), GaussRational(sr / norm, si / norm)))
                q = poly_interpolate(samples, bound)
                if q:
                    lifted = weight_lift(q, w, 2 * n - m)
                    out[(n, m)] = out[(n, m)] + lifted if (n, m) in out else lifted
    return BasisDecomp(out)


# ---------------------------------------------------------------------------
# benchmark

def random_ladder_element(degree: int, n_words: int, rng: random.Random) -> FreeElement:
    """Random ladder-alphabet words of exactly ``degree`` letters with small integer coefficients."""
    terms = {}
    for _ in range(n_words):
        w = tuple(rng.choice("PMz") for _ in range(degree))
        terms[w] = ParamPoly.const(GaussRational(rng.randint(-3, 3) or 1, rng.randint(-2, 2)))
    return FreeElement(terms)


def random_dense_nf(degree: int, rng: random.Random, kappa_free: bool = True) -> NormalForm:
    """All canonical monomials up to ``degree`` with random Gaussian-integer coefficients."""
    terms = {}
    for m in range(-degree, degree + 1):
        for b in range(degree - abs(m) + 1):
            key = (m, b, 0) if m >= 0 else (0, b, -m)
            c = GaussRational(rng.randint(-5, 5), rng.randint(-5, 5))
            if not c:
                c = GaussRational(1)
            if kappa_free:
                terms[key] = ParamPoly.const(c)
            else:
                terms[key] = ParamPoly({(rng.randint(0, 2), rng.randint(0, 1)): c})
    return NormalForm(terms)


def bench_decompose(degree: int, trials: int = 1, seed: int = 0, words: int = 4, direct: bool = True) -> dict:
    """Time the rewriting route against the trace route on random words of a given degree."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    rng = random.Random(seed)
    fast_s = direct_s = 0.0
    steps = 0
    agree = True
    for _ in range(trials):
        f = random_ladder_element(degree, words, rng)
        t0 = time.perf_counter()
        d_fast = decompose_fast(f)
        fast_s += time.perf_counter() - t0
        if direct:
            t0 = time.perf_counter()
            nf, s = normalize_with_stats(f, merge=False)
            d_direct = decompose(nf)
            direct_s += time.perf_counter() - t0
            steps += s
            agree = agree and d_direct == d_fast
    report = {
        "degree": degree,
        "fast_ms": round(fast_s * 1000 / trials, 3),
        "direct_ms": round(direct_s * 1000 / trials, 3) if direct else None,
        "direct_rewrite_steps": steps // trials if direct else None,
        "agree": agree if direct else None,
    }
    return report


def bench_json(reports) -> str:
    return json.dumps(reports, sort_keys=True)
