"""Named invariant suites, runnable from the command line (``verify --suite``)."""
from __future__ import annotations

import math
import random
import warnings
from fractions import Fraction
from math import factorial

from .basis import (
    build_T,
    check_eigen,
    decompose,
    hahn_nf,
    inner,
    left_ideal_z_member,
    norm_T,
    nu,
    omega_apply,
    sigma_n,
)
from .coeff import KAPPA, GaussRational, ParamPoly, poly_eval
from .config import SuiteReport, VerifyConfig
from .errors import DegenerateSigmaWarning
from .freealg import (
    NF_JP,
    NF_ONE,
    NF_Z,
    FreeElement,
    NormalForm,
    e_minus,
    e_plus,
    e_z,
    nf_dagger,
    nf_mul,
    nf_pow,
    zp_add,
    zp_scale,
)
from .matrep import decompose_fast, phi_N, pi0_trace, random_dense_nf, u_of


def random_nf(degree: int, rng: random.Random, n_terms: int = 4, kappa_free: bool = False) -> NormalForm:
    """A sparse random canonical element of degree at most ``degree``."""
    terms = {}
    for _ in range(n_terms):
        d = rng.randint(0, degree)
        m = rng.randint(-d, d)
        b = d - abs(m)
        key = (m, b, 0) if m >= 0 else (0, b, -m)
        c = GaussRational(rng.randint(-4, 4) or 1, rng.randint(-3, 3))
        k, e = (0, 0) if kappa_free else (rng.randint(0, 2), rng.randint(0, 1))
        terms[key] = ParamPoly.monomial(c, k, e)
    return NormalForm(terms)


def proportional(f: NormalForm, g: NormalForm) -> bool:
    """True iff g = c f for a nonzero constant c (both nonzero)."""
    if not f or not g or set(f.terms) != set(g.terms):
        return False
    key = next(iter(f.terms))
    a, b = f.terms[key], g.terms[key]
    if not (a.is_const() and b.is_const()):
        return False
    c = b.const_value() / a.const_value()
    return f.scale(c) == g


def laplacian(f: NormalForm) -> NormalForm:
    """e_z^2 - kappa e_z + e_plus e_minus, by literal commutators."""
    return e_z(e_z(f)) - e_z(f).scale(KAPPA) + e_plus(e_minus(f))


def right_quotient_by_z(f: NormalForm) -> NormalForm | None:
    """Solve f = g z sector by sector by elimination on images of z^j; None if impossible."""
    g = NormalForm()
    for m, p in f.sectors().items():
        p = list(p)
        while p:
            j = len(p) - 2
            if j < 0:
                return None
            mono = (m, j, 0) if m >= 0 else (0, j, -m)
            img = nf_mul(NormalForm({mono: 1}), NF_Z).sectors()[m]
            lead = img[-1]
            if len(img) != len(p) or not lead.is_const():
                raise AssertionError("unexpected image of right multiplication by z")
            c = p[-1] * (1 / lead.const_value())
            g = g + NormalForm({mono: c})
            p = zp_add(p, zp_scale(img, -c))
    return g if nf_mul(g, NF_Z) == f else None


def _pairs(nmax: int):
    return [(n, m) for n in range(nmax + 1) for m in range(-n, n + 1)]


# ---------------------------------------------------------------------------


def suite_norms(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("norms")
    for n in range(cfg.nmax + 1):
        rep.add(f"inner(J+^{n}, J+^{n}) = nu_{n}", inner(nf_pow(NF_JP, n), nf_pow(NF_JP, n)) == nu(n))
        word = FreeElement({("M",) * n + ("P",) * n: 1})
        via_trace = decompose_fast(word).terms.get((0, 0))
        rep.add(f"trace route nu_{n}", via_trace == nu(n))
    for n, m in _pairs(min(cfg.nmax, 4)):
        rep.add(f"norm_T({n},{m})", inner(build_T(n, m), build_T(n, m)) == norm_T(n, m))
    return rep


def suite_orthogonality(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("orthogonality")
    idx = _pairs(cfg.nmax)
    bad = []
    for i, a in enumerate(idx):
        for b in idx[i + 1 :]:
            if inner(build_T(*a), build_T(*b)):
                bad.append((a, b))
    rep.add(f"{len(idx) * (len(idx) - 1) // 2} distinct pairs orthogonal", not bad, str(bad[:3]))
    return rep


def suite_spectra(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("spectra")
    for n, m in _pairs(cfg.nmax):
        t = build_T(n, m)
        rep.add(f"e_z T({n},{m})", check_eigen(t, m))
        rep.add(f"Laplacian T({n},{m})", laplacian(t) == t.scale(KAPPA * KAPPA * (n * (n + 1))))
    return rep


def suite_ladder(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("ladder")
    for n, m in _pairs(cfg.nmax):
        t = build_T(n, m)
        up = build_T(n, m + 1).scale(KAPPA * KAPPA * ((n - m) * (n + m + 1))) if m < n else NormalForm()
        down = build_T(n, m - 1) if m > -n else NormalForm()
        rep.add(f"e+ T({n},{m})", e_plus(t) == up)
        rep.add(f"e- T({n},{m})", e_minus(t) == down)
    return rep


def suite_dagger(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("dagger")
    for n, m in _pairs(cfg.nmax):
        c = Fraction((-1) ** abs(m) * factorial(n - m), factorial(n + m))
        lhs = nf_dagger(build_T(n, m))
        rhs = build_T(n, -m).scale(ParamPoly.monomial(c, -2 * m, 0))
        rep.add(f"dagger T({n},{m}) symbolic", lhs == rhs)
        rep.add(f"dagger T({n},{m}) at kappa=1", lhs.subs_kappa(1) == build_T(n, -m).subs_kappa(1).scale(c))
    return rep


def suite_sigma(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("sigma")
    rep.add("(1,2) table", [sigma_n(n, 1, 2) for n in range(7)] == [1, 1, 1, 0, 0, 0, 0])
    rep.add("(1,1) sigma_3", sigma_n(3, 1, 1) == -1)
    points = [(1, 2), (1, 1), (1, 3), (1, 5), (2, 7), (Fraction(1, 2), Fraction(5, 3)), (3, 1)]
    for k0, u0 in points:
        ok = True
        for n in range(cfg.nmax + 5):
            v = poly_eval(nu(n), k0, u0).re
            ok &= sigma_n(n, k0, u0) == (v > 0) - (v < 0)
        rep.add(f"sign of nu at ({k0},{u0})", ok)
    return rep


def suite_representation(cfg: VerifyConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("representation")
    hom = True
    for _ in range(20 * cfg.nmax):
        f, g = random_nf(5, rng), random_nf(5, rng)
        N = rng.randint(1, 8)
        hom &= phi_N(nf_mul(f, g), N) == phi_N(f, N) @ phi_N(g, N)
    rep.add("homomorphism", hom)
    ker = all(
        phi_N(build_T(n, m), N).is_zero() == (n >= N)
        for n in range(min(cfg.nmax, 6) + 1)
        for m in range(-n, n + 1)
        for N in range(1, 8)
    )
    rep.add("kernel", ker)
    tr = True
    for _ in range(10 * cfg.nmax):
        f = random_nf(5, rng)
        N = rng.randint(1, 9)
        tr &= pi0_trace(f, N) == poly_eval(decompose(f).terms.get((0, 0), ParamPoly()), 1, u_of(N))
    rep.add("pi0 = trace/N", tr)
    return rep


def suite_hahn(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("hahn")
    for n in range(min(cfg.nmax, 5) + 1):
        for m in range(-n, n + 1):
            for N in range(n + 1, n + 5):
                t = build_T(n, m).specialize(1, u_of(N))
                rep.add(f"T({n},{m}) N={N}", proportional(hahn_nf(n, m, N), t))
    return rep


def suite_omega(cfg: VerifyConfig) -> SuiteReport:
    rep = SuiteReport("omega")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateSigmaWarning)
        for u0 in (2, 3, 5):
            for p in range(min(cfg.nmax, 4) + 1):
                want = NF_ONE.scale(sigma_n(p, 1, u0) * (2 * p + 1))
                rep.add(f"omega_{p}(1) at u={u0}", omega_apply(p, NF_ONE, 1, u0) == want)
        u0 = 5
        for p in range(min(cfg.nmax, 3) + 1):
            for n in range(min(cfg.nmax, 3) + 1):
                ratios = set()
                ok = True
                for m in range(-n, n + 1):
                    t = build_T(n, m).specialize(1, u0)
                    w = omega_apply(p, t, 1, u0)
                    if not w:
                        ratios.add(GaussRational(0))
                        continue
                    ok &= proportional(t, w)
                    if ok:
                        key = next(iter(t.terms))
                        ratios.add(w.terms[key].const_value() / t.terms[key].const_value())
                rep.add(f"omega_{p} diagonal on degree {n}", ok and len(ratios) == 1)
    return rep


def suite_ideal(cfg: VerifyConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("ideal")
    agree = True
    for _ in range(10 * cfg.nmax):
        g = random_nf(min(cfg.nmax, 4), rng)
        member = nf_mul(g, NF_Z)
        other = member + random_nf(min(cfg.nmax, 4), rng, n_terms=2) + NF_ONE.scale(rng.randint(1, 5))
        for f in (member, other):
            agree &= left_ideal_z_member(f) == (right_quotient_by_z(f) is not None)
    rep.add("membership test = definitional test", agree)
    return rep


def suite_fast(cfg: VerifyConfig) -> SuiteReport:
    rng = random.Random(cfg.seed)
    rep = SuiteReport("fast")
    ok = True
    for i in range(10 * cfg.nmax):
        f = random_dense_nf(1 + i % 6, rng, kappa_free=False) if i % 2 else random_nf(6, rng)
        ok &= decompose_fast(f) == decompose(f)
    rep.add("decompose_fast = decompose", ok)
    return rep


def suite_symmetrized(cfg: VerifyConfig) -> SuiteReport:
    from .symtf import (
        SExpr,
        T_sexpr,
        ad_gen,
        formal_trace,
        free_trace,
        sexpr_expand,
        sexpr_from_free,
        split_check,
    )

    rep = SuiteReport("symmetrized")
    triples = [(a, b, c) for a in range(6) for b in range(6) for c in range(6) if a + b + c <= 5]
    rep.add(
        "formal trace = contraction",
        all(
            sexpr_from_free(free_trace(sexpr_expand(SExpr({t: 1})))) == formal_trace(SExpr({t: 1}))
            for t in triples
        ),
    )
    rep.add("split identity", all(split_check(*t, m) for t in triples for m in range(sum(t) + 1)))
    rep.add("T(n,n) trace-free", all(not formal_trace(T_sexpr(n, n)) for n in range(min(cfg.nmax, 6) + 1)))
    rng = random.Random(cfg.seed)
    ok = True
    for _ in range(5 * cfg.nmax):
        S = SExpr({rng.choice(triples): rng.randint(-3, 3) for _ in range(3)})
        axis = rng.choice("xyz")
        ok &= formal_trace(ad_gen(axis, S)) == ad_gen(axis, formal_trace(S))
    rep.add("trace commutes with ad", ok)
    return rep


def suite_sphere(cfg: VerifyConfig) -> SuiteReport:
    import numpy as np

    from .sphere import SphereFunction, normalized_basis_limit, sphere_inner, uniform_grid, ylm

    rep = SuiteReport("sphere")
    R = 1.0
    TH, PH = uniform_grid(33, 64)
    worst = 0.0
    for n, m in _pairs(min(cfg.nmax, 5)):
        vals = normalized_basis_limit(n, m, R).evaluate(TH, PH, "jform")
        worst = max(worst, float(np.abs(vals - (-1) ** n * ylm(n, -m, TH, PH)).max()))
    rep.add("basis limit = (-1)^n Y(n,-m)", worst < 1e-10, f"{worst:.3e}")
    idx = _pairs(min(cfg.nmax, 5))
    dev = max(
        abs(sphere_inner(SphereFunction(R, {a: 1}), SphereFunction(R, {b: 1})) - (a == b)) for a in idx for b in idx
    )
    rep.add("orthonormal harmonics", dev < 1e-9, f"{dev:.3e}")
    return rep


def suite_moyal(cfg: VerifyConfig) -> SuiteReport:
    import numpy as np

    from .freealg import NF_X, NF_Y
    from .sphere import (
        alpha_limit,
        conversion_factor,
        interior_grid,
        moyal_limit,
        nf_to_sphere,
        poisson,
        poisson_grid,
        scaled_T,
        uniform_grid,
    )

    rep = SuiteReport("moyal")
    R = 1.0
    elems = [(1.0, NF_X), (1.0, NF_Y), (1.0, NF_Z)]
    elems += [
        (alpha_limit(n, R) * math.sqrt(conversion_factor(n, m)), scaled_T(n, m))
        for n, m in _pairs(min(cfg.nmax, 3))
    ]
    TH, PH = uniform_grid(33, 64)
    TI, PI = interior_grid(33, 64)
    exact, worst = True, 0.0
    for sf, f in elems:
        F = nf_to_sphere(f, R)
        for sg, g in elems:
            A = moyal_limit(f, g, R)
            B = poisson(F, nf_to_sphere(g, R))
            exact &= A.jform == B.jform
            worst = max(worst, sf * sg * float(np.abs(A.evaluate(TH, PH) - B.evaluate(TH, PH, "jform")).max()))
            grid = poisson_grid(F.jform, nf_to_sphere(g, R).jform, TI, PI, R)
            worst = max(worst, sf * sg * float(np.abs(grid - B.evaluate(TI, PI, "jform")).max()))
    rep.add("exact J-forms agree", exact)
    rep.add("grid agreement", worst < 1e-10, f"{worst:.3e}")
    return rep


SUITES = {
    "norms": suite_norms,
    "orthogonality": suite_orthogonality,
    "spectra": suite_spectra,
    "ladder": suite_ladder,
    "dagger": suite_dagger,
    "sigma": suite_sigma,
    "representation": suite_representation,
    "hahn": suite_hahn,
    "omega": suite_omega,
    "ideal": suite_ideal,
    "fast": suite_fast,
    "symmetrized": suite_symmetrized,
    "sphere": suite_sphere,
    "moyal": suite_moyal,
}


def run_suite(cfg: VerifyConfig) -> list[SuiteReport]:
    if cfg.suite == "all":
        return [fn(cfg) for fn in SUITES.values()]
    if cfg.suite not in SUITES:
        raise KeyError(cfg.suite)
    return [SUITES[cfg.suite](cfg)]
