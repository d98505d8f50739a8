import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzysphere.basis import build_T, decompose, nu, pi0
from fuzzysphere.coeff import GaussRational, poly_eval
from fuzzysphere.freealg import NF_JM, NF_JP, FreeElement, nf_from_text, nf_mul, normalize
from fuzzysphere.matrep import (
    MatrixRep,
    bench_decompose,
    bench_json,
    decompose_fast,
    generator_matrices,
    phi_N,
    pi0_trace,
    random_dense_nf,
    u_of,
)

from strategies import free_elements, normal_forms

Ns = st.integers(1, 8)


def test_generator_relations():
    for N in range(1, 8):
        g = generator_matrices(N)
        P, M, Z = g["P"], g["M"], g["z"]
        assert Z @ P - P @ Z == P
        assert Z @ M - M @ Z == M.scale(-1)
        assert P @ M - M @ P == Z.scale(2)
        casimir = Z @ Z + (M @ P + P @ M).scale(Fraction(1, 2))
        assert casimir == MatrixRep.identity(N).scale(u_of(N))
        for r in range(N):
            assert Z.entries[r][r] == GaussRational(Fraction(2 * r - N + 1, 2))


def test_phi_examples():
    assert phi_N(nf_mul(NF_JM, NF_JP), 2) == MatrixRep(2, [[1, 0], [0, 0]])
    for N in range(1, 7):
        assert phi_N(nf_from_text("x^2 + y^2 + z^2 - u"), N).is_zero()


def test_pi0_trace_examples():
    assert pi0_trace(nf_from_text("z^2"), 2) == GaussRational(Fraction(1, 4))
    assert pi0_trace(nf_from_text("1"), 5) == GaussRational(1)
    for n in range(7):
        word = FreeElement({("M",) * n + ("P",) * n: 1})
        for N in range(1, 11):
            assert pi0_trace(word, N) == poly_eval(nu(n), 1, u_of(N))


@pytest.mark.parametrize("n", range(7))
def test_kernel(n):
    for m in range(-n, n + 1):
        for N in range(1, 8):
            assert phi_N(build_T(n, m), N).is_zero() == (n >= N)


@given(normal_forms(5), normal_forms(5), Ns)
def test_homomorphism(f, g, N):
    assert phi_N(nf_mul(f, g), N) == phi_N(f, N) @ phi_N(g, N)


@given(free_elements(max_len=6), st.integers(2, 8))
def test_normal_form_soundness(f, N):
    gens = generator_matrices(N)
    direct = MatrixRep(N)
    for w, c in f.terms.items():
        m = MatrixRep.identity(N)
        for ch in w:
            m = m @ gens[ch]
        direct = direct + m.scale(poly_eval(c, 1, u_of(N)))
    assert phi_N(normalize(f), N) == direct


@given(normal_forms(5), Ns)
def test_trace_consistency(f, N):
    assert pi0_trace(f, N) == poly_eval(pi0(f), 1, u_of(N))


def test_decompose_fast_examples():
    z2 = nf_from_text("z^2")
    assert decompose_fast(z2) == decompose(z2)
    assert decompose_fast(build_T(3, 1)).terms == {(3, 1): build_T(0, 0).terms[(0, 0, 0)]}


@given(normal_forms(6, max_terms=6))
def test_decompose_fast_equivalence(f):
    assert decompose_fast(f) == decompose(f)


@pytest.mark.parametrize("degree", range(1, 7))
def test_decompose_fast_dense(degree):
    rng = random.Random(degree)
    f = random_dense_nf(degree, rng, kappa_free=False)
    assert decompose_fast(f) == decompose(f)


def test_decompose_fast_accepts_free_words():
    f = FreeElement({("M", "z", "P", "P"): 1, ("z", "z"): 3})
    assert decompose_fast(f) == decompose(normalize(f))


def test_bench_report():
    r = bench_decompose(4, trials=1, seed=3)
    assert set(r) == {"degree", "fast_ms", "direct_ms", "direct_rewrite_steps", "agree"}
    assert r["agree"] is True and r["degree"] == 4
    assert json.loads(bench_json([r]))[0]["direct_rewrite_steps"] == r["direct_rewrite_steps"]
    # step counts are deterministic for a fixed seed
    assert bench_decompose(4, trials=1, seed=3)["direct_rewrite_steps"] == r["direct_rewrite_steps"]
    with pytest.raises(ValueError):
        bench_decompose(0)
