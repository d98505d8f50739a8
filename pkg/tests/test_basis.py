import warnings
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzysphere.basis import (
    BasisDecomp,
    apply_operator,
    build_T,
    check_eigen,
    decompose,
    hahn_nf,
    hahn_p,
    inner,
    left_ideal_z_member,
    norm_T,
    nu,
    omega_apply,
    pi0,
    sigma_n,
)
from fuzzysphere.coeff import KAPPA, PONE, U, GaussRational, ParamPoly, poly_eval
from fuzzysphere.errors import DegenerateSigmaWarning, DomainError
from fuzzysphere.freealg import NF_JM, NF_JP, NF_ONE, NF_Z, NormalForm, e_minus, e_plus, nf_mul, nf_pow
from fuzzysphere.verify import laplacian, proportional, right_quotient_by_z

from strategies import normal_forms

THIRD = Fraction(1, 3)
K2 = KAPPA * KAPPA


def test_build_T_examples():
    assert build_T(1, 1) == NF_JP
    assert build_T(1, 0) == NF_Z.scale(KAPPA * -2)
    assert build_T(2, 0) == (nf_pow(NF_Z, 2).scale(3) - NormalForm.scalar(U)).scale(K2 * 4)
    with pytest.raises(DomainError):
        build_T(1, 2)


def test_decompose_examples():
    assert decompose(nf_pow(NF_Z, 2)).terms == {(0, 0): U * THIRD, (2, 0): ParamPoly.monomial(Fraction(1, 12), -2, 0)}
    assert decompose(NF_JP).terms == {(1, 1): PONE}
    assert decompose(NormalForm.scalar(U)).terms == {(0, 0): U}


def test_pi0_and_inner_examples():
    assert pi0(NF_ONE) == PONE
    assert pi0(nf_pow(NF_Z, 2)) == U * THIRD
    assert not pi0(NF_JP)
    assert inner(NF_Z, NF_Z) == U * THIRD
    assert not inner(NF_JP, NF_Z)
    assert inner(NF_JP, NF_JP) == U * (2 * THIRD)


def test_nu_and_norms():
    assert nu(1) == U * (2 * THIRD)
    assert norm_T(1, 1) == nu(1)
    for n in range(5):
        assert inner(nf_pow(NF_JP, n), nf_pow(NF_JP, n)) == nu(n)


@pytest.mark.parametrize("n", range(5))
def test_norms_m_independent(n):
    ref = None
    for m in range(-n, n + 1):
        t = build_T(n, m)
        v = inner(t, t)
        assert v == norm_T(n, m)
        scaled = v.shift_kappa(2 * m) * Fraction(factorial(n + m), factorial(n - m))
        ref = ref or scaled
        assert scaled == ref


def test_sigma_examples():
    assert [sigma_n(n, 1, 2) for n in range(6)] == [1, 1, 1, 0, 0, 0]
    assert sigma_n(3, 1, 1) == -1
    assert sigma_n(4, 0, 5) == 1
    with pytest.raises(DomainError):
        sigma_n(1, 1, -1)


@given(st.integers(0, 8), st.integers(1, 4), st.fractions(0, 20, max_denominator=7))
def test_sigma_is_sign_of_product(n, k0, u0):
    v = poly_eval(nu(n), k0, u0).re
    assert sigma_n(n, k0, u0) == (v > 0) - (v < 0)


def test_hahn_examples():
    p = hahn_p(1, 0, 5)
    assert len(p) == 2 and p[0] == 0 and p[1] != 0
    assert len(hahn_p(3, 3, 7)) == 1
    p = hahn_p(2, 0, 4)
    u = Fraction(15, 4)
    # proportional to 3 z^2 - u
    assert p[1] == 0 and p[0] / p[2] == -u / 3
    with pytest.raises(DomainError):
        hahn_p(3, 1, 3)


@pytest.mark.parametrize("n", range(6))
def test_hahn_agrees_with_ladder(n):
    for m in range(-n, n + 1):
        for N in range(n + 1, n + 5):
            assert proportional(hahn_nf(n, m, N), build_T(n, m).specialize(1, Fraction(N * N - 1, 4)))


def test_apply_operator_examples():
    assert apply_operator("e_z", BasisDecomp({(1, 1): PONE})).terms == {(1, 1): KAPPA}
    dz = decompose(NF_Z)
    assert apply_operator("laplacian", dz).terms == {k: v * K2 * 2 for k, v in dz.terms.items()}
    assert apply_operator("e_plus", BasisDecomp({(1, 0): PONE})).terms == {(1, 1): K2 * 2}
    with pytest.raises(DomainError):
        apply_operator("e_w", dz)


@given(normal_forms(4), st.sampled_from(["e_x", "e_y", "e_z", "e_plus", "e_minus", "laplacian"]))
def test_apply_operator_matches_commutators(f, which):
    from fuzzysphere.freealg import NF_X, NF_Y, commutator

    literal = {
        "e_x": lambda g: commutator(NF_X, g),
        "e_y": lambda g: commutator(NF_Y, g),
        "e_z": lambda g: commutator(NF_Z, g),
        "e_plus": e_plus,
        "e_minus": e_minus,
        "laplacian": laplacian,
    }[which]
    assert apply_operator(which, decompose(f)).reconstruct() == literal(f)


@given(normal_forms(4))
def test_reconstruction(f):
    assert decompose(f).reconstruct() == f


@given(normal_forms(3), normal_forms(3))
def test_inner_hermitian(f, g):
    assert inner(f, g) == inner(g, f).conjugate()


@given(normal_forms(3), normal_forms(3))
def test_ladder_adjoint(f, g):
    assert inner(e_minus(f), g) == inner(f, e_plus(g))
    assert inner(laplacian(f), g) == inner(f, laplacian(g))


@given(normal_forms(3), normal_forms(3))
def test_trace_symmetry(f, g):
    assert pi0(nf_mul(f, g)) == pi0(nf_mul(g, f))


@pytest.mark.parametrize("n", range(6))
def test_eigen(n):
    for m in range(-n, n + 1):
        assert check_eigen(build_T(n, m), m)


def test_specialize_flags_degenerate_degree():
    d = decompose(nf_pow(NF_JP, 3))
    with pytest.warns(DegenerateSigmaWarning):
        d.specialize(1, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert d.specialize(1, 3) == {(3, 3): GaussRational(1)}


def test_omega_examples():
    assert omega_apply(1, NF_ONE, 1, 2) == NF_ONE.scale(3)
    for p in range(4):
        for u0 in (3, 5, Fraction(7, 2)):
            assert omega_apply(p, NF_ONE, 1, u0) == NF_ONE.scale(sigma_n(p, 1, u0) * (2 * p + 1))
    w = omega_apply(1, NF_Z, 1, 5)
    assert proportional(NF_Z, w)


def test_omega_degenerate_flagged():
    with pytest.warns(DegenerateSigmaWarning):
        assert not omega_apply(3, NF_ONE, 1, 2)
    with pytest.raises(DomainError):
        omega_apply(1, NF_ONE, 0, 1)


def test_ideal_examples():
    assert left_ideal_z_member(NF_Z)
    assert not left_ideal_z_member(NF_ONE)
    assert left_ideal_z_member(nf_mul(NF_JP, NF_Z))
    assert left_ideal_z_member(nf_mul(NF_JM, NF_Z))
    assert not left_ideal_z_member(NF_JM)


@given(normal_forms(4))
def test_ideal_members(g):
    f = nf_mul(g, NF_Z)
    assert left_ideal_z_member(f)
    assert right_quotient_by_z(f) is not None


@given(normal_forms(4))
def test_ideal_agrees_with_division(f):
    assert left_ideal_z_member(f) == (right_quotient_by_z(f) is not None)
