import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzysphere.coeff import KAPPA, PONE, U, GaussRational, ParamPoly
from fuzzysphere.errors import ExpressionSyntaxError, MixedAlphabet
from fuzzysphere.freealg import (
    NF_JM,
    NF_JP,
    NF_ONE,
    NF_X,
    NF_Y,
    NF_Z,
    FreeElement,
    NormalForm,
    commutator,
    dagger_free,
    is_weight_homogeneous,
    mul_free,
    nf_dagger,
    nf_from_text,
    nf_mul,
    nf_pow,
    nf_to_free,
    normalize,
    normalize_with_stats,
    parse,
    to_ladder,
)

from strategies import free_elements, homogeneous_polys, normal_forms, words

IK = ParamPoly.monomial(GaussRational(0, 1), 1, 0)


def nf(terms):
    return NormalForm(terms)


# parsing -----------------------------------------------------------------


def test_parse_examples():
    f = parse("x*y - y*x")
    assert f.terms == {("x", "y"): PONE, ("y", "x"): -PONE}
    assert parse("i*k*z").terms == {("z",): IK}
    assert parse("Jp^2*z").terms == {("P", "P", "z"): PONE}
    assert parse("R^2").terms == {(): U}
    assert parse("k^-2").terms == {(): ParamPoly.monomial(1, -2, 0)}
    assert parse("3/4*z").terms == {("z",): ParamPoly.const(Fraction(3, 4))}


@pytest.mark.parametrize(
    "text,pos",
    [("x*(y", 4), ("R", 0), ("R^3", 0), ("x^-1", 1), ("x + * y", 4), ("1/0", 2), ("x $ y", 2)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ExpressionSyntaxError) as err:
        parse(text)
    assert err.value.pos == pos


def test_mixed_alphabet_rejected():
    with pytest.raises(MixedAlphabet):
        parse("x*Jp")
    # z is shared by both alphabets
    assert parse("z*Jp").alphabet == "ladder"
    assert parse("z*x").alphabet == "xyz"


def test_to_ladder():
    half = ParamPoly.const(Fraction(1, 2))
    assert to_ladder(parse("x")).terms == {("P",): half, ("M",): half}
    assert to_ladder(parse("z")) == parse("z")
    assert to_ladder(parse("x + i*y")) == parse("Jp")


def test_mul_free_examples():
    assert mul_free(parse("x"), parse("y")).terms == {("x", "y"): PONE}
    assert mul_free(parse("Jp + z"), parse("Jp")).terms == {("P", "P"): PONE, ("z", "P"): PONE}


def test_dagger_free_examples():
    assert dagger_free(parse("Jp")) == parse("Jm")
    assert dagger_free(parse("i*z")) == parse("-i*z")
    assert dagger_free(parse("Jp*z*Jm*Jm")) == parse("Jp*Jp*z*Jm")


# rewriting ---------------------------------------------------------------


def test_normalize_examples():
    assert nf_from_text("Jm*Jp") == nf({(0, 0, 0): U, (0, 1, 0): -KAPPA, (0, 2, 0): -PONE})
    assert nf_from_text("z*Jp") == nf({(1, 1, 0): PONE, (1, 0, 0): KAPPA})
    assert nf_from_text("Jm*z") == nf({(0, 1, 1): PONE, (0, 0, 1): KAPPA})
    assert nf_from_text("x*y - y*x") == nf({(0, 1, 0): IK})
    assert nf_from_text("x^2 + y^2 + z^2") == NormalForm.scalar(U)
    assert nf_from_text("y*z - z*y") == NF_X.scale(IK)
    assert nf_from_text("z*x - x*z") == NF_Y.scale(IK)


def test_nf_mul_examples():
    assert nf_mul(NF_JP, NF_JM) == nf({(0, 0, 0): U, (0, 1, 0): KAPPA, (0, 2, 0): -PONE})
    f = nf_from_text("Jp*z - 3*u*Jm^2")
    assert nf_mul(NF_ONE, f) == f == nf_mul(f, NF_ONE)


@pytest.mark.parametrize("p,m", [(1, 1), (2, 3), (3, 2), (4, 1)])
def test_z_power_through_jp(p, m):
    # z^p J+^m = J+^m (z + m k)^p
    shifted = nf_pow(NF_Z + NormalForm.scalar(KAPPA * m), p)
    assert nf_mul(nf_pow(NF_Z, p), nf_pow(NF_JP, m)) == nf_mul(nf_pow(NF_JP, m), shifted)


def test_generator_relations():
    assert commutator(NF_Z, NF_JP) == NF_JP.scale(KAPPA)
    assert commutator(NF_Z, NF_JM) == NF_JM.scale(-KAPPA)
    assert commutator(NF_JP, NF_JM) == NF_Z.scale(KAPPA * 2)


def test_canonical_shape_enforced():
    with pytest.raises(ValueError):
        NormalForm({(1, 0, 1): 1})


@given(free_elements(max_len=6), st.integers(0, 2**16))
def test_confluence_random_orders(f, seed):
    ref = normalize(f)
    rng = random.Random(seed)
    assert normalize(f, order="random", rng=rng) == ref
    assert normalize(f, merge=False) == ref


@given(free_elements(alphabet="xyz", max_len=4), st.integers(0, 2**16))
def test_confluence_xyz(f, seed):
    assert normalize(f, order="random", rng=random.Random(seed)) == normalize(f)


@given(free_elements(max_len=4), free_elements(max_len=4))
def test_nf_mul_matches_free_product(f, g):
    assert nf_mul(normalize(f), normalize(g)) == normalize(mul_free(f, g))


@given(normal_forms(3), normal_forms(3), normal_forms(3))
def test_associativity(f, g, h):
    assert nf_mul(nf_mul(f, g), h) == nf_mul(f, nf_mul(g, h))


@given(free_elements(max_len=4), free_elements(max_len=4))
def test_dagger_anti_automorphism(f, g):
    lhs = normalize(dagger_free(mul_free(f, g)))
    rhs = normalize(mul_free(dagger_free(g), dagger_free(f)))
    assert lhs == rhs
    assert nf_dagger(normalize(mul_free(f, g))) == nf_mul(nf_dagger(normalize(g)), nf_dagger(normalize(f)))


@given(free_elements(max_len=5))
def test_dagger_involution(f):
    assert dagger_free(dagger_free(f)) == f
    n = normalize(f)
    assert nf_dagger(nf_dagger(n)) == n
    # dagger commutes with normalization
    assert normalize(dagger_free(f)) == nf_dagger(n)


@given(
    st.integers(0, 5).flatmap(
        lambda d: st.lists(st.tuples(words(max_len=d).filter(lambda w: len(w) == d), homogeneous_polys(5 - d, 2)), max_size=3)
    )
)
def test_weight_homogeneity_preserved(pairs):
    f = FreeElement(dict(pairs))
    assert is_weight_homogeneous(normalize(f))


@given(free_elements(max_len=5))
def test_normal_form_is_canonical_word_set(f):
    n = normalize(f)
    assert all(min(a, c) == 0 for a, _, c in n.terms)
    assert normalize(nf_to_free(n)) == n


@given(normal_forms(4))
def test_charge_shape(f):
    # e_z f = k m f holds exactly on each charge sector and the sector has the J-shape
    for m, p in f.sectors().items():
        part = NormalForm.from_sectors({m: p})
        assert commutator(NF_Z, part) == part.scale(KAPPA * m)
        assert all(a - c == m and min(a, c) == 0 for a, _, c in part.terms)


def test_step_counts_reported():
    _, steps = normalize_with_stats(parse("Jm*Jp"))
    assert steps == 1
    _, steps = normalize_with_stats(parse("Jp*z*Jm"))
    assert steps == 1
    _, steps = normalize_with_stats(parse("Jp*z"))
    assert steps == 0
