import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    abelian,
    catalog_algebras,
    perturb_representation,
    random_matrix,
    random_representation,
    random_valid_representation,
)
from homanti.algebra import check_axioms, check_multiplicative, contract
from homanti.catalog import k1, twisted_k1
from homanti.errors import NotMultiplicativeError, ShapeError
from homanti.linalg import Matrix
from homanti.representation import (
    adjoint_representation,
    check_representation,
    hom_module,
    new_representation,
    semidirect,
    trivial_representation,
)

H = Fraction(1, 2)


def broken_adjoint():
    ad = adjoint_representation(k1())
    down = [m.tolist() for m in ad.rho1_down]
    down[0] = [[2 * x for x in r] for r in down[0]]
    return new_representation(k1(), ad.module, [m.tolist() for m in ad.rho0_even],
                              [m.tolist() for m in ad.rho0_odd], [m.tolist() for m in ad.rho1_up], down)


def test_zero_representation_passes():
    rng = random.Random(1)
    for a in (k1(), twisted_k1(3), abelian(2, 1)):
        mod = hom_module(2, 1, random_matrix(rng, 2, 2), random_matrix(rng, 1, 1))
        assert check_representation(a, trivial_representation(a, mod)).passed


def test_adjoint_k1_entries():
    ad = adjoint_representation(k1())
    assert ad.rho0_even[0] == Matrix.identity(1)
    assert ad.rho0_odd[0] == Matrix.identity(2).scale(H)
    # rho1(a)(b) = [a, b] = eps/2
    assert ad.rho1_down[0] == Matrix([[0, H]])
    assert check_representation(k1(), ad).passed


def test_adjoint_of_abelian_is_zero():
    ad = adjoint_representation(abelian(2, 2))
    assert all(m.is_zero() for ms in (ad.rho0_even, ad.rho0_odd, ad.rho1_up, ad.rho1_down) for m in ms)


@pytest.mark.parametrize("name,a", catalog_algebras())
def test_adjoint_passes_on_catalog(name, a):
    assert check_representation(a, adjoint_representation(a)).passed


def test_adjoint_requires_multiplicative():
    a = k1().with_twists(Matrix.identity(1), Matrix.diag([2, 2]))
    with pytest.raises(NotMultiplicativeError):
        adjoint_representation(a)


def test_broken_adjoint_fails_bracket_identities():
    rep = check_representation(k1(), broken_adjoint())
    failed = set(rep.failed_identities())
    assert failed & {"bracket_on_v0", "bracket_on_v1"}
    assert not check_axioms(semidirect(k1(), broken_adjoint())).passed


def test_semidirect_examples():
    a = k1()
    assert semidirect(a, trivial_representation(a, hom_module(0, 0))) == a
    big = semidirect(a, adjoint_representation(a))
    assert (big.p, big.q) == (2, 4)
    assert check_axioms(big).passed


def test_semidirect_with_trivial_is_direct_sum():
    a = k1()
    big = semidirect(a, trivial_representation(a, hom_module(1, 1)))
    # the new even vector multiplies everything to zero
    for j in range(big.p):
        assert not any(big.mu[1][j])
    for j in range(big.q):
        assert not any(big.nu[1][j])
    assert check_axioms(big).passed


def test_fiber_is_abelian_ideal():
    rng = random.Random(4)
    for name, a in catalog_algebras():
        rho = random_valid_representation(rng, a)
        big = semidirect(a, rho)
        p, q = a.p, a.q
        for u in range(p, big.p):
            for v in range(p, big.p):
                assert not any(big.mu[u][v])
            for w in range(q, big.q):
                assert not any(big.nu[u][w])
            for i in range(p):
                assert not any(big.mu[i][u][:p])
        for w in range(q, big.q):
            for w2 in range(q, big.q):
                assert not any(big.br[w][w2])


def test_shape_mismatch():
    a = k1()
    with pytest.raises(ShapeError):
        new_representation(a, hom_module(1, 1), [Matrix.identity(2)], [Matrix.zeros(1, 1)],
                           [Matrix.zeros(1, 1)] * 2, [Matrix.zeros(1, 1)] * 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_semidirect_equivalence_random_small(seed):
    rng = random.Random(seed)
    a = rng.choice([k1(), twisted_k1(3), abelian(1, 1)])
    r, s = rng.randrange(0, 3), rng.randrange(0, 3)
    rho = random_representation(rng, a, r, s)
    assert check_representation(a, rho).passed == check_axioms(semidirect(a, rho)).passed


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_semidirect_equivalence_perturbed(seed):
    rng = random.Random(seed)
    _, a = rng.choice(catalog_algebras())
    rho = random_valid_representation(rng, a)
    assert check_representation(a, rho).passed
    assert check_axioms(semidirect(a, rho)).passed
    bad = perturb_representation(rng, a, rho)
    assert check_representation(a, bad).passed == check_axioms(semidirect(a, bad)).passed


def test_shared_right_hand_sides_checked_separately():
    # rho0_odd scaled breaks odd_then_even_on_v0 while even_then_odd_on_v0 only sees rho1
    a = k1()
    ad = adjoint_representation(a)
    r = new_representation(a, ad.module, [m.tolist() for m in ad.rho0_even],
                           [m.scale(2).tolist() for m in ad.rho0_odd],
                           [m.tolist() for m in ad.rho1_up], [m.tolist() for m in ad.rho1_down])
    failed = check_representation(a, r).failed_identities()
    assert "odd_then_even_on_v0" in failed
    assert "even_then_odd_on_v0" not in failed


def test_adjoint_actions_match_products():
    a = twisted_k1(3)
    ad = adjoint_representation(a)
    y = (1, 2)
    for i in range(a.p):
        x = tuple(1 if k == i else 0 for k in range(a.p))
        assert ad.rho0(x, 1).apply(y) == contract(a.nu, x, y, a.q)
    assert check_multiplicative(a).passed
