from __future__ import annotations

import pytest

from trialgebra.compalg import (Algebra, CompositionAlgebra, canonical_involution, cayley_dickson,
                                check_composition, is_anti_homomorphism, is_homomorphism,
                                is_symmetric, isotope, normalization_chain, para_hurwitz,
                                pushforward, scalar_multiple, symmetric_decomposition,
                                transport_isotope, unit_element, unitalize, zorn)
from trialgebra.errors import MissingUnit, NotAHomomorphism, NotComposition, NotSquare
from trialgebra.exactcore import FiniteField, Rationals
from trialgebra.quadform import similarity_multiplier
from trialgebra.simgroup import random_isometry, random_similarity

F3, F5, Q = FiniteField(3), FiniteField(5), Rationals()


@pytest.mark.parametrize("fld,params", [(F3, (1, 1, 1)), (F5, (1, 2, 3)), (Q, (1, 2, 3)),
                                        (Q, (-1, -1, -1))])
def test_cayley_dickson_is_hurwitz(fld, params):
    h = cayley_dickson(fld, *params)
    assert h.multiplier == fld.one
    assert fld.equal(h.unit, fld.basis_vector(0))
    assert fld.equal(unit_element(h), fld.basis_vector(0))


def test_cayley_dickson_structure_constants_pinned():
    h = cayley_dickson(Q, 1, 2, 3)
    e = [Q.basis_vector(i) for i in range(8)]
    # e1 e1 = a, e1 e2 = e3, e2 e1 = -e3, e4 e4 = c
    assert Q.equal(h.mul(e[1], e[1]), Q.scale(1, e[0]))
    assert Q.equal(h.mul(e[2], e[2]), Q.scale(2, e[0]))
    assert Q.equal(h.mul(e[4], e[4]), Q.scale(3, e[0]))
    assert Q.equal(h.mul(e[1], e[2]), e[3])
    assert Q.equal(h.mul(e[2], e[1]), Q.scale(-1, e[3]))


def test_perturbed_gamma_fails():
    h = cayley_dickson(F5, 1, 2, 3)
    gamma = h.gamma.copy()
    gamma[1, 2, 3] = (gamma[1, 2, 3] + 1) % 5
    with pytest.raises(NotComposition):
        check_composition(Algebra(h.form, gamma))


def test_isotopes_stay_composition(s5, rng):
    q = s5.form
    for _ in range(10):
        f, g = random_isometry(q, 3, rng).mat, random_isometry(q, 4, rng).mat
        c = isotope(s5.h0, f, g)
        assert check_composition(c) == 1
        assert unit_element(c) is None or is_homomorphism(c, c, F5.identity())


def test_generalized_multiplier(s5, rng):
    q = s5.form
    sim = random_similarity(q, rng, s5.h0)
    c = isotope(s5.h0, sim.mat, F5.identity())
    assert check_composition(c) == sim.mu


def test_unitalize_round_trip(s3, rng):
    q = s3.form
    for _ in range(10):
        c = isotope(s3.h0, random_isometry(q, 5, rng).mat, random_isometry(q, 2, rng).mat)
        h, f, g, e = unitalize(c)
        assert F3.equal(isotope(h, f, g).gamma, c.gamma)
        assert F3.equal(unit_element(h), e)
        assert similarity_multiplier(q, f) == 1 and similarity_multiplier(q, g) == 1


def test_unitalize_over_q(sq, rng):
    c = isotope(sq.h0, random_isometry(sq.form, 2, rng).mat, random_isometry(sq.form, 1, rng).mat)
    h, f, g, _ = unitalize(c)
    assert Q.equal(isotope(h, f, g).gamma, c.gamma)


def test_para_hurwitz_and_involution(s3):
    i = canonical_involution(s3.h0)
    assert is_anti_homomorphism(s3.h0, i)
    assert F3.equal(F3.matmul(i, i), F3.identity())
    s = para_hurwitz(s3.h0)
    assert is_symmetric(s) and not is_symmetric(s3.h0)
    assert unit_element(s) is None
    with pytest.raises(MissingUnit):
        canonical_involution(s)


def test_symmetric_decomposition(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 3, rng).mat, random_isometry(s3.form, 6, rng).mat)
    s, f, g = symmetric_decomposition(c)
    assert is_symmetric(s)
    assert F3.equal(isotope(s, f, g).gamma, c.gamma)
    assert similarity_multiplier(s3.form, f) == 1 and similarity_multiplier(s3.form, g) == 1


def test_scalar_multiple_is_isomorphic(s5):
    for lam in range(1, 5):
        a = scalar_multiple(s5.s0, lam)
        assert check_composition(a) == lam * lam % 5
        assert is_homomorphism(a, s5.s0, F5.scalar_matrix(lam))


def test_transport_isotope(s3, rng):
    h = random_isometry(s3.form, 2, rng).mat
    b = pushforward(s3.h0, h)
    f, g = random_isometry(s3.form, 3, rng).mat, random_isometry(s3.form, 1, rng).mat
    out = transport_isotope(h, s3.h0, f, g, b)
    assert is_homomorphism(isotope(s3.h0, f, g), out, h)
    with pytest.raises(NotAHomomorphism):
        transport_isotope(F3.scalar_matrix(2), s3.h0, f, g, b)


def test_zorn_is_hurwitz():
    for fld in (F3, F5, Q):
        z = CompositionAlgebra.certify(zorn(fld))
        assert z.multiplier == fld.one and z.unit is not None


def test_json_round_trip(s5):
    data = s5.s0.to_json()
    back = Algebra.from_json(data, F5)
    assert F5.equal(back.gamma, s5.s0.gamma)
    assert data["certificate"]["multiplier"] == "1"


def test_normalization_identity_gives_para_hurwitz(s5):
    res = normalization_chain(s5.h0, F5.identity(), F5.identity())
    assert res.multiplier == 1
    assert is_symmetric(res.t)
    assert F5.equal(res.t.gamma, isotope(s5.h0, res.i_prime, res.i_prime).gamma)


def test_normalization_non_square(s5):
    # n(e2) = -2 = 3 in F_5, so G = L_{e2} gives lam = n(e2^-1) = 2, a non-square
    e2 = F5.basis_vector(2)
    assert s5.form(e2) == 3
    with pytest.raises(NotSquare) as info:
        normalization_chain(s5.h0, F5.identity(), s5.h0.left(e2))
    part = info.value.partial
    assert part.multiplier == 2 and part.t is None
    assert is_symmetric(part.s_prime) and part.s_prime.multiplier == 2
