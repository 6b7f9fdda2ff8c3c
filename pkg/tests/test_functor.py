from __future__ import annotations

import pytest

from trialgebra.compalg import (Algebra, CompositionAlgebra, is_symmetric, isotope, pushforward,
                                scalar_multiple)
from trialgebra.exactcore import FiniteField
from trialgebra.functor import (double_sign, double_sign_via_orders, functor_image, iso_check,
                                iso_search, symmetric_criterion)
from trialgebra.simgroup import random_isometry

F3 = FiniteField(3)


def test_anchor_double_signs(s3, s5):
    for s in (s3, s5):
        assert double_sign(s.h0).pair == (1, 1)
        assert double_sign(s.s0).pair == (-1, -1)
        assert double_sign_via_orders(s, s.h0).pair == (1, 1)
        assert double_sign_via_orders(s, s.s0).pair == (-1, -1)


@pytest.mark.parametrize("kf,kg", [(0, 0), (0, 1), (1, 0), (1, 1), (3, 2)])
def test_double_sign_of_isotope(s3, rng, kf, kg):
    f, g = random_isometry(s3.form, kf, rng), random_isometry(s3.form, kg, rng)
    c = isotope(s3.h0, f.mat, g.mat)
    expected = (g.sign, f.sign)
    assert double_sign(c).pair == expected
    assert double_sign_via_orders(s3, c).pair == expected


def test_functor_image_is_trialitarian(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 1, rng).mat, random_isometry(s3.form, 2, rng).mat)
    image = functor_image(s3, c)
    assert image.is_trialitarian and image.labels == (1, 2)
    o1, o2 = image.a1.s3_order, image.a2.s3_order
    assert ((-1) ** o2, (-1) ** o1) == double_sign(c).pair


def test_opposite_hurwitz_labels(s3):
    op = CompositionAlgebra.certify(Algebra(s3.form, s3.h0.gamma.transpose(1, 0, 2)))
    assert functor_image(s3, op).labels == (2, 1)
    assert iso_check(s3, op, s3.h0, s3.i0)


def test_negative_algebra_same_image(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 3, rng).mat, random_isometry(s3.form, 1, rng).mat)
    neg = scalar_multiple(c, -1)
    assert not F3.equal(neg.gamma, c.gamma)
    assert functor_image(s3, neg) == functor_image(s3, c)


def test_symmetric_criterion_anchors(s3, rng):
    eye = F3.identity()
    assert symmetric_criterion(s3, s3.s0, eye, eye)
    # H0 = S0_{i0, i0} is not symmetric
    assert not symmetric_criterion(s3, s3.s0, s3.i0, s3.i0)
    for _ in range(5):
        f, g = random_isometry(s3.form, 2, rng).mat, random_isometry(s3.form, 4, rng).mat
        assert symmetric_criterion(s3, s3.s0, f, g) == is_symmetric(isotope(s3.s0, f, g))


def test_iso_check(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 3, rng).mat, random_isometry(s3.form, 4, rng).mat)
    h = random_isometry(s3.form, 4, rng).mat
    d = pushforward(c, h)
    assert iso_check(s3, c, d, h)
    assert not iso_check(s3, c, d, F3.reduce(-h))
    assert not iso_check(s3, c, d, random_isometry(s3.form, 2, rng).mat)


def test_iso_search(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 2, rng).mat, random_isometry(s3.form, 1, rng).mat)
    d = pushforward(c, random_isometry(s3.form, 4, rng).mat)
    verdict = iso_search(s3, c, d)
    assert verdict.status == "yes" and iso_check(s3, c, d, verdict.witness)
    other = isotope(s3.h0, random_isometry(s3.form, 1, rng).mat, F3.identity())
    assert iso_search(s3, c, other).status == "no-invariant"


def test_iso_search_budget_gives_unknown(sq, rng):
    c = isotope(sq.h0, random_isometry(sq.form, 2, rng).mat, sq.field.identity())
    d = pushforward(c, random_isometry(sq.form, 2, rng).mat)
    verdict = iso_search(sq, c, d, budget=2)
    assert verdict.status in ("yes", "unknown")
    if verdict.status == "yes":
        assert iso_check(sq, c, d, verdict.witness)
