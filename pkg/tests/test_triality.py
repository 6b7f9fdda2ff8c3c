from __future__ import annotations

import numpy as np
import pytest

from trialgebra.compalg import isotope, pushforward, scalar_multiple
from trialgebra.errors import NoSolution
from trialgebra.exactcore import FiniteField
from trialgebra.simgroup import proj, random_isometry, random_similarity
from trialgebra.triality import (MarkedAuto, brute_force_triality, hurwitz_align, triality_components,
                                 triality_kernel)
from trialgebra.compalg import is_homomorphism

F3 = FiniteField(3)


def _identities_hold(c, h, pair):
    fld = c.field
    for i in range(8):
        for j in range(8):
            x, y = fld.basis_vector(i), fld.basis_vector(j)
            lhs = fld.matmul(h, c.mul(x, y))
            rhs = c.mul(fld.matmul(pair.h1.mat, x), fld.matmul(pair.h2.mat, y))
            if not fld.equal(lhs, rhs):
                return False
    return True


def test_components_of_identity(s3):
    pair = triality_components(s3.h0, F3.identity())
    assert proj(s3.form, pair.h1.mat) == s3.identity
    assert proj(s3.form, pair.h2.mat) == s3.identity


@pytest.mark.parametrize("name", ["s3", "s5"])
def test_components_on_isotopes(name, request, rng):
    s = request.getfixturevalue(name)
    q, fld = s.form, s.field
    for k in (2, 4, 6):
        c = isotope(s.h0, random_isometry(q, 3, rng).mat, random_isometry(q, 1, rng).mat)
        h = random_similarity(q, rng, s.h0, k=k)
        if h.sign < 0:
            h = random_similarity(q, rng, None, k=k)
        pair = triality_components(c, h)
        assert _identities_hold(c, h.mat, pair)
        assert pair.h1.sign == pair.h2.sign == 1
        assert fld.reduce(pair.h1.mu * pair.h2.mu) == h.mu


def test_kernel_dimension(s5, rng):
    h = random_isometry(s5.form, 4, rng).mat
    assert triality_kernel(s5.h0, h).shape[0] == 1
    assert triality_kernel(s5.h0, random_isometry(s5.form, 3, rng).mat).shape[0] == 0


def test_improper_has_no_solution(s3, rng):
    with pytest.raises(NoSolution):
        triality_components(s3.s0, random_isometry(s3.form, 5, rng))


def test_brute_force_agrees(s3, rng):
    c = isotope(s3.h0, random_isometry(s3.form, 2, rng).mat, random_isometry(s3.form, 5, rng).mat)
    h = random_isometry(s3.form, 4, rng)
    pair = triality_components(c, h)
    assert brute_force_triality(c, h) == (proj(s3.form, pair.h1.mat), proj(s3.form, pair.h2.mat))


def test_rho_order_three_and_relation(s3, rng):
    for _ in range(3):
        x = s3.proj(random_isometry(s3.form, 4, rng).mat)
        r1 = s3.rho_power(1, x)
        assert s3.rho_power(1, s3.rho_power(1, r1)) == x
        assert s3.rho_power(2, r1) == x
        i0 = s3.i0_class
        assert s3.rho_power(1, s3.pcompose(i0, x, i0)) == s3.pcompose(i0, s3.rho_power(2, x), i0)


def test_marked_auto_group(s3, rng):
    a = s3.marked(1, random_isometry(s3.form, 2, rng).mat)
    b = s3.marked(2, random_isometry(s3.form, 4, rng).mat)
    x = s3.proj(random_isometry(s3.form, 6, rng).mat)
    ab = s3.compose(a, b)
    assert s3.evaluate(ab, x) == s3.evaluate(a, s3.evaluate(b, x))
    assert s3.compose(a, s3.invert(a)) == s3.inner(F3.identity())
    assert a.s3_order == 3 and s3.inner(F3.identity()).s3_order == 1


def test_conj_matches_pointwise(s3, rng):
    a = s3.marked(1, random_isometry(s3.form, 2, rng).mat)
    h = s3.proj(random_isometry(s3.form, 3, rng).mat)
    x = s3.proj(random_isometry(s3.form, 4, rng).mat)
    lhs = s3.evaluate(s3.conj(h, a), x)
    rhs = s3.pcompose(h, s3.evaluate(a, s3.pcompose(s3.pinv(h), x, h)), s3.pinv(h))
    assert lhs == rhs
    # conjugating by an improper map swaps rho and rho^2
    assert s3.conj(h, a).r == 2


def test_base_images(s3):
    a1, a2 = s3.marked_auto_of(s3.s0)
    assert (a1.r, a2.r) == (1, 2)
    assert a1 == MarkedAuto(1, s3.identity)
    b1, b2 = s3.marked_auto_of(s3.h0)
    assert b1.s3_order == 2 and b2.s3_order == 2


def test_hurwitz_align(s3, s5, sq, rng):
    for s in (s3, s5, sq):
        h = random_isometry(s.form, 2, rng).mat
        moved = pushforward(s.h0, h)
        phi = hurwitz_align(moved, s.h0)
        assert is_homomorphism(moved, s.h0, phi)
    phi = hurwitz_align(s3.h0, s3.h0, rng=rng)
    assert is_homomorphism(s3.h0, s3.h0, phi)


def test_scalar_multiple_same_image(s3):
    assert s3.marked_auto_of(scalar_multiple(s3.s0, 2)) == s3.marked_auto_of(s3.s0)


def test_marked_json(s3):
    data = s3.marked(1, F3.identity()).to_json(F3)
    assert data["r"] == 1 and np.array(data["coset"]["matrix"]).shape == (8, 8)
