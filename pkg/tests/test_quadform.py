from __future__ import annotations

import numpy as np
import pytest

from trialgebra.errors import NotASimilarity, NotFound
from trialgebra.exactcore import FiniteField, Rationals
from trialgebra.quadform import (QuadraticForm, adjoint, diagonalize, eval_form, find_norm_vector,
                                 is_proper, isometry_between, orthogonal_complement, pfister3,
                                 similarity_multiplier)
from trialgebra.simgroup import random_isometry, reflect

F3, F5, Q = FiniteField(3), FiniteField(5), Rationals()


def test_pfister_diagonals():
    assert np.diag(pfister3(F3, 1, 1, 1).gram).tolist() == [1, 2, 2, 1, 2, 1, 1, 2]
    assert [int(x) for x in np.diag(pfister3(Q, 1, 1, 1).gram)] == [1, -1, -1, 1, -1, 1, 1, -1]
    assert [int(x) for x in np.diag(pfister3(Q, 1, 2, 3).gram)] == [1, -1, -2, 2, -3, 3, 6, -6]
    with pytest.raises(ValueError):
        pfister3(F3, 1, 2, 3)  # 3 = 0 in F_3


def test_eval_form():
    q = pfister3(Q, 1, 1, 1)
    assert eval_form(q, Q.basis_vector(0)) == 1
    x = Q.array([1, 2, 0, -1, 3, 0, 1, 1])
    assert q.polar(x, x) == 2 * q(x)
    q5 = pfister3(F5, 1, 1, 1)
    assert q5(F5.reduce(F5.basis_vector(0) + F5.basis_vector(1))) == 0


def test_degenerate_form_rejected():
    with pytest.raises(ValueError):
        QuadraticForm(F5, F5.zeros((8, 8)))


def test_similarity_multiplier_and_sign(rng):
    q = pfister3(F5, 1, 2, 3)
    assert similarity_multiplier(q, F5.identity()) == 1
    assert similarity_multiplier(q, F5.scalar_matrix(2)) == 4
    u = F5.array([1, 1, 0, 0, 0, 0, 0, 1])
    sig = reflect(q, u)
    assert similarity_multiplier(q, sig.mat) == 1
    assert is_proper(q, sig.mat) == -1
    assert is_proper(q, F5.identity()) == 1
    bad = F5.identity()
    bad[0, 1] = 1
    with pytest.raises(NotASimilarity):
        similarity_multiplier(q, bad)


def test_adjoint(rng):
    q = pfister3(F5, 1, 2, 3)
    assert F5.equal(adjoint(q, F5.identity()), F5.identity())
    f = random_isometry(q, 5, rng).mat
    assert F5.equal(F5.matmul(adjoint(q, f), f), F5.identity())
    d = F5.array(np.diag([1, 2, 3, 4, 1, 2, 3, 4]))
    assert F5.equal(adjoint(q, d), d)


def test_find_norm_vector():
    q = pfister3(F3, 1, 1, 1)
    assert F3.equal(find_norm_vector(q, 1), F3.basis_vector(0))
    for target in (1, 2):
        assert q(find_norm_vector(q, target)) == target
    qq = pfister3(Q, 1, 2, 3)
    v = Q.array([1, 1, 1, 0, 0, 0, 0, 0])
    assert qq(find_norm_vector(qq, qq(v))) == qq(v)


def test_find_norm_vector_budget_over_q():
    # <1,1,1,1,1,1,1,1> is positive definite: -1 is never represented
    q = pfister3(Q, -1, -1, -1)
    with pytest.raises(NotFound):
        find_norm_vector(q, -1, budget=300)


def test_orthogonal_complement_and_diagonalize():
    q = pfister3(F5, 1, 2, 3)
    v = F5.array([1, 1, 0, 0, 0, 0, 0, 0])
    comp = orthogonal_complement(q, v[None, :])
    assert comp.shape == (7, 8)
    assert all(q.polar(w, v) == 0 for w in comp)
    p, d = diagonalize(q)
    gram = F5.matmul(F5.matmul(p.T, q.gram), p)
    assert F5.equal(gram, F5.array(np.diag(d)))


@pytest.mark.parametrize("fld", [F3, F5])
def test_isometry_between_pfister_forms(fld):
    a = pfister3(fld, 1, 1, 1)
    b = pfister3(fld, 1, 2, 1)
    g = isometry_between(a, b)
    assert fld.equal(fld.matmul(fld.matmul(g.T, b.gram), g), a.gram)


def test_json_round_trip():
    for q in (pfister3(Q, 1, 2, 3), QuadraticForm(F5, pfister3(F5, 1, 2, 3).gram)):
        assert QuadraticForm.from_json(q.field, q.to_json()) == q
