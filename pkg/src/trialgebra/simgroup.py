"""Similarities of (k^8, n), reflections, Cartan-Dieudonne, projective classes.

A projective class [f] = f k* is stored through a canonical representative:
over F_p the first nonzero entry (row-major) is 1, over Q the entries are
coprime integers with a positive first nonzero entry.  Equality of classes is
then equality of representatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotASimilarity, NotFound
from .exactcore import Field, inverse, kernel
from .quadform import (DIM, QuadraticForm, _candidate_batches, find_norm_vector, is_proper,
                       orthogonal_complement, random_vector_with_norm, similarity_multiplier)


@dataclass(frozen=True, eq=False)
class Similarity:
    mat: np.ndarray
    mu: object
    sign: int

    @classmethod
    def of(cls, q: QuadraticForm, mat) -> "Similarity":
        mat = q.field.array(mat)
        mu = similarity_multiplier(q, mat)
        return cls(mat, mu, is_proper(q, mat, mu))

    def to_json(self, field: Field) -> dict:
        return {"matrix": field.serialize(self.mat), "mu": field.to_str(self.mu),
                "sign": self.sign}

    @classmethod
    def from_json(cls, q: QuadraticForm, data) -> "Similarity":
        """Accepts a Similarity object or a bare nested matrix list."""
        mat = data["matrix"] if isinstance(data, dict) else data
        return cls.of(q, q.field.deserialize(mat))


def canonical_rep(field: Field, mat) -> np.ndarray:
    mat = field.array(mat)
    flat = mat.reshape(-1)
    nz = np.flatnonzero(flat != 0)
    if nz.size == 0:
        raise ValueError("zero matrix has no projective class")
    lead = flat[nz[0]]
    if hasattr(field, "p"):
        return field.scale(field.inv(lead), mat)
    denom = 1
    for x in flat:
        denom = math.lcm(denom, x.denominator)
    ints = [int(x * denom) for x in flat]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    s = 1 if ints[nz[0]] > 0 else -1
    return np.array([Fraction(s * v // g) for v in ints], dtype=object).reshape(mat.shape)


@dataclass(frozen=True, eq=False)
class ProjSimilarity:
    rep: np.ndarray
    sign: int

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjSimilarity) and np.array_equal(self.rep, other.rep)

    def __hash__(self) -> int:
        return hash(tuple(str(x) for x in self.rep.flat))

    def to_json(self, field: Field) -> dict:
        return {"matrix": field.serialize(self.rep), "sign": self.sign}


def proj(q: QuadraticForm, f) -> ProjSimilarity:
    mat = f.mat if isinstance(f, Similarity) else q.field.array(f)
    sign = f.sign if isinstance(f, Similarity) else is_proper(q, mat)
    return ProjSimilarity(canonical_rep(q.field, mat), sign)


def proj_equal(a: ProjSimilarity, b: ProjSimilarity) -> bool:
    return a == b


def proj_compose(q: QuadraticForm, *classes: ProjSimilarity) -> ProjSimilarity:
    fld = q.field
    out = fld.identity()
    sign = 1
    for c in classes:
        out = canonical_rep(fld, fld.matmul(out, c.rep))
        sign *= c.sign
    return ProjSimilarity(out, sign)


def proj_invert(q: QuadraticForm, a: ProjSimilarity) -> ProjSimilarity:
    return ProjSimilarity(canonical_rep(q.field, inverse(q.field, a.rep)), a.sign)


def proj_identity(q: QuadraticForm) -> ProjSimilarity:
    return ProjSimilarity(canonical_rep(q.field, q.field.identity()), 1)


def reflection_matrix(q: QuadraticForm, u) -> np.ndarray:
    fld = q.field
    nu = q(u)
    if nu == 0:
        raise NotASimilarity("cannot reflect in an isotropic vector")
    bu = fld.matmul(q.bilinear, u)
    return fld.reduce(fld.identity() - fld.scale(fld.inv(nu), fld.reduce(np.outer(u, bu))))


def reflect(q: QuadraticForm, u) -> Similarity:
    """sigma_u(x) = x - (b_n(x, u) / n(u)) u."""
    return Similarity(reflection_matrix(q, u), q.field.one, -1)


def compose_reflections(q: QuadraticForm, vectors) -> np.ndarray:
    fld = q.field
    out = fld.identity()
    for u in vectors:
        out = fld.matmul(out, reflection_matrix(q, u))
    return out


def _anisotropic_in(q, space, limit):
    """Up to ``limit`` anisotropic vectors of span(space), deterministic."""
    out = []
    for batch in _candidate_batches(q.field, space, None):
        for v, s in zip(batch, q.norms(batch)):
            if s != 0:
                out.append(v)
                if len(out) >= limit:
                    return out
        if len(out) or batch.shape[0] > limit:
            return out
    return out


def cartan_dieudonne(q: QuadraticForm, h) -> list:
    """Anisotropic u_1..u_k with h = sigma_{u_1} ... sigma_{u_k}.

    Works down a g-stable subspace W on which g = (product so far)^-1 h may
    still move vectors.  A fixed anisotropic x shrinks W to its orthogonal
    complement for free; x with n(x - gx) != 0 costs one reflection.  If every
    candidate x has isotropic x - gx, one reflection is peeled off first,
    which is the classical detour.
    """
    fld = q.field
    g = h.mat if isinstance(h, Similarity) else fld.array(h)
    if similarity_multiplier(q, g) != fld.one:
        raise NotASimilarity("cartan_dieudonne needs an isometry")
    factors: list = []
    space = fld.identity()
    while space.shape[0] and not fld.equal(g, fld.identity()):
        fixed = kernel(fld, fld.matmul(space, fld.reduce(g - fld.identity()).T).T)
        fixed_vecs = fld.matmul(fixed, space) if fixed.shape[0] else fixed
        x = next((v for v in fixed_vecs if q(v) != 0), None) if fixed.shape[0] else None
        if x is None:
            for cand in _anisotropic_in(q, space, 64):
                u = fld.reduce(cand - fld.matmul(g, cand))
                if q(u) != 0:
                    x = cand
                    sig = reflection_matrix(q, u)
                    g = fld.matmul(sig, g)
                    factors.append(u)
                    break
        if x is None:
            u = _anisotropic_in(q, space, 1)[0]
            g = fld.matmul(reflection_matrix(q, u), g)
            factors.append(u)
            continue
        space = orthogonal_complement(q, x[None, :], within=space)
    assert fld.equal(g, fld.identity())
    assert fld.equal(compose_reflections(q, factors), fld.array(h.mat if isinstance(h, Similarity) else h))
    return factors


def random_anisotropic(q: QuadraticForm, rng) -> np.ndarray:
    fld = q.field
    while True:
        v = fld.random_array(rng, DIM)
        if q(v) != 0:
            return v


def random_isometry(q: QuadraticForm, k: int, rng) -> Similarity:
    """Product of k random reflections; sign (-1)^k."""
    vecs = [random_anisotropic(q, rng) for _ in range(k)]
    return Similarity(compose_reflections(q, vecs), q.field.one, (-1) ** k)


def random_proper_isometry(q: QuadraticForm, k: int, seed) -> Similarity:
    """Product of k random reflections, k even; ``seed`` may be a Generator."""
    if k % 2:
        raise ValueError("a proper isometry needs an even number of reflections")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return random_isometry(q, k, rng)


def random_similarity(q: QuadraticForm, rng, hurwitz=None, k: int | None = None) -> Similarity:
    """A random element of GO(n).

    Generators are reflections, scalars and, when a Hurwitz algebra is given,
    left multiplications L_c with mu(L_c) = n(c), the only route to
    multipliers that are not squares.
    """
    fld = q.field
    if k is None:
        k = int(rng.integers(0, 9))
    mat = random_isometry(q, k, rng).mat
    mat = fld.scale(fld.random_element(rng, nonzero=True), mat)
    if hurwitz is not None:
        mat = fld.matmul(hurwitz.left(random_anisotropic(q, rng)), mat)
    return Similarity.of(q, mat)


__all__ = [
    "Similarity", "ProjSimilarity", "canonical_rep", "proj", "proj_equal", "proj_compose",
    "proj_invert", "proj_identity", "reflect", "reflection_matrix", "compose_reflections",
    "cartan_dieudonne", "random_anisotropic", "random_isometry", "random_proper_isometry",
    "random_similarity", "NotFound", "find_norm_vector", "random_vector_with_norm",
]
