"""Quadratic forms on k^8: 3-fold Pfister forms, polarization, similarities.

Conventions: n(x) = x^T M x for a symmetric Gram matrix M, and the polar form
is b_n(x, y) = n(x+y) - n(x) - n(y) = x^T B y with B = 2M.  Matrices act on
column vectors.  The Pfister form <<a,b,c>> is <1,-a> (x) <1,-b> (x) <1,-c>,
i.e. diag(1, -a, -b, ab, -c, ac, bc, -abc), which is exactly the norm of the
Cayley-Dickson algebra with parameters (a, b, c) built in ``compalg``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import NotASimilarity, NotFound, FieldMismatch
from .exactcore import Field, det, inverse, kernel

DIM = 8


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    field: Field
    gram: np.ndarray
    params: tuple | None = None
    bilinear: np.ndarray = dc_field(init=False, repr=False)
    bilinear_inv: np.ndarray = dc_field(init=False, repr=False)

    def __post_init__(self):
        f = self.field
        gram = f.array(self.gram)
        if not f.equal(gram, gram.T):
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)
        b = f.reduce(2 * gram)
        if det(f, b) == 0:
            raise ValueError("quadratic form is degenerate")
        object.__setattr__(self, "bilinear", b)
        object.__setattr__(self, "bilinear_inv", inverse(f, b))

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadraticForm) and self.field == other.field
                and self.field.equal(self.gram, other.gram))

    def __hash__(self) -> int:
        return hash((self.field, tuple(str(x) for x in self.gram.flat)))

    def __call__(self, x):
        return eval_form(self, x)

    def polar(self, x, y):
        return eval_form(self, x, y)

    def norms(self, xs: np.ndarray) -> np.ndarray:
        """n evaluated on each row of ``xs``."""
        return self.field.einsum("si,ij,sj->s", xs, self.gram, xs)

    def to_json(self) -> dict:
        if self.params is not None:
            return {"kind": "pfister3", "params": [self.field.to_str(p) for p in self.params]}
        return {"kind": "gram", "matrix": self.field.serialize(self.gram)}

    @classmethod
    def from_json(cls, field: Field, data: dict) -> "QuadraticForm":
        if data["kind"] == "pfister3":
            return pfister3(field, *[field.from_str(str(p)) for p in data["params"]])
        if data["kind"] == "gram":
            return cls(field, field.deserialize(data["matrix"]))
        raise ValueError(f"unknown form kind {data['kind']!r}")


def pfister3(field: Field, a, b, c) -> QuadraticForm:
    a, b, c = field(a), field(b), field(c)
    if a == 0 or b == 0 or c == 0:
        raise ValueError("Pfister parameters must be nonzero")
    diag = [1, -a, -b, a * b, -c, a * c, b * c, -a * b * c]
    gram = field.zeros((DIM, DIM))
    for i, d in enumerate(diag):
        gram[i, i] = field.reduce(field(d))
    return QuadraticForm(field, gram, params=(a, b, c))


def eval_form(q: QuadraticForm, x, y=None):
    """n(x), or the polar form b_n(x, y) when ``y`` is given."""
    f = q.field
    if y is None:
        return f.reduce(x @ f.reduce(q.gram @ x))
    return f.reduce(x @ f.reduce(q.bilinear @ y))


def _check_field(q: QuadraticForm, m: np.ndarray) -> None:
    if q.field.dtype is object:
        return
    if np.asarray(m).dtype is np.dtype(object):
        raise FieldMismatch(f"object matrix passed to a form over {q.field.name}")


def similarity_multiplier(q: QuadraticForm, f_mat):
    """mu(f) with f^T B f = mu B; raises NotASimilarity otherwise."""
    fld = q.field
    _check_field(q, f_mat)
    t = fld.matmul(fld.matmul(f_mat.T, q.bilinear), f_mat)
    i, j = np.argwhere(q.bilinear != 0)[0]
    mu = fld.div(t[i, j], q.bilinear[i, j])
    if mu == 0 or not fld.equal(t, fld.scale(mu, q.bilinear)):
        raise NotASimilarity("f^T B f is not a nonzero multiple of B")
    return mu


def is_proper(q: QuadraticForm, f_mat, mu=None) -> int:
    """Sign of a similarity: +1 iff det f = mu^4 (in dimension 8)."""
    fld = q.field
    if mu is None:
        mu = similarity_multiplier(q, f_mat)
    d = det(fld, f_mat)
    m4 = fld.reduce(fld.reduce(mu * mu) * fld.reduce(mu * mu))
    if d == m4:
        return 1
    if d == fld.neg(m4):
        return -1
    raise AssertionError("determinant of a similarity must be +-mu^4")


def adjoint(q: QuadraticForm, f_mat) -> np.ndarray:
    """ad(f) = B^-1 f^T B, the adjoint with respect to b_n."""
    fld = q.field
    return fld.matmul(fld.matmul(q.bilinear_inv, f_mat.T), q.bilinear)


def orthogonal_complement(q: QuadraticForm, vectors, within=None) -> np.ndarray:
    """Rows spanning {x in span(within) : b_n(x, v) = 0 for all v in vectors}.

    ``within`` defaults to the whole space; rows of the result are vectors
    expressed in standard coordinates.
    """
    fld = q.field
    basis = fld.identity(DIM) if within is None else np.asarray(within)
    vectors = np.asarray(vectors).reshape(-1, DIM)
    if vectors.shape[0] == 0:
        return basis
    # b_n(sum_t c_t w_t, v) = 0 for all v, as a linear system in c
    system = fld.einsum("ti,ij,sj->st", basis, q.bilinear, vectors)
    coeffs = kernel(fld, system)
    return fld.matmul(coeffs, basis) if coeffs.shape[0] else fld.zeros((0, DIM))


def _ratio_root(fld: Field, target, value):
    """lambda with lambda^2 * value = target, or None."""
    if value == 0:
        return None
    return fld.sqrt(fld.div(target, value))


def _candidate_batches(fld: Field, basis: np.ndarray, budget):
    """Deterministic candidate vectors from span(basis), in batches.

    Order: basis vectors; pair sums w_i + l w_j; then a full enumeration of
    coefficient vectors (finite fields) or small integer combinations of
    growing height (Q).
    """
    dim = basis.shape[0]
    yield basis
    if dim >= 2:
        scalars = list(fld.nonzero_elements()) if hasattr(fld, "p") else [fld(s) for s in (1, -1, 2, -2)]
        pairs = []
        for i, j in itertools.combinations(range(dim), 2):
            for lam in scalars:
                pairs.append(fld.reduce(basis[i] + lam * basis[j]))
        if pairs:
            yield np.array(pairs, dtype=basis.dtype)
    if hasattr(fld, "p"):
        p = fld.p
        total = p ** dim
        chunk = 4096
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            digits = np.empty((idx.size, dim), dtype=np.int64)
            rest = idx.copy()
            for d in range(dim - 1, -1, -1):
                digits[:, d] = rest % p
                rest //= p
            coeffs = fld.array(digits)
            yield fld.matmul(coeffs, basis)
    else:
        height = 1
        while True:
            rng = range(-height, height + 1)
            batch = [c for c in itertools.product(rng, repeat=dim) if max(map(abs, c)) == height]
            yield fld.matmul(fld.array(np.array(batch, dtype=object)), basis)
            height += 1
            if budget is not None and (2 * height + 1) ** dim > 50 * budget:
                return


def find_norm_vector(q: QuadraticForm, target=None, budget=None, within=None) -> np.ndarray:
    """A vector w with n(w) = target, searched in span(within).

    ``target=None`` asks for any anisotropic vector.  Candidates are swept in
    a fixed order and rescaled when target/n(v) is a square, so the answer is
    deterministic.  Over F_p the sweep ends in a full enumeration; over Q it is
    a bounded search and ``NotFound`` (raised after ``budget`` candidates,
    default 20000) says nothing about existence.
    """
    fld = q.field
    basis = fld.identity(DIM) if within is None else np.asarray(within)
    if basis.shape[0] == 0:
        raise NotFound("empty search space")
    if target is not None:
        target = fld(target)
        if target == 0:
            raise ValueError("target must be nonzero")
    if budget is None and not hasattr(fld, "p"):
        budget = 20000
    seen = 0
    exact_sweep = hasattr(fld, "p")
    for batch in _candidate_batches(fld, basis, budget):
        norms = q.norms(batch)
        for v, s in zip(batch, norms):
            if s == 0:
                if target is not None and not exact_sweep and not fld.is_zero_array(v):
                    w = _through_isotropic(q, v, target, basis)
                    if w is not None:
                        return w
                continue
            if target is None:
                return v
            lam = _ratio_root(fld, target, s)
            if lam is not None:
                return fld.reduce(v * lam)
        seen += batch.shape[0]
        if budget is not None and seen >= budget:
            break
    raise NotFound(f"no vector of norm {target} found after {seen} candidates")


def _through_isotropic(q: QuadraticForm, w, target, basis):
    """z + (target - n(z)) w, with z in span(basis) scaled so that b(w, z) = 1."""
    fld = q.field
    for z in basis:
        pairing = q.polar(w, z)
        if pairing != 0:
            z = fld.scale(fld.inv(pairing), z)
            return fld.reduce(z + (target - q(z)) * w)
    return None


def random_vector_with_norm(q: QuadraticForm, target, rng, within=None, attempts: int = 10000):
    """Random w in span(within) with n(w) = target (rescaling allowed)."""
    fld = q.field
    basis = fld.identity(DIM) if within is None else np.asarray(within)
    target = fld(target)
    for _ in range(attempts):
        v = fld.matmul(fld.random_array(rng, basis.shape[0]), basis)
        lam = _ratio_root(fld, target, q(v))
        if lam is not None:
            return fld.reduce(v * lam)
    raise NotFound("random norm search exhausted")


def diagonalize(q: QuadraticForm) -> tuple[np.ndarray, np.ndarray]:
    """An orthogonal basis (columns of P) and the diagonal entries n(P e_i)."""
    fld = q.field
    vecs = []
    space = fld.identity(DIM)
    while len(vecs) < DIM:
        v = find_norm_vector(q, None, within=space)
        vecs.append(v)
        space = orthogonal_complement(q, np.array(vecs), within=None)
    p = np.array(vecs, dtype=fld.dtype).T
    return p, np.array([q(v) for v in vecs], dtype=fld.dtype)


def isometry_between(source: QuadraticForm, target: QuadraticForm, budget=None) -> np.ndarray:
    """A linear map g with n_target(g x) = n_source(x).

    Built by matching an orthogonal basis of the source vector by vector
    inside successive orthogonal complements of the target.  Over F_p this
    succeeds whenever the forms are isometric; over Q it is a bounded search.
    """
    fld = source.field
    if target.field != fld:
        raise FieldMismatch("forms over different fields")
    p_src, diag = diagonalize(source)
    images = []
    space = fld.identity(DIM)
    for k in range(DIM):
        w = find_norm_vector(target, diag[k], budget=budget, within=space)
        images.append(w)
        space = orthogonal_complement(target, np.array(images))
    w_mat = np.array(images, dtype=fld.dtype).T
    return fld.matmul(w_mat, inverse(fld, p_src))
