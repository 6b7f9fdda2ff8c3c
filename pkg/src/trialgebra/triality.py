"""Triality components and automorphisms of PGO+(n) in normal form.

For a proper similarity h of a composition algebra C there are proper
similarities h1, h2, unique up to inverse scalars, with h(xy) = h1(x) h2(y).
In a unital algebra H with unit e this forces h1 = R_b^-1 h with b = h2(e),
and then h R_y h^-1 R_b = R_{h2(y)} for every y.  An operator M lies in
span{R_c} exactly when M = R_{M e}, so the condition
    h R_y h^-1 R_b - R_{h R_y h^-1 b} = 0      (all basis y)
is linear in b.  Its kernel is one-dimensional for proper h and zero for
improper h.  Non-unital algebras are reduced to their unital isotope.

Automorphisms of PGO+(n) are written kappa_[f] o rho^r with rho the first
triality map of a fixed para-Hurwitz algebra S0 (see :class:`TrialityBase`).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .compalg import (Algebra, CompositionAlgebra, canonical_involution, cayley_dickson,
                      is_homomorphism, para_hurwitz, symmetric_decomposition)
from .errors import AlignmentNotFound, Degenerate, NoSolution, NotFound
from .exactcore import Field, canonical_generator, inverse, kernel
from .quadform import (DIM, QuadraticForm, find_norm_vector, orthogonal_complement,
                       random_vector_with_norm, similarity_multiplier)
from .simgroup import (ProjSimilarity, Similarity, proj, proj_compose, reflection_matrix,
                       proj_identity, proj_invert)


@dataclass
class TrialityPair:
    h1: Similarity
    h2: Similarity
    source: Similarity
    algebra: Algebra
    b: np.ndarray = dc_field(repr=False, default=None)


def _as_similarity(q: QuadraticForm, h) -> Similarity:
    if isinstance(h, Similarity):
        return h
    if isinstance(h, ProjSimilarity):
        return Similarity.of(q, h.rep)
    return Similarity.of(q, h)


def triality_kernel(hurwitz: CompositionAlgebra, h_mat) -> np.ndarray:
    """Basis (rows) of the b-solutions of the linear triality system in H."""
    fld = hurwitz.field
    h_inv = inverse(fld, h_mat)
    rb = hurwitz.right_basis  # rb[j] = R_{e_j}
    # a[y] = h R_y h^-1
    a = fld.einsum("km,ymn,nl->ykl", h_mat, rb, h_inv)
    term1 = fld.einsum("ykm,jmi->yjki", a, rb)
    term2 = fld.einsum("ymj,mki->yjki", a, rb)
    system = fld.reduce(term1 - term2).transpose(0, 2, 3, 1).reshape(DIM ** 3, DIM)
    return kernel(fld, system)


def _triality_unital(hurwitz: CompositionAlgebra, h_mat):
    fld = hurwitz.field
    ker = triality_kernel(hurwitz, h_mat)
    if ker.shape[0] == 0:
        raise NoSolution("triality system has only the zero solution (h is improper)")
    if ker.shape[0] > 1:
        raise Degenerate(f"triality kernel has dimension {ker.shape[0]}")
    b = canonical_generator(fld, ker[0])
    h1 = fld.matmul(inverse(fld, hurwitz.right(b)), h_mat)
    h2 = fld.matmul(h_mat, hurwitz.left(fld.matmul(inverse(fld, h_mat), b)))
    return h1, h2, b


def triality_components(c: Algebra, h) -> TrialityPair:
    """(h1, h2) with h(xy) = h1(x) h2(y) in C, verified on all basis pairs."""
    c = CompositionAlgebra.certify(c)
    fld, q = c.field, c.form
    src = _as_similarity(q, h)
    if c.unit is not None:
        hurwitz, f, g = c, None, None
    else:
        hurwitz, f, g, _ = c.unitalization
    h1, h2, b = _triality_unital(hurwitz, src.mat)
    if f is not None:
        h1 = fld.matmul(fld.matmul(inverse(fld, f), h1), f)
        h2 = fld.matmul(fld.matmul(inverse(fld, g), h2), g)
    lhs = fld.einsum("kc,ijc->ijk", src.mat, c.gamma)
    rhs = fld.einsum("ai,bj,abk->ijk", h1, h2, c.gamma)
    assert fld.equal(lhs, rhs), "triality identity failed on basis pairs"
    s1, s2 = Similarity.of(q, h1), Similarity.of(q, h2)
    assert s1.sign == 1 and s2.sign == 1, "triality components must be proper"
    assert fld.reduce(s1.mu * s2.mu) == src.mu
    return TrialityPair(s1, s2, src, c, b)


def rho(c: Algebra, r: int, h) -> ProjSimilarity:
    """rho_r^C([h]) = [h_r] for r in {1, 2}."""
    if r not in (1, 2):
        raise ValueError("r must be 1 or 2")
    pair = triality_components(c, h)
    return proj(c.form, pair.h1 if r == 1 else pair.h2)


@dataclass(frozen=True, eq=False)
class MarkedAuto:
    """kappa_[f] o rho^r for the base para-Hurwitz algebra S0; r is taken mod 3."""

    r: int
    coset: ProjSimilarity

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % 3)

    def __eq__(self, other) -> bool:
        return isinstance(other, MarkedAuto) and self.r == other.r and self.coset == other.coset

    def __hash__(self) -> int:
        return hash((self.r, self.coset))

    @property
    def s3_order(self) -> int:
        """Order of the image in Aut/Inn = S3."""
        if self.r == 0:
            return 1 if self.coset.sign == 1 else 2
        return 3 if self.coset.sign == 1 else 2

    @property
    def label(self) -> int:
        return self.r

    def to_json(self, field: Field) -> dict:
        return {"r": self.r, "coset": self.coset.to_json(field), "base": "session"}


def _cd_generators(h: CompositionAlgebra):
    """The doubling generators of a Cayley-Dickson algebra built here."""
    fld = h.field
    return [fld.basis_vector(1), fld.basis_vector(2), fld.basis_vector(4)]


def _cd_basis(h: CompositionAlgebra, gens) -> np.ndarray:
    """Columns e, j1, j2, j1j2, j3, j1j3, j2j3, (j1j2)j3."""
    j1, j2, j3 = gens
    j12 = h.mul(j1, j2)
    cols = [h.unit, j1, j2, j12, j3, h.mul(j1, j3), h.mul(j2, j3), h.mul(j12, j3)]
    return np.array(cols, dtype=h.field.dtype).T


def hurwitz_align(h1: Algebra, h0: Algebra, budget=None, rng=None) -> np.ndarray:
    """An isomorphism H1 -> H0 of Hurwitz algebras on the same form.

    Doubling generators of H1 with the same norms as those of H0 are found in
    successive orthogonal complements of the subalgebras they generate; the
    map sending one doubling basis to the other is an isomorphism.  With
    ``rng`` the generators are drawn at random, giving random isomorphisms.
    """
    h1 = CompositionAlgebra.certify(h1)
    h0 = CompositionAlgebra.certify(h0)
    fld, q = h0.field, h0.form
    if h1.unit is None or h0.unit is None:
        raise ValueError("hurwitz_align needs unital algebras")
    if h0.construction and h0.construction.get("kind") == "cayley_dickson":
        gens0 = _cd_generators(h0)
    else:
        gens0 = _find_generators(h0, [None, None, None], budget, None)
    norms = [q(g) for g in gens0]
    if rng is None and not hasattr(fld, "p"):
        # norm searches over Q are unreliable; extend isometries instead
        gens1 = _witt_generators(h1, h0, gens0)
    else:
        gens1 = _find_generators(h1, norms, budget, rng)
    b0, b1 = _cd_basis(h0, gens0), _cd_basis(h1, gens1)
    phi = fld.matmul(b0, inverse(fld, b1))
    if not is_homomorphism(h1, h0, phi) or similarity_multiplier(q, phi) != fld.one:
        raise AlignmentNotFound("doubling bases did not give an isomorphism")
    return phi


def _find_generators(h: CompositionAlgebra, norms, budget, rng):
    fld, q = h.field, h.form
    gens = []
    span = [h.unit]
    for target in norms:
        space = orthogonal_complement(q, np.array(span, dtype=fld.dtype))
        try:
            if rng is not None:
                v = random_vector_with_norm(q, target if target is not None else 1, rng, within=space)
            else:
                v = find_norm_vector(q, target, budget=budget, within=space)
        except NotFound as exc:
            raise AlignmentNotFound(str(exc)) from exc
        gens.append(v)
        span = span + [fld.reduce(h.mul(s, v)) for s in span]
    return gens


def _witt_extension(q, sources, targets) -> np.ndarray:
    """An isometry psi with psi(u_i) = v_i, for orthogonal anisotropic lists of equal norms."""
    fld = q.field
    psi = fld.identity(DIM)
    for u, v in zip(sources, targets):
        x = fld.matmul(psi, u)
        if fld.equal(x, v):
            continue
        d = fld.reduce(x - v)
        if q(d) != 0:
            step = reflection_matrix(q, d)
        else:
            # n(x - v) + n(x + v) = 4 n(v) != 0
            step = fld.matmul(reflection_matrix(q, v), reflection_matrix(q, fld.reduce(x + v)))
        psi = fld.matmul(step, psi)
    return psi


def _witt_generators(h1: CompositionAlgebra, h0: CompositionAlgebra, gens0):
    """Doubling generators of H1 with the norms of gens0, by exact Witt extension.

    The partial doubling bases of H1 and H0 are orthogonal with matching
    norms; an isometry psi carrying the first onto the second maps the
    complement of one onto the complement of the other, so psi^-1 of the next
    generator of H0 is a valid next generator of H1.
    """
    fld, q = h0.field, h0.form
    gens1 = []
    span1, span0 = [h1.unit], [h0.unit]
    for g0 in gens0:
        psi = _witt_extension(q, span1, span0)
        v = fld.matmul(inverse(fld, psi), g0)
        gens1.append(v)
        span1 = span1 + [fld.reduce(h1.mul(s, v)) for s in span1]
        span0 = span0 + [fld.reduce(h0.mul(s, g0)) for s in span0]
    return gens1


class TrialityBase:
    """Session-fixed data: the form n, H0 = cayley_dickson(a, b, c), S0, i0.

    rho = rho_1^{S0}.  The reference relation rho^r kappa_[i0] = kappa_[i0] rho^-r
    holds because i0 is an anti-automorphism of S0 (so rho_1(i0 x i0) =
    i0 rho_2(x) i0); it lets every improper class be written [i0][p] with p
    proper.
    """

    def __init__(self, field: Field, params):
        self.field = field
        self.params = tuple(field(p) for p in params)
        self.h0 = cayley_dickson(field, *self.params)
        self.form = self.h0.form
        self.i0 = canonical_involution(self.h0)
        self.s0 = para_hurwitz(self.h0)
        self.i0_class = proj(self.form, self.i0)
        self.identity = proj_identity(self.form)
        self._rho_cache: dict = {}

    # projective helpers
    def proj(self, f) -> ProjSimilarity:
        return proj(self.form, f)

    def pcompose(self, *classes) -> ProjSimilarity:
        return proj_compose(self.form, *classes)

    def pinv(self, a: ProjSimilarity) -> ProjSimilarity:
        return proj_invert(self.form, a)

    def rho_power(self, r: int, x: ProjSimilarity) -> ProjSimilarity:
        """(rho_1^{S0})^r([x]) for proper x; rho^2 = rho_2^{S0}."""
        r %= 3
        if r == 0:
            return x
        if x.sign != 1:
            raise NoSolution("rho is only defined on proper classes")
        if x not in self._rho_cache:
            pair = triality_components(self.s0, Similarity.of(self.form, x.rep))
            self._rho_cache[x] = (proj(self.form, pair.h1), proj(self.form, pair.h2))
        return self._rho_cache[x][r - 1]

    def marked(self, r: int, f) -> MarkedAuto:
        return MarkedAuto(r, f if isinstance(f, ProjSimilarity) else self.proj(f))

    def inner(self, f) -> MarkedAuto:
        return self.marked(0, f)

    def compose(self, a: MarkedAuto, b: MarkedAuto) -> MarkedAuto:
        """The normal form of a o b."""
        if b.coset.sign == 1:
            return MarkedAuto(a.r + b.r, self.pcompose(a.coset, self.rho_power(a.r, b.coset)))
        p = self.pcompose(self.i0_class, b.coset)
        tail = self.pcompose(a.coset, self.i0_class, self.rho_power(-a.r, p))
        return MarkedAuto(b.r - a.r, tail)

    def invert(self, a: MarkedAuto) -> MarkedAuto:
        # (kappa_f rho^r)^-1 = rho^-r kappa_f^-1
        return self.compose(MarkedAuto(-a.r, self.identity), self.inner(self.pinv(a.coset)))

    def conj(self, h, a: MarkedAuto) -> MarkedAuto:
        """kappa_[h] o a o kappa_[h]^-1; h may be improper."""
        h = h if isinstance(h, ProjSimilarity) else self.proj(h)
        return self.compose(self.compose(self.inner(h), a), self.inner(self.pinv(h)))

    def evaluate(self, a: MarkedAuto, x: ProjSimilarity) -> ProjSimilarity:
        """a([x]) = [f] rho^r([x]) [f]^-1 for proper x."""
        return self.pcompose(a.coset, self.rho_power(a.r, x), self.pinv(a.coset))

    def align(self, h: Algebra, budget=None) -> np.ndarray:
        """phi: H -> H0, the identity when H already is H0."""
        if h == self.h0:
            return self.field.identity()
        return hurwitz_align(h, self.h0, budget=budget)

    def marked_auto_of(self, c: Algebra, budget=None) -> tuple[MarkedAuto, MarkedAuto]:
        """(rho_1^C, rho_2^C) = (kappa_[f]^-1 rho_1^S0, kappa_[g]^-1 rho_2^S0) for C = S0_{f,g}.

        C is first decomposed as S_{f,g} with S the para-Hurwitz algebra of its
        unital isotope H; an isomorphism phi: H -> H0 carries C to
        C' = S0_{phi f phi^-1, phi g phi^-1}, and rho_r^C = kappa_[phi]^-1 rho_r^{C'} kappa_[phi].
        """
        fld = self.field
        c = CompositionAlgebra.certify(c)
        if c.form != self.form:
            raise ValueError("algebra does not live on the session form")
        hurwitz = c.unitalization[0]
        _, f, g = symmetric_decomposition(c)
        phi = self.align(hurwitz, budget)
        phi_inv = inverse(fld, phi)
        f_p = fld.matmul(fld.matmul(phi, f), phi_inv)
        g_p = fld.matmul(fld.matmul(phi, g), phi_inv)
        a1 = MarkedAuto(1, self.pinv(self.proj(f_p)))
        a2 = MarkedAuto(2, self.pinv(self.proj(g_p)))
        if self.field.equal(phi, fld.identity()):
            return a1, a2
        back = self.pinv(self.proj(phi))
        return self.conj(back, a1), self.conj(back, a2)


def conj_marked(base: TrialityBase, h, a: MarkedAuto) -> MarkedAuto:
    return base.conj(h, a)


def marked_auto_of(base: TrialityBase, c: Algebra, budget=None):
    return base.marked_auto_of(c, budget)


def brute_force_triality(c: Algebra, h) -> tuple[ProjSimilarity, ProjSimilarity]:
    """Independent oracle over small F_p: try every b in H, unital isotope of C.

    For each b with n(b) != 0 the candidate h1 = R_b^-1 h, h2 = h L_{h^-1 b}
    is tested directly against h(xy) = h1(x) h2(y).  Returns the unique
    projective pair; raises NoSolution if no b works.
    """
    c = CompositionAlgebra.certify(c)
    fld, q = c.field, c.form
    if not hasattr(fld, "p"):
        raise ValueError("brute force needs a finite field")
    src = _as_similarity(q, h)
    hurwitz, f, g, _ = c.unitalization
    p = fld.p
    idx = np.arange(p ** DIM, dtype=np.int64)
    cand = np.empty((idx.size, DIM), dtype=np.int64)
    rest = idx.copy()
    for d in range(DIM - 1, -1, -1):
        cand[:, d] = rest % p
        rest //= p
    cand = fld.array(cand)
    norms = q.norms(cand)
    h_inv = inverse(fld, src.mat)
    lhs = fld.einsum("kc,ijc->ijk", src.mat, hurwitz.gamma)
    inv_b = fld.matmul(cand, canonical_involution(hurwitz).T)
    # cheap filter on the pair (e_2, e_2), scaled by n(b):
    # (h(e2) i(b)) (h((h^-1 b) e2)) == n(b) h(e2 e2)
    e2 = fld.basis_vector(1)
    xs = fld.einsum("i,sj,ijk->sk", fld.matmul(src.mat, e2), inv_b, hurwitz.gamma)
    ws = fld.matmul(cand, h_inv.T)
    ys = fld.matmul(fld.einsum("si,j,ijk->sk", ws, e2, hurwitz.gamma), src.mat.T)
    prods = fld.einsum("si,sj,ijk->sk", xs, ys, hurwitz.gamma)
    target = fld.reduce(np.outer(norms, lhs[1, 1]))
    keep = np.flatnonzero((norms != 0) & np.all(prods == target, axis=1))
    found = []
    for s in keep:
        nb = norms[s]
        r_inv = fld.scale(fld.inv(nb), hurwitz.right(inv_b[s]))
        h1 = fld.matmul(r_inv, src.mat)
        h2 = fld.matmul(src.mat, hurwitz.left(ws[s]))
        rhs = fld.einsum("ai,bj,abk->ijk", h1, h2, hurwitz.gamma)
        if fld.equal(lhs, rhs):
            found.append((h1, h2))
    if not found:
        raise NoSolution("no b satisfies the triality identity")
    f_inv, g_inv = inverse(fld, f), inverse(fld, g)
    classes = {(proj(q, fld.matmul(fld.matmul(f_inv, a), f)),
                proj(q, fld.matmul(fld.matmul(g_inv, b2), g))) for a, b2 in found}
    assert len(classes) == 1, "brute force found several projective pairs"
    return classes.pop()
