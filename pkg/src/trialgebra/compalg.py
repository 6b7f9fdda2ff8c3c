"""Eight-dimensional algebras given by structure constants.

``gamma[i, j, k]`` is the coefficient of e_k in e_i e_j.  Left and right
multiplication operators act on column vectors: ``left(a) @ y == a*y`` and
``right(b) @ x == x*b``.  Isotopes follow x . y = f(x) g(y), so
``isotope(isotope(A, a, b), c, d) == isotope(A, a @ c, b @ d)``.

A :class:`CompositionAlgebra` is an :class:`Algebra` whose multiplicativity
n(xy) = lambda n(x) n(y) has been certified on the full polarization grid; the
certified multiplier and the unit (if any) are stored on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (FieldMismatch, MissingUnit, NoAnisotropicPair, NonInvertible,
                     NotAHomomorphism, NotComposition, NotFound, NoAnisotropicVector,
                     NotSquare, SingularMatrix)
from .exactcore import Field, inverse, solve
from .quadform import DIM, QuadraticForm, find_norm_vector, pfister3, similarity_multiplier


class Algebra:
    """A bilinear multiplication on (k^8, n)."""

    def __init__(self, form: QuadraticForm, gamma, construction: dict | None = None):
        self.form = form
        self.field: Field = form.field
        gamma = np.asarray(gamma)
        if gamma.shape != (DIM, DIM, DIM):
            raise ValueError(f"structure constants must be 8x8x8, got {gamma.shape}")
        self.gamma = self.field.array(gamma)
        self.construction = construction

    def __repr__(self) -> str:
        tag = self.construction["kind"] if self.construction else "structure constants"
        return f"{type(self).__name__}({tag} over {self.field.name})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Algebra) and self.form == other.form
                and self.field.equal(self.gamma, other.gamma))

    def __hash__(self) -> int:
        return hash((self.form, self.gamma.tobytes() if self.gamma.dtype != object
                     else tuple(map(str, self.gamma.flat))))

    def mul(self, x, y) -> np.ndarray:
        return self.field.einsum("i,j,ijk->k", x, y, self.gamma)

    def left(self, a) -> np.ndarray:
        return self.field.einsum("i,ijk->kj", a, self.gamma)

    def right(self, b) -> np.ndarray:
        return self.field.einsum("j,ijk->ki", b, self.gamma)

    @cached_property
    def right_basis(self) -> np.ndarray:
        """R_{e_j} stacked: ``right_basis[j] == right(e_j)``."""
        return np.ascontiguousarray(self.gamma.transpose(1, 2, 0))

    def to_json(self) -> dict:
        data = {"field": self.field.name, "form": self.form.to_json(),
                "gamma": self.field.serialize(self.gamma)}
        if self.construction is not None:
            data["construction"] = self.construction
        return data

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "Algebra":
        from .exactcore import parse_field
        fld = parse_field(data["field"])
        if field is not None and field != fld:
            raise FieldMismatch(f"algebra over {fld.name}, session over {field.name}")
        form = QuadraticForm.from_json(fld, data["form"])
        return Algebra(form, fld.deserialize(data["gamma"]), data.get("construction"))


class CompositionAlgebra(Algebra):
    """An algebra with certified multiplier; ``unit`` is None if non-unital."""

    def __init__(self, form, gamma, construction=None, *, multiplier=None, unit=None):
        super().__init__(form, gamma, construction)
        if multiplier is None:
            multiplier = check_composition(self)
        self.multiplier = multiplier
        self.unit = unit

    @classmethod
    def certify(cls, alg: Algebra) -> "CompositionAlgebra":
        if isinstance(alg, CompositionAlgebra):
            return alg
        lam = check_composition(alg)
        return cls(alg.form, alg.gamma, alg.construction, multiplier=lam, unit=unit_element(alg))

    @cached_property
    def unitalization(self):
        return unitalize(self)

    def to_json(self) -> dict:
        data = super().to_json()
        data["certificate"] = {"multiplier": self.field.to_str(self.multiplier)}
        return data


def _grid(field: Field) -> np.ndarray:
    rows = [field.basis_vector(i) for i in range(DIM)]
    for i in range(DIM):
        for j in range(i + 1, DIM):
            rows.append(field.reduce(field.basis_vector(i) + field.basis_vector(j)))
    return np.array(rows, dtype=field.dtype)


def check_composition(a: Algebra):
    """Certify n(xy) = lambda n(x) n(y) on the 36 x 36 grid; return lambda.

    The grid {e_i} u {e_i + e_j} determines a quadratic form, so a form that
    is quadratic in x and in y vanishes identically iff it vanishes there.
    """
    fld, q = a.field, a.form
    grid = _grid(fld)
    prods = fld.einsum("si,tj,ijk->stk", grid, grid, a.gamma)
    n_prod = fld.einsum("stk,kl,stl->st", prods, q.gram, prods)
    n_grid = q.norms(grid)
    outer = fld.reduce(np.outer(n_grid, n_grid))
    nz = np.argwhere(outer != 0)
    if nz.size == 0:
        raise NoAnisotropicPair("no anisotropic pair on the grid")
    s, t = nz[0]
    lam = fld.div(n_prod[s, t], outer[s, t])
    if lam == 0:
        raise NotComposition("multiplier is zero")
    if not fld.equal(n_prod, fld.scale(lam, outer)):
        raise NotComposition("n(xy) - lambda n(x) n(y) does not vanish on the grid")
    return lam


def unit_element(a: Algebra):
    """The unit e with L_e = R_e = Id, or None."""
    fld = a.field
    eqs_left = a.gamma.transpose(2, 1, 0).reshape(DIM * DIM, DIM)
    eqs_right = a.gamma.transpose(2, 0, 1).reshape(DIM * DIM, DIM)
    rhs = fld.identity(DIM).reshape(DIM * DIM)
    return solve(fld, np.concatenate([eqs_left, eqs_right]), np.concatenate([rhs, rhs]))


def cayley_dickson(field: Field, a, b, c) -> CompositionAlgebra:
    """Three doublings of k with (x, y)(u, v) = (xu + d v'y, vx + yu').

    Here ' is the conjugation (x, y)' = (x', -y) and d is the stage
    parameter a, b, c in turn.  The norm is pfister3(a, b, c) and the unit is e_1.
    """
    a, b, c = field(a), field(b), field(c)
    params = [a, b, c]

    def conj(x):
        if len(x) == 1:
            return x
        h = len(x) // 2
        return conj(x[:h]) + [field.neg(t) for t in x[h:]]

    def mul(x, y):
        if len(x) == 1:
            return [field.reduce(x[0] * y[0])]
        h = len(x) // 2
        delta = params[h.bit_length() - 1]
        x1, x2, y1, y2 = x[:h], x[h:], y[:h], y[h:]
        first = [field.reduce(s + delta * t) for s, t in zip(mul(x1, y1), mul(conj(y2), x2))]
        second = [field.reduce(s + t) for s, t in zip(mul(y2, x1), mul(x2, conj(y1)))]
        return first + second

    gamma = field.zeros((DIM, DIM, DIM))
    basis = [[field.one if t == i else field.zero for t in range(DIM)] for i in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            gamma[i, j] = mul(basis[i], basis[j])
    form = pfister3(field, a, b, c)
    construction = {"kind": "cayley_dickson", "params": [field.to_str(p) for p in params]}
    alg = Algebra(form, gamma, construction)
    return CompositionAlgebra(form, alg.gamma, construction, multiplier=check_composition(alg),
                              unit=field.basis_vector(0))


def isotope(a: Algebra, f, g) -> Algebra:
    """The isotope A_{f,g}: x . y = f(x) g(y)."""
    fld = a.field
    for m in (f, g):
        try:
            inverse(fld, m)
        except SingularMatrix as exc:
            raise SingularMatrix("isotope maps must be invertible") from exc
    return Algebra(a.form, fld.einsum("ai,bj,abk->ijk", f, g, a.gamma))


def scalar_multiple(a: Algebra, lam) -> Algebra:
    fld = a.field
    lam = fld(lam)
    if lam == 0:
        raise ValueError("scalar must be nonzero")
    return Algebra(a.form, fld.scale(lam, a.gamma))


def pushforward(a: Algebra, h) -> Algebra:
    """The algebra on the same space making h: A -> h_*A an isomorphism."""
    fld = a.field
    h_inv = inverse(fld, h)
    return Algebra(a.form, fld.einsum("kc,ai,bj,abc->ijk", h, h_inv, h_inv, a.gamma))


def is_homomorphism(a: Algebra, b: Algebra, h) -> bool:
    """h(e_i e_j) == h(e_i) h(e_j) in B for all basis pairs."""
    fld = a.field
    lhs = fld.einsum("kc,ijc->ijk", h, a.gamma)
    rhs = fld.einsum("ai,bj,abk->ijk", h, h, b.gamma)
    return fld.equal(lhs, rhs)


def is_anti_homomorphism(a: Algebra, h) -> bool:
    """h(xy) == h(y) h(x) on basis pairs."""
    fld = a.field
    lhs = fld.einsum("kc,ijc->ijk", h, a.gamma)
    rhs = fld.einsum("aj,bi,abk->ijk", h, h, a.gamma)
    return fld.equal(lhs, rhs)


def is_symmetric(a: Algebra) -> bool:
    """b_n(xy, z) == b_n(x, yz) on all 512 basis triples."""
    fld = a.field
    lhs = fld.einsum("ijm,mk->ijk", a.gamma, a.form.bilinear)
    rhs = fld.einsum("im,jkm->ijk", a.form.bilinear, a.gamma)
    return fld.equal(lhs, rhs)


def unitalize(c: Algebra):
    """Kaplansky's construction: (H, f, g, e) with C = H_{f,g} and H unital.

    With v the first anisotropic vector of the deterministic sweep and
    u = n(v)^-1 v v, H = C_{R_u^-1, L_u^-1} and f = R_u, g = L_u are isometries.
    The unit of H is u u (computed in C), which equals u whenever u is
    idempotent, e.g. when C is already unital or para-Hurwitz.
    """
    c = CompositionAlgebra.certify(c)
    fld = c.field
    if c.multiplier != fld.one:
        raise ValueError("unitalize needs multiplier 1")
    try:
        v = find_norm_vector(c.form, None)
    except NotFound as exc:
        raise NoAnisotropicVector(str(exc)) from exc
    u = fld.scale(fld.inv(c.form(v)), c.mul(v, v))
    f, g = c.right(u), c.left(u)
    h_alg = isotope(c, inverse(fld, f), inverse(fld, g))
    unit = c.mul(u, u)
    assert fld.equal(unit_element(h_alg), unit)
    hurwitz = CompositionAlgebra(c.form, h_alg.gamma, multiplier=check_composition(h_alg), unit=unit)
    assert hurwitz.multiplier == fld.one
    return hurwitz, f, g, unit


def canonical_involution(h: Algebra) -> np.ndarray:
    """i(x) = b_n(x, e) e - x for the unit e (n(e) = 1)."""
    h = CompositionAlgebra.certify(h)
    if h.unit is None:
        raise MissingUnit("canonical involution needs a unital algebra")
    fld, e = h.field, h.unit
    if h.form(e) != fld.one:
        raise MissingUnit("unit must have norm one")
    be = fld.matmul(h.form.bilinear, e)
    return fld.reduce(np.outer(e, be) - fld.identity())


def para_hurwitz(h: Algebra) -> CompositionAlgebra:
    i = canonical_involution(h)
    out = CompositionAlgebra.certify(isotope(h, i, i))
    out.construction = {"kind": "para_hurwitz"}
    return out


def symmetric_decomposition(c: Algebra):
    """(S, f, g) with S para-Hurwitz, f, g isometries and C = S_{f,g}."""
    hurwitz, f0, g0, _ = CompositionAlgebra.certify(c).unitalization
    fld = hurwitz.field
    i = canonical_involution(hurwitz)
    s = para_hurwitz(hurwitz)
    return s, fld.matmul(i, f0), fld.matmul(i, g0)


def transport_isotope(h, a: Algebra, f, g, b: Algebra) -> Algebra:
    """B_{h f h^-1, h g h^-1}, with h: A_{f,g} -> result an isomorphism."""
    if not is_homomorphism(a, b, h):
        raise NotAHomomorphism("h is not an isomorphism A -> B")
    fld = a.field
    h_inv = inverse(fld, h)
    out = isotope(b, fld.matmul(fld.matmul(h, f), h_inv), fld.matmul(fld.matmul(h, g), h_inv))
    if not is_homomorphism(isotope(a, f, g), out, h):
        raise NotAHomomorphism("transported isotope failed the basis-product check")
    return out


@dataclass
class NormalizationResult:
    """Every intermediate object of the normalization chain."""

    a: np.ndarray
    b: np.ndarray
    h_prime: CompositionAlgebra
    unit_prime: np.ndarray
    multiplier: object
    i_prime: np.ndarray
    s_prime: CompositionAlgebra
    # only set when the multiplier is a square
    root: object = None
    t: CompositionAlgebra | None = None
    f: np.ndarray | None = None
    g: np.ndarray | None = None
    iso: np.ndarray | None = None


def normalization_chain(h: Algebra, big_f, big_g) -> NormalizationResult:
    """Turn (F, G) in GO(n)^2 into a symmetric T and isometries f, g.

    With e the unit of H, a = F^-1(e), b = G^-1(e): H' = H_{R_a, L_b} is unital
    with unit (ab)^-1 and multiplier lam = n(ab); i' is the reflection-type
    involution of H' fixing its unit, S' = H'_{i', i'} is symmetric with
    multiplier lam.  When lam = m^2, T = m^-1 S' is a symmetric composition
    algebra, m^-1 Id: T -> S' is an isomorphism, and f = F i R_a i',
    g = G i L_b i' are isometries.  A non-square lam raises NotSquare.
    """
    hurwitz = CompositionAlgebra.certify(h)
    fld, q = hurwitz.field, hurwitz.form
    if hurwitz.unit is None:
        raise MissingUnit("normalization needs a Hurwitz algebra")
    e = hurwitz.unit
    i = canonical_involution(hurwitz)
    a = fld.matmul(inverse(fld, big_f), e)
    b = fld.matmul(inverse(fld, big_g), e)
    if q(a) == 0 or q(b) == 0:
        raise NonInvertible("F^-1(e) or G^-1(e) is isotropic")
    r_a, l_b = hurwitz.right(a), hurwitz.left(b)
    hp_alg = isotope(hurwitz, r_a, l_b)
    ab = hurwitz.mul(a, b)
    lam = q(ab)
    unit_p = fld.scale(fld.inv(lam), fld.matmul(i, ab))
    hp = CompositionAlgebra(q, hp_alg.gamma, multiplier=check_composition(hp_alg),
                            unit=unit_element(hp_alg))
    # x -> lam b_n(x, e') e' - x; reduces to b_n(x, e') e' - x when lam = 1
    be = fld.matmul(q.bilinear, unit_p)
    i_p = fld.reduce(lam * np.outer(unit_p, be) - fld.identity())
    sp_alg = isotope(hp, i_p, i_p)
    sp = CompositionAlgebra(q, sp_alg.gamma, multiplier=check_composition(sp_alg))
    result = NormalizationResult(a, b, hp, unit_p, lam, i_p, sp)
    root = fld.sqrt(lam)
    if root is None:
        raise NotSquare(f"multiplier {fld.to_str(lam)} is not a square", partial=result)
    t_alg = scalar_multiple(sp, fld.inv(root))
    t = CompositionAlgebra(q, t_alg.gamma, multiplier=check_composition(t_alg))
    iso = fld.scalar_matrix(fld.inv(root))
    iso_inv = fld.scalar_matrix(root)
    f = fld.matmul(fld.matmul(iso_inv, big_f), fld.matmul(fld.matmul(i, r_a), fld.matmul(i_p, iso)))
    g = fld.matmul(fld.matmul(iso_inv, big_g), fld.matmul(fld.matmul(i, l_b), fld.matmul(i_p, iso)))
    result.root, result.t, result.f, result.g, result.iso = root, t, f, g, iso
    assert similarity_multiplier(q, f) == fld.one and similarity_multiplier(q, g) == fld.one
    return result


def zorn(field: Field) -> Algebra:
    """Zorn's vector-matrix split octonions on their own hyperbolic form.

    Coordinates (alpha, a1, a2, a3, b1, b2, b3, beta) for [[alpha, a], [b, beta]];
    the norm alpha beta - a.b has Gram entries 1/2 off the diagonal.
    """
    half = field.inv(2)

    def split(x):
        return x[0], x[1:4], x[4:7], x[7]

    def cross(u, v):
        return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]

    def mul(x, y):
        al, a, b, be = split(x)
        al2, a2, b2, be2 = split(y)
        dot_ab2 = sum(s * t for s, t in zip(a, b2))
        dot_ba2 = sum(s * t for s, t in zip(b, a2))
        c1 = [al * s + be2 * t - u for s, t, u in zip(a2, a, cross(b, b2))]
        c2 = [al2 * s + be * t + u for s, t, u in zip(b, b2, cross(a, a2))]
        return [al * al2 + dot_ab2] + c1 + c2 + [be * be2 + dot_ba2]

    gamma = field.zeros((DIM, DIM, DIM))
    basis = [[1 if t == i else 0 for t in range(DIM)] for i in range(DIM)]
    for i in range(DIM):
        for j in range(DIM):
            gamma[i, j] = field.array(np.array(mul(basis[i], basis[j]), dtype=object))
    gram = field.zeros((DIM, DIM))
    gram[0, 7] = gram[7, 0] = half
    for t in range(3):
        gram[1 + t, 4 + t] = gram[4 + t, 1 + t] = field.neg(half)
    return Algebra(QuadraticForm(field, gram), gamma, {"kind": "zorn"})
