"""The Clifford algebra C(V, n) and the centre test for properness.

Everything is computed in an orthogonal basis p_1..p_8 of (V, n) with
n(p_i) = d_i, so blades are bitmasks and products reduce to a sign and a
product of the d_i over shared generators.  Elements are dense coefficient
vectors of length 256 indexed by blade mask.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactcore import Field, inverse
from .quadform import DIM, QuadraticForm, diagonalize, similarity_multiplier

NBLADES = 1 << DIM
FULL = NBLADES - 1


def _reorder_sign(a: int, b: int) -> int:
    """Sign of moving the generators of blade b past those of blade a."""
    swaps = 0
    a >>= 1
    while a:
        swaps += bin(a & b).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


@dataclass(frozen=True, eq=False)
class CliffordElem:
    coeffs: np.ndarray

    def terms(self) -> dict:
        return {int(m): self.coeffs[m] for m in np.flatnonzero(self.coeffs != 0)}

    def is_even(self) -> bool:
        return all(bin(m).count("1") % 2 == 0 for m in self.terms())


class Clifford:
    """C(V, n) for a fixed form, with the diagonalizing change of basis."""

    def __init__(self, q: QuadraticForm):
        self.form = q
        self.field: Field = q.field
        fld = self.field
        self.basis, self.diag = diagonalize(q)
        self.basis_inv = inverse(fld, self.basis)
        masks = np.arange(NBLADES)
        self.xor = masks[:, None] ^ masks[None, :]
        coef = fld.zeros((NBLADES, NBLADES))
        for a in range(NBLADES):
            for b in range(NBLADES):
                c = fld.one if _reorder_sign(a, b) > 0 else fld.neg(fld.one)
                common = a & b
                for i in range(DIM):
                    if common >> i & 1:
                        c = fld.reduce(c * self.diag[i])
                coef[a, b] = c
        self.coef = coef
        self._centre = None

    def element(self, terms: dict) -> CliffordElem:
        arr = self.field.zeros(NBLADES)
        for m, c in terms.items():
            arr[m] = self.field(c)
        return CliffordElem(arr)

    def scalar(self, c) -> CliffordElem:
        return self.element({0: c})

    def blade(self, *indices: int) -> CliffordElem:
        """p_{i1} ... p_{ik} (0-based indices, any order)."""
        out = self.scalar(1)
        for i in indices:
            out = self.mul(out, self.element({1 << i: 1}))
        return out

    def vector(self, v) -> CliffordElem:
        """Embed a vector given in standard coordinates."""
        fld = self.field
        coords = fld.matmul(self.basis_inv, fld.array(v))
        return self.element({1 << i: coords[i] for i in range(DIM) if coords[i] != 0})

    def mul(self, x: CliffordElem, y: CliffordElem) -> CliffordElem:
        fld = self.field
        xi = np.flatnonzero(x.coeffs != 0)
        yi = np.flatnonzero(y.coeffs != 0)
        out = fld.zeros(NBLADES)
        if xi.size and yi.size:
            prod = fld.reduce(np.outer(x.coeffs[xi], y.coeffs[yi]))
            vals = fld.reduce(prod * self.coef[np.ix_(xi, yi)])
            np.add.at(out, self.xor[np.ix_(xi, yi)].ravel(), vals.ravel())
        return CliffordElem(fld.reduce(out))

    def add(self, x: CliffordElem, y: CliffordElem) -> CliffordElem:
        return CliffordElem(self.field.reduce(x.coeffs + y.coeffs))

    def equal(self, x: CliffordElem, y: CliffordElem) -> bool:
        return self.field.equal(x.coeffs, y.coeffs)

    def reversal(self, x: CliffordElem) -> CliffordElem:
        """The canonical involution: identity on V, reverses products."""
        fld = self.field
        out = x.coeffs.copy()
        for m in np.flatnonzero(out != 0):
            k = bin(int(m)).count("1")
            if (k * (k - 1) // 2) % 2:
                out[m] = fld.neg(out[m])
        return CliffordElem(out)

    def random_even(self, rng) -> CliffordElem:
        fld = self.field
        arr = fld.random_array(rng, NBLADES)
        odd = np.array([bin(m).count("1") % 2 for m in range(NBLADES)], dtype=bool)
        arr[odd] = fld.zero
        return CliffordElem(arr)

    def even_centre(self) -> list:
        """Basis {1, z} of the centre of C_0(V, n).

        The generators p_i p_j of C_0 are monomials, so commuting with them is
        a blade-by-blade condition: a blade B is central iff it commutes with
        every p_i p_j, and the centre is spanned by such blades.
        """
        if self._centre is None:
            gens = [(1 << i) | (1 << j) for i in range(DIM) for j in range(i + 1, DIM)]
            central = [m for m in range(NBLADES) if bin(m).count("1") % 2 == 0
                       and all(_reorder_sign(m, g) == _reorder_sign(g, m) for g in gens)]
            assert len(central) == 2, "centre of the even Clifford algebra must be 2-dimensional"
            self._centre = [self.element({m: 1}) for m in central]
        return self._centre

    def lift_even(self, f_mat, x: CliffordElem, mu=None) -> CliffordElem:
        """C_0(f)(x): p_{i1} ... p_{i2k} -> mu^-k f(p_{i1}) ... f(p_{i2k})."""
        fld = self.field
        if mu is None:
            mu = similarity_multiplier(self.form, f_mat)
        images = [self.vector(fld.matmul(f_mat, self.basis[:, i])) for i in range(DIM)]
        mu_inv = fld.inv(mu)
        out = self.scalar(0)
        for m, c in x.terms().items():
            if bin(m).count("1") % 2:
                raise ValueError("lift_even takes even elements")
            term = self.scalar(c)
            count = 0
            for i in range(DIM):
                if m >> i & 1:
                    term = self.mul(term, images[i])
                    count += 1
            factor = fld.one
            for _ in range(count // 2):
                factor = fld.reduce(factor * mu_inv)
            term = CliffordElem(fld.scale(factor, term.coeffs))
            out = self.add(out, term)
        return out

    def properness_via_centre(self, f_mat) -> int:
        """+1 if C_0(f) fixes the centre pointwise, -1 if it acts with order two."""
        z = self.even_centre()[1]
        image = self.lift_even(f_mat, z)
        if self.equal(image, z):
            return 1
        if self.equal(image, CliffordElem(self.field.reduce(-z.coeffs))):
            return -1
        raise AssertionError("C_0(f) must map the central element z to +-z")


def clifford_mul(cl: Clifford, x: CliffordElem, y: CliffordElem) -> CliffordElem:
    return cl.mul(x, y)


def properness_via_centre(q: QuadraticForm, f_mat, cl: Clifford | None = None) -> int:
    return (cl or Clifford(q)).properness_via_centre(f_mat)
