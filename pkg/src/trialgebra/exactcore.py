"""Exact scalar fields and dense linear algebra over them.

Two fields are supported: prime fields F_p (p odd) and the rationals.  Field
objects are runtime values, so computations over F_3, F_5 and Q can coexist in
one process.  Matrices and vectors are numpy arrays whose dtype is chosen by the
field: ``int64`` residues for small primes, ``object`` arrays of Python ints for
large primes and of ``Fraction`` for Q.  Nothing here ever touches a float.

All elimination uses deterministic pivoting (first nonzero entry in column
order), so kernels and echelon forms are reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as _fold

import numpy as np

from .errors import FieldMismatch, SingularMatrix

_INT64_PRIME_BOUND = 4096


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _parse_text(text: str) -> Fraction:
    text = text.strip().replace("−", "-")
    return Fraction(text)


class Field:
    """Common interface of :class:`FiniteField` and :class:`Rationals`."""

    dtype: object
    name: str

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __reduce__(self):
        return (parse_field, (self.name,))

    # construction helpers

    def zeros(self, shape) -> np.ndarray:
        if self.dtype is object:
            out = np.empty(shape, dtype=object)
            out.fill(self.zero)
            return out
        return np.zeros(shape, dtype=self.dtype)

    def identity(self, n: int = 8) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def scalar_matrix(self, value, n: int = 8) -> np.ndarray:
        out = self.zeros((n, n))
        value = self(value)
        for i in range(n):
            out[i, i] = value
        return out

    def basis_vector(self, i: int, n: int = 8) -> np.ndarray:
        out = self.zeros(n)
        out[i] = self.one
        return out

    # arithmetic on arrays

    def matmul(self, a, b):
        return self.reduce(np.matmul(a, b))

    def einsum(self, spec: str, *operands):
        return self.reduce(np.einsum(spec, *operands, optimize=True))

    def scale(self, value, a):
        return self.reduce(a * self(value))

    def div(self, x, y):
        return self.reduce(x * self.inv(y))

    def is_zero_array(self, a) -> bool:
        return not np.any(a != 0)

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(np.asarray(a), np.asarray(b)))

    def to_str(self, x) -> str:
        raise NotImplementedError

    def from_str(self, text: str):
        return self(_parse_text(text))

    def serialize(self, a):
        """Nested lists of strings for an array, a string for a scalar."""
        if isinstance(a, np.ndarray):
            return [self.serialize(x) for x in a]
        return self.to_str(a)

    def deserialize(self, data):
        return self.array(np.array(_map_nested(data, self.from_str), dtype=object))


def _map_nested(data, fn):
    if isinstance(data, (list, tuple)):
        return [_map_nested(x, fn) for x in data]
    if isinstance(data, str):
        return fn(data)
    return fn(str(data)) if isinstance(data, Fraction) else fn(str(int(data)))


class FiniteField(Field):
    """The prime field F_p for an odd prime p."""

    def __init__(self, p: int):
        p = int(p)
        if p == 2:
            raise ValueError("characteristic 2 is excluded")
        if not _is_prime(p):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.name = f"fp:{p}"
        self.dtype = np.int64 if p < _INT64_PRIME_BOUND else object
        self.zero = 0
        self.one = 1
        self.characteristic = p

    def __call__(self, value) -> int:
        if isinstance(value, str):
            value = _parse_text(value)
        if isinstance(value, Fraction):
            num, den = value.numerator % self.p, value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype.kind in "iu":
            if self.dtype is object:
                return np.vectorize(lambda x: int(x) % self.p, otypes=[object])(arr)
            return arr.astype(np.int64) % self.p
        conv = np.vectorize(self.__call__, otypes=[object])(arr.astype(object))
        return conv if self.dtype is object else conv.astype(np.int64)

    def reduce(self, a):
        return a % self.p

    def inv(self, x) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def neg(self, x) -> int:
        return (-int(x)) % self.p

    def is_square(self, x) -> bool:
        x = int(x) % self.p
        return x == 0 or pow(x, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        """Canonical square root (the smaller residue), or None."""
        x = int(x) % self.p
        if x == 0:
            return 0
        if not self.is_square(x):
            return None
        p = self.p
        if p % 4 == 3:
            r = pow(x, (p + 1) // 4, p)
        else:
            r = _tonelli_shanks(x, p)
        return min(r, p - r)

    def elements(self):
        return range(self.p)

    def nonzero_elements(self):
        return range(1, self.p)

    def random_element(self, rng, nonzero: bool = False) -> int:
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.p))

    def random_array(self, rng, shape) -> np.ndarray:
        return self.array(rng.integers(0, self.p, size=shape))

    def validate(self, a) -> None:
        a = np.asarray(a)
        if a.dtype.kind not in "iuO":
            raise FieldMismatch(f"array of dtype {a.dtype} is not over {self.name}")
        for x in a.flat:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise FieldMismatch(f"rational entry {x} is not a residue of {self.name}")
            if not 0 <= int(x) < self.p:
                raise FieldMismatch(f"entry {x} is not a reduced residue of {self.name}")

    def to_str(self, x) -> str:
        return str(int(x) % self.p)


def _tonelli_shanks(n: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _lcm_denominator(a: np.ndarray) -> int:
    dens = {x.denominator if isinstance(x, Fraction) else 1 for x in a.flat}
    return _fold(math.lcm, dens, 1)


def _to_int_array(a: np.ndarray, d: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for k, x in enumerate(flat_in):
        if isinstance(x, Fraction):
            flat_out[k] = x.numerator * (d // x.denominator)
        else:
            flat_out[k] = int(x) * d
    return out


_as_fraction = np.vectorize(Fraction, otypes=[object])


class Rationals(Field):
    """The field Q with arbitrary-precision ``Fraction`` entries."""

    def __init__(self):
        self.name = "q"
        self.dtype = object
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, str):
            return _parse_text(value)
        if isinstance(value, (np.integer,)):
            value = int(value)
        return Fraction(value)

    def array(self, data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype is np.dtype(object) and all(isinstance(x, Fraction) for x in arr.flat):
            return arr.copy()
        return np.vectorize(self.__call__, otypes=[object])(arr.astype(object))

    def reduce(self, a):
        return a

    def _clear(self, operands):
        ints, scale = [], 1
        for op in operands:
            op = np.asarray(op, dtype=object)
            d = _lcm_denominator(op)
            ints.append(_to_int_array(op, d))
            scale *= d
        return ints, scale

    def _restore(self, result, scale):
        if isinstance(result, np.ndarray):
            return _as_fraction(result, scale) if result.size else result
        return Fraction(result, scale)

    def matmul(self, a, b):
        (ia, ib), scale = self._clear([a, b])
        return self._restore(np.matmul(ia, ib), scale)

    def einsum(self, spec: str, *operands):
        ints, scale = self._clear(operands)
        return self._restore(np.einsum(spec, *ints, optimize=True), scale)

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def neg(self, x) -> Fraction:
        return -Fraction(x)

    def is_square(self, x) -> bool:
        return self.sqrt(x) is not None

    def sqrt(self, x):
        x = Fraction(x)
        if x < 0:
            return None
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
        return None

    def random_element(self, rng, nonzero: bool = False) -> Fraction:
        while True:
            x = Fraction(int(rng.integers(-3, 4)))
            if x or not nonzero:
                return x

    def random_array(self, rng, shape) -> np.ndarray:
        return self.array(rng.integers(-3, 4, size=shape))

    def validate(self, a) -> None:
        a = np.asarray(a)
        if a.dtype is not np.dtype(object):
            raise FieldMismatch(f"array of dtype {a.dtype} is not over Q")
        for x in a.flat:
            if not isinstance(x, (Fraction, int)):
                raise FieldMismatch(f"entry {x!r} is not rational")

    def to_str(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_field(spec: str) -> Field:
    """``"fp:<p>"`` or ``"q"``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rationals"):
        return Rationals()
    if spec.startswith("fp:"):
        return FiniteField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# elimination


def rref(field: Field, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of ``a`` (rows x cols)."""
    a = field.array(a) if not isinstance(a, np.ndarray) else a.copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = a.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(a[row:, col] != 0)
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            a[[row, k]] = a[[k, row]]
        a[row] = field.reduce(a[row] * field.inv(a[row, col]))
        others = np.flatnonzero(a[:, col] != 0)
        others = others[others != row]
        if others.size:
            a[others] = field.reduce(a[others] - np.outer(a[others, col], a[row]))
        pivots.append(col)
        row += 1
    return a[:row], pivots


def kernel(field: Field, a) -> np.ndarray:
    """Basis of the null space as the rows of a (k, n) array.

    The basis is the canonical one read off the reduced echelon form: the
    t-th vector has a one at the t-th free column and zeros at the others.
    """
    a = np.asarray(a)
    n = a.shape[1]
    r, pivots = rref(field, a)
    free = [c for c in range(n) if c not in pivots]
    basis = field.zeros((len(free), n))
    for t, fcol in enumerate(free):
        basis[t, fcol] = field.one
        for i, pcol in enumerate(pivots):
            basis[t, pcol] = field.neg(r[i, fcol])
    return basis


def rank(field: Field, a) -> int:
    return len(rref(field, np.asarray(a))[1])


def solve(field: Field, a, b):
    """A particular solution x of a x = b (free variables zero), or None."""
    a = np.asarray(a)
    b = np.asarray(b)
    vector = b.ndim == 1
    if vector:
        b = b.reshape(-1, 1)
    m, n = a.shape
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(field, aug)
    if any(p >= n for p in pivots):
        return None
    x = field.zeros((n, b.shape[1]))
    for i, pcol in enumerate(pivots):
        x[pcol] = r[i, n:]
    return x[:, 0] if vector else x


def det(field: Field, a):
    a = np.asarray(a).copy()
    n = a.shape[0]
    result = field.one
    for col in range(n):
        nz = np.flatnonzero(a[col:, col] != 0)
        if nz.size == 0:
            return field.zero
        k = col + int(nz[0])
        if k != col:
            a[[col, k]] = a[[k, col]]
            result = field.neg(result)
        piv = a[col, col]
        result = field.reduce(result * piv)
        below = a[col + 1:, col]
        if np.any(below != 0):
            factor = field.reduce(below * field.inv(piv))
            a[col + 1:] = field.reduce(a[col + 1:] - np.outer(factor, a[col]))
    return field.reduce(result)


def inverse(field: Field, a) -> np.ndarray:
    a = np.asarray(a)
    n = a.shape[0]
    r, pivots = rref(field, np.concatenate([a, field.identity(n)], axis=1))
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return r[:, n:]


@dataclass(frozen=True)
class MatSolveResult:
    """Outcome of :func:`mat_solve`.

    Exactly one of ``solutions`` and ``kernel_basis`` is set: solutions when
    the matrix is invertible, a null-space basis otherwise.
    """

    determinant: object
    solutions: list | None = None
    kernel_basis: list | None = None
    inverse: np.ndarray | None = None


def mat_solve(field: Field, m, targets=()) -> MatSolveResult:
    m = np.asarray(m)
    field.validate(m)
    for t in targets:
        field.validate(t)
    d = det(field, m)
    if d != 0:
        inv = inverse(field, m)
        return MatSolveResult(d, solutions=[field.matmul(inv, t) for t in targets], inverse=inv)
    return MatSolveResult(d, kernel_basis=list(kernel(field, m)))


def canonical_generator(field: Field, v: np.ndarray) -> np.ndarray:
    """Scale ``v`` so its first nonzero coordinate is one."""
    nz = np.flatnonzero(v != 0)
    if nz.size == 0:
        return v
    return field.reduce(v * field.inv(v[nz[0]]))
