"""Exact dense linear algebra over Q and over prime fields.

Prime-field matrices are numpy int64 arrays kept reduced to [0, p).
Rational matrices are numpy object arrays of ``Fraction``.  All the heavy
routines live on :class:`Field` and take raw arrays; :class:`Mat` is a thin
tagged wrapper used at API boundaries where field mixing must be caught.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DimensionError, FieldMismatchError

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Q when ``p == 0``, otherwise F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p > 3_000_000_000:
            # products of two residues must fit comfortably in int64
            raise ValueError("prime too large for int64 arithmetic")
        self.p = p

    @staticmethod
    def parse(spec: str) -> "Field":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rational"):
            return QQ
        if spec.startswith("fp:"):
            return GF(int(spec[3:]))
        raise ValueError(f"unknown field spec {spec!r} (use 'q' or 'fp:<prime>')")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"

    @property
    def char(self) -> int:
        return self.p

    @property
    def dtype(self):
        return object if self.p == 0 else np.int64

    # -- scalars ---------------------------------------------------------
    def __call__(self, x):
        if self.p == 0:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        if self.p == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)

    def to_jsonable(self, x):
        if self.p == 0:
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x) % self.p

    # -- arrays ----------------------------------------------------------
    def array(self, data) -> np.ndarray:
        if self.p == 0:
            a = np.array(data, dtype=object)
            flat = a.reshape(-1)
            for k in range(flat.size):
                flat[k] = Fraction(flat[k])
            return a
        a = np.array(data, dtype=object)
        flat = a.reshape(-1)
        out = np.empty(flat.shape, dtype=np.int64)
        for k in range(flat.size):
            out[k] = self(flat[k])
        return out.reshape(a.shape)

    def zeros(self, shape) -> np.ndarray:
        if self.p == 0:
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one
        return a

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    def reduce(self, a):
        """Normalize after integer arithmetic (no-op over Q)."""
        if self.p == 0:
            return a
        return np.mod(a, self.p)

    def matmul(self, a, b):
        return self.reduce(np.dot(a, b))

    def tensordot(self, a, b, axes):
        return self.reduce(np.tensordot(a, b, axes=axes))

    def random(self, rng: np.random.Generator, shape, small: int = 3):
        """Random elements; over Q the entries are small integers."""
        if self.p == 0:
            ints = rng.integers(-small, small + 1, size=shape)
            return self.array(ints)
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    # -- elimination -----------------------------------------------------
    def rref(self, a) -> tuple[np.ndarray, list[int]]:
        a = np.array(a, dtype=self.dtype, copy=True)
        if a.ndim != 2:
            raise DimensionError("rref expects a matrix")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c] != 0)[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = self.reduce(a[r] * self.inv(a[r, c]))
            col = a[:, c].copy()
            col[r] = 0
            hit = np.nonzero(col != 0)[0]
            if hit.size:
                a[hit] = self.reduce(a[hit] - np.outer(col[hit], a[r]))
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, a) -> int:
        a = np.asarray(a)
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def row_basis(self, a) -> np.ndarray:
        """Rows of the rref spanning the row space (canonical)."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] == 0:
            return self.zeros((0, a.shape[-1] if a.ndim == 2 else 0))
        r, piv = self.rref(a)
        return r[: len(piv)]

    def solve(self, a, b):
        """One solution x of a x = b with free variables zero, or None."""
        a = np.asarray(a)
        b = np.asarray(b)
        vec = b.ndim == 1
        if vec:
            b = b.reshape(-1, 1)
        if a.shape[0] != b.shape[0]:
            raise DimensionError(f"row mismatch {a.shape} vs {b.shape}")
        n = a.shape[1]
        if a.shape[0] == 0:
            x = self.zeros((n, b.shape[1]))
            return x[:, 0] if vec else x
        aug = np.concatenate([np.asarray(a, dtype=self.dtype), np.asarray(b, dtype=self.dtype)], axis=1)
        r, piv = self.rref(aug)
        if piv and piv[-1] >= n:
            return None
        x = self.zeros((n, b.shape[1]))
        for i, c in enumerate(piv):
            x[c] = r[i, n:]
        return x[:, 0] if vec else x

    def kernel(self, a) -> np.ndarray:
        """Matrix whose columns are a basis of the right null space."""
        a = np.asarray(a)
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols)
        r, piv = self.rref(a)
        free = [c for c in range(cols) if c not in set(piv)]
        k = self.zeros((cols, len(free)))
        for j, f in enumerate(free):
            k[f, j] = self.one
            for i, c in enumerate(piv):
                k[c, j] = self.reduce(-r[i, f]) if self.p else -r[i, f]
        return k

    def left_kernel(self, a) -> np.ndarray:
        """Rows y with y a = 0."""
        return self.kernel(np.asarray(a).T).T

    def inverse(self, a) -> np.ndarray:
        a = np.asarray(a)
        n = a.shape[0]
        if a.shape != (n, n):
            raise DimensionError("inverse of non-square matrix")
        x = self.solve(a, self.eye(n))
        if x is None or self.rank(a) < n:
            raise ZeroDivisionError("singular matrix")
        return x

    def reduce_mod(self, vecs, basis, pivots):
        """Normal form of the rows of ``vecs`` modulo an rref row basis."""
        vecs = np.asarray(vecs)
        if len(pivots) == 0 or vecs.size == 0:
            return np.array(vecs, dtype=self.dtype, copy=True)
        return self.reduce(vecs - np.dot(vecs[..., pivots], basis))

    def in_span(self, basis, v) -> bool:
        basis = np.asarray(basis)
        if basis.shape[0] == 0:
            return self.is_zero(v)
        return self.rank(np.vstack([basis, np.asarray(v).reshape(1, -1)])) == self.rank(basis)


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Field:
    return Field(p)


DEFAULT_FIELD = GF(DEFAULT_PRIME)


@dataclass(frozen=True, eq=False)
class Mat:
    field: Field
    data: np.ndarray

    @classmethod
    def of(cls, field: Field, rows) -> "Mat":
        data = field.array(rows)
        if data.ndim == 1:
            data = data.reshape(1, -1) if data.size else data.reshape(0, 0)
        return cls(field, data)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.data.shape == other.data.shape and bool(np.all(self.data == other.data)))

    def __matmul__(self, other: "Mat") -> "Mat":
        _same_field(self, other)
        if self.cols != other.rows:
            raise DimensionError("incompatible shapes")
        return Mat(self.field, self.field.matmul(self.data, other.data))

    def tolist(self):
        return [[self.field.to_jsonable(x) for x in row] for row in self.data]


def _same_field(*ms: Mat) -> Field:
    f = ms[0].field
    for m in ms[1:]:
        if m.field != f:
            raise FieldMismatchError(f"{f!r} vs {m.field!r}")
    return f


def rref(m: Mat) -> tuple[Mat, list[int]]:
    r, piv = m.field.rref(m.data)
    return Mat(m.field, r), piv


def solve(a: Mat, b: Mat) -> Mat | None:
    f = _same_field(a, b)
    if a.rows != b.rows:
        raise DimensionError(f"{a.rows} rows vs {b.rows} rows")
    x = f.solve(a.data, b.data)
    return None if x is None else Mat(f, x)


def kernel_basis(a: Mat) -> Mat:
    return Mat(a.field, a.field.kernel(a.data))


def rank(a: Mat) -> int:
    return a.field.rank(a.data)
