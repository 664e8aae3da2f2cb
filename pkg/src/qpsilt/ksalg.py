"""Radicals and primitive idempotents of abstract finite-dimensional algebras.

An algebra here is a structure-constant tensor ``C`` with ``C[i, j]`` the
coordinates of ``b_i b_j`` and a unit vector.  This is what endomorphism
rings of modules and of complexes are turned into before they are
decomposed.
"""
from __future__ import annotations

import numpy as np
import sympy

from .errors import FieldTooSmallError, InvariantViolation
from .exactlin import Field

_t = sympy.Symbol("t")


class StructAlgebra:
    def __init__(self, field: Field, C: np.ndarray, unit: np.ndarray):
        self.field = field
        self.C = C
        self.unit = unit
        self.dim = C.shape[0]
        self._rad = None

    def mul(self, x, y) -> np.ndarray:
        f = self.field
        t = f.reduce(np.tensordot(np.asarray(x), self.C, axes=([0], [0])))
        return f.reduce(np.tensordot(np.asarray(y), t, axes=([0], [0])))

    def left_matrix(self, x) -> np.ndarray:
        t = self.field.reduce(np.tensordot(np.asarray(x), self.C, axes=([0], [0])))
        return t.T

    def radical(self) -> np.ndarray:
        """Row basis of the Jacobson radical (kernel of the trace form)."""
        if self._rad is not None:
            return self._rad
        f = self.field
        e = self.dim
        if f.p and f.p <= e:
            raise FieldTooSmallError(f"trace-form radical needs p > {e}, got p = {f.p}")
        if e == 0:
            self._rad = f.zeros((0, 0))
            return self._rad
        L = np.transpose(self.C, (0, 2, 1))             # L[i] = matrix of left mult by b_i
        T = f.reduce(np.tensordot(L, np.transpose(L, (0, 2, 1)), axes=([1, 2], [1, 2])))
        k = f.kernel(T)
        self._rad = f.row_basis(k.T) if k.shape[1] else f.zeros((0, e))
        return self._rad

    def in_radical(self, x) -> bool:
        rad = self.radical()
        return self.field.in_span(rad, x)

    def corner_basis(self, a, b) -> np.ndarray:
        """Row basis of a E b."""
        f = self.field
        la = self.left_matrix(a)
        rb = f.reduce(np.tensordot(np.asarray(b), self.C, axes=([0], [1]))).T   # x -> x b
        m = f.matmul(la, rb)
        if m.shape[1] == 0:
            return f.zeros((0, self.dim))
        return f.row_basis(m.T)

    def top_dim(self, eps) -> int:
        """dim eps E eps - dim eps rad eps."""
        f = self.field
        corner = self.corner_basis(eps, eps)
        rad = self.radical()
        if rad.shape[0] == 0:
            return corner.shape[0]
        la = self.left_matrix(eps)
        rb = f.reduce(np.tensordot(np.asarray(eps), self.C, axes=([0], [1]))).T
        m = f.matmul(la, rb)
        images = f.matmul(rad, m.T)
        return corner.shape[0] - f.rank(images)

    def _min_poly(self, phi, eps) -> list:
        """Coefficients (low to high, monic) of the minimal polynomial of phi in eps E eps."""
        f = self.field
        powers = [np.asarray(eps)]
        while True:
            nxt = self.mul(powers[-1], phi)
            mat = np.array(powers, dtype=f.dtype).T
            sol = f.solve(mat, nxt)
            if sol is not None:
                return [f.reduce(-c) if f.p else -c for c in sol] + [f.one]
            powers.append(nxt)
            if len(powers) > self.dim + 1:
                raise InvariantViolation("minimal polynomial degree exceeds dimension")

    def _factor(self, coeffs):
        f = self.field
        if f.p:
            poly = sympy.Poly([int(c) for c in reversed(coeffs)], _t, modulus=f.p)
        else:
            poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], _t,
                              domain=sympy.QQ)
        _, facs = poly.factor_list()
        return facs

    def _poly_eval(self, coeffs_high_first, phi, eps):
        f = self.field
        acc = f.zeros(self.dim)
        for c in coeffs_high_first:
            acc = f.reduce(self.mul(acc, phi) + np.asarray(eps) * f(c))
        return acc

    def _split(self, eps, psi):
        """Split eps along the Fitting decomposition of left multiplication by psi on eps E."""
        f = self.field
        le = self.left_matrix(eps)
        V = f.row_basis(le.T)                           # rows span eps E
        P = self.left_matrix(psi)
        for _ in range(max(1, self.dim.bit_length())):
            P = f.matmul(P, P)
        img = f.matmul(V, P.T)
        img = f.row_basis(img) if img.shape[0] else img
        # kernel of P restricted to V
        coeffs = f.left_kernel(f.matmul(V, P.T))
        ker = f.matmul(coeffs, V) if coeffs.shape[0] else f.zeros((0, self.dim))
        ker = f.row_basis(ker) if ker.shape[0] else ker
        if img.shape[0] == 0 or ker.shape[0] == 0:
            return None
        basis = np.vstack([img, ker]).T
        sol = f.solve(basis, np.asarray(eps))
        if sol is None:
            raise InvariantViolation("idempotent not in its right ideal")
        u = f.matmul(img.T, sol[: img.shape[0]])
        v = f.reduce(np.asarray(eps) - u)
        for x in (u, v):
            if np.any(self.mul(x, x) != x):
                raise InvariantViolation("Fitting split did not produce idempotents")
        return u, v

    def primitive_idempotents(self, eps=None, rng=None, tries: int = 48) -> list:
        """Orthogonal primitive idempotents summing to eps (default: 1)."""
        f = self.field
        if eps is None:
            eps = self.unit
        rng = rng if rng is not None else np.random.default_rng(0)
        eps = np.asarray(eps)
        if not np.any(eps != 0):
            return []
        q = self.top_dim(eps)
        if q == 1:
            return [eps]
        corner = self.corner_basis(eps, eps)
        cands = list(corner)
        for _ in range(tries):
            cands.append(f.reduce(f.random(rng, corner.shape[0]) @ corner))
        for phi in cands:
            mp = self._min_poly(phi, eps)
            facs = self._factor(mp)
            if len(facs) >= 2:
                g, mlt = facs[0]
                gpow = sympy.Poly(g.as_expr() ** mlt, _t, modulus=f.p) if f.p else sympy.Poly(g.as_expr() ** mlt, _t, domain=sympy.QQ)
                coeffs = [self._coerce(c) for c in gpow.all_coeffs()]
                psi = self._poly_eval(coeffs, phi, eps)
                parts = self._split(eps, psi)
                if parts is None:
                    continue
                out = []
                for part in parts:
                    out.extend(self.primitive_idempotents(part, rng, tries))
                return out
            if len(facs) == 1 and facs[0][0].degree() == q:
                # eps E eps / rad is generated by phi and is a field: eps is primitive
                return [eps]
        raise FieldTooSmallError("could not split or certify an idempotent; enlarge the field")

    def _coerce(self, c):
        f = self.field
        if f.p:
            return int(c) % f.p
        r = sympy.Rational(c)
        from fractions import Fraction
        return Fraction(int(r.p), int(r.q))

    def is_local(self, eps=None) -> bool:
        eps = self.unit if eps is None else eps
        return len(self.primitive_idempotents(eps)) == 1

    def same_type(self, e1, e2) -> bool:
        """Primitive e1, e2 give isomorphic summands iff some e1 x e2 y e1 is a unit of e1 E e1."""
        a = self.corner_basis(e1, e2)
        b = self.corner_basis(e2, e1)
        if a.shape[0] == 0 or b.shape[0] == 0:
            return False
        for x in a:
            for y in b:
                if not self.in_radical(self.mul(x, y)):
                    return True
        return False

    def classify(self, idems) -> list[int]:
        """Type label per idempotent; equal labels mean isomorphic summands."""
        labels: list[int] = []
        reps: list[int] = []
        for k, e in enumerate(idems):
            for t, r in enumerate(reps):
                if self.same_type(idems[r], e):
                    labels.append(t)
                    break
            else:
                reps.append(k)
                labels.append(len(reps) - 1)
        return labels


def struct_from_matrices(field: Field, mats: list, compose):
    """Structure constants of a span of linear maps closed under ``compose``.

    ``mats`` are arrays of a common shape; coordinates are recovered by a
    left inverse on an invertible set of rows.  Returns the tensor, the
    flattened basis (columns = elements), the chosen rows and their inverse.
    """
    e = len(mats)
    B = np.array([np.asarray(m).reshape(-1) for m in mats], dtype=field.dtype).T   # (n, e)
    r, piv = field.rref(B.T)
    if len(piv) != e:
        raise InvariantViolation("basis matrices are dependent")
    rows = piv
    Binv = field.inverse(B[rows])
    C = field.zeros((e, e, e))
    for i in range(e):
        for j in range(e):
            prod = np.asarray(compose(mats[i], mats[j])).reshape(-1)
            C[i, j] = field.matmul(Binv, prod[rows])
    return C, B, rows, Binv
