"""Endomorphism algebras of direct sums of pairwise non-isomorphic indecomposables.

For summands N_1..N_n the corner e_a E e_b is Hom(N_b, N_a) and the product
is composition, so E is presented the same way as a basic algebra built from
a quiver: idempotents first, then a radical basis per corner.
"""
from __future__ import annotations

import numpy as np

from .algebra import FinDimAlgebra
from .complexes import BoundedComplex, ChainMap, HomSpace, compose_table, end_struct
from .errors import InvariantViolation, NotBasicError


class SummandAlgebra:
    """E = End(N_1 + ... + N_n) together with coordinate changes per corner."""

    def __init__(self, summands: list[BoundedComplex], names=None, homs: dict | None = None):
        if not summands:
            raise ValueError("need at least one summand")
        self.summands = list(summands)
        n = self.n = len(summands)
        f = self.field = summands[0].alg.field
        self.names = [str(v) for v in (names or range(1, n + 1))]
        homs = dict(homs or {})
        self.hs = {}
        for a in range(n):
            for b in range(n):
                key = (b, a)                         # Hom(N_b, N_a) lives in e_a E e_b
                hs = homs.get(key) or HomSpace(summands[b], summands[a])
                self.hs[(a, b)] = hs

        # corner bases: rows are elements in Hom-space coordinates
        self.cbasis, self.cinv = {}, {}
        for a in range(n):
            hs = self.hs[(a, a)]
            st = end_struct(hs)
            rad = st.radical()
            if hs.dim - rad.shape[0] != 1:
                raise NotBasicError(f"summand {self.names[a]} has a non-local endomorphism ring")
            rows = np.vstack([st.unit.reshape(1, -1), rad]) if rad.shape[0] else st.unit.reshape(1, -1)
            self.cbasis[(a, a)] = rows
            self.cinv[(a, a)] = f.inverse(rows)
        for a in range(n):
            for b in range(n):
                if a != b:
                    d = self.hs[(a, b)].dim
                    self.cbasis[(a, b)] = f.eye(d)
                    self.cinv[(a, b)] = f.eye(d)

        # global basis: idempotents, then radical elements corner by corner
        labels, left, right, self.pos = [], [], [], {}
        for a in range(n):
            self.pos[(a, a, 0)] = len(labels)
            labels.append(f"e({self.names[a]})")
            left.append(a)
            right.append(a)
        for a in range(n):
            for b in range(n):
                start = 1 if a == b else 0
                for k in range(start, self.cbasis[(a, b)].shape[0]):
                    self.pos[(a, b, k)] = len(labels)
                    labels.append(f"h{self.names[a]}_{self.names[b]}_{k}")
                    left.append(a)
                    right.append(b)
        d = len(labels)
        self.index = {}
        for (a, b, k), p in self.pos.items():
            self.index.setdefault((a, b), []).append((k, p))
        for key in self.index:
            self.index[key].sort()
        mult = f.zeros((d, d, d))
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    X, Y, Z = self.hs[(a, b)], self.hs[(b, c)], self.hs[(a, c)]
                    if X.dim == 0 or Y.dim == 0 or Z.dim == 0:
                        continue
                    T = compose_table(X, Y, Z)                      # coords of x o y
                    Bx, By = self.cbasis[(a, b)], self.cbasis[(b, c)]
                    # change to corner bases on both inputs and the output
                    T1 = f.reduce(np.tensordot(Bx, T, axes=([1], [0])))
                    T2 = f.reduce(np.tensordot(By, T1, axes=([1], [1]))).transpose(1, 0, 2)
                    T3 = f.reduce(np.tensordot(T2, self.cinv[(a, c)], axes=([2], [0])))
                    pa = [p for _, p in self.index[(a, b)]]
                    pb = [p for _, p in self.index[(b, c)]]
                    pc = [p for _, p in self.index[(a, c)]]
                    mult[np.ix_(pa, pb, pc)] = T3
        self.alg = FinDimAlgebra(f, self.names, labels, left, right, mult, list(range(n)),
                                 name="End", check=True)

    def to_alg(self, a: int, b: int, coords) -> np.ndarray:
        """Hom(N_b, N_a) coordinates -> element of E."""
        f = self.field
        v = f.zeros(self.alg.dim)
        idx = self.index.get((a, b), [])
        if idx:
            c = f.matmul(np.asarray(coords).reshape(1, -1), self.cinv[(a, b)])[0]
            for k, p in idx:
                v[p] = c[k]
        return v

    def from_alg(self, a: int, b: int, vec) -> np.ndarray:
        f = self.field
        idx = self.index.get((a, b), [])
        if not idx:
            return f.zeros(self.hs[(a, b)].dim)
        c = f.array([vec[p] for _, p in idx])
        return f.matmul(c.reshape(1, -1), self.cbasis[(a, b)])[0]

    def rep(self, a: int, b: int, vec) -> ChainMap:
        """A chain map N_b -> N_a representing the e_a E e_b part of ``vec``."""
        hs = self.hs[(a, b)]
        return hs.element(self.from_alg(a, b, vec))

    def check_corner(self, a, b, vec):
        mask = np.ones(self.alg.dim, dtype=bool)
        for _, p in self.index.get((a, b), []):
            mask[p] = False
        if np.any(np.asarray(vec)[mask] != 0):
            raise InvariantViolation("element outside its corner")
