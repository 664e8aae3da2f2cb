"""Finite-dimensional split basic algebras given by structure constants.

Every basis element lies in one corner ``e_i A e_j``; the first basis
elements are the vertex idempotents and the remaining ones span the
radical.  ``mult[b, c]`` is the coordinate vector of ``b * c``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, InvariantViolation, NotBasicError, QPSiltError
from .exactlin import DEFAULT_FIELD, Field
from .quiver import AlgElem, Path, Quiver, cyclic_derivative


class FinDimAlgebra:
    def __init__(self, field: Field, vertices, labels, left, right, mult, idempotents,
                 degrees=None, arrow_elems=None, name=None, check=True, quiver=None, paths=None):
        self.field = field
        self.vertices = tuple(str(v) for v in vertices)
        self.labels = tuple(labels)
        self.left = np.asarray(left, dtype=np.int64).reshape(-1)
        self.right = np.asarray(right, dtype=np.int64).reshape(-1)
        self.mult = mult
        self.idempotents = tuple(int(i) for i in idempotents)
        self.degrees = tuple(degrees) if degrees is not None else None
        self.arrow_elems = dict(arrow_elems or {})
        self.name = name
        self.quiver = quiver          # set when built from a presentation
        self.paths = paths
        self._vindex = {v: k for k, v in enumerate(self.vertices)}
        self._cache = {}
        if check:
            self.check()

    # -- basic data ------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FinDimAlgebra{nm} dim={self.dim} vertices={list(self.vertices)} {self.field!r}>"

    def vindex(self, v) -> int:
        if isinstance(v, (int, np.integer)) and str(v) not in self._vindex:
            return int(v)
        return self._vindex[str(v)]

    def corner(self, i: int, j: int) -> np.ndarray:
        """Basis indices lying in e_i A e_j (vertex indices)."""
        key = ("corner", i, j)
        if key not in self._cache:
            self._cache[key] = np.nonzero((self.left == i) & (self.right == j))[0]
        return self._cache[key]

    def corner_dims(self) -> np.ndarray:
        c = np.zeros((self.n, self.n), dtype=np.int64)
        for b in range(self.dim):
            c[self.left[b], self.right[b]] += 1
        return c

    @property
    def rad_indices(self) -> np.ndarray:
        idem = set(self.idempotents)
        return np.array([b for b in range(self.dim) if b not in idem], dtype=np.int64)

    def basis_vector(self, b: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[b] = self.field.one
        return v

    def idem(self, i: int) -> np.ndarray:
        return self.basis_vector(self.idempotents[i])

    def unit(self) -> np.ndarray:
        v = self.field.zeros(self.dim)
        for b in self.idempotents:
            v[b] = self.field.one
        return v

    def product(self, x, y) -> np.ndarray:
        """x * y for coordinate vectors."""
        t = np.tensordot(np.asarray(x), self.mult, axes=([0], [0]))
        return self.field.reduce(np.tensordot(np.asarray(y), self.field.reduce(t), axes=([0], [0])))

    def left_mul_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x y acting on column coordinate vectors."""
        t = self.field.reduce(np.tensordot(np.asarray(x), self.mult, axes=([0], [0])))
        return t.T

    def right_mul_matrix(self, x) -> np.ndarray:
        """Matrix of y -> y x."""
        t = self.field.reduce(np.tensordot(np.asarray(x), self.mult, axes=([0], [1])))
        return t.T

    def label_of(self, vec) -> str:
        f = self.field
        parts = [f"{f.format(c)}*{self.labels[b]}" for b, c in enumerate(vec) if c != 0]
        return " + ".join(parts) or "0"

    # -- structure -------------------------------------------------------
    def check(self):
        f = self.field
        d = self.dim
        if self.mult.shape != (d, d, d):
            raise InvariantViolation("multiplication table has the wrong shape")
        if len(self.idempotents) != self.n:
            raise InvariantViolation("one idempotent per vertex is required")
        for k, b in enumerate(self.idempotents):
            if self.left[b] != k or self.right[b] != k:
                raise InvariantViolation(f"idempotent {self.labels[b]} not in its corner")
        if d == 0:
            return
        m = self.mult
        # associativity: (b c) d == b (c d) for all triples
        lhs = f.reduce(np.tensordot(m, m, axes=([2], [0])))            # b c d' -> (bc) d'
        rhs = f.reduce(np.tensordot(m, m, axes=([1], [2])))            # b c' . (c d) -> b (cd)
        rhs = np.transpose(rhs, (0, 2, 3, 1))
        if np.any(lhs != rhs):
            raise InvariantViolation("multiplication is not associative")
        # idempotents act as the corner projections
        for k, e in enumerate(self.idempotents):
            for b in range(d):
                want_l = self.basis_vector(b) if self.left[b] == k else f.zeros(d)
                want_r = self.basis_vector(b) if self.right[b] == k else f.zeros(d)
                if np.any(m[e, b] != want_l) or np.any(m[b, e] != want_r):
                    raise InvariantViolation("idempotents do not act as corner projections")
        # products respect corners
        for b in range(d):
            for c in range(d):
                nz = np.nonzero(m[b, c] != 0)[0]
                if nz.size == 0:
                    continue
                if self.right[b] != self.left[c]:
                    raise InvariantViolation("product of non-composable corners is nonzero")
                if np.any(self.left[nz] != self.left[b]) or np.any(self.right[nz] != self.right[c]):
                    raise InvariantViolation("product leaves its corner")
        # radical elements are nilpotent: the radical span is closed and rad^d = 0
        rad = self.rad_indices
        for b in rad:
            for c in rad:
                nz = np.nonzero(m[b, c] != 0)[0]
                if any(x in self.idempotents for x in nz):
                    raise NotBasicError("radical products reach an idempotent: algebra not split basic")
        if rad.size and self.rad_power_dims()[-1] != 0:
            raise NotBasicError("radical span is not nilpotent")

    def rad_power_basis(self, k: int) -> np.ndarray:
        """Row basis of rad^k (k >= 1)."""
        key = ("radpow", k)
        if key in self._cache:
            return self._cache[key]
        f = self.field
        rad = self.rad_indices
        if k == 1:
            rows = f.zeros((len(rad), self.dim))
            for r, b in enumerate(rad):
                rows[r, b] = f.one
            out = f.row_basis(rows) if len(rad) else f.zeros((0, self.dim))
        else:
            prev = self.rad_power_basis(k - 1)
            if prev.shape[0] == 0 or len(rad) == 0:
                out = f.zeros((0, self.dim))
            else:
                t = f.reduce(np.tensordot(prev, self.mult, axes=([1], [0])))   # (r, c, d)
                prods = t[:, rad, :].reshape(-1, self.dim)
                out = f.row_basis(prods) if prods.shape[0] else f.zeros((0, self.dim))
        self._cache[key] = out
        return out

    def rad_power_dims(self) -> list[int]:
        """[dim rad, dim rad^2, ..., 0]."""
        dims = []
        k = 1
        while True:
            r = self.rad_power_basis(k).shape[0]
            dims.append(r)
            if r == 0 or k > self.dim + 1:
                break
            k += 1
        return dims

    def rad_layers(self) -> list[int]:
        """Dimensions of rad^k / rad^{k+1} for k = 0, 1, ..."""
        dims = [self.dim] + self.rad_power_dims()
        return [a - b for a, b in zip(dims, dims[1:])]

    def generators(self) -> list[int]:
        """Radical basis elements whose classes span rad / rad^2, corner by corner."""
        if "gens" in self._cache:
            return self._cache["gens"]
        f = self.field
        r2 = self.rad_power_basis(2)
        gens = []
        for i in range(self.n):
            for j in range(self.n):
                idx = [b for b in self.corner(i, j) if b not in self.idempotents]
                if not idx:
                    continue
                # rad^2 is graded by corners, so its projection onto this corner lies in it
                cur = r2[:, idx]
                r = f.rank(cur) if cur.shape[0] else 0
                for k, b in enumerate(idx):
                    unit = f.zeros((1, len(idx)))
                    unit[0, k] = f.one
                    cand = np.vstack([cur, unit])
                    r2_ = f.rank(cand)
                    if r2_ > r:
                        gens.append(int(b))
                        cur, r = cand, r2_
        self._cache["gens"] = gens
        return gens


# ---------------------------------------------------------------------------
# presentations


def _paths_up_to(quiver: Quiver, n: int) -> list[Path]:
    out = []
    for k in range(n + 1):
        out.extend(quiver.paths_of_length(k))
    return out


def _reduction(quiver: Quiver, gens: list[AlgElem], n: int, field: Field, max_paths: int):
    """Rref of the ideal generated by ``gens`` inside kQ / (paths of length > n).

    Columns are ordered by descending length so that pivots are leading
    (longest) paths and the surviving non-pivot paths form a basis.
    """
    paths = sorted(_paths_up_to(quiver, n), key=lambda p: (len(p), p.source, p.arrows), reverse=True)
    if len(paths) > max_paths:
        raise CapExceededError(f"{len(paths)} paths of length <= {n}; algebra possibly infinite-dimensional")
    index = {p: k for k, p in enumerate(paths)}
    m = len(paths)
    arrows = quiver.arrows
    # index of alpha.p and p.alpha, or -1
    left = np.full((len(arrows), m), -1, dtype=np.int64)
    right = np.full((len(arrows), m), -1, dtype=np.int64)
    for k, p in enumerate(paths):
        for a_i, a in enumerate(arrows):
            if len(p) < n:
                if a.target == p.source:
                    left[a_i, k] = index[Path(a.source, p.target, (a.name,) + p.arrows)]
                if p.target == a.source:
                    right[a_i, k] = index[Path(p.source, a.target, p.arrows + (a.name,))]

    def vec(e: AlgElem):
        v = field.zeros(m)
        for p, c in e.terms.items():
            if len(p) <= n:
                v[index[p]] = c
        return v

    rows = [vec(g) for g in gens]
    rows = [r for r in rows if np.any(r != 0)]
    basis = field.zeros((0, m))
    piv: list[int] = []
    frontier = np.array(rows, dtype=field.dtype).reshape(-1, m) if rows else field.zeros((0, m))
    while frontier.shape[0]:
        stacked = np.vstack([basis, frontier])
        r, p = field.rref(stacked)
        new_rank = len(p)
        if new_rank == len(piv):
            break
        old = (basis, piv)
        basis, piv = r[:new_rank], p
        fr = field.reduce_mod(frontier, old[0], old[1])
        fr = field.row_basis(fr)
        cands = []
        for a_i in range(len(arrows)):
            for tbl in (left, right):
                ok = tbl[a_i] >= 0
                if not np.any(ok):
                    continue
                c = field.zeros((fr.shape[0], m))
                c[:, tbl[a_i][ok]] = fr[:, ok]
                cands.append(c)
        if not cands:
            break
        cand = np.vstack(cands)
        cand = field.reduce_mod(cand, basis, piv)
        cand = cand[np.any(cand != 0, axis=1)]
        frontier = cand
    return paths, basis, piv


def algebra_from_presentation(quiver: Quiver, relations, cap: int = 24, field: Field | None = None,
                              window: int = 3, max_paths: int = 6000, name=None) -> FinDimAlgebra:
    if cap < 2:
        raise ValueError("cap must be at least 2")
    relations = list(relations)
    if field is None:
        field = relations[0].field if relations else DEFAULT_FIELD
    gens = []
    for r in relations:
        if r.field != field:
            raise ValueError("relation over a different field")
        gens.extend(r.corner_parts().values())
    history = []
    for n in range(1, cap + 1):
        paths, basis, piv = _reduction(quiver, gens, n, field, max_paths)
        history.append(len(paths) - len(piv))
        if len(history) >= window and len(set(history[-window:])) == 1:
            break
    else:
        raise CapExceededError(f"dimension did not stabilize up to degree {cap}: {history}")
    stable_deg = n - window + 1
    pivset = set(piv)
    for c in piv:
        if paths[c].is_lazy:
            raise QPSiltError(f"idempotent at vertex {paths[c].source} lies in the relation ideal")
    nonpiv = [k for k in range(len(paths)) if k not in pivset]
    if any(len(paths[k]) > stable_deg for k in nonpiv):
        raise CapExceededError("basis paths above the stabilization degree")
    # basis order: idempotents in vertex order, then by length and label
    nonpiv.sort(key=lambda k: (len(paths[k]), quiver.index(paths[k].source), paths[k].arrows))
    bpaths = [paths[k] for k in nonpiv]
    col_to_b = {k: b for b, k in enumerate(nonpiv)}
    d = len(bpaths)
    # normal form of every path of length <= n in basis coordinates
    nf = field.zeros((len(paths), d))
    for k in nonpiv:
        nf[k, col_to_b[k]] = field.one
    for row, c in enumerate(piv):
        for k in nonpiv:
            if basis[row, k] != 0:
                nf[c, col_to_b[k]] = field.reduce(-basis[row, k]) if field.p else -basis[row, k]
    index = {p: k for k, p in enumerate(paths)}
    mult = field.zeros((d, d, d))
    for b, p in enumerate(bpaths):
        for c, q in enumerate(bpaths):
            if p.target != q.source:
                continue
            r = Path(p.source, q.target, p.arrows + q.arrows)
            if len(r) <= n:
                mult[b, c] = nf[index[r]]
    vidx = {v: k for k, v in enumerate(quiver.vertices)}
    left = [vidx[p.source] for p in bpaths]
    right = [vidx[p.target] for p in bpaths]
    idem = [bpaths.index(quiver.lazy(v)) for v in quiver.vertices]
    arrow_elems = {a.name: nf[index[Path(a.source, a.target, (a.name,))]] for a in quiver.arrows} if n >= 1 else {}
    labels = [str(p) for p in bpaths]
    return FinDimAlgebra(field, quiver.vertices, labels, left, right, mult, idem,
                         degrees=[len(p) for p in bpaths], arrow_elems=arrow_elems, name=name,
                         quiver=quiver, paths=bpaths)


def path_algebra(quiver: Quiver, cap: int = 24, field: Field = DEFAULT_FIELD, name=None) -> FinDimAlgebra:
    return algebra_from_presentation(quiver, [], cap, field, name=name)


def jacobian_algebra(qp, cap: int = 24, name=None) -> FinDimAlgebra:
    rels = [cyclic_derivative(qp.potential, a.name) for a in qp.quiver.arrows]
    return algebra_from_presentation(qp.quiver, rels, cap, qp.field, name=name)


def semisimple(n: int, field: Field = DEFAULT_FIELD) -> FinDimAlgebra:
    return path_algebra(Quiver([str(k + 1) for k in range(n)]), field=field)


def element(alg: FinDimAlgebra, e: AlgElem) -> np.ndarray:
    """Coordinates of a path-algebra element in a presented algebra."""
    f = alg.field
    v = f.zeros(alg.dim)
    for p, c in e.terms.items():
        if p.is_lazy:
            w = alg.idem(alg.vindex(p.source))
        else:
            w = alg.arrow_elems[p.arrows[0]]
            for a in p.arrows[1:]:
                w = alg.product(w, alg.arrow_elems[a])
        v = f.reduce(v + w * f(c))
    return v


@dataclass
class GabrielData:
    quiver: Quiver
    rad_layers: list
    dim: int
    cartan: list

    def to_dict(self):
        return {
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.source, a.target] for a in self.quiver.arrows],
            "dim": self.dim,
            "rad_layers": list(self.rad_layers),
            "cartan": self.cartan,
        }


def gabriel_quiver(alg: FinDimAlgebra) -> GabrielData:
    """Arrows i -> j counted by dim e_i (rad / rad^2) e_j.

    With left-to-right paths an arrow a: i -> j lies in e_i A e_j, so this is
    the quiver the algebra was presented by.
    """
    f = alg.field
    r2 = alg.rad_power_basis(2)
    arrows = []
    for i in range(alg.n):
        for j in range(alg.n):
            idx = [b for b in alg.corner(i, j) if b not in alg.idempotents]
            if not idx:
                continue
            r2c = r2[:, idx]
            count = len(idx) - (f.rank(r2c) if r2c.shape[0] else 0)
            for k in range(count):
                vi, vj = alg.vertices[i], alg.vertices[j]
                arrows.append((f"x{vi}_{vj}_{k}", vi, vj))
    q = Quiver(alg.vertices, arrows)
    return GabrielData(q, alg.rad_layers(), alg.dim, alg.corner_dims().tolist())
