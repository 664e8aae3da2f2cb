"""Finite-dimensional right modules over a :class:`FinDimAlgebra`.

A module is a vector space with a vertex-homogeneous basis (``vert[k]`` is
the vertex of basis vector k) and one action matrix per algebra basis
element, acting on column vectors: ``act[b] @ v`` is ``v * b``.  An arrow
a: i -> j therefore maps the part at i to the part at j.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra
from .errors import DimensionError, InvariantViolation, NotBasicError
from .ksalg import StructAlgebra, struct_from_matrices


class RightModule:
    def __init__(self, alg: FinDimAlgebra, act: np.ndarray, vert, check: bool = True):
        self.alg = alg
        self.field = alg.field
        self.act = act
        self.vert = np.asarray(vert, dtype=np.int64).reshape(-1)
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return len(self.vert)

    @property
    def dim_vector(self) -> tuple:
        return tuple(int(np.sum(self.vert == i)) for i in range(self.alg.n))

    def __repr__(self):
        return f"<RightModule dimvec={self.dim_vector}>"

    def is_zero(self) -> bool:
        return self.dim == 0

    def at(self, i: int) -> np.ndarray:
        return np.nonzero(self.vert == i)[0]

    def check(self):
        f = self.field
        a = self.alg
        n = self.dim
        if self.act.shape != (a.dim, n, n):
            raise DimensionError("action tensor has the wrong shape")
        for i, e in enumerate(a.idempotents):
            want = f.zeros((n, n))
            for k in self.at(i):
                want[k, k] = f.one
            if np.any(self.act[e] != want):
                raise InvariantViolation("basis is not vertex-homogeneous")
        if n == 0 or a.dim == 0:
            return
        # (v b) c = v (b c)
        lhs = f.reduce(np.einsum("cij,bjk->bcik", self.act, self.act) if f.p else
                       np.array([[self.act[c] @ self.act[b] for c in range(a.dim)] for b in range(a.dim)]))
        rhs = f.reduce(np.tensordot(a.mult, self.act, axes=([2], [0])))
        if np.any(lhs != rhs):
            raise InvariantViolation("action does not respect the multiplication (relations fail)")

    @classmethod
    def from_action(cls, alg: FinDimAlgebra, act: np.ndarray) -> "RightModule":
        """Change to a vertex-homogeneous basis first."""
        f = alg.field
        n = act.shape[1]
        cols = []
        vert = []
        for i, e in enumerate(alg.idempotents):
            img = act[e]
            if img.size == 0:
                continue
            basis = f.row_basis(img.T)
            for row in basis:
                cols.append(row)
                vert.append(i)
        if len(cols) != n:
            raise InvariantViolation("idempotents do not decompose the module")
        T = np.array(cols, dtype=f.dtype).T if cols else f.zeros((0, 0))
        Tinv = f.inverse(T) if n else T
        new = f.reduce(np.array([f.matmul(f.matmul(Tinv, act[b]), T) for b in range(alg.dim)],
                                dtype=f.dtype).reshape(alg.dim, n, n))
        return cls(alg, new, vert)

    @classmethod
    def from_representation(cls, alg: FinDimAlgebra, dims, maps) -> "RightModule":
        """Module from vector spaces at vertices and arrow matrices.

        ``dims`` maps vertex labels to dimensions and ``maps`` maps arrow labels
        to matrices (target dim x source dim).  Requires an algebra built from
        a quiver presentation.
        """
        f = alg.field
        dims = {alg.vindex(v): int(d) for v, d in dims.items()}
        vert = [i for i in range(alg.n) for _ in range(dims.get(i, 0))]
        n = len(vert)
        off = {}
        pos = 0
        for i in range(alg.n):
            off[i] = pos
            pos += dims.get(i, 0)
        if alg.quiver is None:
            raise ValueError("algebra has no quiver presentation")
        arrow_act = {}
        for a in alg.quiver.arrows:
            s, t = alg.vindex(a.source), alg.vindex(a.target)
            m = np.asarray(maps.get(a.name, np.zeros((dims.get(t, 0), dims.get(s, 0)), dtype=np.int64)))
            big = f.zeros((n, n))
            if m.size:
                big[off[t]:off[t] + dims.get(t, 0), off[s]:off[s] + dims.get(s, 0)] = f.array(m)
            arrow_act[a.name] = big
        act = f.zeros((alg.dim, n, n))
        for b, path in enumerate(alg.paths):
            if path.is_lazy:
                i = alg.vindex(path.source)
                for k in range(off[i], off[i] + dims.get(i, 0)):
                    act[b, k, k] = f.one
            else:
                m = f.eye(n)
                for name in path.arrows:
                    m = f.matmul(arrow_act[name], m)
                act[b] = m
        return cls(alg, act, vert)

    def direct_sum(self, *others: "RightModule") -> "RightModule":
        mods = (self,) + others
        f = self.field
        n = sum(m.dim for m in mods)
        act = f.zeros((self.alg.dim, n, n))
        pos = 0
        for m in mods:
            act[:, pos:pos + m.dim, pos:pos + m.dim] = m.act
            pos += m.dim
        return RightModule(self.alg, act, np.concatenate([m.vert for m in mods]) if mods else [], check=False)

    def action_span(self, elems) -> np.ndarray:
        """Column basis of the span of the images of the given basis elements."""
        f = self.field
        if self.dim == 0 or not len(elems):
            return f.zeros((self.dim, 0))
        stacked = np.concatenate([self.act[b] for b in elems], axis=1)
        return f.row_basis(stacked.T).T

    def submodule(self, span: np.ndarray) -> tuple["RightModule", np.ndarray]:
        """Submodule spanned by columns of ``span``; returns (module, inclusion matrix)."""
        f = self.field
        cols, vert = [], []
        for i, e in enumerate(self.alg.idempotents):
            if span.shape[1] == 0:
                break
            part = f.matmul(self.act[e], span)
            if part.size and np.any(part != 0):
                for row in f.row_basis(part.T):
                    cols.append(row)
                    vert.append(i)
        T = np.array(cols, dtype=f.dtype).T if cols else f.zeros((self.dim, 0))
        k = T.shape[1]
        if k == 0:
            return RightModule(self.alg, f.zeros((self.alg.dim, 0, 0)), [], check=False), T
        rhs = np.concatenate([f.matmul(self.act[b], T) for b in range(self.alg.dim)], axis=1)
        sol = f.solve(T, rhs)
        if sol is None:
            raise InvariantViolation("span is not a submodule")
        act = np.stack([sol[:, b * k:(b + 1) * k] for b in range(self.alg.dim)])
        return RightModule(self.alg, act, vert, check=False), T

    def quotient(self, span: np.ndarray) -> tuple["RightModule", np.ndarray]:
        """Quotient by the submodule spanned by ``span``; returns (module, projection matrix)."""
        f = self.field
        sub, T = self.submodule(span) if span.shape[1] else (None, f.zeros((self.dim, 0)))
        comp, vert = [], []
        for i in range(self.alg.n):
            idx = self.at(i)
            sub_i = T[:, [c for c in range(T.shape[1]) if idx.size and np.any(T[idx, c] != 0)]]
            piv = set(f.rref(sub_i[idx].T)[1]) if sub_i.shape[1] else set()
            for local, k in enumerate(idx):
                if local not in piv:
                    comp.append(k)
                    vert.append(i)
        q = len(comp)
        C = f.zeros((self.dim, q))
        for c, k in enumerate(comp):
            C[k, c] = f.one
        full = np.concatenate([T, C], axis=1)
        inv = f.inverse(full) if self.dim else full
        proj = inv[T.shape[1]:]
        act = np.stack([f.matmul(f.matmul(proj, self.act[b]), C) for b in range(self.alg.dim)]) if q else \
            f.zeros((self.alg.dim, 0, 0))
        return RightModule(self.alg, f.reduce(act), vert, check=False), proj


@dataclass(frozen=True, eq=False)
class ModuleMap:
    src: RightModule
    tgt: RightModule
    mat: np.ndarray

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        return ModuleMap(other.src, self.tgt, self.src.field.matmul(self.mat, other.mat))

    def is_zero(self) -> bool:
        return not np.any(self.mat != 0)


# ---------------------------------------------------------------------------
# standard modules


def projective(alg: FinDimAlgebra, i: int) -> RightModule:
    """e_i A with right multiplication."""
    f = alg.field
    basis = np.nonzero(alg.left == i)[0]
    m = alg.mult[np.ix_(basis, np.arange(alg.dim), basis)]     # (l, c, k): b_l * c has coeff on b_k
    act = np.transpose(m, (1, 2, 0)).copy()                    # act[c][k, l]
    return RightModule(alg, f.reduce(act), alg.right[basis], check=False)


def projective_sum(alg: FinDimAlgebra, vertices) -> RightModule:
    mods = [projective(alg, v) for v in vertices]
    if not mods:
        return zero_module(alg)
    return mods[0].direct_sum(*mods[1:])


def zero_module(alg: FinDimAlgebra) -> RightModule:
    return RightModule(alg, alg.field.zeros((alg.dim, 0, 0)), [], check=False)


def simple(alg: FinDimAlgebra, i: int) -> RightModule:
    f = alg.field
    act = f.zeros((alg.dim, 1, 1))
    act[alg.idempotents[i], 0, 0] = f.one
    return RightModule(alg, act, [i], check=False)


def regular(alg: FinDimAlgebra) -> RightModule:
    return projective_sum(alg, range(alg.n))


def dual_regular(alg: FinDimAlgebra) -> RightModule:
    """D(A) = Hom_k(A, k) with (phi a)(x) = phi(a x)."""
    f = alg.field
    act = np.stack([alg.left_mul_matrix(alg.basis_vector(b)).T for b in range(alg.dim)])
    return RightModule.from_action(alg, f.reduce(act))


# ---------------------------------------------------------------------------
# radical layers


def radical(m: RightModule) -> tuple[RightModule, np.ndarray]:
    return m.submodule(m.action_span(m.alg.rad_indices))


def top(m: RightModule) -> tuple[RightModule, np.ndarray]:
    return m.quotient(m.action_span(m.alg.rad_indices))


def socle(m: RightModule) -> tuple[RightModule, np.ndarray]:
    f = m.field
    rad = m.alg.rad_indices
    if m.dim == 0:
        return m, f.zeros((0, 0))
    if len(rad) == 0:
        return m.submodule(f.eye(m.dim))
    stacked = np.concatenate([m.act[b] for b in rad], axis=0)
    return m.submodule(f.kernel(stacked))


def is_simple(m: RightModule) -> bool:
    return m.dim == 1


# ---------------------------------------------------------------------------
# homomorphisms


def hom_basis(m: RightModule, n: RightModule) -> list[np.ndarray]:
    """Basis of Hom_A(m, n) as matrices (n.dim x m.dim)."""
    f = m.field
    alg = m.alg
    blocks = []
    off = 0
    for i in range(alg.n):
        mi, ni = m.at(i), n.at(i)
        blocks.append((mi, ni, off))
        off += len(mi) * len(ni)
    nvar = off
    if nvar == 0:
        return []
    rows = []
    for g in alg.generators():
        i, j = alg.left[g], alg.right[g]
        mi, ni, oi = blocks[i]
        mj, nj, oj = blocks[j]
        if len(mi) == 0 or len(nj) == 0:
            continue
        gm = m.act[g][np.ix_(mj, mi)]           # (m_j x m_i)
        gn = n.act[g][np.ix_(nj, ni)]           # (n_j x n_i)
        eq = f.zeros((len(nj) * len(mi), nvar))
        if len(mj):
            eq[:, oj:oj + len(nj) * len(mj)] = f.reduce(eq[:, oj:oj + len(nj) * len(mj)] +
                                                       np.kron(gm.T, f.eye(len(nj))))
        if len(ni):
            eq[:, oi:oi + len(ni) * len(mi)] = f.reduce(eq[:, oi:oi + len(ni) * len(mi)] -
                                                       np.kron(f.eye(len(mi)), gn))
        rows.append(eq)
    ker = f.kernel(np.vstack(rows)) if rows else f.eye(nvar)
    out = []
    for c in range(ker.shape[1]):
        mat = f.zeros((n.dim, m.dim))
        for (mi, ni, o) in blocks:
            if len(mi) and len(ni):
                blk = ker[o:o + len(ni) * len(mi), c].reshape(len(mi), len(ni)).T   # column-major vec
                mat[np.ix_(ni, mi)] = blk
        out.append(mat)
    return out


def is_module_map(m: RightModule, n: RightModule, mat) -> bool:
    f = m.field
    for b in range(m.alg.dim):
        if np.any(f.matmul(mat, m.act[b]) != f.matmul(n.act[b], mat)):
            return False
    return True


def end_algebra_of(m: RightModule):
    """(StructAlgebra, basis matrices) for End_A(m) with product = composition."""
    f = m.field
    mats = hom_basis(m, m)
    C, B, rows, Binv = struct_from_matrices(f, mats, lambda x, y: f.matmul(x, y))
    unit = f.matmul(Binv, f.eye(m.dim).reshape(-1)[rows])
    return StructAlgebra(f, C, unit), mats


def _idempotent_matrix(mats, coords, f):
    out = f.zeros(mats[0].shape)
    for c, mat in zip(coords, mats):
        if c != 0:
            out = f.reduce(out + mat * c)
    return out


def decompose_module(m: RightModule, rng=None) -> list[tuple[RightModule, int]]:
    if m.dim == 0:
        return []
    f = m.field
    E, mats = end_algebra_of(m)
    idems = E.primitive_idempotents(rng=rng)
    types = E.classify(idems)
    out = []
    for t in sorted(set(types)):
        k = types.index(t)
        e = _idempotent_matrix(mats, idems[k], f)
        img = f.row_basis(e.T).T
        sub, _ = m.submodule(img)
        out.append((sub, types.count(t)))
    return out


def is_indecomposable(m: RightModule) -> bool:
    if m.dim == 0:
        return False
    E, _ = end_algebra_of(m)
    return E.is_local()


def _iso_indecomposable(x: RightModule, y: RightModule) -> bool:
    if x.dim_vector != y.dim_vector:
        return False
    f = x.field
    fs = hom_basis(x, y)
    gs = hom_basis(y, x)
    for a in fs:
        for b in gs:
            if f.rank(f.matmul(b, a)) == x.dim:
                return True
    return False


def are_isomorphic(m: RightModule, n: RightModule) -> bool:
    if m.dim_vector != n.dim_vector:
        return False
    if m.dim == 0:
        return True
    dm = decompose_module(m)
    dn = decompose_module(n)
    remaining = [[x, k] for x, k in dn]
    for x, k in dm:
        for entry in remaining:
            if entry[1] and _iso_indecomposable(x, entry[0]):
                if entry[1] != k:
                    return False
                entry[1] = 0
                break
        else:
            return False
    return all(k == 0 for _, k in remaining)


# ---------------------------------------------------------------------------
# projective covers and resolutions


@dataclass
class Cover:
    vertices: tuple          # P = sum of e_v A over these vertices
    module: RightModule      # P itself
    map: np.ndarray          # P -> m


def projective_cover(m: RightModule) -> Cover:
    f = m.field
    alg = m.alg
    rad = m.action_span(alg.rad_indices)
    verts, gens = [], []
    for i in range(alg.n):
        idx = m.at(i)
        if not len(idx):
            continue
        radi = rad[idx] if rad.shape[1] else f.zeros((len(idx), 0))
        piv = set(f.rref(radi.T)[1]) if radi.shape[1] else set()
        for local, k in enumerate(idx):
            if local not in piv:
                verts.append(i)
                gens.append(k)
    P = projective_sum(alg, verts)
    cols = []
    for v, k in zip(verts, gens):
        for b in np.nonzero(alg.left == v)[0]:
            cols.append(m.act[b][:, k])
    mat = np.array(cols, dtype=f.dtype).T if cols else f.zeros((m.dim, 0))
    return Cover(tuple(verts), P, mat)


def syzygy_with_inclusion(m: RightModule) -> tuple[RightModule, np.ndarray, Cover]:
    cov = projective_cover(m)
    f = m.field
    if cov.module.dim == 0:
        return zero_module(m.alg), f.zeros((0, 0)), cov
    ker = f.kernel(cov.map) if m.dim else f.eye(cov.module.dim)
    sub, incl = cov.module.submodule(ker)
    # minimality: the kernel sits in the radical of P
    radp = cov.module.action_span(m.alg.rad_indices)
    if incl.shape[1] and radp.shape[1] < cov.module.dim:
        if f.rank(np.concatenate([radp, incl], axis=1)) != f.rank(radp):
            raise InvariantViolation("projective cover is not minimal")
    return sub, incl, cov


def syzygy(m: RightModule, n: int = 1) -> RightModule:
    cur = m
    for _ in range(n):
        cur, _, _ = syzygy_with_inclusion(cur)
    return cur


@dataclass
class Presentation:
    p1: tuple                 # vertices of P1
    p0: tuple                 # vertices of P0
    d: np.ndarray             # (len p0, len p1, dim A) differential entries
    d_map: np.ndarray         # P1 -> P0 as a module matrix
    cover: Cover


def _generator_positions(alg, vertices):
    pos, out = 0, []
    for v in vertices:
        basis = np.nonzero(alg.left == v)[0]
        out.append((pos, basis))
        pos += len(basis)
    return out


def map_to_entries(alg: FinDimAlgebra, p1, p0, mat) -> np.ndarray:
    """Differential entries of a module map between projective sums."""
    f = alg.field
    d = f.zeros((len(p0), len(p1), alg.dim))
    src = _generator_positions(alg, p1)
    tgt = _generator_positions(alg, p0)
    for t, v in enumerate(p1):
        start, basis = src[t]
        gen_col = start + int(np.nonzero(basis == alg.idempotents[v])[0][0])
        col = mat[:, gen_col]
        for s, (tstart, tbasis) in enumerate(tgt):
            d[s, t, tbasis] = col[tstart:tstart + len(tbasis)]
    return d


def entries_to_map(alg: FinDimAlgebra, p1, p0, d) -> np.ndarray:
    """Module matrix of left multiplication by the entries of ``d``."""
    f = alg.field
    src = _generator_positions(alg, p1)
    tgt = _generator_positions(alg, p0)
    n0 = sum(len(b) for _, b in tgt)
    n1 = sum(len(b) for _, b in src)
    mat = f.zeros((n0, n1))
    for t in range(len(p1)):
        start, basis = src[t]
        for s in range(len(p0)):
            tstart, tbasis = tgt[s]
            x = d[s, t]
            if not np.any(x != 0):
                continue
            lm = alg.left_mul_matrix(x)
            mat[tstart:tstart + len(tbasis), start:start + len(basis)] = lm[np.ix_(tbasis, basis)]
    return mat


def minimal_projective_presentation(m: RightModule) -> Presentation:
    sub, incl, cov = syzygy_with_inclusion(m)
    f = m.field
    if sub.dim == 0:
        p1 = ()
        d_map = f.zeros((cov.module.dim, 0))
    else:
        c1 = projective_cover(sub)
        p1 = c1.vertices
        d_map = f.matmul(incl, c1.map)
    d = map_to_entries(m.alg, p1, cov.vertices, d_map)
    return Presentation(tuple(p1), cov.vertices, d, d_map, cov)


def cokernel_of_entries(alg: FinDimAlgebra, p1, p0, d) -> RightModule:
    P0 = projective_sum(alg, p0)
    mat = entries_to_map(alg, p1, p0, d)
    if P0.dim == 0:
        return P0
    return P0.quotient(mat if mat.shape[1] else alg.field.zeros((P0.dim, 0)))[0]


def ext1_dim(m: RightModule, n: RightModule) -> int:
    """dim Ext^1(m, n) = dim Hom(Omega m, n) - rank of restriction from Hom(P0, n)."""
    f = m.field
    k, incl, cov = syzygy_with_inclusion(m)
    if k.dim == 0:
        return 0
    hk = hom_basis(k, n)
    if not hk:
        return 0
    hp = hom_basis(cov.module, n)
    if not hp:
        return len(hk)
    R = np.array([f.matmul(h, incl).reshape(-1) for h in hp], dtype=f.dtype).T
    return len(hk) - f.rank(R)


# ---------------------------------------------------------------------------
# self-injectivity and the Auslander-Reiten translate


def check_basic(alg: FinDimAlgebra):
    for i in range(alg.n):
        t, _ = top(projective(alg, i))
        if t.dim_vector != tuple(int(k == i) for k in range(alg.n)):
            raise NotBasicError(f"top of P_{alg.vertices[i]} is not the simple at that vertex")


def is_self_injective(alg: FinDimAlgebra) -> tuple[bool, dict | None]:
    check_basic(alg)
    if alg.dim == 0:
        return True, {}
    dual = decompose_module(dual_regular(alg))
    projs = [projective(alg, i) for i in range(alg.n)]
    matched = set()
    ok = len(dual) == alg.n and all(k == 1 for _, k in dual)
    if ok:
        for inj, _ in dual:
            hit = [i for i, p in enumerate(projs) if i not in matched and _iso_indecomposable(inj, p)]
            if not hit:
                ok = False
                break
            matched.add(hit[0])
    if not ok:
        return False, None
    nu = {}
    for i, p in enumerate(projs):
        s, _ = socle(p)
        if s.dim != 1:
            raise InvariantViolation("self-injective algebra with non-simple socle")
        nu[alg.vertices[i]] = alg.vertices[int(s.vert[0])]
    return True, nu


def tau(m: RightModule) -> RightModule:
    """D Tr m from a minimal projective presentation."""
    f = m.field
    alg = m.alg
    pres = minimal_projective_presentation(m)
    p0, p1, d = pres.p0, pres.p1, pres.d
    if not p1:
        return zero_module(alg)
    # X = sum_t A e_{j_t} as a left module; coordinates per basis b with right(b) = j_t
    xblocks, pos = [], 0
    for j in p1:
        basis = np.nonzero(alg.right == j)[0]
        xblocks.append((pos, basis))
        pos += len(basis)
    nx = pos
    images = []
    for s, i in enumerate(p0):
        for b in np.nonzero(alg.right == i)[0]:
            y = alg.basis_vector(b)
            v = f.zeros(nx)
            for t, (start, basis) in enumerate(xblocks):
                prod = alg.product(y, d[s, t])
                v[start:start + len(basis)] = prod[basis]
            images.append(v)
    im = np.array(images, dtype=f.dtype).T
    W = f.left_kernel(im)                                  # functionals vanishing on the image
    k = W.shape[0]
    if k == 0:
        return zero_module(alg)
    act = f.zeros((alg.dim, k, k))
    for a in range(alg.dim):
        La = f.zeros((nx, nx))
        lm = alg.left_mul_matrix(alg.basis_vector(a))
        for start, basis in xblocks:
            La[start:start + len(basis), start:start + len(basis)] = lm[np.ix_(basis, basis)]
        WL = f.matmul(W, La)
        R = f.solve(W.T, WL.T)                            # W^T R = (W L)^T, so W L = R^T W
        if R is None:
            raise InvariantViolation("annihilator is not a submodule")
        act[a] = R
    return RightModule.from_action(alg, act)
