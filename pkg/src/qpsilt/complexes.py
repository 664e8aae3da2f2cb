"""Bounded complexes of projectives over a split basic algebra, up to homotopy.

A term is a tuple of vertex indices (the summands e_v A).  A morphism from
``src`` to ``tgt`` is an array of shape (len(tgt), len(src), dim A) whose
(t, s) entry lies in the corner e_{tgt[t]} A e_{src[s]} and acts by left
multiplication.  Composition is matrix multiplication over the algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FinDimAlgebra
from .errors import DimensionError, FieldTooSmallError, InvariantViolation


# ---------------------------------------------------------------------------
# morphisms between projective sums


class MorSpace:
    """Coordinates of morphisms src -> tgt: only corner-valid entries."""

    def __init__(self, alg: FinDimAlgebra, src: tuple, tgt: tuple):
        self.alg = alg
        self.src, self.tgt = tuple(src), tuple(tgt)
        d = alg.dim
        self.shape = (len(tgt), len(src), d)
        idx = []
        for t, w in enumerate(tgt):
            for s, v in enumerate(src):
                for b in alg.corner(w, v):
                    idx.append((t * len(src) + s) * d + b)
        self.idx = np.array(idx, dtype=np.int64)
        self.dim = len(idx)
        self.lookup = np.full(int(np.prod(self.shape)) if all(self.shape) else 0, -1, dtype=np.int64)
        if self.lookup.size:
            self.lookup[self.idx] = np.arange(self.dim)

    def to_full(self, vec) -> np.ndarray:
        f = self.alg.field
        full = f.zeros(int(np.prod(self.shape)))
        if self.dim:
            full[self.idx] = vec
        return full.reshape(self.shape)

    def from_full(self, arr) -> np.ndarray:
        if self.dim == 0:
            return self.alg.field.zeros(0)
        return np.asarray(arr).reshape(-1)[self.idx]

    def unravel(self):
        d = self.alg.dim
        ns = len(self.src)
        b = self.idx % d
        ts = self.idx // d
        return ts // ns, ts % ns, b


_MS_CACHE: dict = {}


def morspace(alg, src, tgt) -> MorSpace:
    key = (id(alg), tuple(src), tuple(tgt))
    ms = _MS_CACHE.get(key)
    if ms is None or ms.alg is not alg:
        ms = MorSpace(alg, src, tgt)
        if len(_MS_CACHE) > 20000:
            _MS_CACHE.clear()
        _MS_CACHE[key] = ms
    return ms


def compose_mor(alg: FinDimAlgebra, g, f_) -> np.ndarray:
    """g after f_ for full morphism arrays."""
    fld = alg.field
    if g.shape[1] == 0 or f_.shape[1] == 0 or g.shape[0] == 0:
        return fld.zeros((g.shape[0], f_.shape[1], alg.dim))
    # (u,t,b) (t,s,c) m[b,c,d] -> (u,s,d)
    gm = fld.reduce(np.tensordot(g, alg.mult, axes=([2], [0])))        # (u,t,c,d)
    return fld.reduce(np.tensordot(gm, f_, axes=([1, 2], [0, 2])).transpose(0, 2, 1))


def left_compose_matrix(alg, G, ms_in: MorSpace, ms_out: MorSpace) -> np.ndarray:
    """Matrix of F -> G F from ms_in coordinates to ms_out coordinates."""
    fld = alg.field
    M = fld.zeros((ms_out.dim, ms_in.dim))
    if ms_in.dim == 0 or ms_out.dim == 0:
        return M
    T = fld.reduce(np.tensordot(G, alg.mult, axes=([2], [0])))          # (u, t, c, d)
    t_k, s_k, c_k = ms_in.unravel()
    vals = T[:, t_k, c_k, :]                                              # (u, K, d)
    nu, K, d = vals.shape
    ns = len(ms_out.src)
    u_idx = np.arange(nu).reshape(nu, 1, 1)
    d_idx = np.arange(d).reshape(1, 1, d)
    flat = (u_idx * ns + s_k.reshape(1, K, 1)) * d + d_idx
    pos = ms_out.lookup[flat]
    k_idx = np.broadcast_to(np.arange(K).reshape(1, K, 1), flat.shape)
    mask = vals != 0
    if np.any(pos[mask] < 0):
        raise InvariantViolation("composition leaves the corner structure")
    M[pos[mask], k_idx[mask]] = vals[mask]
    return M


def right_compose_matrix(alg, G, ms_in: MorSpace, ms_out: MorSpace) -> np.ndarray:
    """Matrix of F -> F G."""
    fld = alg.field
    M = fld.zeros((ms_out.dim, ms_in.dim))
    if ms_in.dim == 0 or ms_out.dim == 0:
        return M
    S = fld.reduce(np.tensordot(G, alg.mult, axes=([2], [1])))          # (s, r, b, d)
    t_k, s_k, b_k = ms_in.unravel()
    vals = S[s_k, :, b_k, :]                                              # (K, r, d)
    K, nr, d = vals.shape
    k_idx = np.broadcast_to(np.arange(K).reshape(K, 1, 1), vals.shape)
    r_idx = np.arange(nr).reshape(1, nr, 1)
    d_idx = np.arange(d).reshape(1, 1, d)
    flat = (t_k.reshape(K, 1, 1) * nr + r_idx) * d + d_idx
    pos = ms_out.lookup[flat]
    mask = vals != 0
    if np.any(pos[mask] < 0):
        raise InvariantViolation("composition leaves the corner structure")
    M[pos[mask], k_idx[mask]] = vals[mask]
    return M


def check_corners(alg, arr, src, tgt):
    ms = morspace(alg, src, tgt)
    full = np.asarray(arr).reshape(-1)
    mask = np.ones(full.size, dtype=bool)
    mask[ms.idx] = False
    if np.any(full[mask] != 0):
        raise InvariantViolation("morphism entry outside its idempotent corner")


def identity_mor(alg, term) -> np.ndarray:
    f = alg.field
    out = f.zeros((len(term), len(term), alg.dim))
    for k, v in enumerate(term):
        out[k, k, alg.idempotents[v]] = f.one
    return out


# ---------------------------------------------------------------------------
# complexes


class BoundedComplex:
    """Terms in degrees lo .. lo + len(terms) - 1; d^n: X^n -> X^{n+1}."""

    def __init__(self, alg: FinDimAlgebra, lo: int, terms, diffs, check: bool = True):
        self.alg = alg
        self.lo = int(lo)
        self.terms = tuple(tuple(int(v) for v in t) for t in terms)
        f = alg.field
        ds = []
        for k in range(max(len(self.terms) - 1, 0)):
            d = diffs[k] if k < len(diffs) else None
            shape = (len(self.terms[k + 1]), len(self.terms[k]), alg.dim)
            if d is None:
                d = f.zeros(shape)
            d = np.asarray(d)
            if d.shape != shape:
                raise DimensionError(f"differential {k} has shape {d.shape}, expected {shape}")
            ds.append(d)
        self.diffs = tuple(ds)
        if check:
            self.check()

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, n: int) -> tuple:
        k = n - self.lo
        return self.terms[k] if 0 <= k < len(self.terms) else ()

    def diff(self, n: int) -> np.ndarray:
        k = n - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return self.alg.field.zeros((len(self.term(n + 1)), len(self.term(n)), self.alg.dim))

    def degrees(self):
        return [n for n in range(self.lo, self.hi + 1) if self.term(n)]

    def is_zero(self) -> bool:
        return not any(self.terms)

    def support(self) -> tuple[int, int] | None:
        degs = self.degrees()
        return (min(degs), max(degs)) if degs else None

    def mult_vector(self, n: int) -> tuple:
        t = self.term(n)
        return tuple(t.count(v) for v in range(self.alg.n))

    def check(self):
        for k, d in enumerate(self.diffs):
            check_corners(self.alg, d, self.terms[k], self.terms[k + 1])
        for k in range(len(self.diffs) - 1):
            dd = compose_mor(self.alg, self.diffs[k + 1], self.diffs[k])
            if np.any(dd != 0):
                raise InvariantViolation("d^2 != 0")

    def __repr__(self):
        parts = []
        for n in range(self.lo, self.hi + 1):
            parts.append(f"{n}:[{' '.join(self.alg.vertices[v] for v in self.term(n))}]")
        return f"<Complex {' '.join(parts)}>"

    # -- constructions ---------------------------------------------------
    @classmethod
    def zero(cls, alg) -> "BoundedComplex":
        return cls(alg, 0, [()], [], check=False)

    @classmethod
    def stalk(cls, alg, vertices, degree: int = 0) -> "BoundedComplex":
        return cls(alg, degree, [tuple(vertices)], [], check=False)

    def shift(self, k: int = 1) -> "BoundedComplex":
        """(Sigma^k X)^n = X^{n+k} with differential (-1)^k d."""
        f = self.alg.field
        sign = -1 if k % 2 else 1
        ds = [f.reduce(d * sign) for d in self.diffs]
        return BoundedComplex(self.alg, self.lo - k, self.terms, ds, check=False)

    def trimmed(self) -> "BoundedComplex":
        degs = self.degrees()
        if not degs:
            return BoundedComplex.zero(self.alg)
        lo, hi = min(degs), max(degs)
        terms = [self.term(n) for n in range(lo, hi + 1)]
        diffs = [self.diff(n) for n in range(lo, hi)]
        return BoundedComplex(self.alg, lo, terms, diffs, check=False)

    def window(self, lo: int, hi: int) -> "BoundedComplex":
        terms = [self.term(n) for n in range(lo, hi + 1)]
        diffs = [self.diff(n) for n in range(lo, hi)]
        return BoundedComplex(self.alg, lo, terms, diffs, check=False)

    def offsets(self, n: int) -> tuple:
        return tuple(range(len(self.term(n))))


def direct_sum(*xs: BoundedComplex) -> tuple[BoundedComplex, list[dict]]:
    """Direct sum plus, per summand, the slice of its term positions in each degree."""
    alg = xs[0].alg
    f = alg.field
    nonzero = [x for x in xs if not x.is_zero()]
    if not nonzero:
        return BoundedComplex.zero(alg), [{} for _ in xs]
    lo = min(x.support()[0] for x in nonzero)
    hi = max(x.support()[1] for x in nonzero)
    terms, slices = [], [dict() for _ in xs]
    for n in range(lo, hi + 1):
        t, pos = [], 0
        for k, x in enumerate(xs):
            part = x.term(n)
            slices[k][n] = slice(pos, pos + len(part))
            t.extend(part)
            pos += len(part)
        terms.append(tuple(t))
    diffs = []
    for n in range(lo, hi):
        d = f.zeros((len(terms[n + 1 - lo]), len(terms[n - lo]), alg.dim))
        for k, x in enumerate(xs):
            d[slices[k][n + 1], slices[k][n]] = x.diff(n)
        diffs.append(d)
    return BoundedComplex(alg, lo, terms, diffs, check=False), slices


class ChainMap:
    """Degreewise morphisms; ``comps[n]`` : src^n -> tgt^n (missing = 0)."""

    def __init__(self, src: BoundedComplex, tgt: BoundedComplex, comps: dict | None = None):
        self.src, self.tgt = src, tgt
        self.alg = src.alg
        self.comps = {}
        f = self.alg.field
        for n in range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1):
            s, t = src.term(n), tgt.term(n)
            if s and t:
                c = (comps or {}).get(n)
                self.comps[n] = f.zeros((len(t), len(s), self.alg.dim)) if c is None else np.asarray(c)

    def comp(self, n: int) -> np.ndarray:
        c = self.comps.get(n)
        if c is None:
            return self.alg.field.zeros((len(self.tgt.term(n)), len(self.src.term(n)), self.alg.dim))
        return c

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        comps = {n: compose_mor(self.alg, self.comp(n), other.comp(n)) for n in other.comps}
        return ChainMap(other.src, self.tgt, comps)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        f = self.alg.field
        return ChainMap(self.src, self.tgt, {n: f.reduce(self.comp(n) + other.comp(n)) for n in self.comps})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        f = self.alg.field
        return ChainMap(self.src, self.tgt, {n: f.reduce(self.comp(n) - other.comp(n)) for n in self.comps})

    def scale(self, c) -> "ChainMap":
        f = self.alg.field
        c = f(c)
        return ChainMap(self.src, self.tgt, {n: f.reduce(v * c) for n, v in self.comps.items()})

    def is_chain_map(self) -> bool:
        for n in range(min(self.src.lo, self.tgt.lo) - 1, max(self.src.hi, self.tgt.hi) + 1):
            lhs = compose_mor(self.alg, self.tgt.diff(n), self.comp(n))
            rhs = compose_mor(self.alg, self.comp(n + 1), self.src.diff(n))
            if lhs.size and np.any(lhs != rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not np.any(v != 0) for v in self.comps.values())

    def shift(self, k: int = 1) -> "ChainMap":
        return ChainMap(self.src.shift(k), self.tgt.shift(k), {n - k: v for n, v in self.comps.items()})

    def retarget(self, src=None, tgt=None) -> "ChainMap":
        """Same components viewed between complexes with identical terms."""
        return ChainMap(src or self.src, tgt or self.tgt, self.comps)


def identity_map(x: BoundedComplex) -> ChainMap:
    return ChainMap(x, x, {n: identity_mor(x.alg, x.term(n)) for n in x.degrees()})


def zero_map(x: BoundedComplex, y: BoundedComplex) -> ChainMap:
    return ChainMap(x, y)


def block_map(src_sum, src_slices, tgt_sum, tgt_slices, blocks: dict) -> ChainMap:
    """Assemble a map between direct sums from blocks[(t, s)] : src_s -> tgt_t."""
    alg = src_sum.alg
    f = alg.field
    comps = {}
    for n in range(min(src_sum.lo, tgt_sum.lo), max(src_sum.hi, tgt_sum.hi) + 1):
        s_term, t_term = src_sum.term(n), tgt_sum.term(n)
        if not s_term or not t_term:
            continue
        c = f.zeros((len(t_term), len(s_term), alg.dim))
        for (t, s), m in blocks.items():
            if n in m.comps:
                c[tgt_slices[t][n], src_slices[s][n]] = m.comps[n]
        comps[n] = c
    return ChainMap(src_sum, tgt_sum, comps)


def sub_block(m: ChainMap, src_part: BoundedComplex, src_slice, tgt_part: BoundedComplex, tgt_slice) -> ChainMap:
    comps = {}
    for n in m.comps:
        if src_part.term(n) and tgt_part.term(n):
            comps[n] = m.comps[n][tgt_slice[n], src_slice[n]]
    return ChainMap(src_part, tgt_part, comps)


# ---------------------------------------------------------------------------
# cones


@dataclass
class Cone:
    """Cone(f)^n = X^{n+1} + Y^n with d = [[-d_X, 0], [f, d_Y]]."""
    complex: BoundedComplex
    incl: ChainMap           # Y -> Cone
    proj: ChainMap           # Cone -> Sigma X
    split: dict              # n -> size of the X^{n+1} block


def cone(fm: ChainMap) -> Cone:
    x, y = fm.src, fm.tgt
    alg = x.alg
    f = alg.field
    lo = min(x.lo - 1, y.lo)
    hi = max(x.hi - 1, y.hi)
    terms, split = [], {}
    for n in range(lo, hi + 1):
        terms.append(x.term(n + 1) + y.term(n))
        split[n] = len(x.term(n + 1))
    diffs = []
    for n in range(lo, hi):
        a, b = split[n], split[n + 1]
        d = f.zeros((len(terms[n + 1 - lo]), len(terms[n - lo]), alg.dim))
        d[:b, :a] = f.reduce(-x.diff(n + 1))
        d[b:, :a] = fm.comp(n + 1)
        d[b:, a:] = y.diff(n)
        diffs.append(d)
    cx = BoundedComplex(alg, lo, terms, diffs, check=True)
    incl, proj = {}, {}
    sx = x.shift(1)
    for n in range(lo, hi + 1):
        a = split[n]
        if y.term(n):
            c = f.zeros((len(cx.term(n)), len(y.term(n)), alg.dim))
            c[a:] = identity_mor(alg, y.term(n))
            incl[n] = c
        if x.term(n + 1):
            c = f.zeros((len(x.term(n + 1)), len(cx.term(n)), alg.dim))
            c[:, :a] = identity_mor(alg, x.term(n + 1))
            proj[n] = c
    return Cone(cx, ChainMap(y, cx, incl), ChainMap(cx, sx, proj), split)


@dataclass
class Cocone:
    """K = Sigma^{-1} Cone(f) with K^n = X^n + Y^{n-1}; k: K -> X the projection."""
    complex: BoundedComplex
    proj: ChainMap            # K -> X
    conn: ChainMap            # Sigma^{-1} Y -> K  (the connecting map)


def cocone(fm: ChainMap) -> Cocone:
    c = cone(fm)
    k = c.complex.shift(-1)
    x, y = fm.src, fm.tgt
    alg = x.alg
    f = alg.field
    proj, conn = {}, {}
    sy = y.shift(-1)
    for n in range(k.lo, k.hi + 1):
        a = c.split[n - 1]              # size of the X^n block of K^n
        if x.term(n):
            m = f.zeros((len(x.term(n)), len(k.term(n)), alg.dim))
            m[:, :a] = identity_mor(alg, x.term(n))
            proj[n] = m
        if y.term(n - 1):
            m = f.zeros((len(k.term(n)), len(y.term(n - 1)), alg.dim))
            m[a:] = identity_mor(alg, y.term(n - 1))
            conn[n] = m
    return Cocone(k, ChainMap(k, x, proj), ChainMap(sy, k, conn))


# ---------------------------------------------------------------------------
# homotopy Hom spaces


class HomSpace:
    """Hom_{K(proj)}(X, Y) in degree 0: chain maps modulo null-homotopic ones."""

    def __init__(self, x: BoundedComplex, y: BoundedComplex):
        if x.alg is not y.alg:
            raise ValueError("complexes over different algebras")
        self.x, self.y = x, y
        alg = self.alg = x.alg
        f = self.field = alg.field
        lo = min(x.lo, y.lo) - 1
        hi = max(x.hi, y.hi) + 1
        # unknowns f^n : X^n -> Y^n
        self.mdeg, self.moff, pos = [], {}, 0
        for n in range(lo, hi + 1):
            if x.term(n) and y.term(n):
                ms = morspace(alg, x.term(n), y.term(n))
                if ms.dim:
                    self.mdeg.append(n)
                    self.moff[n] = (pos, ms)
                    pos += ms.dim
        self.nvar = pos
        # homotopies h^n : X^n -> Y^{n-1}
        hoff, hpos = {}, 0
        for n in range(lo, hi + 1):
            if x.term(n) and y.term(n - 1):
                ms = morspace(alg, x.term(n), y.term(n - 1))
                if ms.dim:
                    hoff[n] = (hpos, ms)
                    hpos += ms.dim
        self.hoff, self.nhom = hoff, hpos
        # chain condition d_Y f^n - f^{n+1} d_X : X^n -> Y^{n+1}
        blocks = []
        for n in range(lo, hi + 1):
            if not (x.term(n) and y.term(n + 1)):
                continue
            out = morspace(alg, x.term(n), y.term(n + 1))
            if out.dim == 0:
                continue
            row = f.zeros((out.dim, self.nvar))
            if n in self.moff:
                o, ms = self.moff[n]
                row[:, o:o + ms.dim] = left_compose_matrix(alg, y.diff(n), ms, out)
            if n + 1 in self.moff:
                o, ms = self.moff[n + 1]
                row[:, o:o + ms.dim] = f.reduce(row[:, o:o + ms.dim] - right_compose_matrix(alg, x.diff(n), ms, out))
            blocks.append(row)
        D = np.vstack(blocks) if blocks else f.zeros((0, self.nvar))
        self.D = D
        # null-homotopic maps: f^n = d_Y^{n-1} h^n + h^{n+1} d_X^n
        H = f.zeros((self.nvar, self.nhom))
        for n in self.mdeg:
            o, out = self.moff[n]
            if n in hoff:
                ho, ms = hoff[n]
                H[o:o + out.dim, ho:ho + ms.dim] = left_compose_matrix(alg, y.diff(n - 1), ms, out)
            if n + 1 in hoff:
                ho, ms = hoff[n + 1]
                H[o:o + out.dim, ho:ho + ms.dim] = f.reduce(H[o:o + out.dim, ho:ho + ms.dim] +
                                                             right_compose_matrix(alg, x.diff(n), ms, out))
        self.H = H
        Z = f.kernel(D) if self.nvar else f.zeros((0, 0))
        if self.nhom and self.nvar:
            self.B, self.bpiv = f.rref(H.T)
            self.B = self.B[: len(self.bpiv)]
        else:
            self.B, self.bpiv = f.zeros((0, self.nvar)), []
        if Z.shape[1]:
            nf = f.reduce_mod(Z.T, self.B, self.bpiv)
            Q, qpiv = f.rref(nf)
            self.Q, self.qpiv = Q[: len(qpiv)], qpiv
        else:
            self.Q, self.qpiv = f.zeros((0, self.nvar)), []
        self.dim = len(self.qpiv)
        self._basis = None

    # vectors <-> chain maps
    def to_vec(self, m: ChainMap) -> np.ndarray:
        f = self.field
        v = f.zeros(self.nvar)
        for n in self.mdeg:
            o, ms = self.moff[n]
            v[o:o + ms.dim] = ms.from_full(m.comp(n))
        return v

    def from_vec(self, v) -> ChainMap:
        comps = {}
        for n in self.mdeg:
            o, ms = self.moff[n]
            comps[n] = ms.to_full(v[o:o + ms.dim])
        return ChainMap(self.x, self.y, comps)

    def is_cycle_vec(self, v) -> bool:
        return self.D.shape[0] == 0 or not np.any(self.field.matmul(self.D, v) != 0)

    def normal_form(self, v) -> np.ndarray:
        return self.field.reduce_mod(np.asarray(v).reshape(1, -1), self.B, self.bpiv)[0]

    def coords(self, m) -> np.ndarray:
        """Coordinates of the class of a chain map (or vector) in ``basis``."""
        v = m if isinstance(m, np.ndarray) else self.to_vec(m)
        if not self.is_cycle_vec(v):
            raise InvariantViolation("not a chain map")
        nf = self.normal_form(v)
        c = nf[self.qpiv] if self.dim else self.field.zeros(0)
        if self.dim and np.any(self.field.reduce(nf - c @ self.Q) != 0):
            raise InvariantViolation("class not in the span of the basis")
        if not self.dim and np.any(nf != 0):
            raise InvariantViolation("nonzero class in a zero Hom space")
        return c

    def is_null(self, m) -> bool:
        v = m if isinstance(m, np.ndarray) else self.to_vec(m)
        return not np.any(self.normal_form(v) != 0)

    @property
    def basis(self) -> list[ChainMap]:
        if self._basis is None:
            self._basis = [self.from_vec(row) for row in self.Q]
        return self._basis

    def element(self, coords) -> ChainMap:
        f = self.field
        v = f.reduce(np.asarray(coords) @ self.Q) if self.dim else f.zeros(self.nvar)
        return self.from_vec(v)

    def coords_rows(self, V) -> np.ndarray:
        """Class coordinates of many cycle vectors (rows of V) at once."""
        f = self.field
        V = np.asarray(V)
        if V.shape[0] == 0 or self.dim == 0:
            return f.zeros((V.shape[0], self.dim))
        nf = f.reduce_mod(V, self.B, self.bpiv)
        return nf[:, self.qpiv]

    def post_matrix(self, g: ChainMap, target: "HomSpace") -> np.ndarray:
        """Matrix of v -> vec(g o v) from this space's cochains to ``target``'s."""
        f = self.field
        M = f.zeros((target.nvar, self.nvar))
        for n in self.mdeg:
            if n not in target.moff:
                continue
            o, ms = self.moff[n]
            to, tms = target.moff[n]
            gn = g.comp(n)
            if gn.size and np.any(gn != 0):
                M[to:to + tms.dim, o:o + ms.dim] = left_compose_matrix(self.alg, gn, ms, tms)
        return M

    def pre_matrix(self, h: ChainMap, target: "HomSpace") -> np.ndarray:
        """Matrix of v -> vec(v o h) from this space's cochains to ``target``'s."""
        f = self.field
        M = f.zeros((target.nvar, self.nvar))
        for n in self.mdeg:
            if n not in target.moff:
                continue
            o, ms = self.moff[n]
            to, tms = target.moff[n]
            hn = h.comp(n)
            if hn.size and np.any(hn != 0):
                M[to:to + tms.dim, o:o + ms.dim] = right_compose_matrix(self.alg, hn, ms, tms)
        return M

    def homotopy(self, m) -> dict | None:
        """Some h with m = d h + h d, as components h^n : X^n -> Y^{n-1}; None if m is not null."""
        f = self.field
        v = m if isinstance(m, np.ndarray) else self.to_vec(m)
        if self.nhom == 0:
            return {} if not np.any(v != 0) else None
        sol = f.solve(self.H, v)
        if sol is None:
            return None
        return {n: ms.to_full(sol[o:o + ms.dim]) for n, (o, ms) in self.hoff.items()}


def hom(x: BoundedComplex, y: BoundedComplex, shift: int = 0) -> HomSpace:
    """Hom(X, Sigma^shift Y)."""
    return HomSpace(x, y.shift(shift) if shift else y)


# ---------------------------------------------------------------------------
# minimal complexes


def local_inverse(alg: FinDimAlgebra, x, v: int) -> np.ndarray:
    """Inverse of x in the local ring e_v A e_v (x must have nonzero e_v part)."""
    f = alg.field
    e = alg.idem(v)
    lam = x[alg.idempotents[v]]
    if lam == 0:
        raise ZeroDivisionError("element lies in the radical")
    li = f.inv(lam)
    r = f.reduce(x * li - e)                     # x = lam (e + r)
    term = e
    acc = e.copy()
    neg_r = f.reduce(-r) if f.p else -r
    for _ in range(alg.dim + 1):
        term = alg.product(term, neg_r)
        if not np.any(term != 0):
            break
        acc = f.reduce(acc + term)
    else:
        raise InvariantViolation("radical element is not nilpotent")
    return f.reduce(acc * li)


def reduce_complex(x: BoundedComplex) -> BoundedComplex:
    """Remove contractible summands by Gaussian elimination on invertible entries."""
    alg = x.alg
    f = alg.field
    terms = [list(t) for t in x.terms]
    diffs = [d.copy() for d in x.diffs]
    lo = x.lo
    changed = True
    while changed:
        changed = False
        for k, d in enumerate(diffs):
            src, tgt = terms[k], terms[k + 1]
            hit = None
            for t in range(len(tgt)):
                for s in range(len(src)):
                    if tgt[t] == src[s] and d[t, s, alg.idempotents[src[s]]] != 0:
                        hit = (t, s)
                        break
                if hit:
                    break
            if hit is None:
                continue
            t, s = hit
            phi_inv = local_inverse(alg, d[t, s], src[s])
            keep_t = [r for r in range(len(tgt)) if r != t]
            keep_s = [c for c in range(len(src)) if c != s]
            gamma = d[keep_t][:, [s]]                      # X'^n -> ... column s
            delta = d[[t]][:, keep_s]
            eps = d[np.ix_(keep_t, keep_s)]
            corr = compose_mor(alg, gamma, compose_mor(alg, phi_inv.reshape(1, 1, -1), delta))
            diffs[k] = f.reduce(eps - corr)
            if k > 0:
                diffs[k - 1] = diffs[k - 1][keep_s]
            if k + 1 < len(diffs):
                diffs[k + 1] = diffs[k + 1][:, keep_t]
            terms[k] = [src[c] for c in keep_s]
            terms[k + 1] = [tgt[r] for r in keep_t]
            changed = True
            break
    out = BoundedComplex(alg, lo, terms, diffs, check=True)
    return out.trimmed()


def is_radical(x: BoundedComplex) -> bool:
    alg = x.alg
    for k, d in enumerate(x.diffs):
        for t, w in enumerate(x.terms[k + 1]):
            for s, v in enumerate(x.terms[k]):
                if w == v and d[t, s, alg.idempotents[v]] != 0:
                    return False
    return True


def compose_table(hs_g: HomSpace, hs_f: HomSpace, hs_out: HomSpace) -> np.ndarray:
    """T[u, v] = coordinates of (basis g_u) o (basis f_v) in hs_out."""
    f = hs_out.field
    T = f.zeros((hs_g.dim, hs_f.dim, hs_out.dim))
    if hs_g.dim == 0 or hs_f.dim == 0 or hs_out.dim == 0:
        return T
    for u, g in enumerate(hs_g.basis):
        M = hs_f.post_matrix(g, hs_out)
        V = f.matmul(hs_f.Q, M.T)                     # rows: vec(g o f_v)
        T[u] = hs_out.coords_rows(V)
    return T


def end_struct(hs: HomSpace):
    """Structure constants of End(X) in the class basis, with product = composition."""
    from .ksalg import StructAlgebra
    C = compose_table(hs, hs, hs)
    unit = hs.coords(identity_map(hs.x))
    return StructAlgebra(hs.field, C, unit)


def _top_invertible(alg: FinDimAlgebra, comp: np.ndarray, src: tuple, tgt: tuple) -> bool:
    """Whether a morphism between projective sums is invertible (mod the radical)."""
    f = alg.field
    if len(src) != len(tgt):
        return False
    for v in set(src) | set(tgt):
        rows = [t for t, w in enumerate(tgt) if w == v]
        cols = [s for s, w in enumerate(src) if w == v]
        if len(rows) != len(cols):
            return False
        block = comp[np.ix_(rows, cols)][:, :, alg.idempotents[v]]
        if f.rank(block) != len(rows):
            return False
    return True


def is_degreewise_iso(m: ChainMap) -> bool:
    for n in sorted(set(m.src.degrees()) | set(m.tgt.degrees())):
        if not _top_invertible(m.alg, m.comp(n), m.src.term(n), m.tgt.term(n)):
            return False
    return True


def is_local_complex(x: BoundedComplex) -> bool:
    """Indecomposable (nonzero with local endomorphism ring)."""
    hs = HomSpace(x, x)
    if hs.dim == 0:
        return False
    return end_struct(hs).is_local()


def find_isomorphism(x: BoundedComplex, y: BoundedComplex, tries: int = 8, seed: int = 0):
    """A degreewise invertible chain map between the reduced forms, or None.

    Minimal complexes are homotopy equivalent iff some chain map between
    them is invertible in every degree, and a generic class detects that.
    """
    rx, ry = reduce_complex(x), reduce_complex(y)
    if rx.is_zero() or ry.is_zero():
        return ChainMap(rx, ry) if rx.is_zero() and ry.is_zero() else None
    degs = sorted(set(rx.degrees()) | set(ry.degrees()))
    if any(rx.mult_vector(n) != ry.mult_vector(n) for n in degs):
        return None
    hxy, hyx = HomSpace(rx, ry), HomSpace(ry, rx)
    if hxy.dim != hyx.dim or hxy.dim == 0:
        return None
    f = x.alg.field
    rng = np.random.default_rng(seed)
    for k in range(tries + hxy.dim):
        if k < hxy.dim:
            m = hxy.basis[k]
        else:
            m = hxy.element(f.random(rng, hxy.dim))
        if is_degreewise_iso(m):
            return m
    return _types_fallback(rx, ry)


def _types_fallback(rx, ry):
    """Decide by Krull-Schmidt types in End(rx + ry) when sampling found nothing."""
    s, sl = direct_sum(rx, ry)
    hs = HomSpace(s, s)
    st = end_struct(hs)
    ex = hs.coords(block_map(s, sl, s, sl, {(0, 0): identity_map(rx)}))
    ey = hs.coords(block_map(s, sl, s, sl, {(1, 1): identity_map(ry)}))
    px = st.primitive_idempotents(ex)
    py = st.primitive_idempotents(ey)
    labels = st.classify(px + py)
    if sorted(labels[:len(px)]) != sorted(labels[len(px):]):
        return None
    raise FieldTooSmallError("isomorphic types found but no sampled isomorphism; enlarge the field")


def complexes_isomorphic(x: BoundedComplex, y: BoundedComplex) -> bool:
    return find_isomorphism(x, y) is not None
