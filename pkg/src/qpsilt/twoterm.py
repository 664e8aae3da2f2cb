"""Two-term complexes of projectives: presilting tests, decomposition,
approximations, silting mutation, and enumeration of two-term silting objects.

A two-term complex lives in degrees -1 and 0.  Complexes are kept reduced
(no invertible differential entry), which makes the shape (m^-1, m^0) an
isomorphism invariant.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .algebra import FinDimAlgebra
from .complexes import (BoundedComplex, ChainMap, HomSpace, block_map, compose_table, cocone, cone,
                        direct_sum, end_struct, is_radical, reduce_complex)
from .endalg import SummandAlgebra
from .errors import CapExceededError, InvariantViolation, LeavesWindowError, NotBasicError, NotSiltingError
from .modules import (RightModule, are_isomorphic, cokernel_of_entries, decompose_module,
                      entries_to_map, minimal_projective_presentation)


# ---------------------------------------------------------------------------
# construction


def two_term(alg: FinDimAlgebra, minus, zero, d=None) -> BoundedComplex:
    """P^-1 -> P^0 with entries d[t, s] in e_{zero[t]} A e_{minus[s]}."""
    minus, zero = tuple(minus), tuple(zero)
    if d is None:
        d = alg.field.zeros((len(zero), len(minus), alg.dim))
    return BoundedComplex(alg, -1, [minus, zero], [np.asarray(d)])


def stalk(alg: FinDimAlgebra, vertices=None, shifted: bool = False) -> BoundedComplex:
    """The stalk complex of a projective; ``shifted`` puts it in degree -1."""
    vertices = tuple(range(alg.n)) if vertices is None else tuple(vertices)
    return two_term(alg, vertices, ()) if shifted else two_term(alg, (), vertices)


def as_two_term(x: BoundedComplex) -> BoundedComplex:
    """Reduce and re-index into degrees -1, 0; error when that is impossible."""
    r = reduce_complex(x)
    if r.is_zero():
        return two_term(x.alg, (), ())
    lo, hi = r.support()
    if lo < -1 or hi > 0:
        raise LeavesWindowError(f"complex has terms in degrees {lo}..{hi}", complex=r)
    return two_term(x.alg, r.term(-1), r.term(0), r.diff(-1))


def minus_part(x: BoundedComplex) -> tuple:
    return x.term(-1)


def zero_part(x: BoundedComplex) -> tuple:
    return x.term(0)


def differential(x: BoundedComplex) -> np.ndarray:
    return x.diff(-1)


def shape(x: BoundedComplex) -> tuple:
    return x.mult_vector(-1), x.mult_vector(0)


def hom_space(x: BoundedComplex, y: BoundedComplex, n: int = 0) -> HomSpace:
    """Hom(x, Sigma^n y) in the homotopy category."""
    return HomSpace(x, y.shift(n) if n else y)


def is_presilting(x: BoundedComplex) -> bool:
    return hom_space(x, x, 1).dim == 0


# ---------------------------------------------------------------------------
# cohomology and decomposition


def h0(x: BoundedComplex) -> RightModule:
    """H^0 = cokernel of the differential."""
    return cokernel_of_entries(x.alg, x.term(-1), x.term(0), x.diff(-1))


def differential_injective(x: BoundedComplex) -> bool:
    """H^-1 = 0, i.e. the differential is injective as a module map."""
    mat = entries_to_map(x.alg, x.term(-1), x.term(0), x.diff(-1))
    if mat.shape[1] == 0:
        return True
    return x.alg.field.rank(mat) == mat.shape[1]


def presentation_complex(m: RightModule) -> BoundedComplex:
    pres = minimal_projective_presentation(m)
    return two_term(m.alg, pres.p1, pres.p0, pres.d)


def _sort_key(x: BoundedComplex):
    n = x.alg.n
    zero, minus = x.term(0), x.term(-1)
    first = min(zero) if zero else n + min(minus) if minus else 2 * n
    return (first, x.mult_vector(0), x.mult_vector(-1))


def decompose_complex(x: BoundedComplex) -> list[tuple[BoundedComplex, int]]:
    """Indecomposable summands with multiplicities.

    A reduced two-term complex is the minimal presentation of its H^0 plus
    shifted projectives for the part of P^-1 that the presentation does not
    use; H^0 is split by the module decomposition.
    """
    r = as_two_term(x)
    alg = r.alg
    out = []
    used = np.zeros(alg.n, dtype=np.int64)
    covered = np.zeros(alg.n, dtype=np.int64)
    m = h0(r)
    if m.dim:
        for part, mult in decompose_module(m):
            c = presentation_complex(part)
            out.append((c, mult))
            used += mult * np.array(c.mult_vector(-1))
            covered += mult * np.array(c.mult_vector(0))
    if tuple(covered) != r.mult_vector(0):
        raise AssertionError("degree-0 terms do not match the cover of H^0")
    extra = np.array(r.mult_vector(-1)) - used
    if np.any(extra < 0):
        raise AssertionError("presentation uses more of P^-1 than available")
    for v in range(alg.n):
        if extra[v]:
            out.append((stalk(alg, (v,), shifted=True), int(extra[v])))
    out.sort(key=lambda p: _sort_key(p[0]))
    return out


def summands(x: BoundedComplex) -> list[BoundedComplex]:
    """Indecomposable summands listed with repetition."""
    return [c for c, mlt in decompose_complex(x) for _ in range(mlt)]


def is_indecomposable(x: BoundedComplex) -> bool:
    d = decompose_complex(x)
    return len(d) == 1 and d[0][1] == 1


def isomorphic(x: BoundedComplex, y: BoundedComplex) -> bool:
    rx, ry = as_two_term(x), as_two_term(y)
    if shape(rx) != shape(ry):
        return False
    return are_isomorphic(h0(rx), h0(ry))


def count_types_by_endomorphisms(x: BoundedComplex, rng=None) -> tuple[int, list[int]]:
    """Number of indecomposable types read off primitive idempotents of End(x)."""
    hs = HomSpace(x, x)
    if hs.dim == 0:
        return 0, []
    st = end_struct(hs)
    idems = st.primitive_idempotents(rng=rng)
    labels = st.classify(idems)
    return len(set(labels)), labels


def basic_part(x: BoundedComplex) -> list[BoundedComplex]:
    return [c for c, _ in decompose_complex(x)]


def is_silting(x: BoundedComplex) -> bool:
    if not is_presilting(x):
        return False
    return len(decompose_complex(x)) == x.alg.n


def direct_sum_of(parts) -> BoundedComplex:
    parts = list(parts)
    if not parts:
        raise ValueError("empty sum")
    s, _ = direct_sum(*parts)
    alg = parts[0].alg
    return two_term(alg, s.term(-1), s.term(0), s.diff(-1))


# ---------------------------------------------------------------------------
# support tau-tilting pairs


@dataclass
class SupportTauTiltingPair:
    module: RightModule
    projective: tuple          # multiplicities of shifted projectives per vertex


def support_tau_tilting_pair(n) -> SupportTauTiltingPair:
    parts = list(n) if isinstance(n, (list, tuple)) else None
    x = direct_sum_of(parts) if parts is not None else n
    if not is_silting(x):
        raise NotSiltingError("input is not two-term silting")
    r = as_two_term(x)
    proj = [0] * r.alg.n
    for c, mlt in decompose_complex(r):
        if not c.term(0):
            proj[c.term(-1)[0]] += mlt
    return SupportTauTiltingPair(h0(r), tuple(proj))


# ---------------------------------------------------------------------------
# a registry of indecomposable two-term complexes with cached Hom data


class Workspace:
    """Indecomposable reduced two-term complexes up to isomorphism."""

    def __init__(self, alg: FinDimAlgebra):
        self.alg = alg
        self.items: list[BoundedComplex] = []
        self._h0: list[RightModule] = []
        self._by_shape: dict = {}
        self._hom: dict = {}
        self._comp: dict = {}

    def register(self, x: BoundedComplex) -> int:
        r = as_two_term(x)
        key = shape(r)
        m = h0(r)
        for k in self._by_shape.get(key, []):
            if key[1] == (0,) * self.alg.n or are_isomorphic(self._h0[k], m):
                return k
        self.items.append(r)
        self._h0.append(m)
        k = len(self.items) - 1
        self._by_shape.setdefault(key, []).append(k)
        return k

    def hom(self, a: int, b: int, n: int = 0) -> HomSpace:
        key = (a, b, n)
        if key not in self._hom:
            self._hom[key] = hom_space(self.items[a], self.items[b], n)
        return self._hom[key]

    def comp(self, a: int, b: int, c: int) -> np.ndarray:
        """T[u, v] = coords of (Hom(b,c) basis u) o (Hom(a,b) basis v) in Hom(a,c)."""
        key = (a, b, c)
        if key not in self._comp:
            self._comp[key] = compose_table(self.hom(b, c), self.hom(a, b), self.hom(a, c))
        return self._comp[key]

    def compatible(self, a: int, b: int) -> bool:
        return self.hom(a, b, 1).dim == 0 and self.hom(b, a, 1).dim == 0

    def is_presilting_set(self, ids) -> bool:
        return all(self.hom(a, b, 1).dim == 0 for a in ids for b in ids)

    # -- approximations ------------------------------------------------
    def _spans(self, rows, target_dim) -> bool:
        f = self.alg.field
        if target_dim == 0:
            return True
        if not rows:
            return False
        return f.rank(np.array(rows, dtype=f.dtype)) == target_dim

    def _left_ok(self, i, comps, gens) -> bool:
        for l in gens:
            rows = []
            for j, v in comps:
                T = self.comp(i, j, l)
                rows.extend(T[:, v, :])
            if not self._spans(rows, self.hom(i, l).dim):
                return False
        return True

    def _right_ok(self, i, comps, gens) -> bool:
        for l in gens:
            rows = []
            for j, v in comps:
                T = self.comp(l, j, i)
                rows.extend(T[v, :, :])
            if not self._spans(rows, self.hom(l, i).dim):
                return False
        return True

    def min_left_approx(self, i: int, gens) -> tuple[list, ChainMap]:
        """Minimal left add(gens)-approximation of item i, by drop-and-retest."""
        gens = list(gens)
        comps = [(j, v) for j in gens for v in range(self.hom(i, j).dim)]
        for c in reversed(list(comps)):
            trial = [x for x in comps if x != c]
            if self._left_ok(i, trial, gens):
                comps = trial
        x = self.items[i]
        if not comps:
            z = two_term(self.alg, (), ())
            return comps, ChainMap(x, z)
        targets = [self.items[j] for j, _ in comps]
        e, sl = direct_sum(*targets)
        blocks = {(k, 0): self.hom(i, j).basis[v] for k, (j, v) in enumerate(comps)}
        xs, xsl = direct_sum(x)
        fmap = block_map(xs, xsl, e, sl, blocks)
        return comps, ChainMap(x, e, fmap.comps)

    def min_right_approx(self, i: int, gens) -> tuple[list, ChainMap]:
        gens = list(gens)
        comps = [(j, v) for j in gens for v in range(self.hom(j, i).dim)]
        for c in reversed(list(comps)):
            trial = [x for x in comps if x != c]
            if self._right_ok(i, trial, gens):
                comps = trial
        x = self.items[i]
        if not comps:
            z = two_term(self.alg, (), ())
            return comps, ChainMap(z, x)
        sources = [self.items[j] for j, _ in comps]
        e, sl = direct_sum(*sources)
        blocks = {(0, k): self.hom(j, i).basis[v] for k, (j, v) in enumerate(comps)}
        xs, xsl = direct_sum(x)
        gmap = block_map(e, sl, xs, xsl, blocks)
        return comps, ChainMap(e, x, gmap.comps)

    def mutate(self, ids: tuple, pos: int, side: str) -> tuple:
        """Replace ids[pos] by its left (cone) or right (cocone) mutation."""
        side = side.upper()
        i = ids[pos]
        gens = [j for k, j in enumerate(ids) if k != pos]
        if side == "L":
            _, fmap = self.min_left_approx(i, gens)
            new = cone(fmap).complex
        elif side == "R":
            _, gmap = self.min_right_approx(i, gens)
            new = cocone(gmap).complex
        else:
            raise ValueError(f"side must be L or R, got {side!r}")
        r = as_two_term(new)
        if not is_indecomposable(r):
            raise InvariantViolation("mutated summand is not indecomposable")
        k = self.register(r)
        out = list(ids)
        out[pos] = k
        return tuple(out)


# ---------------------------------------------------------------------------
# silting mutation on explicit summand lists


def _check_basic_silting(parts):
    alg = parts[0].alg
    if len(parts) != alg.n:
        raise NotSiltingError(f"{len(parts)} summands, expected {alg.n}")
    ws = Workspace(alg)
    ids = [ws.register(p) for p in parts]
    if len(set(ids)) != len(ids):
        raise NotBasicError("summands are not pairwise non-isomorphic")
    for p in parts:
        if not is_indecomposable(p):
            raise NotSiltingError("a listed summand is decomposable")
    if not ws.is_presilting_set(ids):
        raise NotSiltingError("summands are not presilting")
    return ws, tuple(ids)


def silting_mutate(parts, i: int, side: str = "L") -> list[BoundedComplex]:
    """Mutate the basic silting object ``parts`` (list of indecomposables) at summand i."""
    if isinstance(parts, BoundedComplex):
        parts = basic_part(parts)
    parts = list(parts)
    ws, ids = _check_basic_silting(parts)
    new = ws.mutate(ids, i, side)
    return [ws.items[k] for k in new]


def end_algebra(parts, names=None) -> FinDimAlgebra:
    """End of a basic object, corners indexed by summands (e_a E e_b = Hom(N_b, N_a))."""
    if isinstance(parts, BoundedComplex):
        if parts.is_zero():
            return None
        parts = basic_part(parts)
    return SummandAlgebra(list(parts), names=names).alg


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class Enumeration:
    workspace: Workspace
    nodes: list                      # sorted tuples of workspace ids
    edges: list                      # (node index, node index, summand id mutated, side)
    exhaustive: bool
    failures: list = field(default_factory=list)

    def silting_objects(self):
        return [[self.workspace.items[k] for k in node] for node in self.nodes]

    def keys(self) -> set:
        return {frozenset(n) for n in self.nodes}


def enumerate_two_term_silting(alg: FinDimAlgebra, node_cap: int = 500, workspace=None) -> Enumeration:
    """Breadth-first closure of {A} under left and right mutation."""
    ws = workspace or Workspace(alg)
    start = tuple(ws.register(stalk(alg, (v,))) for v in range(alg.n))
    seen = {frozenset(start): 0}
    nodes = [tuple(sorted(start))]
    order = [start]
    edges = []
    queue = deque([start])
    exhaustive = True
    while queue:
        ids = queue.popleft()
        src = seen[frozenset(ids)]
        for pos in range(len(ids)):
            for side in ("L", "R"):
                try:
                    new = ws.mutate(ids, pos, side)
                except LeavesWindowError:
                    continue
                key = frozenset(new)
                if key not in seen:
                    if len(nodes) >= node_cap:
                        exhaustive = False
                        continue
                    seen[key] = len(nodes)
                    nodes.append(tuple(sorted(new)))
                    order.append(new)
                    queue.append(new)
                edges.append((src, seen[key], ids[pos], side))
    res = Enumeration(ws, nodes, edges, exhaustive)
    if not exhaustive:
        raise CapExceededError(f"more than {node_cap} silting objects", partial=res)
    return res


def _radical_entries(alg, zero, minus):
    slots = []
    idem = set(alg.idempotents)
    for t, w in enumerate(zero):
        for s, v in enumerate(minus):
            for b in alg.corner(w, v):
                if b not in idem:
                    slots.append((t, s, int(b)))
    return slots


def indecomposable_presilting(alg: FinDimAlgebra, max_mult: int = 1, coeffs=(0, 1),
                              workspace=None, limit: int = 200000) -> tuple[Workspace, list[int]]:
    """Brute-force list of indecomposable presilting two-term complexes.

    Runs over radical complexes with every multiplicity at most ``max_mult``
    and differential coordinates drawn from ``coeffs``.
    """
    ws = workspace or Workspace(alg)
    f = alg.field
    found = []
    count = 0
    rng = range(max_mult + 1)
    for mm in itertools.product(rng, repeat=alg.n):
        for m0 in itertools.product(rng, repeat=alg.n):
            if not any(mm) and not any(m0):
                continue
            minus = tuple(v for v in range(alg.n) for _ in range(mm[v]))
            zero = tuple(v for v in range(alg.n) for _ in range(m0[v]))
            slots = _radical_entries(alg, zero, minus)
            for vals in itertools.product(coeffs, repeat=len(slots)):
                count += 1
                if count > limit:
                    raise CapExceededError("brute-force search limit reached", partial=found)
                d = f.zeros((len(zero), len(minus), alg.dim))
                for (t, s, b), c in zip(slots, vals):
                    d[t, s, b] = f(c)
                try:
                    x = two_term(alg, minus, zero, d)
                except Exception:
                    continue          # d^2 = 0 is automatic here; corner errors cannot occur
                if not is_radical(x) or not is_indecomposable(x) or not is_presilting(x):
                    continue
                k = ws.register(x)
                if k not in found:
                    found.append(k)
    return ws, sorted(found)


def brute_force_silting(alg: FinDimAlgebra, max_mult: int = 1, coeffs=(0, 1)) -> tuple[Workspace, list]:
    """All n-element pairwise compatible sets of indecomposable presilting complexes."""
    ws, found = indecomposable_presilting(alg, max_mult, coeffs)
    n = alg.n
    compat = {(a, b): ws.compatible(a, b) for a in found for b in found}
    out = []
    for combo in itertools.combinations(found, n):
        if all(compat[(a, b)] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return ws, out


def is_tilting_candidate(parts) -> dict:
    """Negative self-extension data Hom(n, Sigma^-1 n) for an experiment report."""
    x = direct_sum_of(parts) if isinstance(parts, (list, tuple)) else parts
    return {"hom_minus1": hom_space(x, x, -1).dim, "hom_1": hom_space(x, x, 1).dim,
            "silting": is_silting(x)}
