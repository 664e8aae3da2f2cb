"""Turn parsed declarations into algebras, complexes and rigid contexts over a chosen field."""
from __future__ import annotations

from .algebra import FinDimAlgebra, algebra_from_presentation, element, jacobian_algebra
from .complexes import BoundedComplex
from .dsl import AlgebraDecl, ComplexDecl, Poly, WorkspaceFile, parse
from .errors import UnknownNameError
from .exactlin import DEFAULT_FIELD, Field
from .presentation import RigidContext, make_context
from .qp import QuiverWithPotential
from .quiver import AlgElem, Potential, Quiver
from .twoterm import stalk


class Session:
    def __init__(self, ws: WorkspaceFile, field: Field = DEFAULT_FIELD, degree_cap: int = 12, trunc: int = 24):
        self.ws = ws
        self.field = field
        self.degree_cap = degree_cap
        self.trunc = trunc
        self._cache: dict = {}

    @classmethod
    def from_text(cls, text: str, **kw) -> "Session":
        return cls(parse(text), **kw)

    @classmethod
    def from_file(cls, path, **kw) -> "Session":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read(), **kw)

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _lookup(self, table, name, what):
        if name not in table:
            raise UnknownNameError(f"unknown {what} {name!r}")
        return table[name]

    # -- quivers and potentials
    def quiver(self, name: str) -> Quiver:
        d = self._lookup(self.ws.quivers, name, "quiver")
        return self._memo(("q", name), lambda: Quiver(d.vertices, d.arrows))

    def _algelem(self, q: Quiver, p: Poly) -> AlgElem:
        terms = {}
        for c, word in p.terms:
            path = q.path(*word)
            terms[path] = self.field(terms.get(path, 0) + self.field(c))
        return AlgElem(q, terms, self.field)

    def potential(self, name: str) -> Potential:
        d = self._lookup(self.ws.potentials, name, "potential")

        def build():
            q = self.quiver(d.quiver)
            terms = {}
            for c, word in d.poly.terms:
                terms[word] = self.field(terms.get(word, 0) + self.field(c))
            return Potential(q, terms, self.field, cap=self.degree_cap)
        return self._memo(("w", name), build)

    def qp(self, name: str) -> QuiverWithPotential:
        """The quiver with potential behind a potential declaration or a jacobian algebra."""
        if name in self.ws.algebras and self.ws.algebras[name].kind == "jacobian":
            name = self.ws.algebras[name].potential
        w = self.potential(name)
        return QuiverWithPotential(w.quiver, w)

    # -- algebras
    def algebra(self, name: str) -> FinDimAlgebra:
        d: AlgebraDecl = self._lookup(self.ws.algebras, name, "algebra")

        def build():
            q = self.quiver(d.quiver)
            if d.kind == "jacobian":
                return jacobian_algebra(self.qp(d.potential), cap=self.trunc, name=name)
            rels = [self._algelem(q, r) for r in d.relations]
            return algebra_from_presentation(q, rels, cap=self.trunc, field=self.field, name=name)
        return self._memo(("a", name), build)

    # -- complexes
    def _entry(self, alg: FinDimAlgebra, p: Poly, src_vertex: int):
        f = self.field
        v = f.zeros(alg.dim)
        for c, word in p.terms:
            if word:
                e = AlgElem(alg.quiver, {alg.quiver.path(*word): c}, f)
                v = f.reduce(v + element(alg, e))
            else:
                v = f.reduce(v + alg.idem(src_vertex) * f(c))
        return v

    def complex(self, name: str) -> BoundedComplex:
        d: ComplexDecl = self._lookup(self.ws.complexes, name, "complex")
        return self._memo(("c", name), lambda: self._build_complex(d))

    def _build_complex(self, d: ComplexDecl) -> BoundedComplex:
        if d.kind == "shift":
            return self.complex(d.base).shift(d.amount)
        alg = self.algebra(d.algebra)
        if d.kind == "stalk":
            verts = None if d.vertices is None else [alg.vindex(v) for v in d.vertices]
            return stalk(alg, verts)
        f = self.field
        if not d.degrees:
            return BoundedComplex.zero(alg)
        lo, hi = min(d.degrees), max(d.degrees)
        terms = [tuple(alg.vindex(v) for v in d.degrees.get(n, [])) for n in range(lo, hi + 1)]
        diffs = []
        for k, n in enumerate(range(lo, hi)):
            src, tgt = terms[k], terms[k + 1]
            arr = f.zeros((len(tgt), len(src), alg.dim))
            for t, row in enumerate(d.diffs.get(n, [])):
                for s, p in enumerate(row):
                    arr[t, s] = self._entry(alg, p, src[s])
            diffs.append(arr)
        return BoundedComplex(alg, lo, terms, diffs, check=True)

    # -- contexts
    def context(self, name: str) -> RigidContext:
        d = self._lookup(self.ws.contexts, name, "context")

        def build():
            alg = self.algebra(d.algebra)
            parts = [self.complex(c) for c in d.summands]
            if len(parts) == 1:
                return make_context(alg, parts[0], names=None)
            return make_context(alg, parts, names=d.summands)
        return self._memo(("x", name), build)
