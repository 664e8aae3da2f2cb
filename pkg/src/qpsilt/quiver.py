"""Quivers, paths, path-algebra elements and potentials.

Paths compose left to right: the path ``a b`` means "a, then b", so it
starts at ``source(a)`` and ends at ``target(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import FieldMismatchError, UnknownNameError
from .exactlin import DEFAULT_FIELD, Field


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


class Quiver:
    def __init__(self, vertices: Iterable, arrows: Iterable = ()):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self._vindex = {v: k for k, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]))
            for v in (a.source, a.target):
                if v not in self._vindex:
                    raise UnknownNameError(f"arrow {a.name} uses undeclared vertex {v}")
            arrs.append(a)
        self.arrows = tuple(arrs)
        self._arrow = {a.name: a for a in self.arrows}
        if len(self._arrow) != len(self.arrows):
            raise ValueError("duplicate arrow labels")

    def __repr__(self):
        arrs = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver([{' '.join(self.vertices)}], [{arrs}])"

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def vertex(self, v) -> str:
        v = str(v)
        if v not in self._vindex:
            raise UnknownNameError(f"unknown vertex {v}")
        return v

    def index(self, v) -> int:
        return self._vindex[self.vertex(v)]

    def arrow(self, name) -> Arrow:
        try:
            return self._arrow[str(name)]
        except KeyError:
            raise UnknownNameError(f"unknown arrow {name}") from None

    def has_arrow(self, name) -> bool:
        return str(name) in self._arrow

    def arrows_from(self, v) -> list[Arrow]:
        v = self.vertex(v)
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v) -> list[Arrow]:
        v = self.vertex(v)
        return [a for a in self.arrows if a.target == v]

    def lazy(self, v) -> "Path":
        v = self.vertex(v)
        return Path(v, v, ())

    def path(self, *names) -> "Path":
        """Path from arrow labels, validating composability."""
        if len(names) == 1 and isinstance(names[0], (list, tuple)):
            names = tuple(names[0])
        if not names:
            raise ValueError("use lazy(v) for trivial paths")
        arrs = [self.arrow(n) for n in names]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise ValueError(f"{x.name} and {y.name} do not compose")
        return Path(arrs[0].source, arrs[-1].target, tuple(a.name for a in arrs))

    def path_of(self, labels: tuple) -> "Path":
        return self.path(*labels)

    def paths_of_length(self, n: int) -> list["Path"]:
        if n == 0:
            return [self.lazy(v) for v in self.vertices]
        out = [Path(a.source, a.target, (a.name,)) for a in self.arrows]
        for _ in range(n - 1):
            out = [Path(p.source, a.target, p.arrows + (a.name,))
                   for p in out for a in self.arrows if a.source == p.target]
        return out

    def arrow_pairs(self) -> list[tuple[str, str]]:
        """Sorted (source, target) multiset; the vertex-fixed iso invariant."""
        return sorted((a.source, a.target) for a in self.arrows)

    def without_arrows(self, names) -> "Quiver":
        drop = set(names)
        return Quiver(self.vertices, [a for a in self.arrows if a.name not in drop])


@dataclass(frozen=True, order=True)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def is_lazy(self) -> bool:
        return not self.arrows

    @property
    def is_cycle(self) -> bool:
        return bool(self.arrows) and self.source == self.target

    def __str__(self):
        return f"e({self.source})" if not self.arrows else " ".join(self.arrows)


def compose(p: Path, q: Path) -> Path | None:
    """``p`` then ``q``, or None when they do not meet."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


class AlgElem:
    """A finite linear combination of paths of one quiver."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, terms: dict | None = None, field: Field = DEFAULT_FIELD):
        self.quiver = quiver
        self.field = field
        self.terms: dict[Path, object] = {}
        for p, c in (terms or {}).items():
            c = field(c)
            if c != 0:
                self.terms[p] = c

    @classmethod
    def from_path(cls, quiver, path: Path, coeff=1, field=DEFAULT_FIELD) -> "AlgElem":
        return cls(quiver, {path: coeff}, field)

    @classmethod
    def arrow(cls, quiver, name, field=DEFAULT_FIELD) -> "AlgElem":
        return cls(quiver, {quiver.path(name): 1}, field)

    def _check(self, other: "AlgElem"):
        if other.quiver != self.quiver:
            raise ValueError("elements over different quivers")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = self.field(out.get(p, 0) + c)
        return AlgElem(self.quiver, out, self.field)

    def __neg__(self):
        return AlgElem(self.quiver, {p: -c for p, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "AlgElem":
        s = self.field(s)
        return AlgElem(self.quiver, {p: c * s for p, c in self.terms.items()}, self.field)

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            return self.scale(other)
        self._check(other)
        out: dict[Path, object] = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = compose(p, q)
                if r is not None:
                    out[r] = out.get(r, 0) + c * d
        return AlgElem(self.quiver, out, self.field)

    def __eq__(self, other):
        return isinstance(other, AlgElem) and self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_range(self) -> tuple[int, int] | None:
        if not self.terms:
            return None
        lens = [len(p) for p in self.terms]
        return min(lens), max(lens)

    def truncate(self, cap: int) -> "AlgElem":
        return AlgElem(self.quiver, {p: c for p, c in self.terms.items() if len(p) <= cap}, self.field)

    def corner_parts(self) -> dict[tuple[str, str], "AlgElem"]:
        parts: dict[tuple[str, str], dict] = {}
        for p, c in self.terms.items():
            parts.setdefault((p.source, p.target), {})[p] = c
        return {k: AlgElem(self.quiver, v, self.field) for k, v in parts.items()}

    def __repr__(self):
        return format_terms(self.terms, self.field)


def format_terms(terms: dict, field: Field) -> str:
    if not terms:
        return "0"
    parts = []
    for p in sorted(terms, key=lambda q: (len(q), q)):
        c = field.format(terms[p])
        label = str(p) if isinstance(p, Path) else " ".join(p)
        parts.append(f"{c}*{label}")
    return " + ".join(parts)


def least_rotation(labels: tuple) -> tuple:
    return min(labels[k:] + labels[:k] for k in range(len(labels)))


class Potential:
    """A finite sum of cycles, each stored at its least rotation.

    ``terms`` maps arrow-label tuples to nonzero coefficients.  The flags
    record non-cycle terms that were dropped and terms cut off by the
    degree cap.
    """

    __slots__ = ("quiver", "field", "terms", "dropped_noncycles", "truncated", "cap")

    def __init__(self, quiver: Quiver, terms: dict | None = None, field: Field = DEFAULT_FIELD,
                 cap: int = 12, dropped_noncycles: bool = False, truncated: bool = False):
        self.quiver = quiver
        self.field = field
        self.cap = cap
        self.dropped_noncycles = dropped_noncycles
        self.truncated = truncated
        out: dict[tuple, object] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if not word:
                continue
            _check_cycle(quiver, word)
            if len(word) > cap:
                self.truncated = True
                continue
            key = least_rotation(word)
            out[key] = field(out.get(key, 0) + field(c))
        self.terms = {k: v for k, v in out.items() if v != 0}

    def __eq__(self, other):
        return isinstance(other, Potential) and self.quiver == other.quiver and self.terms == other.terms

    def __repr__(self):
        return format_terms(self.terms, self.field)

    def is_zero(self):
        return not self.terms

    def degree_part(self, d: int) -> dict:
        return {w: c for w, c in self.terms.items() if len(w) == d}

    def with_terms(self, terms: dict, quiver: Quiver | None = None, truncated=False) -> "Potential":
        return Potential(quiver or self.quiver, terms, self.field, self.cap,
                         self.dropped_noncycles, self.truncated or truncated)

    def as_algelem(self) -> AlgElem:
        return AlgElem(self.quiver, {self.quiver.path(*w): c for w, c in self.terms.items()}, self.field)


def _check_cycle(quiver: Quiver, word: tuple):
    arrs = [quiver.arrow(a) for a in word]
    for x, y in zip(arrs, arrs[1:] + arrs[:1]):
        if x.target != y.source:
            raise ValueError(f"{' '.join(word)} is not a cycle")


def normalize_potential(w: AlgElem, cap: int = 12) -> Potential:
    terms = {}
    dropped = False
    for p, c in w.terms.items():
        if p.is_cycle:
            terms[p.arrows] = c
        else:
            dropped = True
    return Potential(w.quiver, terms, w.field, cap, dropped_noncycles=dropped)


def cyclic_derivative(w: Potential, arrow) -> AlgElem:
    alpha = w.quiver.arrow(arrow)
    q = w.quiver
    out: dict[Path, object] = {}
    for word, c in w.terms.items():
        n = len(word)
        for k in range(n):
            if word[k] != alpha.name:
                continue
            rest = word[k + 1:] + word[:k]
            p = q.path(*rest) if rest else q.lazy(alpha.target)
            out[p] = out.get(p, 0) + c
    return AlgElem(q, out, w.field)
