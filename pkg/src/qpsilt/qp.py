"""Mutation of quivers with potential: premutation followed by reduction."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import InvariantViolation, NotMutableError, QPSiltError, TruncationError
from .quiver import Arrow, Potential, Quiver, least_rotation


@dataclass(frozen=True, eq=False)
class QuiverWithPotential:
    quiver: Quiver
    potential: Potential

    @property
    def field(self):
        return self.potential.field

    @property
    def reduced(self) -> bool:
        return not self.potential.degree_part(2)

    def __repr__(self):
        return f"QP({self.quiver!r}, W={self.potential!r})"


@dataclass(frozen=True)
class SplitResult:
    trivial: tuple
    reduced: QuiverWithPotential
    truncated: bool


def mutable_at(qp: QuiverWithPotential, i) -> bool:
    q = qp.quiver
    i = q.vertex(i)
    outs = {a.target for a in q.arrows_from(i)}
    ins = {a.source for a in q.arrows_to(i)}
    return i not in outs and not (outs & ins)


def _star(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def premutate(qp: QuiverWithPotential, i) -> QuiverWithPotential:
    q = qp.quiver
    i = q.vertex(i)
    if not mutable_at(qp, i):
        raise NotMutableError(f"vertex {i} lies on a loop or 2-cycle", vertex=i)
    into = q.arrows_to(i)
    out = q.arrows_from(i)
    kept = [a for a in q.arrows if i not in (a.source, a.target)]
    taken = {a.name for a in kept}
    reversed_ = [Arrow(_star(a.name), a.target, a.source) for a in q.arrows
                 if i in (a.source, a.target)]
    taken |= {a.name for a in reversed_}
    composite = {}
    for al in into:
        for be in out:
            name = f"[{al.name}{be.name}]"
            if name in taken:
                name = f"[{al.name}.{be.name}]"
            if name in taken:
                raise QPSiltError(f"cannot name composite arrow for {al.name}, {be.name}")
            taken.add(name)
            composite[(al.name, be.name)] = Arrow(name, al.source, be.target)
    nq = Quiver(q.vertices, kept + reversed_ + list(composite.values()))

    terms: dict[tuple, object] = {}
    f = qp.field
    for word, c in qp.potential.terms.items():
        # rotate so the word does not start in the middle of a passage through i
        k = next(k for k in range(len(word)) if q.arrow(word[k]).source != i)
        w = word[k:] + word[:k]
        new = []
        j = 0
        while j < len(w):
            a = q.arrow(w[j])
            if a.target == i:
                new.append(composite[(w[j], w[j + 1])].name)
                j += 2
            else:
                new.append(w[j])
                j += 1
        key = least_rotation(tuple(new))
        terms[key] = f(terms.get(key, 0) + c)
    for (al, be), arr in composite.items():
        key = least_rotation((arr.name, _star(be), _star(al)))
        terms[key] = f(terms.get(key, 0) + 1)
    pot = Potential(nq, terms, f, qp.potential.cap, qp.potential.dropped_noncycles,
                    qp.potential.truncated)
    return QuiverWithPotential(nq, pot)


def _substitute(terms: dict, arrow: str, repl: dict, field, cap: int) -> tuple[dict, bool]:
    """Replace every occurrence of ``arrow`` by the linear combination ``repl``."""
    out: dict[tuple, object] = {}
    truncated = False
    for word, c in terms.items():
        if arrow not in word:
            key = least_rotation(word)
            out[key] = field(out.get(key, 0) + c)
            continue
        choices = [list(repl.items()) if a == arrow else [((a,), 1)] for a in word]
        for combo in product(*choices):
            length = sum(len(p) for p, _ in combo)
            coeff = c
            for _, s in combo:
                coeff = field(coeff * s)
            if coeff == 0:
                continue
            if length > cap:
                truncated = True
                continue
            new = tuple(x for p, _ in combo for x in p)
            key = least_rotation(new)
            out[key] = field(out.get(key, 0) + coeff)
    return {k: v for k, v in out.items() if v != 0}, truncated


def _rotate_to(word: tuple, a: str) -> tuple:
    k = word.index(a)
    return word[k:] + word[:k]


def split_reduce(qp: QuiverWithPotential, allow_truncation: bool = False) -> SplitResult:
    """Split off the trivial part by unitriangular substitutions.

    Pairs are eliminated in lexicographic order of their quadratic terms.
    """
    f = qp.field
    cap = qp.potential.cap
    quiver = qp.quiver
    terms = dict(qp.potential.terms)
    truncated = qp.potential.truncated
    trivial = []

    def subst(arrow, repl):
        nonlocal terms, truncated
        terms, tr = _substitute(terms, arrow, repl, f, cap)
        truncated = truncated or tr

    while True:
        quad = sorted((w, c) for w, c in terms.items() if len(w) == 2)
        if not quad:
            break
        for w, _ in quad:
            if any(quiver.arrow(a).is_loop for a in w):
                raise QPSiltError("quadratic terms on loops are not supported")
        (x, y), c = quad[0]
        cinv = f.inv(c)

        # make xy the only quadratic term meeting y, then the only one meeting x
        repl = {}
        for w, d in quad[1:]:
            if y in w:
                other = w[0] if w[1] == y else w[1]
                repl[(other,)] = f(repl.get((other,), 0) - cinv * d)
        if repl:
            repl[(x,)] = 1
            subst(x, repl)
        repl = {}
        for w, d in sorted((w, d) for w, d in terms.items() if len(w) == 2 and w != (x, y)):
            if x in w:
                other = w[0] if w[1] == x else w[1]
                repl[(other,)] = f(repl.get((other,), 0) - cinv * d)
        if repl:
            repl[(y,)] = 1
            subst(y, repl)

        # y -> y - c^{-1} U clears x from higher terms; the degree of the
        # remaining x-terms goes up every round, so the cap bounds the loop
        while True:
            u = {}
            for w, d in terms.items():
                if w != (x, y) and x in w:
                    rest = _rotate_to(w, x)[1:]
                    u[rest] = f(u.get(rest, 0) + d)
            u = {k: v for k, v in u.items() if v != 0}
            if not u:
                break
            repl = {k: f(-cinv * v) for k, v in u.items()}
            repl[(y,)] = 1
            subst(y, repl)

        v = {}
        for w, d in terms.items():
            if w != (x, y) and y in w:
                rest = _rotate_to(w, y)[1:]
                v[rest] = f(v.get(rest, 0) + d)
        v = {k: val for k, val in v.items() if val != 0}
        if v:
            repl = {k: f(-cinv * val) for k, val in v.items()}
            repl[(x,)] = 1
            subst(x, repl)

        if terms.get((x, y)) != c:
            raise InvariantViolation("quadratic coefficient changed during reduction")
        del terms[(x, y)]
        if any(x in w or y in w for w in terms):
            raise InvariantViolation(f"arrows {x}, {y} survive the reduction")
        quiver = quiver.without_arrows([x, y])
        trivial.append((x, y))

    pot = Potential(quiver, terms, f, cap, qp.potential.dropped_noncycles, truncated)
    result = SplitResult(tuple(trivial), QuiverWithPotential(quiver, pot), truncated)
    if truncated and not allow_truncation:
        raise TruncationError(f"terms beyond degree cap {cap} were dropped", partial=result)
    return result


def mutate(qp: QuiverWithPotential, i, allow_truncation: bool = False) -> QuiverWithPotential:
    return split_reduce(premutate(qp, i), allow_truncation).reduced


def mutate_sequence(qp: QuiverWithPotential, vertices, allow_truncation: bool = False) -> QuiverWithPotential:
    cur = qp
    for k, v in enumerate(vertices):
        if not mutable_at(cur, v):
            raise NotMutableError(f"step {k}: vertex {v} lies on a loop or 2-cycle", index=k, vertex=str(v))
        cur = mutate(cur, v, allow_truncation)
    return cur
