"""A small declarative input language for quivers, potentials, algebras, complexes and contexts.

Grammar (LL(1); ``#`` starts a comment)::

    file      := decl*
    decl      := quiver | potential | algebra | complex | context
    quiver    := 'quiver' NAME '{' 'vertices' VERT* ';' 'arrows' [arrow (',' arrow)*] ';' '}'
    arrow     := NAME ':' VERT '->' VERT
    potential := 'potential' NAME 'on' NAME '=' poly ';'
    algebra   := 'algebra' NAME '=' alg_expr ';'
    alg_expr  := 'jacobian' '(' NAME ',' NAME ')' | 'path' '(' NAME ')'
               | 'quotient' '(' NAME ',' '[' [poly (',' poly)*] ']' ')'
    complex   := 'complex' NAME ( 'over' NAME '{' cpx_item* '}' | '=' cpx_expr ';' )
    cpx_item  := 'degree' INT ':' VERT* ';' | 'd' INT '=' matrix ';'
    cpx_expr  := 'stalk' '(' NAME [',' VERT+] ')' | 'shift' '(' NAME ',' INT ')'
    context   := 'context' NAME 'over' NAME '=' NAME (',' NAME)* ';'
    matrix    := '[' [row (',' row)*] ']'       row := '[' [poly (',' poly)*] ']'
    poly      := ['-'] term (('+' | '-') term)*
    term      := scalar ['*' path] | path       scalar := INT ['/' INT]
    path      := NAME+

NAME is an identifier (letters, digits, underscore, optionally followed by
``*`` marks) or any whitespace-free text in double quotes, which is how
composite arrows such as ``"[ca]"`` are written.  Quoted names are never
keywords.  Paths read left to right.  A matrix for ``d n`` has one row per term in
degree n+1 and one column per term in degree n; a bare scalar entry means
that multiple of the idempotent.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>-?\d+(?![A-Za-z0-9_*]))
  | (?P<name>"[^"\s]+" | [A-Za-z0-9_]+\**)
  | (?P<punct>[{}();:,=\[\]*/+-])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int
    quoted: bool = False


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        col = pos - start + 1
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind == "name" and m.group().startswith('"'):
            out.append(Token(kind, m.group()[1:-1], line, col, quoted=True))
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------------------------------------------------------------------------
# syntax tree; spans are (line, col) and do not take part in equality


def _span():
    return field(default=None, compare=False, repr=False)


def _spans():
    return field(default_factory=list, compare=False, repr=False)


@dataclass
class Poly:
    terms: list                      # [(Fraction, tuple of arrow names)]; () means idempotent
    span: tuple = _span()
    term_spans: list = _spans()


@dataclass
class QuiverDecl:
    name: str
    vertices: list
    arrows: list                     # [(name, source, target)]
    span: tuple = _span()
    arrow_spans: list = _spans()     # (name, source, target) positions per arrow


@dataclass
class PotentialDecl:
    name: str
    quiver: str
    poly: Poly
    span: tuple = _span()
    refs: list = _spans()


@dataclass
class AlgebraDecl:
    name: str
    kind: str                        # jacobian | path | quotient
    quiver: str
    potential: str | None = None
    relations: list = field(default_factory=list)
    span: tuple = _span()
    refs: list = _spans()


@dataclass
class ComplexDecl:
    name: str
    kind: str                        # explicit | stalk | shift
    algebra: str | None = None
    degrees: dict = field(default_factory=dict)     # n -> list of vertices
    diffs: dict = field(default_factory=dict)       # n -> list of rows of Poly
    base: str | None = None
    vertices: list | None = None
    amount: int = 0
    span: tuple = _span()
    refs: list = _spans()
    item_spans: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass
class ContextDecl:
    name: str
    algebra: str
    summands: list
    span: tuple = _span()
    refs: list = _spans()


@dataclass
class WorkspaceFile:
    decls: list = field(default_factory=list)

    def _table(self, cls):
        return {d.name: d for d in self.decls if isinstance(d, cls)}

    @property
    def quivers(self):
        return self._table(QuiverDecl)

    @property
    def potentials(self):
        return self._table(PotentialDecl)

    @property
    def algebras(self):
        return self._table(AlgebraDecl)

    @property
    def complexes(self):
        return self._table(ComplexDecl)

    @property
    def contexts(self):
        return self._table(ContextDecl)


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text) -> bool:
        # keywords are contextual: a name token matches when a keyword is expected here
        return self.tok.text == text and self.tok.kind in ("name", "punct", "arrow") and not self.tok.quoted

    def expect(self, text) -> Token:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return self.next()

    def name(self, what="name") -> Token:
        if self.tok.kind != "name":
            shown = self.tok.text or "end of input"
            self.error(f"expected {what}, found {shown!r}")
        return self.next()

    def vert(self) -> Token:
        if self.tok.kind not in ("name", "int"):
            self.error(f"expected a vertex, found {self.tok.text!r}")
        return self.next()

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.error(f"expected an integer, found {self.tok.text!r}")
        return int(self.next().text)

    # -- entry point
    def parse(self) -> WorkspaceFile:
        ws = WorkspaceFile()
        while self.tok.kind != "eof":
            t = self.tok
            handler = {"quiver": self.quiver, "potential": self.potential, "algebra": self.algebra,
                       "complex": self.complex, "context": self.context}.get(t.text)
            if handler is None:
                self.error(f"expected a declaration, found {t.text!r}")
            ws.decls.append(handler())
        return ws

    def quiver(self) -> QuiverDecl:
        start = self.expect("quiver")
        nm = self.name("quiver name").text
        self.expect("{")
        self.expect("vertices")
        verts = []
        while self.tok.kind in ("name", "int"):
            verts.append(self.next().text)
        self.expect(";")
        self.expect("arrows")
        arrows = []
        if not self.at(";"):
            arrows.append(self.arrow())
            while self.at(","):
                self.next()
                arrows.append(self.arrow())
        self.expect(";")
        self.expect("}")
        return QuiverDecl(nm, verts, [a[:3] for a in arrows], (start.line, start.col),
                          [a[3:] for a in arrows])

    def arrow(self):
        n = self.name("arrow name")
        self.expect(":")
        s = self.vert()
        self.expect("->")
        t = self.vert()
        return (n.text, s.text, t.text, (n.line, n.col), (s.line, s.col), (t.line, t.col))

    def potential(self) -> PotentialDecl:
        start = self.expect("potential")
        nm = self.name("potential name").text
        self.expect("on")
        q = self.name("quiver name")
        self.expect("=")
        p = self.poly()
        self.expect(";")
        return PotentialDecl(nm, q.text, p, (start.line, start.col), [(q.line, q.col)])

    def algebra(self) -> AlgebraDecl:
        start = self.expect("algebra")
        nm = self.name("algebra name").text
        self.expect("=")
        t = self.tok
        span = (start.line, start.col)
        if self.at("jacobian"):
            self.next()
            self.expect("(")
            q = self.name("quiver name")
            self.expect(",")
            w = self.name("potential name")
            self.expect(")")
            d = AlgebraDecl(nm, "jacobian", q.text, w.text, span=span, refs=[(q.line, q.col), (w.line, w.col)])
        elif self.at("path"):
            self.next()
            self.expect("(")
            q = self.name("quiver name")
            self.expect(")")
            d = AlgebraDecl(nm, "path", q.text, span=span, refs=[(q.line, q.col)])
        elif self.at("quotient"):
            self.next()
            self.expect("(")
            q = self.name("quiver name")
            self.expect(",")
            self.expect("[")
            rels = []
            if not self.at("]"):
                rels.append(self.poly())
                while self.at(","):
                    self.next()
                    rels.append(self.poly())
            self.expect("]")
            self.expect(")")
            d = AlgebraDecl(nm, "quotient", q.text, relations=rels, span=span, refs=[(q.line, q.col)])
        else:
            self.error(f"expected jacobian, path or quotient, found {t.text!r}")
        self.expect(";")
        return d

    def complex(self) -> ComplexDecl:
        start = self.expect("complex")
        nm = self.name("complex name").text
        span = (start.line, start.col)
        if self.at("over"):
            self.next()
            a = self.name("algebra name")
            d = ComplexDecl(nm, "explicit", a.text, span=span, refs=[(a.line, a.col)])
            self.expect("{")
            while not self.at("}"):
                if self.at("degree"):
                    t = self.next()
                    n = self.integer()
                    self.expect(":")
                    vs = []
                    while self.tok.kind in ("name", "int"):
                        v = self.next()
                        vs.append(v.text)
                    if n in d.degrees:
                        self.error(f"degree {n} given twice", t)
                    d.degrees[n] = vs
                    d.item_spans[("degree", n)] = (t.line, t.col)
                    self.expect(";")
                elif self.at("d"):
                    t = self.next()
                    n = self.integer()
                    self.expect("=")
                    if n in d.diffs:
                        self.error(f"differential in degree {n} given twice", t)
                    d.diffs[n] = self.matrix()
                    d.item_spans[("d", n)] = (t.line, t.col)
                    self.expect(";")
                else:
                    self.error(f"expected 'degree' or 'd', found {self.tok.text!r}")
            self.expect("}")
            return d
        self.expect("=")
        if self.at("stalk"):
            self.next()
            self.expect("(")
            a = self.name("algebra name")
            verts = None
            if self.at(","):
                self.next()
                verts = [self.vert().text]
                while self.tok.kind in ("name", "int"):
                    verts.append(self.next().text)
            self.expect(")")
            d = ComplexDecl(nm, "stalk", a.text, vertices=verts, span=span, refs=[(a.line, a.col)])
        elif self.at("shift"):
            self.next()
            self.expect("(")
            b = self.name("complex name")
            self.expect(",")
            k = self.integer()
            self.expect(")")
            d = ComplexDecl(nm, "shift", base=b.text, amount=k, span=span, refs=[(b.line, b.col)])
        else:
            self.error(f"expected stalk or shift, found {self.tok.text!r}")
        self.expect(";")
        return d

    def context(self) -> ContextDecl:
        start = self.expect("context")
        nm = self.name("context name").text
        self.expect("over")
        a = self.name("algebra name")
        self.expect("=")
        parts = [self.name("complex name")]
        while self.at(","):
            self.next()
            parts.append(self.name("complex name"))
        self.expect(";")
        return ContextDecl(nm, a.text, [p.text for p in parts], (start.line, start.col),
                           [(a.line, a.col)] + [(p.line, p.col) for p in parts])

    def matrix(self) -> list:
        self.expect("[")
        rows = []
        if not self.at("]"):
            rows.append(self.row())
            while self.at(","):
                self.next()
                rows.append(self.row())
        self.expect("]")
        return rows

    def row(self) -> list:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.poly())
            while self.at(","):
                self.next()
                out.append(self.poly())
        self.expect("]")
        return out

    def poly(self) -> Poly:
        t0 = self.tok
        terms = []
        sign = 1
        if self.at("-"):
            self.next()
            sign = -1
        terms.append(self.term(sign))
        while self.at("+") or self.at("-"):
            sign = 1 if self.next().text == "+" else -1
            terms.append(self.term(sign))
        terms = [t for t in terms if t[0] != 0]
        return Poly([t[:2] for t in terms], (t0.line, t0.col), [t[2] for t in terms])

    def term(self, sign: int):
        t = self.tok
        if t.kind == "int":
            num = int(self.next().text)
            c = Fraction(num)
            if self.at("/"):
                self.next()
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", t)
                c = Fraction(num, den)
            if self.at("*"):
                self.next()
                return (sign * c, self.path(), (t.line, t.col))
            return (sign * c, (), (t.line, t.col))
        if t.kind == "name":
            return (Fraction(sign), self.path(), (t.line, t.col))
        self.error(f"expected a term, found {t.text or 'end of input'!r}")

    def path(self) -> tuple:
        names = [self.name("arrow name").text]
        while self.tok.kind == "name":
            names.append(self.next().text)
        return tuple(names)


# ---------------------------------------------------------------------------
# name resolution and typing


def _check(ws: WorkspaceFile):
    seen = {}
    quivers, potentials, algebras, complexes = {}, {}, {}, {}

    def dup(d):
        key = d.name
        if key in seen:
            raise ParseError(f"duplicate name {key!r}", *d.span)
        seen[key] = d

    def check_poly(p: Poly, q: QuiverDecl, cyclic: bool, allow_const: bool, ends=None):
        arrows = {a[0]: a for a in q.arrows}
        spans = p.term_spans or [p.span] * len(p.terms)
        for (c, word), span in zip(p.terms, spans):
            if not word:
                if not allow_const:
                    raise ParseError("constant term not allowed here", *span)
                if ends is not None and ends[0] != ends[1]:
                    raise ParseError(f"scalar entry between different vertices {ends[0]} and {ends[1]}", *span)
                continue
            for a in word:
                if a not in arrows:
                    raise ParseError(f"unknown arrow {a!r} in quiver {q.name}", *span)
            seq = [arrows[a] for a in word]
            for x, y in zip(seq, seq[1:]):
                if x[2] != y[1]:
                    raise ParseError(f"arrows {x[0]} and {y[0]} do not compose", *span)
            if cyclic and seq[-1][2] != seq[0][1]:
                raise ParseError(f"term {' '.join(word)} is not a cycle", *span)
            if ends is not None and (seq[0][1] != ends[0] or seq[-1][2] != ends[1]):
                raise ParseError(f"path {' '.join(word)} does not run from {ends[0]} to {ends[1]}", *span)

    for d in ws.decls:
        dup(d)
        if isinstance(d, QuiverDecl):
            vs = set()
            for v in d.vertices:
                if v in vs:
                    raise ParseError(f"duplicate vertex {v!r}", *d.span)
                vs.add(v)
            names = set()
            aspans = d.arrow_spans or [(d.span,) * 3] * len(d.arrows)
            for a, asp in zip(d.arrows, aspans):
                if a[0] in names:
                    raise ParseError(f"duplicate arrow {a[0]!r}", *asp[0])
                names.add(a[0])
                for v, sp in ((a[1], asp[1]), (a[2], asp[2])):
                    if v not in vs:
                        raise ParseError(f"arrow {a[0]} uses undeclared vertex {v!r}", *sp)
            quivers[d.name] = d
        elif isinstance(d, PotentialDecl):
            if d.quiver not in quivers:
                raise ParseError(f"unknown quiver {d.quiver!r}", *(d.refs[0] if d.refs else d.span))
            check_poly(d.poly, quivers[d.quiver], cyclic=True, allow_const=False)
            potentials[d.name] = d
        elif isinstance(d, AlgebraDecl):
            spans = d.refs or [d.span, d.span]
            if d.quiver not in quivers:
                raise ParseError(f"unknown quiver {d.quiver!r}", *spans[0])
            if d.kind == "jacobian":
                if d.potential not in potentials:
                    raise ParseError(f"unknown potential {d.potential!r}", *spans[1])
                if potentials[d.potential].quiver != d.quiver:
                    raise ParseError(f"potential {d.potential} is not on quiver {d.quiver}", *spans[1])
            for r in d.relations:
                check_poly(r, quivers[d.quiver], cyclic=False, allow_const=False)
            algebras[d.name] = d
        elif isinstance(d, ComplexDecl):
            spans = d.refs or [d.span]
            if d.kind == "shift":
                if d.base not in complexes:
                    raise ParseError(f"unknown complex {d.base!r}", *spans[0])
                d.algebra = complexes[d.base].algebra
                complexes[d.name] = d
                continue
            if d.algebra not in algebras:
                raise ParseError(f"unknown algebra {d.algebra!r}", *spans[0])
            q = quivers[algebras[d.algebra].quiver]
            vs = set(q.vertices)
            for v in d.vertices or []:
                if v not in vs:
                    raise ParseError(f"unknown vertex {v!r}", *d.span)
            if d.kind == "explicit":
                isp = d.item_spans
                for n, verts in d.degrees.items():
                    for v in verts:
                        if v not in vs:
                            raise ParseError(f"unknown vertex {v!r}", *isp.get(("degree", n), d.span))
                for n, rows in d.diffs.items():
                    sp = isp.get(("d", n), d.span)
                    src, tgt = d.degrees.get(n, []), d.degrees.get(n + 1, [])
                    if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
                        raise ParseError(f"d {n} must be a {len(tgt)} x {len(src)} matrix", *sp)
                    for t, r in enumerate(rows):
                        for s, p in enumerate(r):
                            check_poly(p, q, cyclic=False, allow_const=True, ends=(tgt[t], src[s]))
            complexes[d.name] = d
        elif isinstance(d, ContextDecl):
            spans = d.refs or [d.span] * (1 + len(d.summands))
            if d.algebra not in algebras:
                raise ParseError(f"unknown algebra {d.algebra!r}", *spans[0])
            for c, sp in zip(d.summands, spans[1:]):
                if c not in complexes:
                    raise ParseError(f"unknown complex {c!r}", *sp)
                if complexes[c].algebra != d.algebra:
                    raise ParseError(f"complex {c} is not over {d.algebra}", *sp)


def parse(text: str) -> WorkspaceFile:
    ws = _Parser(text).parse()
    _check(ws)
    return ws


# ---------------------------------------------------------------------------
# canonical rendering


_PLAIN = re.compile(r"[A-Za-z0-9_]+\**")


def _q(name: str) -> str:
    return name if _PLAIN.fullmatch(name) else f'"{name}"'


def _qs(names) -> str:
    return " ".join(_q(n) for n in names)


def _scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for k, (c, word) in enumerate(p.terms):
        neg = c < 0
        a = -c if neg else c
        body = f"{_scalar(a)} * {_qs(word)}" if word else _scalar(a)
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def render(ws: WorkspaceFile) -> str:
    lines = []
    for d in ws.decls:
        if isinstance(d, QuiverDecl):
            arrs = ", ".join(f"{_q(a[0])}: {_q(a[1])} -> {_q(a[2])}" for a in d.arrows)
            lines.append(f"quiver {_q(d.name)} {{ vertices {_qs(d.vertices)}; arrows {arrs}; }}".replace(
                "vertices ;", "vertices;").replace("arrows ;", "arrows;"))
        elif isinstance(d, PotentialDecl):
            lines.append(f"potential {_q(d.name)} on {_q(d.quiver)} = {render_poly(d.poly)};")
        elif isinstance(d, AlgebraDecl):
            if d.kind == "jacobian":
                lines.append(f"algebra {_q(d.name)} = jacobian({_q(d.quiver)}, {_q(d.potential)});")
            elif d.kind == "path":
                lines.append(f"algebra {_q(d.name)} = path({_q(d.quiver)});")
            else:
                rels = ", ".join(render_poly(r) for r in d.relations)
                lines.append(f"algebra {_q(d.name)} = quotient({_q(d.quiver)}, [{rels}]);")
        elif isinstance(d, ComplexDecl):
            if d.kind == "stalk":
                vs = f", {_qs(d.vertices)}" if d.vertices else ""
                lines.append(f"complex {_q(d.name)} = stalk({_q(d.algebra)}{vs});")
            elif d.kind == "shift":
                lines.append(f"complex {_q(d.name)} = shift({_q(d.base)}, {d.amount});")
            else:
                items = []
                for n in sorted(d.degrees):
                    vs = _qs(d.degrees[n])
                    items.append(f"degree {n}: {vs};" if vs else f"degree {n}:;")
                for n in sorted(d.diffs):
                    rows = ", ".join("[" + ", ".join(render_poly(p) for p in r) + "]" for r in d.diffs[n])
                    items.append(f"d {n} = [{rows}];")
                lines.append(f"complex {_q(d.name)} over {_q(d.algebra)} {{ {' '.join(items)} }}")
        elif isinstance(d, ContextDecl):
            lines.append(f"context {_q(d.name)} over {_q(d.algebra)} = {', '.join(_q(c) for c in d.summands)};")
    return "\n".join(lines) + ("\n" if lines else "")
