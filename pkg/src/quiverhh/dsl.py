"""Textual presentation format: parser and serializer.

Example::

    field fp:7
    quiver { vertices: v1 v2 v3 ; arrows: a: v1 -> v2 ; b: v1 -> v2 ; c: v2 -> v3 }
    relations { c*a - 2*c*b ; }

``#`` starts a comment.  Paths are arrow names joined by ``*`` with the
rightmost arrow acting first.  A term may start with one scalar literal
(integer or fraction); an omitted coefficient means 1.
"""

from __future__ import annotations

import re

from .errors import EngineError, ParseError
from .fields import field_parse
from .quiver import AlgebraElement, BoundQuiverPresentation, Path, Quiver

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<frac>[0-9]+/[1-9][0-9]*)"
    r"|(?P<int>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(:[0-9]+)?)"
    r"|(?P<arrowto>->)"
    r"|(?P<sym>[{}:;*+\-])"
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"{self.kind}({self.text!r})"


def _tokenize(text):
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group(0)
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self, kind=None, text=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text!r}", tok.line, tok.col)
        if text is not None and tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def accept(self, kind=None, text=None):
        tok = self.peek()
        if tok is None:
            return None
        if kind is not None and tok.kind != kind:
            return None
        if text is not None and tok.text != text:
            return None
        self.i += 1
        return tok

    def parse(self):
        tok = self.next("ident")
        if tok.text != "field":
            raise ParseError("presentation must start with a field line", tok.line, tok.col)
        ftok = self.next("ident")
        field = field_parse(ftok.text)

        tok = self.next("ident")
        if tok.text != "quiver":
            raise ParseError("expected quiver block", tok.line, tok.col)
        self.next("sym", "{")
        kw = self.next("ident")
        if kw.text != "vertices":
            raise ParseError("expected vertices:", kw.line, kw.col)
        self.next("sym", ":")
        vertices = []
        while True:
            tok = self.peek()
            nxt = self.tokens[self.i + 1] if self.i + 1 < len(self.tokens) else None
            if tok and tok.kind == "ident" and (nxt is None or nxt.text != ":"):
                vertices.append(self.next("ident").text)
            else:
                break
        self.next("sym", ";")
        kw = self.next("ident")
        if kw.text != "arrows":
            raise ParseError("expected arrows:", kw.line, kw.col)
        self.next("sym", ":")
        arrows = []
        while True:
            name = self.next("ident")
            self.next("sym", ":")
            src = self.next("ident")
            self.next("arrowto")
            tgt = self.next("ident")
            for v in (src, tgt):
                if v.text not in vertices:
                    raise ParseError(f"unknown vertex {v.text!r}", v.line, v.col)
            arrows.append((name.text, src.text, tgt.text))
            if self.accept("sym", ";"):
                if self.peek() and self.peek().text == "}":
                    break
                continue
            break
        self.next("sym", "}")
        try:
            quiver = Quiver(vertices, arrows)
        except EngineError as exc:
            raise ParseError(str(exc)) from exc

        relations = []
        tok = self.peek()
        if tok and tok.kind == "ident" and tok.text == "relations":
            self.next()
            self.next("sym", "{")
            while not self.accept("sym", "}"):
                relations.append(self._relation(quiver, field))
                if not self.accept("sym", ";"):
                    self.next("sym", "}")
                    break
        if self.peek() is not None:
            tok = self.peek()
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
        try:
            return BoundQuiverPresentation(quiver, field, relations)
        except EngineError as exc:
            raise ParseError(str(exc)) from exc

    def _relation(self, quiver, field):
        elem = AlgebraElement.zero(quiver, field)
        first = True
        while True:
            tok = self.peek()
            if tok is None or tok.text in (";", "}"):
                break
            sign = field.one()
            if self.accept("sym", "-"):
                sign = field.neg(sign)
            elif self.accept("sym", "+"):
                if first:
                    raise ParseError("relation may not start with +", tok.line, tok.col)
            elif not first:
                raise ParseError(f"expected + or -, found {tok.text!r}", tok.line, tok.col)
            coeff, path = self._term(quiver, field)
            elem = elem + AlgebraElement.from_path(quiver, field, path, field.mul(sign, coeff))
            first = False
        if first:
            tok = self.peek()
            raise ParseError("empty relation", tok.line if tok else None, tok.col if tok else None)
        return elem

    def _term(self, quiver, field):
        tok = self.peek()
        coeff = field.one()
        if tok is not None and tok.kind in ("int", "frac"):
            self.next()
            try:
                coeff = field.parse_scalar(tok.text)
            except ParseError as exc:
                raise ParseError(str(exc), tok.line, tok.col) from exc
            self.next("sym", "*")
        names = []
        while True:
            tok = self.next("ident")
            if tok.text not in quiver.arrow_index:
                raise ParseError(f"unknown arrow {tok.text!r}", tok.line, tok.col)
            names.append(tok.text)
            if not self.accept("sym", "*"):
                break
        idx = [quiver.arrow_index[n] for n in reversed(names)]
        v = quiver.arrow_source[idx[0]]
        for a, b in zip(idx, idx[1:]):
            if quiver.arrow_target[a] != quiver.arrow_source[b]:
                raise ParseError(
                    f"non-composable path {'*'.join(names)}", tok.line, tok.col
                )
        return coeff, Path(quiver, v, idx)


def parse_presentation(text: str) -> BoundQuiverPresentation:
    return _Parser(text).parse()


def _format_term(field, path, coeff, leading=False):
    c = field.format_scalar(coeff)
    if c == "1":
        return str(path), False
    if c == "-1":
        return str(path), True
    neg = c.startswith("-")
    if neg:
        c = c[1:]
    return f"{c}*{path}", neg


def serialize_presentation(pres: BoundQuiverPresentation) -> str:
    """Canonical text; each relation is written with its leading term first."""
    q = pres.quiver
    lines = [f"field {pres.field}"]
    lines.append("quiver {")
    lines.append("  vertices: " + " ".join(q.vertices) + " ;")
    lines.append("  arrows:")
    for name, s, t in q.arrows:
        lines.append(f"    {name}: {s} -> {t} ;")
    lines.append("}")
    if pres.relations:
        lines.append("relations {")
        for lead, rel in pres.oriented_relations():
            parts = []
            rest = [(p, c) for p, c in rel.sorted_terms() if p != lead]
            ordered = [(lead, rel.terms[lead])] + rest
            for k, (p, c) in enumerate(ordered):
                text, neg = _format_term(pres.field, p, c)
                if k == 0:
                    parts.append(("-" if neg else "") + text)
                else:
                    parts.append(("- " if neg else "+ ") + text)
            lines.append("  " + " ".join(parts) + " ;")
        lines.append("}")
    return "\n".join(lines) + "\n"
