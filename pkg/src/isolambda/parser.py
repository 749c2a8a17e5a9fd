"""Concrete syntax input.

Types::

    T ::= ident | T -> T | T /\\ T | T & T | ( T )

with ``->`` right-associative and ``/\\`` (or ``&``) binding tighter and
associating to the left.  Terms::

    t ::= \\x:T. t | t t | t + t | pi[T](t) | x:T | x | ( t )

Application is left-associative and binds tightest, ``+`` is loosest, and a
λ-body extends as far to the right as possible.  An occurrence may omit its
annotation when it is bound; it then inherits the binder's.  A program file
holds one term, optionally preceded by ``atoms A B C;``; ``--`` starts a line
comment.  The unicode forms λ, π, ⇒ and ∧ are accepted too.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .syntax import App, Arrow, Atom, Conj, Lam, Proj, Sum, Term, Type, Var


class ParseError(Exception):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|--[^\n]*)
  | (?P<arrow>->|⇒)
  | (?P<conj>/\\|&|∧)
  | (?P<lam>\\|λ)
  | (?P<pi>π|pi(?![A-Za-z0-9_']))
  | (?P<ident>[A-Za-z][A-Za-z0-9_']*)
  | (?P<punct>[().:+\[\];])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _lex(src: str) -> list:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(_Tok(text if kind == "punct" else kind, text, line, pos - line_start + 1))
        nl = text.count("\n")
        if nl:
            line += nl
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, src: str, atoms: Optional[set] = None):
        self.toks = _lex(src)
        self.i = 0
        self.atoms = atoms

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def err(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.cur
        return ParseError(msg, tok.line, tok.col)

    def eat(self, kind: str) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise self.err(f"expected {kind!r}, found {shown!r}")
        self.i += 1
        return tok

    def at(self, *kinds) -> bool:
        return self.cur.kind in kinds

    # types

    def type_(self) -> Type:
        left = self.conj_type()
        if self.at("arrow"):
            self.i += 1
            return Arrow(left, self.type_())
        return left

    def conj_type(self) -> Type:
        out = self.type_atom()
        while self.at("conj"):
            self.i += 1
            out = Conj(out, self.type_atom())
        return out

    def type_atom(self) -> Type:
        if self.at("("):
            self.i += 1
            t = self.type_()
            self.eat(")")
            return t
        tok = self.eat_ident("type")
        if self.atoms is not None and tok.text not in self.atoms:
            raise self.err(f"atom {tok.text!r} is not declared", tok)
        return Atom(tok.text)

    def eat_ident(self, what: str) -> _Tok:
        if not self.at("ident"):
            shown = self.cur.text or "end of input"
            raise self.err(f"expected {what}, found {shown!r}")
        return self.eat("ident")

    # terms

    def term(self, env: dict) -> Term:
        out = self.app(env)
        while self.at("+"):
            self.i += 1
            out = Sum(out, self.app(env))
        return out

    def app(self, env: dict) -> Term:
        if self.at("lam"):
            return self.lam(env)
        out = self.atom(env)
        while self.at("ident", "(", "pi", "lam"):
            if self.at("lam"):
                return App(out, self.lam(env))
            out = App(out, self.atom(env))
        return out

    def lam(self, env: dict) -> Term:
        self.eat("lam")
        name = self.eat_ident("binder").text
        self.eat(":")
        ann = self.type_()
        self.eat(".")
        inner = dict(env)
        inner[name] = ann
        return Lam(name, ann, self.term(inner))

    def atom(self, env: dict) -> Term:
        if self.at("("):
            self.i += 1
            t = self.term(env)
            self.eat(")")
            return t
        if self.at("pi"):
            self.i += 1
            self.eat("[")
            ann = self.type_()
            self.eat("]")
            self.eat("(")
            body = self.term(env)
            self.eat(")")
            return Proj(ann, body)
        tok = self.eat_ident("a term")
        if self.at(":"):
            self.i += 1
            return Var(tok.text, self.type_())
        if tok.text not in env:
            raise self.err(f"free variable {tok.text!r} needs a type annotation", tok)
        return Var(tok.text, env[tok.text])

    def done(self):
        if not self.at("eof"):
            raise self.err(f"unexpected {self.cur.text!r}")


def parse_type(src: str, atoms=None) -> Type:
    p = _Parser(src, set(atoms) if atoms is not None else None)
    t = p.type_()
    p.done()
    return t


def parse_term(src: str, atoms=None) -> Term:
    p = _Parser(src, set(atoms) if atoms is not None else None)
    t = p.term({})
    p.done()
    return t


@dataclass
class Program:
    atoms: Optional[list]
    term: Term


def parse_program(src: str, atoms=None) -> Program:
    """A source file: optional ``atoms ...;`` header, then one term."""
    p = _Parser(src)
    declared = None
    if p.at("ident") and p.cur.text == "atoms":
        p.i += 1
        declared = []
        while p.at("ident"):
            declared.append(p.eat("ident").text)
        p.eat(";")
    if atoms is not None:
        declared = list(atoms) + [a for a in (declared or []) if a not in atoms]
    p.atoms = set(declared) if declared is not None else None
    t = p.term({})
    p.done()
    return Program(declared, t)
