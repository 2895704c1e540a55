"""A small term language for convex sets of weightings.

Grammar, with ``|`` loosest, ``+`` in the middle, ``.`` tightest:

    term   := sum ('|' sum)*
    sum    := scaled ('+' scaled)*
    scaled := scalar '.' scaled | atom
    atom   := 'bot' | '0' | ident | '(' term ')'

Identifiers match [a-zA-Z][a-zA-Z0-9_]* and must not be the keyword
``bot``.  Scalars are nonnegative rationals written ``p`` or ``p/q``;
over nat they must reduce to whole numbers, over bool to 0 or 1.

A term denotes a convex set of weightings over its declared variables:
a variable denotes the point set of its own unit weighting, ``0`` the
zero point, ``bot`` the empty set, ``.`` scaling, ``+`` the Minkowski
sum, ``|`` the hull of the union.  Scaling by zero gives the zero
point whatever the subterm denotes, including ``bot``.

Two terms are equal exactly when their denotations over the declared
variables coincide: evaluation lands in the free algebra on the
variables, and any other assignment factors through it, so no
per-assignment quantification is needed.

Rendering turns one-variable sets into closed intervals and
two-variable sets into vertex lists ordered counterclockwise around
the exact centroid.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .convex import (
    ConvexSet,
    cs_add,
    cs_empty,
    cs_equal,
    cs_join,
    cs_scale,
    cs_zero,
    hull_canonicalize,
)
from .errors import (
    ConvexmodError,
    DimensionMismatchError,
    ParseError,
    UnmappedSymbolError,
)
from .freemod import fs_unit
from .semiring import Scalar, Semiring


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Bot(Term):
    __slots__ = ()


@dataclass(frozen=True)
class Zero(Term):
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Scale(Term):
    scalar: Scalar
    body: Term


@dataclass(frozen=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Join(Term):
    left: Term
    right: Term


BOT = Bot()
ZERO = Zero()

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)"
    r"|(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)"
    r"|(?P<punct>[.+|()]))")

_KEYWORDS = {"bot"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup == "number":
            tokens.append(("number", m.group("number"), m.start("number")))
        elif m.lastgroup == "ident":
            word = m.group("ident")
            kind = "bot" if word in _KEYWORDS else "ident"
            tokens.append((kind, word, m.start("ident")))
        else:
            tokens.append((m.group("punct"), m.group("punct"),
                           m.start("punct")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _parse_scalar(sr: Semiring, text: str, at: int) -> Scalar:
    value = Fraction(*(int(p) for p in text.split("/")))
    if sr.id == "qplus":
        return value
    if value.denominator != 1:
        raise ParseError(f"bad scalar for {sr.id}: {text}", at)
    n = int(value)
    if sr.id == "bool" and n not in (0, 1):
        raise ParseError(f"bad scalar for bool: {text}", at)
    return n


class _Parser:
    def __init__(self, text: str, sr: Semiring):
        self.sr = sr
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}",
                             tok[2])
        return tok

    def parse(self) -> Term:
        t = self.term()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return t

    def term(self) -> Term:
        t = self.sum()
        while self.peek()[0] == "|":
            self.advance()
            t = Join(t, self.sum())
        return t

    def sum(self) -> Term:
        t = self.scaled()
        while self.peek()[0] == "+":
            self.advance()
            t = Add(t, self.scaled())
        return t

    def scaled(self) -> Term:
        kind, text, at = self.peek()
        if kind == "number" and self.tokens[self.i + 1][0] == ".":
            self.advance()
            self.advance()
            return Scale(_parse_scalar(self.sr, text, at), self.scaled())
        return self.atom()

    def atom(self) -> Term:
        kind, text, at = self.advance()
        if kind == "bot":
            return BOT
        if kind == "number":
            if text == "0":
                return ZERO
            raise ParseError(
                f"number {text!r} must be a scalar followed by '.'", at)
        if kind == "ident":
            return Var(text)
        if kind == "(":
            t = self.term()
            self.expect(")")
            return t
        raise ParseError(f"expected a term, found {text or 'end of input'!r}",
                         at)


def parse(text: str, sr: Semiring) -> Term:
    """Parse one term; scalars are validated for the semiring."""
    return _Parser(text, sr).parse()


def format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction) and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    return str(int(value))


def format_term(t: Term) -> str:
    """Minimal-parenthesis printer; reparsing reproduces the tree."""
    if isinstance(t, Bot):
        return "bot"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Scale):
        body = t.body
        if isinstance(body, (Add, Join)):
            inner = f"({format_term(body)})"
        else:
            inner = format_term(body)
        return f"{format_scalar(t.scalar)}.{inner}"
    if isinstance(t, Add):
        left = format_term(t.left)
        if isinstance(t.left, Join):
            left = f"({left})"
        right = format_term(t.right)
        if isinstance(t.right, (Add, Join)):
            right = f"({right})"
        return f"{left} + {right}"
    if isinstance(t, Join):
        left = format_term(t.left)
        right = format_term(t.right)
        if isinstance(t.right, Join):
            right = f"({right})"
        return f"{left} | {right}"
    raise ConvexmodError(f"not a term: {t!r}")


def free_variables(t: Term) -> tuple[str, ...]:
    out: set[str] = set()

    def walk(node: Term):
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Scale):
            walk(node.body)
        elif isinstance(node, (Add, Join)):
            walk(node.left)
            walk(node.right)

    walk(t)
    return tuple(sorted(out))


def eval_term(t: Term, sr: Semiring,
              variables: Iterable[str]) -> ConvexSet:
    """Denotation over the declared variables: each variable stands for
    the point set of its own unit weighting."""
    declared = set(variables)

    def rec(node: Term) -> ConvexSet:
        if isinstance(node, Bot):
            return cs_empty(sr)
        if isinstance(node, Zero):
            return cs_zero(sr)
        if isinstance(node, Var):
            if node.name not in declared:
                raise UnmappedSymbolError(
                    f"unbound variable {node.name!r}")
            return hull_canonicalize([fs_unit(sr, node.name)], sr)
        if isinstance(node, Scale):
            return cs_scale(node.scalar, rec(node.body))
        if isinstance(node, Add):
            return cs_add(rec(node.left), rec(node.right))
        if isinstance(node, Join):
            return cs_join(rec(node.left), rec(node.right))
        raise ConvexmodError(f"not a term: {node!r}")

    return rec(t)


def term_equal(t1: Term, t2: Term, sr: Semiring,
               variables: Iterable[str]) -> bool:
    """Semantic equality of denotations over a shared variable set."""
    declared = list(variables)
    return cs_equal(eval_term(t1, sr, declared),
                    eval_term(t2, sr, declared))


def synthesize_term(A: ConvexSet) -> Term:
    """A term whose denotation over the support variables is A: one
    weighted sum per generator, joined together."""
    if A.is_empty():
        return BOT
    parts = []
    for g in A.generators:
        body: Term | None = None
        for x in g.support():
            piece: Term = Var(x)
            if g.value(x) != A.semiring.one:
                piece = Scale(g.value(x), piece)
            body = piece if body is None else Add(body, piece)
        parts.append(body if body is not None else ZERO)
    out = parts[0]
    for p in parts[1:]:
        out = Join(out, p)
    return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_variables(A: ConvexSet, variables, arity: int) -> list[str]:
    derived = sorted({x for g in A.generators for x in g.support()})
    if variables is not None:
        declared = list(variables)
        stray = [x for x in derived if x not in declared]
        if stray:
            raise DimensionMismatchError(
                f"set mentions {stray[0]!r}, not a declared variable")
        derived = declared
    if len(derived) > arity:
        raise DimensionMismatchError(
            f"need at most {arity} variables, set has {len(derived)}")
    while len(derived) < arity:
        derived.append(None)
    return derived


def render_interval(A: ConvexSet, variables: Sequence[str] | None = None
                    ) -> tuple[Fraction, Fraction] | None:
    """Endpoints of a one-variable set: the min and max coordinate over
    the canonical generators, the zero weighting counting as 0.  The
    empty set renders as None."""
    if A.semiring.id != "qplus":
        raise ConvexmodError("interval rendering needs the qplus semiring")
    if A.is_empty():
        return None
    (x,) = _render_variables(A, variables, 1)
    coords = [Fraction(g.value(x)) if x is not None else Fraction(0)
              for g in A.generators]
    return (min(coords), max(coords))


def _half(d: tuple[Fraction, Fraction]) -> int:
    if d[1] > 0 or (d[1] == 0 and d[0] > 0):
        return 0
    return 1


def _cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def render_polygon(A: ConvexSet, variables: Sequence[str] | None = None
                   ) -> list[tuple[Fraction, Fraction]] | None:
    """Vertices of a two-variable set: the canonical generators as
    coordinate pairs, ordered counterclockwise around their exact
    centroid starting from the lexicographically least vertex; ties on
    equal angles break lexicographically.  None for the empty set."""
    if A.semiring.id != "qplus":
        raise ConvexmodError("polygon rendering needs the qplus semiring")
    if A.is_empty():
        return None
    x, y = _render_variables(A, variables, 2)
    pts = sorted(
        (Fraction(g.value(x)) if x is not None else Fraction(0),
         Fraction(g.value(y)) if y is not None else Fraction(0))
        for g in A.generators)
    if len(pts) <= 2:
        return pts
    n = len(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n

    def compare(p, q):
        dp = (p[0] - cx, p[1] - cy)
        dq = (q[0] - cx, q[1] - cy)
        hp, hq = _half(dp), _half(dq)
        if hp != hq:
            return -1 if hp < hq else 1
        cr = _cross(dp, dq)
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return -1 if p < q else (0 if p == q else 1)

    ordered = sorted(pts, key=functools.cmp_to_key(compare))
    start = ordered.index(min(ordered))
    return ordered[start:] + ordered[:start]


# ---------------------------------------------------------------------------
# term files
# ---------------------------------------------------------------------------

def parse_term_lines(text: str, sr: Semiring
                     ) -> list[tuple[int, Term]]:
    """Terms from a text blob: one per line, '#' starts a comment,
    blank lines skipped.  Returns (line number, term) pairs."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append((lineno, parse(line, sr)))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc.message}", exc.position)
    return out


def load_term_file(path: str, sr: Semiring) -> list[tuple[int, Term]]:
    with open(path, encoding="utf-8") as fh:
        return parse_term_lines(fh.read(), sr)
