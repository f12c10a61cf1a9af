"""A small DSL for functional equations on a semigroup with automorphism.

Grammar (whitespace-insensitive, no precedence beyond term/expression,
no leading minus, '*' mandatory between factors):

    eq    := expr '=' expr
    expr  := term (('+'|'-') term)*
    term  := (coeff '*')? app ('*' app)*
    app   := ('f'|'g'|'h') '(' word ')'
    word  := atom+
    atom  := 'x' | 'y' | 'z' | 's' '(' word ')'
    coeff := rational | 'i' | 'a'
    rational := digits ('/' digits)?

's(w)' applies the automorphism to the word w; 'a' is the one named
constant an equation may carry.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from .core import EPS, FiniteSemigroup, WindowedSemigroup

MAX_RATIONAL = 10 ** 6

FUNCTIONS = ("f", "g", "h")
VARIABLES = ("x", "y", "z")


class EquationSyntaxError(ValueError):
    """Parse failure with the offending position (0-based offset)."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Sig:
    word: "Word"


@dataclass(frozen=True)
class Word:
    atoms: tuple


@dataclass(frozen=True)
class App:
    fn: str
    word: Word


@dataclass(frozen=True)
class Coeff:
    kind: str              # "rational" | "i" | "a"
    num: int = 0
    den: int = 1


@dataclass(frozen=True)
class Term:
    sign: int              # +1 or -1; the first term of an expr is +1
    coeff: Coeff | None
    apps: tuple


@dataclass(frozen=True)
class Expr:
    terms: tuple


@dataclass(frozen=True)
class Equation:
    lhs: Expr
    rhs: Expr


_PUNCT = set("+-*/()=")
_LETTERS = set("fghsxyzia")


def _lex(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(("NUM", text[start:k], start))
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, k))
            k += 1
            continue
        if ch in _LETTERS:
            tokens.append(("LETTER", ch, k))
            k += 1
            continue
        raise EquationSyntaxError(f"unexpected character {ch!r}", k)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _lex(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.peek()
        if tok[0] != kind:
            raise EquationSyntaxError(f"expected {what}", tok[2])
        return self.advance()

    def parse_equation(self) -> Equation:
        lhs = self.parse_expr()
        self.expect("=", "'='")
        rhs = self.parse_expr()
        tok = self.peek()
        if tok[0] != "END":
            raise EquationSyntaxError("trailing input", tok[2])
        return Equation(lhs, rhs)

    def parse_expr(self) -> Expr:
        terms = [self.parse_term(1)]
        while self.peek()[0] in ("+", "-"):
            sign = 1 if self.advance()[0] == "+" else -1
            terms.append(self.parse_term(sign))
        return Expr(tuple(terms))

    def parse_term(self, sign: int) -> Term:
        coeff = None
        kind, value, pos = self.peek()
        if kind == "NUM":
            self.advance()
            num = int(value)
            den = 1
            if self.peek()[0] == "/":
                self.advance()
                dtok = self.expect("NUM", "denominator")
                den = int(dtok[1])
                if den == 0:
                    raise EquationSyntaxError("zero denominator", dtok[2])
            if num > MAX_RATIONAL or den > MAX_RATIONAL:
                raise EquationSyntaxError("rational out of range", pos)
            coeff = Coeff("rational", num, den)
            self.expect("*", "'*' after coefficient")
        elif kind == "LETTER" and value in ("i", "a"):
            self.advance()
            coeff = Coeff(value)
            self.expect("*", "'*' after coefficient")
        apps = [self.parse_app()]
        while self.peek()[0] == "*":
            self.advance()
            apps.append(self.parse_app())
        return Term(sign, coeff, tuple(apps))

    def parse_app(self) -> App:
        kind, value, pos = self.peek()
        if kind != "LETTER" or value not in FUNCTIONS:
            raise EquationSyntaxError("expected function symbol f, g or h", pos)
        self.advance()
        self.expect("(", "'('")
        word = self.parse_word()
        self.expect(")", "')'")
        return App(value, word)

    def parse_word(self) -> Word:
        atoms = []
        while True:
            kind, value, pos = self.peek()
            if kind == "LETTER" and value in VARIABLES:
                self.advance()
                atoms.append(Var(value))
            elif kind == "LETTER" and value == "s":
                self.advance()
                self.expect("(", "'(' after s")
                inner = self.parse_word()
                self.expect(")", "')'")
                atoms.append(Sig(inner))
            else:
                break
        if not atoms:
            raise EquationSyntaxError("empty word", self.peek()[2])
        return Word(tuple(atoms))


def parse_equation(text: str) -> Equation:
    """Parse DSL text into an equation AST (see module grammar)."""
    return _Parser(text).parse_equation()


def _print_word(word: Word) -> str:
    parts = []
    for atom in word.atoms:
        if isinstance(atom, Var):
            parts.append(atom.name)
        else:
            parts.append(f"s({_print_word(atom.word)})")
    return " ".join(parts)


def _print_coeff(coeff: Coeff) -> str:
    if coeff.kind == "rational":
        return str(coeff.num) if coeff.den == 1 else f"{coeff.num}/{coeff.den}"
    return coeff.kind


def _print_term(term: Term) -> str:
    parts = []
    if term.coeff is not None:
        parts.append(_print_coeff(term.coeff))
    parts.extend(f"{app.fn}({_print_word(app.word)})" for app in term.apps)
    return "*".join(parts)


def _print_expr(expr: Expr) -> str:
    out = [_print_term(expr.terms[0])]
    for term in expr.terms[1:]:
        out.append(" + " if term.sign > 0 else " - ")
        out.append(_print_term(term))
    return "".join(out)


def print_equation(ast: Equation) -> str:
    """Canonical text form; parse(print(ast)) is structurally identical."""
    return f"{_print_expr(ast.lhs)} = {_print_expr(ast.rhs)}"


def equation_symbols(ast: Equation) -> tuple[set, set, bool]:
    """(function symbols, variables, uses the named constant 'a')."""
    funcs: set[str] = set()
    varset: set[str] = set()
    uses_a = False

    def walk_word(word: Word):
        for atom in word.atoms:
            if isinstance(atom, Var):
                varset.add(atom.name)
            else:
                walk_word(atom.word)

    for expr in (ast.lhs, ast.rhs):
        for term in expr.terms:
            if term.coeff is not None and term.coeff.kind == "a":
                uses_a = True
            for app in term.apps:
                funcs.add(app.fn)
                walk_word(app.word)
    return funcs, varset, uses_a


def coeff_value(coeff: Coeff | None, binding: dict) -> complex:
    if coeff is None:
        return 1.0 + 0j
    if coeff.kind == "rational":
        return complex(coeff.num / coeff.den)
    if coeff.kind == "i":
        return 1j
    if "a" not in binding:
        raise KeyError("unbound constant 'a'")
    return complex(binding["a"])


def word_element(word: Word, env: dict, mul, sig):
    """Evaluate a word to a semigroup element under a variable assignment."""
    value = None
    for atom in word.atoms:
        v = env[atom.name] if isinstance(atom, Var) else \
            sig(word_element(atom.word, env, mul, sig))
        value = v if value is None else mul(value, v)
    return value


def evaluate_residual(ast: Equation, binding: dict, S,
                      window: Iterable | None = None) -> float:
    """max |LHS - RHS| over all variable assignments from the window.

    `binding` maps each function symbol used by the equation to a callable
    on elements and, if the equation uses it, the constant 'a' to a number.
    On a finite semigroup the window defaults to all of S.
    """
    funcs, varset, uses_a = equation_symbols(ast)
    for name in funcs:
        if name not in binding:
            raise KeyError(f"unbound symbol {name!r}")
    if uses_a and "a" not in binding:
        raise KeyError("unbound constant 'a'")

    if isinstance(S, WindowedSemigroup):
        mul, sig = S.product, S.sigma
        domain = tuple(window) if window is not None else S.window
    else:
        mul, sig = S.mul, S.sig
        domain = tuple(window) if window is not None else tuple(range(S.n))

    names = sorted(varset)
    worst = 0.0
    for assignment in itertools.product(domain, repeat=len(names)):
        env = dict(zip(names, assignment))
        total = 0j
        for expr, orient in ((ast.lhs, 1.0), (ast.rhs, -1.0)):
            for term in expr.terms:
                value = term.sign * orient * coeff_value(term.coeff, binding)
                for app in term.apps:
                    elem = word_element(app.word, env, mul, sig)
                    value *= binding[app.fn](elem)
                total += value
        worst = max(worst, abs(total))
    return worst


#: The five built-in equations.
BUILTIN_EQUATIONS = {
    "cos-sub":    "g(x s(y)) = g(x)*g(y) + f(x)*f(y)",
    "sine-add":   "f(x s(y)) = f(x)*g(y) + f(y)*g(x)",
    "cos-sine-g": "f(x s(y)) = f(x)*g(y) + f(y)*g(x) - g(x)*g(y)",
    "alpha-sym":  "f(x s(y)) = f(x)*g(y) + f(y)*g(x) + a*g(x s(y))",
    "alpha-skew": "f(x s(y)) = f(x)*g(y) - f(y)*g(x) + a*g(x s(y))",
}

_BUILTIN_CACHE: dict[str, Equation] = {}


def builtin(equation_id: str) -> Equation:
    """Parsed AST of a built-in equation id."""
    if equation_id not in BUILTIN_EQUATIONS:
        raise KeyError(f"unknown equation id {equation_id!r}; "
                       f"known: {', '.join(sorted(BUILTIN_EQUATIONS))}")
    if equation_id not in _BUILTIN_CACHE:
        _BUILTIN_CACHE[equation_id] = parse_equation(
            BUILTIN_EQUATIONS[equation_id])
    return _BUILTIN_CACHE[equation_id]


def resolve_equation(text: str) -> Equation:
    """Accept either a built-in id or literal DSL text."""
    if text in BUILTIN_EQUATIONS:
        return builtin(text)
    return parse_equation(text)


def random_equation(rng: random.Random, max_terms: int = 3,
                    max_apps: int = 2, max_sig_depth: int = 2) -> Equation:
    """A random well-formed AST, for parse/print round-trip fuzzing."""

    def rand_word(depth: int) -> Word:
        atoms = []
        for _ in range(rng.randint(1, 3)):
            if depth < max_sig_depth and rng.random() < 0.3:
                atoms.append(Sig(rand_word(depth + 1)))
            else:
                atoms.append(Var(rng.choice(VARIABLES)))
        return Word(tuple(atoms))

    def rand_coeff() -> Coeff | None:
        roll = rng.random()
        if roll < 0.4:
            return None
        if roll < 0.7:
            return Coeff("rational", rng.randint(0, 12), rng.randint(1, 12))
        return Coeff(rng.choice(["i", "a"]))

    def rand_term(first: bool) -> Term:
        sign = 1 if first else rng.choice([1, -1])
        apps = tuple(App(rng.choice(FUNCTIONS), rand_word(0))
                     for _ in range(rng.randint(1, max_apps)))
        return Term(sign, rand_coeff(), apps)

    def rand_expr() -> Expr:
        count = rng.randint(1, max_terms)
        return Expr(tuple(rand_term(k == 0) for k in range(count)))

    return Equation(rand_expr(), rand_expr())
