"""Concrete syntax: tokenizer, parser and pretty-printer.

Formula grammar (quantifiers scope as far right as possible; a
quantified formula used as an operand must be parenthesized)::

    formula := "E" var formula | "A" var formula | iff
    iff     := imp { "<->" imp }
    imp     := or [ "->" imp ]
    or      := and { "|" and }
    and     := unary { "&" unary }
    unary   := "~" unary | atom | "(" formula ")" | "true" | "false"
    atom    := term ("=" | "!=" | "<" | "<=") term
             | "C[" nat "](" term ")" | "Fin(" term ")"
             | "Res[" nat "," int "](" term ")"

Terms mix ring and lattice operators (binding ``~`` over ``.``/``&``
over ``+``/``-`` over ``|``); comparison operands exclude a top-level
``|``, which must be parenthesized there.  ``t1 = t2`` abbreviates
``t1 + t2 = 0``, ``t1 < t2`` abbreviates ``t1.t2 = t1  and  t1 != t2``.
Comments run from ``#`` to end of line; ``;`` separates formulas.
"""

from __future__ import annotations

import re

from . import formulas as F
from .terms import ONE, ZERO, Term, term_key, var


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, code: str = "SYNTAX"):
        super().__init__(f"{line}:{col}: {message} [{code}]")
        self.message = message
        self.line = line
        self.col = col
        self.code = code


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op><->|->|<=|!=|[<=+\-.&|~()\[\],;])"
)

_RESERVED = {"E", "A", "C", "Fin", "Res", "true", "false"}


def _tokenize(text: str) -> list:
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        else:
            tokens.append((kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops) -> bool:
        kind, value, _, _ = self.peek()
        return kind == "op" and value in ops

    def eat_op(self, op: str):
        if not self.at_op(op):
            self.fail(f"expected {op!r}")
        return self.next()

    def fail(self, message: str, code: str = "SYNTAX"):
        _, value, line, col = self.peek()
        shown = value or "end of input"
        raise ParseError(f"{message}, found {shown!r}", line, col, code)

    # -- formulas ----------------------------------------------------------

    def formula(self) -> F.Formula:
        kind, value, _, _ = self.peek()
        if kind == "name" and value in ("E", "A"):
            self.next()
            vkind, vname, line, col = self.next()
            if vkind != "name" or vname in _RESERVED:
                raise ParseError("expected a variable after quantifier", line, col)
            body = self.formula()
            return F.Exists(vname, body) if value == "E" else F.Forall(vname, body)
        return self.iff_level()

    def iff_level(self) -> F.Formula:
        out = self.imp_level()
        while self.at_op("<->"):
            self.next()
            out = F.Iff(out, self.imp_level())
        return out

    def imp_level(self) -> F.Formula:
        left = self.or_level()
        if self.at_op("->"):
            self.next()
            return F.Implies(left, self.imp_level())
        return left

    def or_level(self) -> F.Formula:
        args = [self.and_level()]
        while self.at_op("|"):
            self.next()
            args.append(self.and_level())
        return args[0] if len(args) == 1 else F.or_(*args)

    def and_level(self) -> F.Formula:
        args = [self.unary()]
        while self.at_op("&"):
            self.next()
            args.append(self.unary())
        return args[0] if len(args) == 1 else F.and_(*args)

    def unary(self) -> F.Formula:
        kind, value, _, _ = self.peek()
        if kind == "name" and value in ("E", "A"):
            # a quantifier here scopes as far right as possible
            return self.formula()
        if self.at_op("~"):
            self.next()
            return F.not_(self.unary())
        if kind == "name" and value == "true":
            self.next()
            return F.TOP
        if kind == "name" and value == "false":
            self.next()
            return F.BOT
        if kind == "name" and value == "C":
            return self.count_atom()
        if kind == "name" and value == "Fin":
            return self.fin_atom()
        if kind == "name" and value == "Res":
            return self.res_atom()
        save = self.pos
        try:
            return self.comparison()
        except ParseError:
            self.pos = save
        if self.at_op("("):
            self.next()
            out = self.formula()
            self.eat_op(")")
            return out
        self.fail("expected a formula")

    def count_atom(self) -> F.Formula:
        self.next()
        self.eat_op("[")
        k = self.nat()
        self.eat_op("]")
        self.eat_op("(")
        t = self.term_full()
        self.eat_op(")")
        if k < 1:
            raise ParseError("count index must be at least 1",
                             *self.peek()[2:], code="C_INDEX")
        return F.CountAtLeast(k, t)

    def fin_atom(self) -> F.Formula:
        self.next()
        self.eat_op("(")
        t = self.term_full()
        self.eat_op(")")
        return F.FinAtom(t)

    def res_atom(self) -> F.Formula:
        self.next()
        self.eat_op("[")
        n = self.nat()
        self.eat_op(",")
        sign = 1
        if self.at_op("-"):
            self.next()
            sign = -1
        r = sign * self.nat()
        self.eat_op("]")
        self.eat_op("(")
        t = self.term_full()
        self.eat_op(")")
        if n < 1:
            raise ParseError("residue modulus must be at least 1",
                             *self.peek()[2:], code="RES_MODULUS")
        return F.res(n, r, t)

    def nat(self) -> int:
        kind, value, line, col = self.peek()
        if kind != "int":
            raise ParseError("expected a number", line, col)
        self.next()
        return int(value)

    def comparison(self) -> F.Formula:
        # comparison operands exclude top-level & and | (they belong to the
        # formula level there); parenthesized subterms may still use them
        left = self.term_sum(lattice=False)
        if self.at_op("="):
            self.next()
            right = self.term_sum(lattice=False)
            return F.ZeroAtom(left + right)
        if self.at_op("!="):
            self.next()
            right = self.term_sum(lattice=False)
            return F.Not(F.ZeroAtom(left + right))
        if self.at_op("<="):
            self.next()
            right = self.term_sum(lattice=False)
            return F.ZeroAtom(left * right + left)
        if self.at_op("<"):
            self.next()
            right = self.term_sum(lattice=False)
            return F.and_(F.ZeroAtom(left * right + left),
                          F.Not(F.ZeroAtom(left + right)))
        self.fail("expected a comparison operator")

    # -- terms ---------------------------------------------------------------

    def term_full(self) -> Term:
        out = self.term_sum(lattice=True)
        while self.at_op("|"):
            save = self.pos
            self.next()
            try:
                rhs = self.term_sum(lattice=True)
            except ParseError:
                self.pos = save
                break
            out = out + rhs + out * rhs
        return out

    def term_sum(self, lattice: bool) -> Term:
        out = self.term_prod(lattice)
        while self.at_op("+", "-"):
            save = self.pos
            op = self.next()[1]
            try:
                rhs = self.term_prod(lattice)
            except ParseError:
                self.pos = save
                break
            out = out + rhs if op == "+" else out + out * rhs
        return out

    def term_prod(self, lattice: bool) -> Term:
        out = self.term_atom()
        ops = (".", "&") if lattice else (".",)
        while self.at_op(*ops):
            save = self.pos
            self.next()
            try:
                rhs = self.term_atom()
            except ParseError:
                self.pos = save
                break
            out = out * rhs
        return out

    def term_atom(self) -> Term:
        kind, value, line, col = self.peek()
        if self.at_op("~"):
            self.next()
            return ONE + self.term_atom()
        if self.at_op("("):
            self.next()
            out = self.term_full()
            self.eat_op(")")
            return out
        if kind == "int" and value == "0":
            self.next()
            return ZERO
        if kind == "int" and value == "1":
            self.next()
            return ONE
        if kind == "name":
            if value in _RESERVED:
                raise ParseError(f"{value!r} is reserved", line, col, code="RESERVED")
            self.next()
            return var(value)
        self.fail("expected a term")


def parse(text: str) -> F.Formula:
    parser = _Parser(text)
    out = parser.formula()
    kind, value, line, col = parser.peek()
    if kind != "eof":
        raise ParseError(f"unexpected trailing input {value!r}", line, col,
                         code="TRAILING")
    return F.alpha_apart(out)


def parse_many(text: str) -> list:
    parser = _Parser(text)
    out = []
    while parser.peek()[0] != "eof":
        out.append(F.alpha_apart(parser.formula()))
        if parser.at_op(";"):
            parser.next()
        elif parser.peek()[0] != "eof":
            parser.fail("expected ';' between formulas")
    return out


# ---------------------------------------------------------------------------
# printing


def format_term(t: Term) -> str:
    if t.is_zero:
        return "0"
    monos = sorted(t.monomials, key=lambda m: (len(m), tuple(sorted(m))))
    return " + ".join(".".join(sorted(m)) if m else "1" for m in monos)


_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4, 5


def format_formula(f: F.Formula) -> str:
    return _fmt(f, 0)


def _fmt(f: F.Formula, parent: int) -> str:
    if isinstance(f, F.Top):
        return "true"
    if isinstance(f, F.Bot):
        return "false"
    if isinstance(f, F.ZeroAtom):
        return f"{format_term(f.term)} = 0"
    if isinstance(f, F.CountAtLeast):
        return f"C[{f.k}]({format_term(f.term)})"
    if isinstance(f, F.FinAtom):
        return f"Fin({format_term(f.term)})"
    if isinstance(f, F.ResAtom):
        return f"Res[{f.modulus},{f.residue}]({format_term(f.term)})"
    if isinstance(f, F.Not):
        if isinstance(f.body, F.ZeroAtom):
            return f"{format_term(f.body.term)} != 0"
        if isinstance(f.body, (F.And, F.Or, F.Implies, F.Iff, F.Exists, F.Forall)):
            return f"~({_fmt(f.body, 0)})"
        return f"~{_fmt(f.body, _PREC_UNARY)}"
    if isinstance(f, F.And):
        s = " & ".join(_fmt(a, _PREC_UNARY) for a in f.args)
        return f"({s})" if parent >= _PREC_UNARY else s
    if isinstance(f, F.Or):
        s = " | ".join(_fmt(a, _PREC_AND) for a in f.args)
        return f"({s})" if parent >= _PREC_AND else s
    if isinstance(f, F.Implies):
        s = f"{_fmt(f.left, _PREC_OR)} -> {_fmt(f.right, _PREC_IMP)}"
        return f"({s})" if parent >= _PREC_OR else s
    if isinstance(f, F.Iff):
        s = f"{_fmt(f.left, _PREC_IFF)} <-> {_fmt(f.right, _PREC_IMP)}"
        return f"({s})" if parent >= _PREC_IMP else s
    if isinstance(f, (F.Exists, F.Forall)):
        q = "E" if isinstance(f, F.Exists) else "A"
        if isinstance(f.body, (F.And, F.Or, F.Implies, F.Iff)):
            body = f"({_fmt(f.body, 0)})"
        else:
            body = _fmt(f.body, 0)
        s = f"{q} {f.var} {body}"
        return f"({s})" if parent > 0 else s
    raise TypeError(f"not a formula: {f!r}")
