"""Text grammar for terms, variable declarations and rule files.

Term grammar (ASCII, whitespace-insensitive between tokens):

    program   := decl* expr
    decl      := "vars" (name+ ":" SORT)+ ";"
    expr      := factor ("+" factor)*
    factor    := scaled ("@" scaled)*
    scaled    := prod | prod "." scaled
    prod      := atom ("*" atom)*
    atom      := LITERAL | NAME | "0E" | "0F" | "0G" | "(" expr ")"
    LITERAL   := [-]digits | [-]digits "/" digits

"." is the scalar action and binds tightest, "*" is scalar
multiplication, "@" the bilinear product, "+" the loosest.  Sorts are
checked during parsing and reported with the token position.

Rule files are line oriented:

    # comment
    sorts K E
    ac +K *K
    vars l m: K
    rule 1 + 1 -> 0

Printing is deterministic and injective on canonical terms; reparsing a
printed term under the same declarations yields an AC-equal term.
"""

from __future__ import annotations

import re
from fractions import Fraction

from vecnorm import terms
from vecnorm.engine import RewriteSystem, Rule, make_rule
from vecnorm.terms import DEFAULT_SIG, Signature, Sort, VecnormError, lit, var


class ParseError(VecnormError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<zero>0[EFG]\b)
      | (?P<lit>-?\d+(?:/\d+)?)
      | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
      | (?P<punct>[().;:@*+])
    )""",
    re.VERBOSE,
)

_SORT_NAMES = {s.name: s for s in Sort}


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup is None:
            break
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sig: Signature, env: dict[str, Sort] | None = None):
        self.sig = sig
        self.toks = _tokenize(text)
        self.i = 0
        self.env: dict[str, Sort] = dict(env or {})

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.next()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text or 'end of input'!r}", pos)

    def parse_decls(self):
        while self.peek()[1] == "vars":
            self.next()
            pending = []
            while True:
                kind, text, pos = self.next()
                if kind == "name":
                    pending.append((text, pos))
                elif text == ":":
                    kind2, sortname, pos2 = self.next()
                    sort = _SORT_NAMES.get(sortname)
                    if sort is None:
                        raise ParseError(f"unknown sort {sortname!r}", pos2)
                    if not pending:
                        raise ParseError("sort given without variable names", pos)
                    for name, npos in pending:
                        if self.env.get(name, sort) != sort:
                            raise ParseError(f"{name} redeclared with a new sort", npos)
                        self.env[name] = sort
                    pending = []
                    if self.peek()[1] == ";":
                        self.next()
                        break
                else:
                    raise ParseError(
                        f"expected variable name or ':', found {text or 'end of input'!r}",
                        pos,
                    )

    def parse_expr(self):
        t, pos = self.parse_factor()
        while self.peek()[1] == "+":
            self.next()
            u, upos = self.parse_factor()
            t = self._mk("+", t, u, pos, upos)
        return t, pos

    def parse_factor(self):
        t, pos = self.parse_scaled()
        while self.peek()[1] == "@":
            _, _, opos = self.next()
            u, upos = self.parse_scaled()
            t = self._app("@", (t, u), opos)
        return t, pos

    def parse_scaled(self):
        t, pos = self.parse_prod()
        if self.peek()[1] == ".":
            _, _, opos = self.next()
            u, _ = self.parse_scaled()
            if t[0] != Sort.K:
                raise ParseError("left operand of '.' must be a scalar", opos)
            if u[0] == Sort.K:
                raise ParseError("right operand of '.' must be a vector", opos)
            t = self._app(f".{Sort(u[0]).name}", (t, u), opos)
        return t, pos

    def parse_prod(self):
        t, pos = self.parse_atom()
        while self.peek()[1] == "*":
            _, _, opos = self.next()
            u, _ = self.parse_atom()
            if t[0] != Sort.K or u[0] != Sort.K:
                raise ParseError("operands of '*' must be scalars", opos)
            t = self._app("*K", (t, u), opos)
        return t, pos

    def parse_atom(self):
        kind, text, pos = self.next()
        if kind == "lit":
            return lit(Fraction(text)), pos
        if kind == "zero":
            return terms.zero(_SORT_NAMES[text[1]]), pos
        if kind == "name":
            sort = self.env.get(text)
            if sort is not None:
                return var(text, sort), pos
            info = self.sig.symbols.get(text)
            if info is not None and not info.args:
                return self._app(text, (), pos), pos
            raise ParseError(f"undeclared identifier {text!r}", pos)
        if text == "(":
            t, _ = self.parse_expr()
            self.expect(")")
            return t, pos
        raise ParseError(f"expected a term, found {text or 'end of input'!r}", pos)

    def _mk(self, op: str, t, u, pos, upos):
        if t[0] != u[0]:
            raise ParseError(
                f"'+' applied to sorts {Sort(t[0]).name} and {Sort(u[0]).name}", upos
            )
        sym = "+K" if t[0] == Sort.K else f"+{Sort(t[0]).name}"
        return self._app(sym, (t, u), pos)

    def _app(self, sym, args, pos):
        try:
            return terms.app(sym, args, self.sig)
        except terms.SortError as exc:
            raise ParseError(str(exc), pos) from exc

    def done(self, what: str):
        kind, text, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input after {what}: {text!r}", pos)


def parse_program(text: str, sig: Signature = DEFAULT_SIG):
    """Parse 'vars ...;' declarations followed by a term.

    Returns (term, declarations) with declarations in source order.
    """
    p = _Parser(text, sig)
    p.parse_decls()
    t, _ = p.parse_expr()
    p.done("term")
    return t, dict(p.env)


def parse_term(text: str, sig: Signature = DEFAULT_SIG):
    return parse_program(text, sig)[0]


# ---------------------------------------------------------------------------
# printing

_PREC_SUM, _PREC_TENSOR, _PREC_PROD, _PREC_SCALE, _PREC_ATOM = 0, 1, 2, 3, 4


def _prec(t) -> int:
    if t[1] != terms.APP:
        return _PREC_ATOM
    sym = t[2]
    if sym.startswith("+"):
        return _PREC_SUM
    if sym == "@":
        return _PREC_TENSOR
    if sym == "*K":
        return _PREC_PROD
    if sym.startswith("."):
        return _PREC_SCALE
    return _PREC_ATOM


def _show(t, ctx: int) -> str:
    kind = t[1]
    if kind == terms.VAR:
        return t[2]
    if kind == terms.LIT:
        s = str(t[2])
        return f"({s})" if s.startswith("-") and ctx > _PREC_SUM else s
    sym = t[2]
    mine = _prec(t)
    if sym.startswith("0"):
        body = sym
    elif sym.startswith("+"):
        body = " + ".join(_show(a, mine + 1) for a in t[4])
    elif sym == "*K":
        body = " * ".join(_show(a, mine + 1) for a in t[4])
    elif sym == "@":
        body = f"{_show(t[4][0], mine + 1)} @ {_show(t[4][1], mine + 1)}"
    elif sym.startswith("."):
        body = f"{_show(t[4][0], _PREC_ATOM)}.{_show(t[4][1], mine)}"
    else:
        body = sym  # free constants are nullary
    if mine < ctx:
        return f"({body})"
    return body


def print_term(t) -> str:
    """Deterministic text for a canonical term; reparsing under the same
    declarations gives an AC-equal term."""
    return _show(t, _PREC_SUM)


# ---------------------------------------------------------------------------
# rule files


def parse_system(text: str, name: str = "user", sig: Signature = DEFAULT_SIG) -> RewriteSystem:
    """Parse the line-oriented rule-file format into a rewrite system.

    Lines: 'sorts ...' (optional), 'ac SYM...', 'vars ...' (shared by all
    rules), 'rule LHS -> RHS', '#' comments.  Rules are validated: both
    sides well-sorted and of equal sort, the left side not a variable,
    right-side variables a subset of left-side ones.
    """
    env: dict[str, Sort] = {}
    ac: set[str] = set()
    rules: list[Rule] = []
    offset = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            head, _, rest = line.partition(" ")
            if head == "sorts":
                for s in rest.split():
                    if s not in _SORT_NAMES:
                        raise ParseError(f"unknown sort {s!r}", offset)
            elif head == "ac":
                for symtok in rest.split():
                    sym = _AC_ALIASES.get(symtok, symtok)
                    if sym not in sig.symbols or not sig.symbols[sym].ac:
                        raise ParseError(f"{symtok!r} is not an AC symbol", offset)
                    ac.add(sym)
            elif head == "vars":
                p = _Parser(rest + ";", sig, env)
                p.toks.insert(0, ("name", "vars", 0))
                p.parse_decls()
                p.done("declarations")
                env.update(p.env)
            elif head == "rule":
                lhs_text, arrow, rhs_text = rest.partition("->")
                if not arrow:
                    raise ParseError("rule without '->'", offset)
                try:
                    lhs = _parse_side(lhs_text, sig, env)
                    rhs = _parse_side(rhs_text, sig, env)
                except ParseError as exc:
                    raise ParseError(f"in rule {rest.strip()!r}: {exc}", offset) from exc
                rules.append(make_rule(f"{name}.{len(rules) + 1}", lhs, rhs, sig))
            else:
                raise ParseError(f"unknown directive {head!r}", offset)
        offset += len(raw) + 1
    return RewriteSystem(name, tuple(rules), frozenset(ac))


_AC_ALIASES = {"+": "+K", "*": "*K"}


def _parse_side(text: str, sig: Signature, env: dict[str, Sort]):
    p = _Parser(text, sig, env)
    t, _ = p.parse_expr()
    p.done("rule side")
    return t
