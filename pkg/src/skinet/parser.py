"""Recursive-descent parser and pretty-printer for the skillset language.

Example::

    skillset demo {
      resource {
        battery {
          initial Good
          Good -> Low
          Low -> Good
        }
      }
      event {
        drain {
          guard battery == Good
          battery -> Low
        }
      }
      skill move {
        precondition {
          charged { guard battery == Good effect battery -> Low }
        }
        start battery -> Good
        success done battery -> Good
      }
    }

Guards accept ``==``, ``!=``, ``and``, ``or``, ``not``, ``true``,
``false`` and parentheses.  ``//`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    TRUE, And, Atom, Condition, Const, Event, Guard, Not, Or, Resource,
    Skill, Skillset, Terminal,
)

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>//[^\n]*)"
    r"|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>->|==|!=|[{}()])"
)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"{line}:{col}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str  # "id", "op" or "eof"
    text: str
    line: int
    col: int

    def __str__(self):
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind in ("id", "op"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, expected: str, context: str = "") -> ParseError:
        where = f" in {context}" if context else ""
        return ParseError(f"expected {expected}{where}, got {self.tok}", self.tok.line, self.tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def expect(self, text: str, context: str = "") -> Token:
        if not self.at(text):
            raise self.error(repr(text), context)
        return self.advance()

    def ident(self, context: str = "") -> str:
        if self.tok.kind != "id":
            raise self.error("identifier", context)
        return self.advance().text

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    # -- top level ---------------------------------------------------------

    def skillset(self) -> Skillset:
        self.expect("skillset")
        name = self.ident("skillset header")
        self.expect("{", f"skillset {name!r}")
        resources, events, skills = [], [], []
        while not self.at("}"):
            if self.at("resource"):
                self.advance()
                resources += self.block(self.resource, "resource block")
            elif self.at("event"):
                self.advance()
                events += self.block(self.event, "event block")
            elif self.at("skill"):
                self.advance()
                skills.append(self.skill())
            else:
                raise self.error("'resource', 'event', 'skill' or '}'", f"skillset {name!r}")
        self.advance()
        if self.tok.kind != "eof":
            raise self.error("end of input")
        return Skillset(name, tuple(resources), tuple(events), tuple(skills))

    def block(self, item, context):
        self.expect("{", context)
        items = []
        while not self.at("}"):
            if self.tok.kind == "eof":
                raise self.error("'}'", context)
            items.append(item())
        self.advance()
        return items

    def resource(self) -> Resource:
        name = self.ident("resource block")
        ctx = f"resource {name!r}"
        self.expect("{", ctx)
        self.expect("initial", ctx)
        initial = self.ident(ctx)
        states = [initial]
        transitions = []
        while not self.at("}"):
            src = self.ident(ctx)
            self.expect("->", ctx)
            dst = self.ident(ctx)
            transitions.append((src, dst))
            states += [s for s in (src, dst) if s not in states]
        self.advance()
        return Resource(name, tuple(states), initial, tuple(transitions))

    def event(self) -> Event:
        name = self.ident("event block")
        ctx = f"event {name!r}"
        self.expect("{", ctx)
        guard = TRUE
        if self.at("guard"):
            self.advance()
            guard = self.expr(ctx)
        effects = []
        while not self.at("}"):
            effects += self.effects(ctx)
        self.advance()
        return Event(name, guard, tuple(effects))

    def skill(self) -> Skill:
        name = self.ident("skill header")
        ctx = f"skill {name!r}"
        self.expect("{", ctx)
        pre, inv, succ, fail, interrupts = [], [], [], [], []
        start = None
        while not self.at("}"):
            tok = self.tok
            word = tok.text if tok.kind == "id" else None
            if word == "precondition":
                self.advance()
                pre += self.block(lambda: self.condition(ctx), ctx)
            elif word == "invariant":
                self.advance()
                inv += self.block(lambda: self.condition(ctx), ctx)
            elif word == "start":
                if start is not None:
                    raise ParseError(f"duplicate 'start' in {ctx}", tok.line, tok.col)
                self.advance()
                start = self.effects(ctx)
            elif word == "interrupt":
                self.advance()
                interrupts.append(self.effects(ctx))
            elif word in ("success", "failure"):
                self.advance()
                term = Terminal(self.ident(ctx), self.effects(ctx))
                (succ if word == "success" else fail).append(term)
            elif word is not None and self.peek().text == "{":
                # a named guard outside the precondition braces
                pre.append(self.condition(ctx))
            else:
                raise self.error(
                    "'precondition', 'start', 'invariant', 'interrupt', "
                    "'success', 'failure' or '}'", ctx)
        self.advance()
        return Skill(name, tuple(pre), start or (), tuple(inv), tuple(succ), tuple(fail),
                     tuple(interrupts))

    def condition(self, context) -> Condition:
        name = self.ident(context)
        ctx = f"{context} {name!r}"
        self.expect("{", ctx)
        self.expect("guard", ctx)
        guard = self.expr(ctx)
        effects = ()
        if self.at("effect"):
            self.advance()
            effects = self.effects(ctx)
        self.expect("}", ctx)
        return Condition(name, guard, effects)

    def effects(self, context) -> tuple[tuple[str, str], ...]:
        if self.at("{"):
            self.advance()
            items = []
            while not self.at("}"):
                items.append(self.effect(context))
            self.advance()
            return tuple(items)
        return (self.effect(context),)

    def effect(self, context) -> tuple[str, str]:
        res = self.ident(context)
        self.expect("->", context)
        return res, self.ident(context)

    # -- guard expressions -------------------------------------------------

    def expr(self, ctx) -> Guard:
        args = [self.conj(ctx)]
        while self.at("or"):
            self.advance()
            args.append(self.conj(ctx))
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self, ctx) -> Guard:
        args = [self.unary(ctx)]
        while self.at("and"):
            self.advance()
            args.append(self.unary(ctx))
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self, ctx) -> Guard:
        if self.at("not"):
            self.advance()
            return Not(self.unary(ctx))
        if self.at("("):
            self.advance()
            g = self.expr(ctx)
            self.expect(")", ctx)
            return g
        if self.at("true") or self.at("false"):
            return Const(self.advance().text == "true")
        res = self.ident(ctx)
        if self.at("=="):
            self.advance()
            return Atom(res, self.ident(ctx))
        if self.at("!="):
            self.advance()
            return Not(Atom(res, self.ident(ctx)))
        raise self.error("'==' or '!='", ctx)


def parse_skillset(source_text: str) -> Skillset:
    return _Parser(source_text).skillset()


def parse_guard(text: str) -> Guard:
    p = _Parser(text)
    g = p.expr("guard")
    if p.tok.kind != "eof":
        raise p.error("end of input", "guard")
    return g


# ---------------------------------------------------------------------------
# printing


def format_guard(g: Guard) -> str:
    if isinstance(g, Atom):
        return f"{g.resource} == {g.state}"
    if isinstance(g, Const):
        return "true" if g.value else "false"
    if isinstance(g, Not):
        if isinstance(g.arg, Atom):
            return f"{g.arg.resource} != {g.arg.state}"
        return f"not {_operand(g.arg)}"
    sep = " and " if isinstance(g, And) else " or "
    return sep.join(_operand(a) for a in g.args)


def _operand(g: Guard) -> str:
    if isinstance(g, (And, Or)) or (isinstance(g, Not) and isinstance(g.arg, Atom)):
        return f"({format_guard(g)})"
    return format_guard(g)


def _format_effects(effects) -> str:
    if not effects:
        return "{ }"
    if len(effects) == 1:
        return f"{effects[0][0]} -> {effects[0][1]}"
    return "{ " + " ".join(f"{r} -> {s}" for r, s in effects) + " }"


def _format_conditions(keyword, conds, out):
    out.append(f"    {keyword} {{")
    for c in conds:
        line = f"      {c.name} {{ guard {format_guard(c.guard)}"
        if c.effects:
            line += f" effect {_format_effects(c.effects)}"
        out.append(line + " }")
    out.append("    }")


def format_skillset(ss: Skillset) -> str:
    out = [f"skillset {ss.name} {{"]
    if ss.resources:
        out.append("  resource {")
        for r in ss.resources:
            out.append(f"    {r.name} {{")
            out.append(f"      initial {r.initial}")
            out += [f"      {a} -> {b}" for a, b in r.transitions]
            out.append("    }")
        out.append("  }")
    if ss.events:
        out.append("  event {")
        for e in ss.events:
            out.append(f"    {e.name} {{")
            if e.guard != TRUE:
                out.append(f"      guard {format_guard(e.guard)}")
            out += [f"      {r} -> {s}" for r, s in e.effects]
            out.append("    }")
        out.append("  }")
    for s in ss.skills:
        out.append(f"  skill {s.name} {{")
        if s.preconditions:
            _format_conditions("precondition", s.preconditions, out)
        if s.start_effects:
            out.append(f"    start {_format_effects(s.start_effects)}")
        if s.invariants:
            _format_conditions("invariant", s.invariants, out)
        for eff in s.interrupts:
            out.append(f"    interrupt {_format_effects(eff)}")
        for t in s.successes:
            out.append(f"    success {t.name} {_format_effects(t.effects)}")
        for t in s.failures:
            out.append(f"    failure {t.name} {_format_effects(t.effects)}")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
