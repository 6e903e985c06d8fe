"""Text formats: program files, SE-set files, and DIMACS CNF output.

Program grammar (one statement per ``.``; whitespace and newlines are
insignificant, ``%`` starts a line comment)::

    statement := head | head ":-" body | ":-" body
    head      := atom ("|" atom)*
    body      := literal ("," literal)*
    literal   := atom | "not" atom
    atom      := [a-z_][A-Za-z0-9_]*

``not`` is a keyword and cannot be used as an atom name.  User atoms may not
start with the reserved ``__`` prefix; parsing with ``allow_generated=True``
lifts that restriction so rendered transformation outputs can be read back.

SE-set files are line oriented: each non-comment line ``x1 x2 ; y1 y2 y3``
denotes the SE-interpretation (X, Y) with X a subset of Y.  The universe is
the union of all Y components plus the atoms of an optional ``#universe``
directive line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .core import RESERVED_PREFIX, AtomTable, Program, Rule


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<atom>[a-z_][A-Za-z0-9_]*)
  | (?P<punct>:-|[|,.])
  """,
    re.VERBOSE,
)

_ATOM_NAME_RE = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")


def _tokenize(text: str) -> list[tuple[str, str, SourceSpan]]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(line, col))
        kind = m.lastgroup
        value = m.group()
        if kind == "atom" and value == "not":
            kind = "not"
        if kind not in ("ws", "comment"):
            tokens.append((kind, value, SourceSpan(line, col)))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    return tokens


class _TokenStream:
    def __init__(self, tokens, end_span: SourceSpan):
        self.tokens = tokens
        self.pos = 0
        self.end_span = end_span

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("eof", "end of input", self.end_span)

    def next(self):
        tok = self.peek()
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1]!r}", tok[2])
        return tok


def _check_atom_name(name: str, span: SourceSpan, allow_generated: bool) -> None:
    if name.startswith(RESERVED_PREFIX) and not allow_generated:
        raise ParseError(
            f"atom {name!r} uses the reserved generated-atom prefix {RESERVED_PREFIX!r}", span
        )


def parse_program(
    text: str, table: Optional[AtomTable] = None, allow_generated: bool = False
) -> Program:
    """Parse a program from its text form.

    A fresh table is created unless one is supplied; supply a shared table
    when several programs must agree on atom ids.
    """
    if table is None:
        table = AtomTable()
    end = SourceSpan(text.count("\n") + 1, 1)
    stream = _TokenStream(_tokenize(text), end)
    rules = []

    def parse_atom(what: str) -> int:
        tok = stream.expect("atom", what)
        _check_atom_name(tok[1], tok[2], allow_generated)
        return table.intern(tok[1])

    while stream.peek()[0] != "eof":
        start = stream.peek()
        head: list[int] = []
        pos: list[int] = []
        neg: list[int] = []
        if start[0] == "atom":
            head.append(parse_atom("an atom"))
            while stream.peek()[:2] == ("punct", "|"):
                stream.next()
                head.append(parse_atom("an atom after '|'"))
        elif start[:2] != ("punct", ":-"):
            raise ParseError(f"expected a rule, found {start[1]!r}", start[2])
        if stream.peek()[:2] == ("punct", ":-"):
            stream.next()
            while True:
                if stream.peek()[0] == "not":
                    stream.next()
                    neg.append(parse_atom("an atom after 'not'"))
                else:
                    pos.append(parse_atom("a body literal"))
                if stream.peek()[:2] == ("punct", ","):
                    stream.next()
                    continue
                break
        tok = stream.next()
        if tok[:2] != ("punct", "."):
            raise ParseError(f"expected '.', found {tok[1]!r}", tok[2])
        if not head and not pos and not neg:
            raise ParseError("empty rule (no head and no body)", start[2])
        rules.append(Rule.of(head, pos, neg))
    return Program.of(table, rules)


def render_rule(rule: Rule, table: AtomTable) -> str:
    head = " | ".join(table.name_of(a) for a in rule.head)
    body = [table.name_of(a) for a in rule.body_pos]
    body += [f"not {table.name_of(a)}" for a in rule.body_neg]
    if body:
        sep = " :- " if head else ":- "
        return f"{head}{sep}{', '.join(body)}."
    return f"{head}."


def render_program(prog: Program) -> str:
    """Render one rule per line; the empty program renders as the empty string.

    Re-parsing the output (with ``allow_generated=True`` when the program
    contains generated atoms) yields a structurally equal program.
    """
    if not prog.rules:
        return ""
    return "\n".join(render_rule(r, prog.table) for r in prog.rules) + "\n"


# ---------------------------------------------------------------------------
# SE-set files


def parse_se_set(text: str, table: Optional[AtomTable] = None):
    """Parse an SE-set file (returns an :class:`dualnorm.seue.SESet`)."""
    from .seue import SEPair, SESet

    if table is None:
        table = AtomTable()

    def intern_names(names, lineno):
        out = set()
        for name in names:
            if not _ATOM_NAME_RE.match(name):
                raise ParseError(f"invalid atom name {name!r}", SourceSpan(lineno, 1))
            out.add(table.intern(name))
        return frozenset(out)

    pairs = []
    universe: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line.split()
            if parts[0] != "#universe":
                raise ParseError(f"unknown directive {parts[0]!r}", SourceSpan(lineno, 1))
            universe |= intern_names(parts[1:], lineno)
            continue
        if ";" not in line:
            raise ParseError("expected 'X ; Y' (missing ';')", SourceSpan(lineno, 1))
        left, _, right = line.partition(";")
        here = intern_names(left.split(), lineno)
        there = intern_names(right.split(), lineno)
        if not here <= there:
            extra = ", ".join(table.names_of(here - there))
            raise ParseError(f"X is not a subset of Y ({extra} missing from Y)", SourceSpan(lineno, 1))
        universe |= there
        pairs.append(SEPair(here, there))
    return SESet(table=table, universe=frozenset(universe), pairs=frozenset(pairs))


def render_se_pair(pair, table: AtomTable) -> str:
    x = " ".join(table.names_of(pair.here))
    y = " ".join(table.names_of(pair.there))
    return f"{x} ; {y}" if x else f"; {y}"


def render_se_set(se_set) -> str:
    """Render an SESet in the line format accepted by :func:`parse_se_set`.

    A ``#universe`` directive is emitted only when the universe exceeds the
    union of the Y components (otherwise the pairs alone are lossless).
    """
    table = se_set.table
    lines = []
    covered = frozenset().union(*(p.there for p in se_set.pairs)) if se_set.pairs else frozenset()
    if se_set.universe - covered:
        lines.append("#universe " + " ".join(table.names_of(se_set.universe)))
    key = lambda p: (table.names_of(p.there), table.names_of(p.here))
    lines.extend(render_se_pair(p, table) for p in sorted(se_set.pairs, key=key))
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# DIMACS


def write_dimacs(cnf) -> str:
    """Serialize a CnfInstance as DIMACS CNF.

    A comment block maps variable indices to their structured names (Tseitin
    auxiliaries carry no name and are omitted from the block).
    """
    out = []
    for idx in sorted(cnf.var_names):
        out.append(f"c {idx} = {cnf.var_names[idx]}")
    out.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    for clause in cnf.clauses:
        out.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(out) + "\n"


def parse_dimacs_model(text: str) -> frozenset[int]:
    """Extract the true literals from solver model output.

    Accepts ``v``-prefixed model lines as well as bare literal lines; ``s``
    and ``c`` lines are ignored.  Returns the set of variables assigned true.
    """
    true_vars: set[int] = set()
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0] in ("c", "s"):
            continue
        if parts[0] == "v":
            parts = parts[1:]
        for tok in parts:
            try:
                lit = int(tok)
            except ValueError:
                break
            if lit > 0:
                true_vars.add(lit)
    return frozenset(true_vars)
