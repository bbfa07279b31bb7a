"""Syntax of disjunctive logic programs with default negation.

A rule consists of four atom sets (positive head, negated head, positive
body, negated body) and is displayed as

    h1 ; ~h2 :- b1, ~b2.

A program is a finite set of rules over an explicit alphabet.  The module
also provides a small classical formula type used for rule translations
and for the classical belief-update side of the workbench.

Grammar accepted by the parser:

    program  := { rule }
    rule     := [ head ] [ ":-" [ body ] ] "."
    head     := literal { ";" literal }
    body     := literal { "," literal }
    literal  := [ "~" ] atom
    atom     := [a-z][a-zA-Z0-9_]*

"%" starts a comment running to the end of the line.  Whitespace is
insignificant.  A rule with an empty head is a constraint.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

ATOM_PATTERN = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class ParseError(ValueError):
    """Program text does not conform to the grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__("%d:%d: %s" % (line, column, message))
        self.line = line
        self.column = column


class AlphabetError(ValueError):
    """Atom outside the governing alphabet, or mismatched alphabets."""


class Alphabet:
    """Ordered finite set of atom names.

    The ordering is lexicographic and stable; it fixes the canonical
    enumeration order of interpretations everywhere downstream.
    """

    __slots__ = ("atoms", "_index")

    def __init__(self, atoms: Iterable[str] = ()):
        names = sorted(set(atoms))
        for name in names:
            if not ATOM_PATTERN.match(name):
                raise AlphabetError("invalid atom name: %r" % (name,))
        self.atoms: tuple[str, ...] = tuple(names)
        self._index = {a: i for i, a in enumerate(names)}

    def __contains__(self, atom: object) -> bool:
        return atom in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return "Alphabet(%s)" % (", ".join(self.atoms) or "empty")

    def index(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise AlphabetError("atom %r not in %r" % (atom, self)) from None

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.atoms + other.atoms)


def _freeze(value) -> frozenset:
    return value if isinstance(value, frozenset) else frozenset(value)


@dataclass(frozen=True)
class Rule:
    """One rule as four atom sets.

    head_pos are the plain head atoms, head_neg the default-negated head
    atoms, body_pos and body_neg likewise for the body.
    """

    head_pos: frozenset[str] = frozenset()
    head_neg: frozenset[str] = frozenset()
    body_pos: frozenset[str] = frozenset()
    body_neg: frozenset[str] = frozenset()

    def __post_init__(self):
        for name in ("head_pos", "head_neg", "body_pos", "body_neg"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))

    @property
    def atoms(self) -> frozenset[str]:
        return self.head_pos | self.head_neg | self.body_pos | self.body_neg

    @property
    def is_constraint(self) -> bool:
        return not self.head_pos and not self.head_neg

    @property
    def is_fact(self) -> bool:
        return (len(self.head_pos) + len(self.head_neg) == 1
                and not self.body_pos and not self.body_neg)

    @property
    def is_positive_fact(self) -> bool:
        return self.is_fact and len(self.head_pos) == 1

    @property
    def is_nondisjunctive(self) -> bool:
        return len(self.head_pos) + len(self.head_neg) <= 1

    @property
    def is_definite(self) -> bool:
        return (len(self.head_pos) == 1 and not self.head_neg
                and not self.body_neg)

    def sort_key(self):
        return (tuple(sorted(self.head_pos)), tuple(sorted(self.head_neg)),
                tuple(sorted(self.body_pos)), tuple(sorted(self.body_neg)))

    def __str__(self) -> str:
        return render_rule(self)


@dataclass(frozen=True)
class RuleClass:
    fact: bool
    positive_fact: bool
    non_disjunctive: bool
    definite: bool


def classify(r: Rule) -> RuleClass:
    """Classification flags of a single rule."""
    return RuleClass(fact=r.is_fact, positive_fact=r.is_positive_fact,
                     non_disjunctive=r.is_nondisjunctive,
                     definite=r.is_definite)


@dataclass(frozen=True)
class Program:
    """A finite set of rules over an explicit alphabet."""

    rules: frozenset[Rule] = frozenset()
    alphabet: Alphabet = Alphabet()

    def __post_init__(self):
        object.__setattr__(self, "rules", _freeze(self.rules))
        stray = self.atoms_used - frozenset(self.alphabet)
        if stray:
            raise AlphabetError(
                "atoms outside the alphabet: %s" % ", ".join(sorted(stray)))

    @property
    def atoms_used(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for r in self.rules:
            out |= r.atoms
        return out

    @property
    def is_nondisjunctive(self) -> bool:
        return all(r.is_nondisjunctive for r in self.rules)

    @property
    def is_definite(self) -> bool:
        return all(r.is_definite for r in self.rules)

    def sorted_rules(self) -> list[Rule]:
        return sorted(self.rules, key=Rule.sort_key)

    def __str__(self) -> str:
        return render_program(self)


# ---------------------------------------------------------------------------
# classical formulas

class Formula:
    """Base class of the classical propositional syntax tree."""

    __slots__ = ()


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def __str__(self):
        return "!%s" % _wrap(self.sub)


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def __str__(self):
        return " & ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def __str__(self):
        return " | ".join(_wrap(p) for p in self.parts)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return "%s -> %s" % (_wrap(self.left), _wrap(self.right))


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return "%s <-> %s" % (_wrap(self.left), _wrap(self.right))


def _wrap(f: Formula) -> str:
    if isinstance(f, (Top, Bot, Atom, Not)):
        return str(f)
    return "(%s)" % f


def conj(parts: Iterable[Formula]) -> Formula:
    """Conjunction; empty gives truth, singletons are unwrapped."""
    parts = tuple(parts)
    if not parts:
        return Top()
    if len(parts) == 1:
        return parts[0]
    return And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    """Disjunction; empty gives falsity, singletons are unwrapped."""
    parts = tuple(parts)
    if not parts:
        return Bot()
    if len(parts) == 1:
        return parts[0]
    return Or(parts)


def evaluate(f: Formula, world: frozenset[str] | set[str]) -> bool:
    """Classical truth of a formula in a world (set of true atoms)."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Atom):
        return f.name in world
    if isinstance(f, Not):
        return not evaluate(f.sub, world)
    if isinstance(f, And):
        return all(evaluate(p, world) for p in f.parts)
    if isinstance(f, Or):
        return any(evaluate(p, world) for p in f.parts)
    if isinstance(f, Implies):
        return (not evaluate(f.left, world)) or evaluate(f.right, world)
    if isinstance(f, Iff):
        return evaluate(f.left, world) == evaluate(f.right, world)
    raise TypeError("not a formula: %r" % (f,))


def to_formula(x: Rule | Program) -> Formula:
    """Classical translation: body conjunction implies head disjunction.

    Negated literals become classical negations.  A program maps to the
    conjunction of its rules' translations; the empty program to truth.
    """
    if isinstance(x, Rule):
        body = [Atom(a) for a in sorted(x.body_pos)]
        body += [Not(Atom(a)) for a in sorted(x.body_neg)]
        head = [Atom(a) for a in sorted(x.head_pos)]
        head += [Not(Atom(a)) for a in sorted(x.head_neg)]
        return Implies(conj(body), disj(head))
    if isinstance(x, Program):
        return conj([to_formula(r) for r in x.sorted_rules()])
    raise TypeError("expected Rule or Program, got %r" % (x,))


def relevant_atoms(x: Formula | Rule | Program) -> frozenset[str]:
    """Atoms occurring in a formula, rule, or program (purely syntactic)."""
    if isinstance(x, (Rule, Program)):
        return relevant_atoms(to_formula(x))
    if isinstance(x, (Top, Bot)):
        return frozenset()
    if isinstance(x, Atom):
        return frozenset({x.name})
    if isinstance(x, Not):
        return relevant_atoms(x.sub)
    if isinstance(x, (And, Or)):
        out: frozenset[str] = frozenset()
        for p in x.parts:
            out |= relevant_atoms(p)
        return out
    if isinstance(x, (Implies, Iff)):
        return relevant_atoms(x.left) | relevant_atoms(x.right)
    raise TypeError("not a formula: %r" % (x,))


def _as_clause(f: Formula) -> list[Formula] | None:
    if isinstance(f, Or):
        literals = []
        for p in f.parts:
            sub = _as_clause(p)
            if sub is None:
                return None
            literals.extend(sub)
        return literals
    if isinstance(f, (Atom, Bot)) or (isinstance(f, Not)
                                      and isinstance(f.sub, Atom)):
        return [f]
    return None


def is_horn(f: Formula) -> bool:
    """Syntactic Horn check: a conjunction of clauses, each with at most
    one positive atom."""
    conjuncts = list(f.parts) if isinstance(f, And) else [f]
    for c in conjuncts:
        if isinstance(c, Top):
            continue
        literals = _as_clause(c)
        if literals is None:
            return False
        if sum(1 for lit in literals if isinstance(lit, Atom)) > 1:
            return False
    return True


def is_complete(f: Formula, alphabet: Alphabet) -> bool:
    """True when the formula has exactly one model over the alphabet."""
    count = 0
    names = alphabet.atoms
    for r in range(len(names) + 1):
        for world in combinations(names, r):
            if evaluate(f, frozenset(world)):
                count += 1
                if count > 1:
                    return False
    return count == 1


# ---------------------------------------------------------------------------
# parsing and printing

class _Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


_SIMPLE = {";": "SEMI", ",": "COMMA", ".": "DOT", "~": "TILDE"}


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch == "%":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _SIMPLE:
            tokens.append(_Token(_SIMPLE[ch], ch, line, col))
            col += 1
            i += 1
        elif ch == ":":
            if text[i:i + 2] != ":-":
                raise ParseError("expected ':-'", line, col)
            tokens.append(_Token("ARROW", ":-", line, col))
            col += 2
            i += 2
        elif ch.isalpha() and ch.islower():
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ATOM", text[start:i], line, col))
            col += i - start
        else:
            raise ParseError("unexpected character %r" % ch, line, col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.atom_sites: dict[str, tuple[int, int]] = {}

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line,
                             last.column + len(last.value))
        self.pos += 1
        return tok

    def literal(self) -> tuple[str, bool]:
        tok = self.take()
        negated = False
        if tok.kind == "TILDE":
            negated = True
            tok = self.take()
        if tok.kind != "ATOM":
            raise ParseError("expected atom, got %r" % tok.value,
                             tok.line, tok.column)
        self.atom_sites.setdefault(tok.value, (tok.line, tok.column))
        return tok.value, negated

    def rule(self) -> Rule:
        head_pos: set[str] = set()
        head_neg: set[str] = set()
        body_pos: set[str] = set()
        body_neg: set[str] = set()
        tok = self.peek()
        assert tok is not None
        if tok.kind not in ("ARROW", "DOT"):
            while True:
                atom, neg = self.literal()
                (head_neg if neg else head_pos).add(atom)
                tok = self.take()
                if tok.kind == "SEMI":
                    continue
                break
        else:
            tok = self.take()
        if tok.kind == "ARROW":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "DOT":
                tok = self.take()
            else:
                while True:
                    atom, neg = self.literal()
                    (body_neg if neg else body_pos).add(atom)
                    tok = self.take()
                    if tok.kind == "COMMA":
                        continue
                    break
                if tok.kind != "DOT":
                    raise ParseError("expected ',' or '.', got %r" % tok.value,
                                     tok.line, tok.column)
        if tok.kind != "DOT":
            raise ParseError("expected rule terminator '.', got %r" % tok.value,
                             tok.line, tok.column)
        return Rule(frozenset(head_pos), frozenset(head_neg),
                    frozenset(body_pos), frozenset(body_neg))


def parse_program(text: str, alphabet: Alphabet | None = None) -> Program:
    """Parse program text into a Program.

    When no alphabet is given, the alphabet is the set of atoms occurring
    in the text.  With an explicit alphabet, atoms outside it raise
    AlphabetError (reporting where the atom first occurs).
    """
    parser = _Parser(_tokenize(text))
    rules = set()
    while parser.peek() is not None:
        rules.add(parser.rule())
    if alphabet is None:
        alphabet = Alphabet(parser.atom_sites)
    else:
        for atom in sorted(parser.atom_sites):
            if atom not in alphabet:
                line, col = parser.atom_sites[atom]
                raise AlphabetError("%d:%d: unknown atom %r" % (line, col, atom))
    return Program(frozenset(rules), alphabet)


def render_rule(r: Rule) -> str:
    head = sorted(r.head_pos) + ["~" + a for a in sorted(r.head_neg)]
    body = sorted(r.body_pos) + ["~" + a for a in sorted(r.body_neg)]
    if head and body:
        return "%s :- %s." % (" ; ".join(head), ", ".join(body))
    if head:
        return "%s." % " ; ".join(head)
    if body:
        return ":- %s." % ", ".join(body)
    return ":-."


def render_program(p: Program) -> str:
    """Deterministic textual form; one rule per line, canonically sorted.

    Parsing the result over the same alphabet yields an equal Program.
    """
    return "\n".join(render_rule(r) for r in p.sorted_rules())
