"""Model-theoretic core: classical models, reducts, SE-models, answer sets.

An SE-interpretation is an ordered pair of classical interpretations
(here, there) with here a subset of there; it acts as a three-valued
assignment.  SE-models capture strong equivalence: two programs are
strongly equivalent exactly when they have the same SE-models.

Everything here enumerates exhaustively (2^n worlds, 3^n SE-points); the
workbench targets small alphabets and trades speed for being an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (Alphabet, AlphabetError, Formula, Program, Rule,
                     evaluate, relevant_atoms, to_formula)


@dataclass(frozen=True)
class SEInterpretation:
    """Pair of interpretations with here contained in there."""

    here: frozenset[str]
    there: frozenset[str]

    def __post_init__(self):
        here = frozenset(self.here)
        there = frozenset(self.there)
        object.__setattr__(self, "here", here)
        object.__setattr__(self, "there", there)
        if not here <= there:
            raise ValueError("here-component %s not contained in %s"
                             % (sorted(here), sorted(there)))

    @property
    def is_total(self) -> bool:
        return self.here == self.there

    def __str__(self) -> str:
        def side(s):
            return ",".join(sorted(s)) if s else "{}"
        return "<%s|%s>" % (side(self.here), side(self.there))


def star(x: SEInterpretation) -> SEInterpretation:
    """Total companion: both components become the there-component."""
    return SEInterpretation(x.there, x.there)


def _world_bits(world, alphabet: Alphabet) -> int:
    bits = 0
    for atom in world:
        bits |= 1 << alphabet.index(atom)
    return bits


def _bits_world(bits: int, alphabet: Alphabet) -> frozenset[str]:
    return frozenset(a for i, a in enumerate(alphabet.atoms) if bits >> i & 1)


def interpretations(alphabet: Alphabet) -> list[frozenset[str]]:
    """All 2^n interpretations in canonical (bit-integer) order."""
    return [_bits_world(b, alphabet) for b in range(1 << len(alphabet))]


def se_interpretations(alphabet: Alphabet) -> list[SEInterpretation]:
    """All 3^n SE-interpretations, sorted by (there-bits, here-bits)."""
    out = []
    for jb in range(1 << len(alphabet)):
        there = _bits_world(jb, alphabet)
        ib = 0
        while True:
            out.append(SEInterpretation(_bits_world(ib, alphabet), there))
            if ib == jb:
                break
            ib = (ib - jb) & jb
    return out


def canonical_key(x: SEInterpretation, alphabet: Alphabet):
    return (_world_bits(x.there, alphabet), _world_bits(x.here, alphabet))


def sort_se(models, alphabet: Alphabet) -> list[SEInterpretation]:
    return sorted(models, key=lambda x: canonical_key(x, alphabet))


def _rule_holds(r: Rule, world: frozenset[str]) -> bool:
    body = r.body_pos <= world and not (r.body_neg & world)
    if not body:
        return True
    return bool(r.head_pos & world) or bool(r.head_neg - world)


def _program_holds(p: Program, world: frozenset[str]) -> bool:
    return all(_rule_holds(r, world) for r in p.rules)


def classical_models(x: Formula | Program,
                     alphabet: Alphabet) -> frozenset[frozenset[str]]:
    """All interpretations over the alphabet satisfying x."""
    stray = relevant_atoms(x) - frozenset(alphabet)
    if stray:
        raise AlphabetError(
            "atoms outside the alphabet: %s" % ", ".join(sorted(stray)))
    if isinstance(x, Program):
        return frozenset(w for w in interpretations(alphabet)
                         if _program_holds(x, w))
    return frozenset(w for w in interpretations(alphabet) if evaluate(x, w))


def reduct(p: Program, j: frozenset[str] | set[str]) -> Program:
    """Negation-free part of the program relative to there-component j.

    Keeps head_pos :- body_pos for each rule whose negated head atoms all
    lie in j and whose negated body atoms all avoid j.
    """
    j = frozenset(j)
    kept = frozenset(
        Rule(r.head_pos, frozenset(), r.body_pos, frozenset())
        for r in p.rules
        if r.head_neg <= j and not (r.body_neg & j))
    return Program(kept, p.alphabet)


def se_models(p: Program) -> frozenset[SEInterpretation]:
    """All SE-models: there satisfies the program and here satisfies the
    reduct relative to there."""
    out = []
    alphabet = p.alphabet
    for jb in range(1 << len(alphabet)):
        there = _bits_world(jb, alphabet)
        if not _program_holds(p, there):
            continue
        red = reduct(p, there)
        ib = 0
        while True:
            here = _bits_world(ib, alphabet)
            if _program_holds(red, here):
                out.append(SEInterpretation(here, there))
            if ib == jb:
                break
            ib = (ib - jb) & jb
    return frozenset(out)


def answer_sets(p: Program) -> frozenset[frozenset[str]]:
    """Answer sets, computed by two independent routes and cross-checked.

    Route one: subset-minimal models of the reduct.  Route two: total
    SE-models with no proper non-total SE-model below them.  A mismatch
    would mean a defect in the core definitions, so it is fatal.
    """
    alphabet = p.alphabet
    by_reduct = set()
    for j in interpretations(alphabet):
        red = reduct(p, j)
        if not _program_holds(red, j):
            continue
        jb = _world_bits(j, alphabet)
        minimal = True
        ib = 0
        while ib != jb:
            if _program_holds(red, _bits_world(ib, alphabet)):
                minimal = False
                break
            ib = (ib - jb) & jb
        if minimal:
            by_reduct.add(j)

    se = se_models(p)
    totals = {x.there for x in se if x.is_total}
    by_se = {j for j in totals
             if not any(x.there == j and x.here != j for x in se)}

    assert by_reduct == by_se, \
        "answer-set routes disagree: %r vs %r" % (sorted(map(sorted, by_reduct)),
                                                  sorted(map(sorted, by_se)))
    return frozenset(by_reduct)


def is_well_defined(m) -> bool:
    """Closed under the star map (every member's total companion is in)."""
    m = frozenset(m)
    return all(star(x) in m for x in m)


def is_basic(p: Program) -> bool:
    """SE-models form a pair {x, star(x)} for a single x."""
    se = se_models(p)
    return any(frozenset({x, star(x)}) == se for x in se)


def _require_same_alphabet(p: Program, q: Program) -> None:
    if p.alphabet != q.alphabet:
        raise AlphabetError("alphabet mismatch: %r vs %r"
                            % (p.alphabet, q.alphabet))


def strongly_equivalent(p: Program, q: Program) -> bool:
    _require_same_alphabet(p, q)
    return se_models(p) == se_models(q)


def strongly_entails(p: Program, q: Program) -> bool:
    """Every SE-model of p is an SE-model of q."""
    _require_same_alphabet(p, q)
    return se_models(p) <= se_models(q)


def truth_value(x: SEInterpretation, atom: str) -> str:
    """Three-valued reading: T if in here, U if only in there, else F."""
    if atom in x.here:
        return "T"
    if atom in x.there:
        return "U"
    return "F"


def substitute(x: SEInterpretation, atom: str, value: str) -> SEInterpretation:
    """Copy of x with the atom forced to the given truth value."""
    a = frozenset({atom})
    if value == "T":
        return SEInterpretation(x.here | a, x.there | a)
    if value == "U":
        return SEInterpretation(x.here - a, x.there | a)
    if value == "F":
        return SEInterpretation(x.here - a, x.there - a)
    raise ValueError("truth value must be 'T', 'U' or 'F', got %r" % (value,))


def se_set_to_json(models, alphabet: Alphabet) -> list[dict]:
    """Canonically sorted JSON-ready form of a set of SE-interpretations."""
    return [{"here": sorted(x.here), "there": sorted(x.there)}
            for x in sort_se(models, alphabet)]


def se_set_from_json(data) -> frozenset[SEInterpretation]:
    return frozenset(SEInterpretation(frozenset(d["here"]),
                                      frozenset(d["there"])) for d in data)
