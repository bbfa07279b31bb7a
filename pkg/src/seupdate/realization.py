"""Synthesis of programs from well-defined SE-model sets.

Any star-closed set of SE-interpretations is the SE-model set of some
program.  realize() builds one witness program by killing every
SE-interpretation outside the target set:

  * a missing total pair (J,J) is excluded by the constraint
        :- J, ~(A \\ J).
    whose SE-models are exactly the SE-interpretations whose
    there-component differs from J;

  * a missing non-total pair (I,J) whose total companion is kept is
    excluded by
        (J \\ I) ; ~J :- I, ~(A \\ J).
    which is classically tautological and whose reduct bites only at
    there-component J, where it eliminates exactly here-component I.

The construction makes no attempt at minimality; its output is verified
against the model enumerator before being returned, and a verification
failure is treated as fatal.
"""

from __future__ import annotations

from .semantics import se_models, star
from .syntax import Alphabet, AlphabetError, Program, Rule


class RealizationError(RuntimeError):
    """Synthesized program failed post-verification; indicates a defect."""


def star_closure(m) -> frozenset:
    """Smallest star-closed superset."""
    m = frozenset(m)
    return m | frozenset(star(x) for x in m)


def realize(m, alphabet: Alphabet) -> Program:
    """Build a program whose SE-models are exactly star_closure(m).

    Input that is not star-closed is closed first rather than rejected.
    """
    target = star_closure(m)
    atoms = frozenset(alphabet)
    for x in target:
        if not x.there <= atoms:
            raise AlphabetError(
                "SE-interpretation %s outside alphabet %r" % (x, alphabet))

    totals = {x.there for x in target if x.is_total}
    kept_pairs = {(x.here, x.there) for x in target}
    rules = set()
    for jb in range(1 << len(alphabet)):
        j = frozenset(a for i, a in enumerate(alphabet.atoms) if jb >> i & 1)
        complement = atoms - j
        if j not in totals:
            rules.add(Rule(frozenset(), frozenset(), j, complement))
            continue
        ib = 0
        while ib != jb:
            i = frozenset(a for k, a in enumerate(alphabet.atoms) if ib >> k & 1)
            if (i, j) not in kept_pairs:
                rules.add(Rule(j - i, j, i, complement))
            ib = (ib - jb) & jb

    program = Program(frozenset(rules), alphabet)
    if se_models(program) != target:
        raise RealizationError(
            "synthesized program has wrong SE-models for %s"
            % sorted(map(str, target)))
    return program


def conjoin(p: Program, q: Program) -> Program:
    """Program whose SE-models are the intersection: plain rule union."""
    if p.alphabet != q.alphabet:
        raise AlphabetError("alphabet mismatch: %r vs %r"
                            % (p.alphabet, q.alphabet))
    return Program(p.rules | q.rules, p.alphabet)


def disjoin(p: Program, q: Program) -> Program:
    """Program whose SE-models are the union, built by realization.

    Several constructions would do; countermodel synthesis is used here
    because it reuses the verified realize() path.
    """
    if p.alphabet != q.alphabet:
        raise AlphabetError("alphabet mismatch: %r vs %r"
                            % (p.alphabet, q.alphabet))
    return realize(se_models(p) | se_models(q), p.alphabet)
