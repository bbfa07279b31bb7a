"""Seeded random generators shared by the sampled checkers and the tests.

Every function takes an explicit random.Random so callers control
reproducibility.
"""

from __future__ import annotations

import random

from .realization import realize, star_closure
from .semantics import se_interpretations, se_models
from .syntax import Alphabet, Program, Rule


def random_interpretation(rng: random.Random, alphabet: Alphabet):
    return frozenset(a for a in alphabet if rng.random() < 0.5)


def random_rule(rng: random.Random, alphabet: Alphabet) -> Rule:
    hp, hn, bp, bn = set(), set(), set(), set()
    for atom in alphabet:
        roll = rng.random()
        if roll < 0.18:
            hp.add(atom)
        elif roll < 0.30:
            hn.add(atom)
        elif roll < 0.48:
            bp.add(atom)
        elif roll < 0.60:
            bn.add(atom)
    return Rule(frozenset(hp), frozenset(hn), frozenset(bp), frozenset(bn))


def random_program(rng: random.Random, alphabet: Alphabet,
                   max_rules: int = 4) -> Program:
    count = rng.randint(0, max_rules)
    return Program(frozenset(random_rule(rng, alphabet) for _ in range(count)),
                   alphabet)


def random_fact_program(rng: random.Random, alphabet: Alphabet) -> Program:
    """Consistent fact program: each atom asserted at most one way."""
    rules = set()
    for atom in alphabet:
        roll = rng.random()
        if roll < 0.3:
            rules.add(Rule(head_pos=frozenset({atom})))
        elif roll < 0.5:
            rules.add(Rule(head_neg=frozenset({atom})))
    return Program(frozenset(rules), alphabet)


def random_star_closed_set(rng: random.Random, alphabet: Alphabet,
                           density: float | None = None):
    if density is None:
        density = rng.uniform(0.1, 0.9)
    picked = frozenset(x for x in se_interpretations(alphabet)
                       if rng.random() < density)
    return star_closure(picked)


def equivalent_variant(p: Program, rng: random.Random) -> Program:
    """A syntactically different program with the same SE-models.

    Mixes two model-preserving transformations: replacing the program by
    its realized countermodel form, and adding rules whose SE-model set
    is the full space (a :- a. and :- a, ~a.).
    """
    rules = set(p.rules)
    if rng.random() < 0.5:
        rules = set(realize(se_models(p), p.alphabet).rules)
    atoms = p.alphabet.atoms
    if atoms:
        for _ in range(rng.randint(1, 2)):
            atom = frozenset({rng.choice(atoms)})
            if rng.random() < 0.5:
                rules.add(Rule(head_pos=atom, body_pos=atom))
            else:
                rules.add(Rule(body_pos=atom, body_neg=atom))
    return Program(frozenset(rules), p.alphabet)
