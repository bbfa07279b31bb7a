"""Preorder assignments over SE-interpretations and their property checkers.

An assignment attaches to every point X a preorder comparing candidate
points; updates pick the minima of the candidate set under the preorder
at each model of the program being updated.  The module ships the
symmetric-difference assignment over SE-interpretations (two stages:
there-components first, then here-components modulo the there-difference),
its classical single-stage counterpart, and extensional tables loaded
from files.

Property checkers (faithful, semi-faithful, organised, well-defined) are
exhaustive for alphabets of up to two atoms and switch to seeded random
sampling beyond that; in sampled mode a True result only means that no
counterexample was found.
"""

from __future__ import annotations

import random
from itertools import combinations

from ._gen import random_star_closed_set
from .realization import realize, star_closure
from .semantics import (SEInterpretation, interpretations, is_well_defined,
                        se_interpretations, se_models, sort_se, star)
from .syntax import Alphabet, AlphabetError

EXHAUSTIVE_LIMIT = 2


class AlphabetTooLargeError(ValueError):
    """Exhaustive check requested beyond the feasible alphabet size."""


def winslett_se_leq(x: SEInterpretation, y: SEInterpretation,
                    z: SEInterpretation) -> bool:
    """Two-stage closeness of y vs z as seen from x.

    First compare the there-components by inclusion of symmetric
    differences with x's there-component; on a tie, compare the
    here-components the same way after discarding the atoms already
    accounted for by the there-difference.
    """
    dy = y.there ^ x.there
    dz = z.there ^ x.there
    if not dy <= dz:
        return False
    if dy == dz:
        return (y.here ^ x.here) - dy <= (z.here ^ x.here) - dy
    return True


def winslett_classical_leq(i, j, k) -> bool:
    """j is at least as close to i as k, by symmetric-difference inclusion."""
    return (frozenset(j) ^ frozenset(i)) <= (frozenset(k) ^ frozenset(i))


def winslett_se_less(x: SEInterpretation, y: SEInterpretation,
                     z: SEInterpretation) -> bool:
    """Closed-form strict counterpart of winslett_se_leq.

    y is strictly below z exactly when the there-difference is properly
    smaller, or the there-differences coincide and the reduced
    here-difference is properly smaller.
    """
    dy = y.there ^ x.there
    dz = z.there ^ x.there
    if dy < dz:
        return True
    if dy == dz:
        return (y.here ^ x.here) - dy < (z.here ^ x.here) - dy
    return False


class WinslettSEAssignment:
    """Intrinsic symmetric-difference assignment over SE-interpretations."""

    name = "winslett"

    def leq(self, x, y, z) -> bool:
        return winslett_se_leq(x, y, z)

    def points(self, alphabet: Alphabet):
        return se_interpretations(alphabet)

    def __repr__(self):
        return "WinslettSEAssignment()"


class WinslettClassicalAssignment:
    """Intrinsic symmetric-difference assignment over interpretations."""

    name = "winslett-classical"

    def leq(self, i, j, k) -> bool:
        return winslett_classical_leq(i, j, k)

    def points(self, alphabet: Alphabet):
        return interpretations(alphabet)

    def __repr__(self):
        return "WinslettClassicalAssignment()"


class TableAssignment:
    """Extensional assignment: one boolean matrix per SE-interpretation.

    tables[xi][yi][zi] says whether point yi is below point zi as seen
    from point xi, indices referring to the canonical SE order.  Each
    matrix is validated to be reflexive and transitive.
    """

    def __init__(self, alphabet: Alphabet, tables):
        self.alphabet = alphabet
        self._points = se_interpretations(alphabet)
        self._index = {p: i for i, p in enumerate(self._points)}
        n = len(self._points)
        if len(tables) != n:
            raise ValueError("expected %d matrices, got %d" % (n, len(tables)))
        frozen = []
        for xi, matrix in enumerate(tables):
            if len(matrix) != n or any(len(row) != n for row in matrix):
                raise ValueError("matrix %d is not %dx%d" % (xi, n, n))
            rows = tuple(tuple(bool(v) for v in row) for row in matrix)
            for y in range(n):
                if not rows[y][y]:
                    raise ValueError(
                        "matrix %d not reflexive at %s"
                        % (xi, self._points[y]))
            for a in range(n):
                for b in range(n):
                    if not rows[a][b]:
                        continue
                    for c in range(n):
                        if rows[b][c] and not rows[a][c]:
                            raise ValueError(
                                "matrix %d not transitive via %s"
                                % (xi, self._points[b]))
            frozen.append(rows)
        self._tables = tuple(frozen)

    def leq(self, x, y, z) -> bool:
        idx = self._index
        return self._tables[idx[x]][idx[y]][idx[z]]

    def points(self, alphabet: Alphabet | None = None):
        if alphabet is not None and alphabet != self.alphabet:
            raise AlphabetError("table is over %r, not %r"
                                % (self.alphabet, alphabet))
        return list(self._points)

    def to_text(self) -> str:
        lines = ["alphabet: %s" % " ".join(self.alphabet.atoms)]
        for xi, x in enumerate(self._points):
            lines.append("% " + "x = %s" % x)
            for row in self._tables[xi]:
                lines.append(" ".join("1" if v else "0" for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TableAssignment":
        rows = []
        alphabet = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("%", 1)[0].strip()
            if not line:
                continue
            if alphabet is None:
                if not line.startswith("alphabet:"):
                    raise ValueError(
                        "line %d: expected 'alphabet:' header" % lineno)
                alphabet = Alphabet(line[len("alphabet:"):].split())
                continue
            entries = line.split()
            if any(e not in ("0", "1") for e in entries):
                raise ValueError("line %d: rows must contain 0/1" % lineno)
            rows.append([e == "1" for e in entries])
        if alphabet is None:
            raise ValueError("missing 'alphabet:' header")
        n = len(se_interpretations(alphabet))
        if len(rows) != n * n or any(len(r) != n for r in rows):
            raise ValueError("expected %d rows of %d entries, got %d rows"
                             % (n * n, n, len(rows)))
        tables = [rows[i * n:(i + 1) * n] for i in range(n)]
        return cls(alphabet, tables)


def strict(o, x, y, z) -> bool:
    """Strict relation induced by the preorder of o at x."""
    return o.leq(x, y, z) and not o.leq(x, z, y)


def minima(m, x, o) -> frozenset:
    """Elements of m with nothing in m strictly below them, as seen from x."""
    members = list(m)
    return frozenset(y for y in members
                     if not any(strict(o, x, z, y) for z in members))


def _resolve_alphabet(o, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        return alphabet
    own = getattr(o, "alphabet", None)
    if own is None:
        raise ValueError("assignment carries no alphabet; pass one explicitly")
    return own


def _se_points(o, alphabet: Alphabet) -> list[SEInterpretation]:
    pts = list(o.points(alphabet))
    if pts and not isinstance(pts[0], SEInterpretation):
        raise TypeError("checker requires an assignment over SE-interpretations")
    return pts


def well_defined_sets(alphabet: Alphabet) -> list[frozenset]:
    """All star-closed sets of SE-interpretations, exhaustively.

    Feasible only for tiny alphabets (6 sets for one atom, 162 for two);
    larger alphabets raise AlphabetTooLargeError.
    """
    if len(alphabet) > EXHAUSTIVE_LIMIT:
        raise AlphabetTooLargeError(
            "well-defined set enumeration is limited to %d atoms"
            % EXHAUSTIVE_LIMIT)
    pts = se_interpretations(alphabet)
    totals = [x for x in pts if x.is_total]
    nontotal = {t: [x for x in pts if x.there == t.there and not x.is_total]
                for t in totals}

    choices_per_total = []
    for t in totals:
        group = nontotal[t]
        opts: list[frozenset | None] = [None]
        for r in range(len(group) + 1):
            for picked in combinations(group, r):
                opts.append(frozenset(picked) | {t})
        choices_per_total.append(opts)

    out: list[frozenset] = []

    def build(i: int, acc: frozenset):
        if i == len(choices_per_total):
            out.append(acc)
            return
        for opt in choices_per_total[i]:
            build(i + 1, acc if opt is None else acc | opt)

    build(0, frozenset())
    return out


def find_faithfulness_violation(o, alphabet: Alphabet | None = None):
    """A pair (x, y) with x not strictly below y, or None."""
    alphabet = _resolve_alphabet(o, alphabet)
    pts = list(o.points(alphabet))
    for x in pts:
        for y in pts:
            if y != x and not strict(o, x, x, y):
                return (x, y)
    return None


def is_faithful(o, alphabet: Alphabet | None = None) -> bool:
    """Every point is strictly closest to itself."""
    return find_faithfulness_violation(o, alphabet) is None


def find_semi_faithfulness_violation(o, alphabet: Alphabet | None = None):
    alphabet = _resolve_alphabet(o, alphabet)
    pts = _se_points(o, alphabet)
    for x in pts:
        xs = star(x)
        for y in pts:
            if y != x and y != xs and not (strict(o, x, x, y)
                                           or strict(o, x, xs, y)):
                return (x, y)
        if o.leq(x, xs, x) and not o.leq(x, x, xs):
            return (x, xs)
    return None


def is_semi_faithful(o, alphabet: Alphabet | None = None) -> bool:
    """Relaxation of faithfulness that treats x and its total companion
    as jointly closest."""
    return find_semi_faithfulness_violation(o, alphabet) is None


def _minima_union(o, x, xs, m, memo) -> frozenset:
    got = memo.get(m)
    if got is None:
        got = minima(m, x, o) | minima(m, xs, o)
        memo[m] = got
    return got


def find_organised_violation(o, alphabet: Alphabet | None = None, *,
                             exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                             seed: int | None = None, samples: int = 1000):
    """A tuple (x, m, n, y) violating the union-of-minima closure, or None.

    Exhaustive over all pairs of well-defined sets for small alphabets;
    with a seed, randomly sampled pairs for larger ones.
    """
    alphabet = _resolve_alphabet(o, alphabet)
    pts = _se_points(o, alphabet)

    def check(x, mm, nn, memo):
        xs = star(x)
        joint = (_minima_union(o, x, xs, mm, memo)
                 & _minima_union(o, x, xs, nn, memo))
        missing = joint - _minima_union(o, x, xs, mm | nn, memo)
        if missing:
            y = sort_se(missing, alphabet)[0]
            return (x, mm, nn, y)
        return None

    if len(alphabet) <= exhaustive_limit:
        wd = well_defined_sets(alphabet)
        for x in pts:
            memo: dict = {}
            for mm in wd:
                for nn in wd:
                    hit = check(x, mm, nn, memo)
                    if hit:
                        return hit
        return None

    if seed is None:
        raise AlphabetTooLargeError(
            "exhaustive organised check is limited to %d atoms; "
            "pass a seed to sample" % exhaustive_limit)
    rng = random.Random(seed)
    for _ in range(samples):
        x = rng.choice(pts)
        mm = random_star_closed_set(rng, alphabet)
        nn = random_star_closed_set(rng, alphabet)
        hit = check(x, mm, nn, {})
        if hit:
            return hit
    return None


def is_organised(o, alphabet: Alphabet | None = None, *,
                 exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                 seed: int | None = None, samples: int = 1000) -> bool:
    """Minima common to two well-defined sets survive in their union.

    In sampled mode (seed given, alphabet above the exhaustive limit) a
    True result means no counterexample was found.
    """
    return find_organised_violation(
        o, alphabet, exhaustive_limit=exhaustive_limit,
        seed=seed, samples=samples) is None


def find_well_definedness_violation(o, alphabet: Alphabet | None = None, *,
                                    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                                    seed: int | None = None,
                                    samples: int = 1000):
    """A pair (x, m) whose union-of-minima is not star-closed, or None."""
    alphabet = _resolve_alphabet(o, alphabet)
    pts = _se_points(o, alphabet)

    def check(x, mm):
        u = minima(mm, x, o) | minima(mm, star(x), o)
        if not is_well_defined(u):
            return (x, mm)
        return None

    if len(alphabet) <= exhaustive_limit:
        for x in pts:
            for mm in well_defined_sets(alphabet):
                hit = check(x, mm)
                if hit:
                    return hit
        return None

    if seed is None:
        raise AlphabetTooLargeError(
            "exhaustive well-definedness check is limited to %d atoms; "
            "pass a seed to sample" % exhaustive_limit)
    rng = random.Random(seed)
    for _ in range(samples):
        hit = check(rng.choice(pts), random_star_closed_set(rng, alphabet))
        if hit:
            return hit
    return None


def is_well_defined_assignment(o, alphabet: Alphabet | None = None, *,
                               exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                               seed: int | None = None,
                               samples: int = 1000) -> bool:
    """Union-of-minima over any well-defined set is star-closed, so the
    induced update operator always produces realizable model sets."""
    return find_well_definedness_violation(
        o, alphabet, exhaustive_limit=exhaustive_limit,
        seed=seed, samples=samples) is None


def generated_assignment(op, alphabet: Alphabet) -> TableAssignment:
    """Extensional assignment recovered from an update operator.

    Probes the operator on realized two-point programs: y is taken
    strictly below z as seen from x when updating x's program by the
    program of {y, z} keeps y, drops z, and (for non-total y) z survives
    the update by the program of {star(y), z}.  The resulting strict
    relation is closed reflexively and transitively per x.
    """
    pts = se_interpretations(alphabet)
    synt_cache: dict[frozenset, object] = {}

    def synt(xs):
        key = star_closure(frozenset(xs))
        prog = synt_cache.get(key)
        if prog is None:
            prog = realize(key, alphabet)
            synt_cache[key] = prog
        return prog

    result_cache: dict[tuple[frozenset, frozenset], frozenset] = {}

    def op_se(xs, us):
        key = (star_closure(frozenset(xs)), star_closure(frozenset(us)))
        got = result_cache.get(key)
        if got is None:
            got = se_models(op.apply(synt(key[0]), synt(key[1])))
            result_cache[key] = got
        return got

    def prec(x, y, z):
        after = op_se({x}, {y, z})
        if y not in after or z in after:
            return False
        if not y.is_total and z not in op_se({x}, {star(y), z}):
            return False
        return True

    n = len(pts)
    tables = []
    for x in pts:
        rows = [[a == b or prec(x, pts[a], pts[b]) for b in range(n)]
                for a in range(n)]
        changed = True
        while changed:
            changed = False
            for a in range(n):
                ra = rows[a]
                for b in range(n):
                    if not ra[b]:
                        continue
                    rb = rows[b]
                    for c in range(n):
                        if rb[c] and not ra[c]:
                            ra[c] = True
                            changed = True
        tables.append(rows)
    return TableAssignment(alphabet, tables)


def faithfulize(o, alphabet: Alphabet | None = None) -> TableAssignment:
    """Faithful repair of a semi-faithful assignment.

    As seen from x, y stays below z exactly when y is x, y equals z, or
    y was strictly below z already.  Minima unions over well-defined
    sets are unchanged, so the induced operator is the same.
    """
    alphabet = _resolve_alphabet(o, alphabet)
    bad = find_semi_faithfulness_violation(o, alphabet)
    if bad is not None:
        raise ValueError("assignment is not semi-faithful; witness %s, %s"
                         % (bad[0], bad[1]))
    pts = _se_points(o, alphabet)
    tables = [[[y == x or y == z or strict(o, x, y, z)
                for z in pts] for y in pts] for x in pts]
    return TableAssignment(alphabet, tables)
