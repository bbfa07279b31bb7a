"""Update operators over programs and the property-checking suites.

The central operation replaces the models of a program by, for each of
its SE-models, the closest SE-models of the update program, closeness
being judged by a preorder assignment.  The union of those minima is
realized back into a program.  The same recipe over classical
interpretations gives the possible-models belief update on formulas.

The checking half verifies update postulates, support, and fact update
mechanically: exhaustively over realize-representatives of all
well-defined SE-sets on alphabets of up to two atoms, and by seeded
random sampling beyond that.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from ._gen import equivalent_variant, random_program, random_star_closed_set
from .orders import (AlphabetTooLargeError, WinslettClassicalAssignment,
                     WinslettSEAssignment, minima, well_defined_sets)
from .realization import realize
from .semantics import (SEInterpretation, answer_sets, classical_models,
                        interpretations, is_well_defined, se_interpretations,
                        se_models, sort_se, star, strongly_equivalent)
from .syntax import (Alphabet, AlphabetError, Atom, Formula, Not, Program,
                     conj, disj, parse_program, render_program)


class WellDefinednessError(RuntimeError):
    """Union-of-minima came out non-realizable for the given assignment."""

    def __init__(self, message: str, point=None, witness=None):
        super().__init__(message)
        self.point = point
        self.witness = witness


def _require_same_alphabet(*programs: Program) -> Alphabet:
    alphabet = programs[0].alphabet
    for p in programs[1:]:
        if p.alphabet != alphabet:
            raise AlphabetError("alphabet mismatch: %r vs %r"
                                % (alphabet, p.alphabet))
    return alphabet


def _check_assignment_alphabet(assignment, alphabet: Alphabet) -> None:
    own = getattr(assignment, "alphabet", None)
    if own is not None and own != alphabet:
        raise AlphabetError("assignment is over %r, not %r" % (own, alphabet))


def _winslett_minima_fast(candidates, x: SEInterpretation):
    """Minima under the two-stage symmetric-difference preorder.

    Same result as the generic minima() with the intrinsic assignment,
    just without per-comparison function call overhead; the equivalence
    is covered by tests.
    """
    ih, it = x.here, x.there
    rows = []
    for y in candidates:
        dt = y.there ^ it
        rows.append((y, dt, (y.here ^ ih) - dt))
    out = []
    for y, dy, hy in rows:
        dominated = False
        for z, dz, hz in rows:
            if dz <= dy and (dz != dy or (hz <= hy and hz != hy)):
                dominated = True
                break
        if dominated:
            continue
        out.append(y)
    return out


def _update_from_sets(se_p, se_u, assignment, alphabet: Alphabet):
    fast = isinstance(assignment, WinslettSEAssignment)
    result: set = set()
    for x in sort_se(se_p, alphabet):
        if fast:
            result.update(_winslett_minima_fast(se_u, x))
        else:
            result.update(minima(se_u, x, assignment))
    if not is_well_defined(result):
        missing = [y for y in sort_se(result, alphabet)
                   if star(y) not in result]
        y0 = missing[0]
        x0 = next(x for x in sort_se(se_p, alphabet)
                  if y0 in minima(se_u, x, assignment))
        raise WellDefinednessError(
            "assignment is not well-defined: from %s the minima include %s "
            "but not its total companion" % (x0, y0), point=x0, witness=y0)
    return frozenset(result)


def update_models(p: Program, u: Program,
                  assignment=None) -> frozenset[SEInterpretation]:
    """SE-models of the update, before realization.

    Union over the SE-models of p of the closest SE-models of u.  Raises
    WellDefinednessError, naming an offending point, when the union is
    not star-closed.
    """
    alphabet = _require_same_alphabet(p, u)
    if assignment is None:
        assignment = WinslettSEAssignment()
    _check_assignment_alphabet(assignment, alphabet)
    return _update_from_sets(se_models(p), se_models(u), assignment, alphabet)


def se_update(p: Program, u: Program, assignment=None) -> Program:
    """Update p by u and realize the resulting SE-model set."""
    return realize(update_models(p, u, assignment), p.alphabet)


@dataclass(frozen=True)
class UpdateOperator:
    """Binary operator on programs, normally induced by an assignment.

    A custom apply_fn overrides the induced behaviour; the postulate
    checkers then treat the operator as a black box.
    """

    assignment: object = None
    name: str = "winslett"
    apply_fn: object = None

    @classmethod
    def winslett(cls) -> "UpdateOperator":
        return cls(assignment=WinslettSEAssignment(), name="winslett")

    def apply(self, p: Program, u: Program) -> Program:
        if self.apply_fn is not None:
            return self.apply_fn(p, u)
        return se_update(p, u, self.assignment)


def belief_update_models(phi: Formula, mu: Formula,
                         alphabet: Alphabet) -> frozenset[frozenset[str]]:
    """Possible-models belief update on classical formulas."""
    mods_mu = classical_models(mu, alphabet)
    o = WinslettClassicalAssignment()
    out: set = set()
    for i in classical_models(phi, alphabet):
        out.update(minima(mods_mu, i, o))
    return frozenset(out)


def query(p: Program, u: Program, q: Program, assignment=None) -> bool:
    """Does every SE-model of the update satisfy q."""
    _require_same_alphabet(p, u, q)
    return update_models(p, u, assignment) <= se_models(q)


def definite_query(p: Program, u: Program, q: Program,
                   assignment=None) -> bool:
    """query() restricted to definite programs, via the short SE form.

    For a definite program the reduct is the program itself, so its
    SE-models are exactly the ordered pairs of classical models.
    """
    for prog, label in ((p, "p"), (u, "u"), (q, "q")):
        if not prog.is_definite:
            raise ValueError("%s is not a definite program" % label)
    alphabet = _require_same_alphabet(p, u, q)
    if assignment is None:
        assignment = WinslettSEAssignment()
    _check_assignment_alphabet(assignment, alphabet)

    def definite_se(prog):
        mods = classical_models(prog, alphabet)
        return frozenset(SEInterpretation(i, j)
                         for j in mods for i in mods if i <= j)

    result = _update_from_sets(definite_se(p), definite_se(u),
                               assignment, alphabet)
    return result <= definite_se(q)


# ---------------------------------------------------------------------------
# support and fact update

def is_supported(r: Program, atom: str, j) -> bool:
    """Some rule has the atom in its positive head and its body true in j."""
    j = frozenset(j)
    return any(atom in rule.head_pos
               and rule.body_pos <= j and not (rule.body_neg & j)
               for rule in r.rules)


@dataclass(frozen=True)
class SupportVerdict:
    holds: bool
    failures: tuple
    answer_sets: tuple


def respects_support_instance(op: UpdateOperator, p: Program,
                              u: Program) -> SupportVerdict:
    """Check that every atom in every answer set of the update result is
    supported by the union of the inputs."""
    _require_same_alphabet(p, u)
    combined = Program(p.rules | u.rules, p.alphabet)
    result = op.apply(p, u)
    ordered = sorted(answer_sets(result), key=lambda s: tuple(sorted(s)))
    failures = []
    for j in ordered:
        for atom in sorted(j):
            if not is_supported(combined, atom, j):
                failures.append((j, atom))
    return SupportVerdict(holds=not failures, failures=tuple(failures),
                          answer_sets=tuple(ordered))


@dataclass(frozen=True)
class FactUpdateVerdict:
    holds: bool
    expected: frozenset
    actual: tuple


def _require_consistent_facts(prog: Program, label: str) -> None:
    if not all(r.is_fact for r in prog.rules):
        raise ValueError("%s program is not a set of facts" % label)
    if not classical_models(prog, prog.alphabet):
        raise ValueError("%s fact program is inconsistent" % label)


def respects_fact_update_instance(op: UpdateOperator, p: Program,
                                  u: Program) -> FactUpdateVerdict:
    """Fact programs updated by fact programs: the unique answer set must
    keep every positive fact not negated by the update."""
    _require_same_alphabet(p, u)
    _require_consistent_facts(p, "initial")
    _require_consistent_facts(u, "update")
    positive = {a for r in (p.rules | u.rules) if r.is_positive_fact
                for a in r.head_pos}
    negated = {a for r in u.rules if r.is_fact and r.head_neg
               for a in r.head_neg}
    expected = frozenset(positive - negated)
    actual = answer_sets(op.apply(p, u))
    ordered = tuple(sorted(actual, key=lambda s: tuple(sorted(s))))
    return FactUpdateVerdict(holds=actual == frozenset({expected}),
                             expected=expected, actual=ordered)


@dataclass(frozen=True)
class ImpossibilityReport:
    """Outcome of the support vs fact-update dichotomy on the fixed
    two-atom instance."""

    operator: str
    p_text: str
    q_text: str
    u_text: str
    p_equiv_q: bool
    p4_instance_holds: bool
    update_p_se: tuple
    update_q_se: tuple
    support_p: SupportVerdict
    support_q: SupportVerdict
    fact_update: FactUpdateVerdict

    @property
    def support_holds(self) -> bool:
        return self.support_p.holds and self.support_q.holds

    @property
    def verdict(self) -> str:
        if not self.p4_instance_holds:
            return "equivalence-insensitive update violated on the instance"
        broken = []
        if not self.support_holds:
            broken.append("support")
        if not self.fact_update.holds:
            broken.append("fact update")
        return "violates " + " and ".join(broken)

    def render_text(self) -> str:
        def se_line(items):
            return " ".join(items) if items else "(none)"
        lines = [
            "operator: %s" % self.operator,
            "instance over alphabet {p, q}:",
            "  P: %s" % self.p_text.replace("\n", "  "),
            "  Q: %s" % self.q_text.replace("\n", "  "),
            "  U: %s" % self.u_text.replace("\n", "  "),
            "P strongly equivalent to Q: %s" % yesno(self.p_equiv_q),
            "update(P,U) and update(Q,U) strongly equivalent: %s"
            % yesno(self.p4_instance_holds),
            "  SE(update(P,U)): %s" % se_line(self.update_p_se),
            "  SE(update(Q,U)): %s" % se_line(self.update_q_se),
            "support respected on (P,U): %s" % yesno(self.support_p.holds),
            "support respected on (Q,U): %s" % yesno(self.support_q.holds),
        ]
        for j, atom in self.support_q.failures + self.support_p.failures:
            lines.append("  unsupported atom %r in answer set {%s}"
                         % (atom, ", ".join(sorted(j))))
        lines.append("fact update respected on (P,U): %s"
                     % yesno(self.fact_update.holds))
        lines.append("verdict: %s" % self.verdict)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "p": self.p_text, "q": self.q_text, "u": self.u_text,
            "p_equiv_q": self.p_equiv_q,
            "p4_instance_holds": self.p4_instance_holds,
            "update_p_se": list(self.update_p_se),
            "update_q_se": list(self.update_q_se),
            "support_p_holds": self.support_p.holds,
            "support_q_holds": self.support_q.holds,
            "support_failures": [
                {"answer_set": sorted(j), "atom": atom}
                for j, atom in self.support_p.failures
                + self.support_q.failures],
            "fact_update_holds": self.fact_update.holds,
            "fact_update_expected": sorted(self.fact_update.expected),
            "verdict": self.verdict,
        }


def yesno(b: bool) -> str:
    return "yes" if b else "no"


def impossibility_demo(op: UpdateOperator | None = None) -> ImpossibilityReport:
    """Run the fixed instance showing support and fact update cannot both
    survive an equivalence-insensitive update operator."""
    if op is None:
        op = UpdateOperator.winslett()
    alphabet = Alphabet(["p", "q"])
    p = parse_program("p. q.", alphabet)
    q = parse_program("p :- q. q.", alphabet)
    u = parse_program("~q.", alphabet)

    result_p = op.apply(p, u)
    result_q = op.apply(q, u)
    se_p = se_models(result_p)
    se_q = se_models(result_q)
    p4 = se_p == se_q
    support_p = respects_support_instance(op, p, u)
    support_q = respects_support_instance(op, q, u)
    fact = respects_fact_update_instance(op, p, u)

    if p4:
        assert not (support_p.holds and support_q.holds and fact.holds), \
            "dichotomy violated: support and fact update both respected"

    return ImpossibilityReport(
        operator=op.name,
        p_text=render_program(p), q_text=render_program(q),
        u_text=render_program(u),
        p_equiv_q=strongly_equivalent(p, q),
        p4_instance_holds=p4,
        update_p_se=tuple(str(x) for x in sort_se(se_p, alphabet)),
        update_q_se=tuple(str(x) for x in sort_se(se_q, alphabet)),
        support_p=support_p, support_q=support_q, fact_update=fact)


# ---------------------------------------------------------------------------
# postulate suites

@dataclass(frozen=True)
class PostulateResult:
    name: str
    verdict: str
    method: str
    checked: int
    witness: tuple = ()

    def render_text(self) -> str:
        head = "%-14s %s" % (self.name + ":", self.verdict.upper()
                             if self.verdict == "fails" else self.verdict)
        tail = "  [%s, %d instances]" % (self.method, self.checked)
        out = head + tail
        for part in self.witness:
            out += "\n    %s" % part
        return out


@dataclass
class PostulateReport:
    results: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(r.verdict != "fails" for r in self.results)

    def result(self, name: str) -> PostulateResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def render_text(self) -> str:
        return "\n".join(r.render_text() for r in self.results)

    def to_json(self) -> dict:
        return {"all_hold": self.all_hold,
                "results": [{"name": r.name, "verdict": r.verdict,
                             "method": r.method, "checked": r.checked,
                             "witness": list(r.witness)}
                            for r in self.results]}


class _MaskEngine:
    """SE-sets as bit masks over the canonical point list, with the update
    evaluated either through the assignment or through the operator."""

    def __init__(self, op: UpdateOperator, alphabet: Alphabet):
        self.op = op
        self.alphabet = alphabet
        self.points = se_interpretations(alphabet)
        self.index = {x: i for i, x in enumerate(self.points)}
        self.n = len(self.points)
        self.full = (1 << self.n) - 1
        self.star_idx = [self.index[star(x)] for x in self.points]
        self._upd_memo: dict = {}
        self._rep_memo: dict = {}
        self._sb = None
        if op.apply_fn is None and op.assignment is not None:
            leq = op.assignment.leq
            pts = self.points
            n = self.n
            self._sb = [[0] * n for _ in range(n)]
            for xi in range(n):
                row = self._sb[xi]
                x = pts[xi]
                for yi in range(n):
                    y = pts[yi]
                    mask = 0
                    for zi in range(n):
                        z = pts[zi]
                        if leq(x, z, y) and not leq(x, y, z):
                            mask |= 1 << zi
                    row[yi] = mask

    def mask_of(self, se_set) -> int:
        m = 0
        for x in se_set:
            m |= 1 << self.index[x]
        return m

    def set_of(self, mask: int) -> frozenset:
        return frozenset(self.points[i] for i in range(self.n)
                         if mask >> i & 1)

    def rep(self, mask: int) -> Program:
        prog = self._rep_memo.get(mask)
        if prog is None:
            prog = realize(self.set_of(mask), self.alphabet)
            self._rep_memo[mask] = prog
        return prog

    def is_star_closed(self, mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if not mask >> self.star_idx[low.bit_length() - 1] & 1:
                return False
            m ^= low
        return True

    def upd(self, mp: int, mu: int) -> int:
        key = (mp, mu)
        got = self._upd_memo.get(key)
        if got is not None:
            return got
        if self._sb is not None:
            out = 0
            rest = mp
            while rest:
                low = rest & -rest
                rest ^= low
                row = self._sb[low.bit_length() - 1]
                cand = mu & ~out
                while cand:
                    ylow = cand & -cand
                    cand ^= ylow
                    yi = ylow.bit_length() - 1
                    if not mu & row[yi]:
                        out |= ylow
            if not self.is_star_closed(out):
                raise WellDefinednessError(
                    "assignment is not well-defined on a checked instance")
        else:
            out = self.mask_of(se_models(self.op.apply(self.rep(mp),
                                                       self.rep(mu))))
        self._upd_memo[key] = out
        return out

    def remove_point(self, mask: int, i: int) -> int:
        out = mask & ~(1 << i)
        if self.star_idx[i] == i:
            for y in range(self.n):
                if self.star_idx[y] == i:
                    out &= ~(1 << y)
        return out

    def shrink(self, masks: list, fails) -> list:
        """Greedily drop points from each argument while the instance
        still falsifies the postulate.  Deterministic order."""
        masks = list(masks)
        changed = True
        while changed:
            changed = False
            for a in range(len(masks)):
                for i in range(self.n):
                    if not masks[a] >> i & 1:
                        continue
                    trial = list(masks)
                    trial[a] = self.remove_point(masks[a], i)
                    try:
                        bad = fails(trial)
                    except WellDefinednessError:
                        bad = False
                    if bad:
                        masks = trial
                        changed = True
        return masks

    def witness_texts(self, labels, masks) -> tuple:
        out = []
        for label, mask in zip(labels, masks):
            text = render_program(self.rep(mask)).replace("\n", "  ")
            out.append("%s = { %s }" % (label, text) if text
                       else "%s = (empty program)" % label)
        return tuple(out)


def _run_mask_postulate(engine: _MaskEngine, name, labels, instances,
                        fails, method) -> PostulateResult:
    checked = 0
    for masks in instances:
        checked += 1
        try:
            bad = fails(list(masks))
        except WellDefinednessError as exc:
            return PostulateResult(name, "fails", method, checked,
                                   witness=("well-definedness: %s" % exc,))
        if bad:
            shrunk = engine.shrink(list(masks), fails)
            return PostulateResult(name, "fails", method, checked,
                                   witness=engine.witness_texts(labels, shrunk))
    return PostulateResult(name, "holds", method, checked)


def _p4_variant_trials(op: UpdateOperator, *, vary_p: bool, vary_u: bool,
                       seed: int, samples: int, sizes=(2, 3, 4)):
    """Random syntactic-variant trials for the equivalence postulates.

    Yields None per passing trial, or a witness tuple on failure.
    """
    rng = random.Random(seed)
    names = ("p", "q", "r", "s")
    for _ in range(samples):
        alphabet = Alphabet(names[:rng.choice(sizes)])
        p = random_program(rng, alphabet)
        u = random_program(rng, alphabet)
        p2 = equivalent_variant(p, rng) if vary_p else p
        u2 = equivalent_variant(u, rng) if vary_u else u
        assert strongly_equivalent(p, p2) and strongly_equivalent(u, u2), \
            "variant generator produced inequivalent programs"
        r1 = se_models(op.apply(p, u))
        r2 = se_models(op.apply(p2, u2))
        if r1 != r2:
            yield ("P = { %s }" % render_program(p).replace("\n", "  "),
                   "P' = { %s }" % render_program(p2).replace("\n", "  "),
                   "U = { %s }" % render_program(u).replace("\n", "  "),
                   "U' = { %s }" % render_program(u2).replace("\n", "  "))
        else:
            yield None


def _sampled_masks(engine: _MaskEngine, rng: random.Random) -> int:
    return engine.mask_of(random_star_closed_set(rng, engine.alphabet))


def check_postulates(op: UpdateOperator, alphabet: Alphabet, *,
                     exhaustive: bool = True, seed: int = 0,
                     samples: int = 1000, p4_samples: int = 1000,
                     p4_sizes=(2, 3, 4),
                     exhaustive_limit: int = 2) -> PostulateReport:
    """Check the update postulates for an operator.

    Exhaustive mode quantifies programs over one realized representative
    per well-defined SE-set of the alphabet (feasible up to two atoms);
    sampled mode draws seeded random well-defined sets instead.  The
    equivalence postulates are always checked on random syntactic-variant
    pairs, since representatives collapse equivalent programs.
    """
    engine = _MaskEngine(op, alphabet)
    report = PostulateReport()

    if exhaustive:
        if len(alphabet) > exhaustive_limit:
            raise AlphabetTooLargeError(
                "exhaustive postulate suite is limited to %d atoms; "
                "use sampled mode" % exhaustive_limit)
        wd = [engine.mask_of(m) for m in well_defined_sets(alphabet)]
        method = "exhaustive |A|=%d over %d representatives" % (len(alphabet),
                                                                len(wd))

        def pairs():
            return ((a, b) for a in wd for b in wd)

        def triples():
            return ((a, b, c) for a in wd for b in wd for c in wd)

        def p2_instances():
            return ((a, b) for a in wd for b in wd if not a & ~b)

        def basic_triples():
            basics = sorted({engine.mask_of(frozenset({x, star(x)}))
                             for x in engine.points})
            return ((a, b, c) for a in basics for b in wd for c in wd)

        def augment_instances():
            return ((a, b, c) for a in wd for b in wd for c in wd
                    if not c & ~b)

        singles = [(a,) for a in wd]
    else:
        rng = random.Random(seed)
        method = "sampled |A|=%d (seed=%d, n=%d)" % (len(alphabet), seed,
                                                     samples)

        def _draws(k):
            draws = []
            for _ in range(samples):
                draws.append(tuple(_sampled_masks(engine, rng)
                                   for _ in range(k)))
            return draws

        singles = _draws(1)
        pair_draws = _draws(2)
        triple_draws = _draws(3)

        def pairs():
            return pair_draws

        def triples():
            return triple_draws

        def p2_instances():
            return ((a, a | b) for a, b in pair_draws)

        def basic_triples():
            basics = [engine.mask_of(frozenset({x, star(x)}))
                      for x in engine.points]
            rng2 = random.Random(seed + 1)
            return [(rng2.choice(basics), b, c) for b, c in pair_draws]

        def augment_instances():
            return ((a, b | c, c) for a, b, c in triple_draws)

    upd = engine.upd

    if engine._sb is not None:
        # guard the mask engine against drift from the real operator
        probe = [(engine.full, engine.full),
                 (engine.mask_of(frozenset({engine.points[-1]})), engine.full)]
        for mp, mu in probe:
            direct = engine.mask_of(
                se_models(op.apply(engine.rep(mp), engine.rep(mu))))
            assert direct == upd(mp, mu), "mask engine disagrees with operator"

    report.results.append(_run_mask_postulate(
        engine, "P1", ("P", "U"), pairs(),
        lambda m: bool(upd(m[0], m[1]) & ~m[1]), method))
    report.results.append(_run_mask_postulate(
        engine, "P2", ("P", "U"), p2_instances(),
        lambda m: upd(m[0], m[1]) != m[0] if not m[0] & ~m[1] else False,
        method))
    report.results.append(_run_mask_postulate(
        engine, "P3", ("P", "U"), pairs(),
        lambda m: bool(m[0]) and bool(m[1]) and not upd(m[0], m[1]), method))

    for name, vary_p, vary_u, count in (
            ("P4", True, True, p4_samples),
            ("P4.1", True, False, max(200, p4_samples // 4)),
            ("P4.2", False, True, max(200, p4_samples // 4))):
        witness = ()
        checked = 0
        for hit in _p4_variant_trials(op, vary_p=vary_p, vary_u=vary_u,
                                      seed=seed, samples=count,
                                      sizes=p4_sizes):
            checked += 1
            if hit is not None:
                witness = hit
                break
        p4_method = ("sampled syntactic variants (seed=%d, n=%d, |A| in %s)"
                     % (seed, count, sorted(set(p4_sizes))))
        verdict = "fails" if witness else "holds"
        report.results.append(PostulateResult(name, verdict, p4_method,
                                              checked, witness))

    report.results.append(_run_mask_postulate(
        engine, "P5", ("P", "U", "V"), triples(),
        lambda m: bool(upd(m[0], m[1]) & m[2] & ~upd(m[0], m[1] & m[2])),
        method))
    report.results.append(_run_mask_postulate(
        engine, "P6", ("P", "U", "V"), triples(),
        lambda m: (not upd(m[0], m[1]) & ~m[2]
                   and not upd(m[0], m[2]) & ~m[1]
                   and upd(m[0], m[1]) != upd(m[0], m[2])), method))
    report.results.append(_run_mask_postulate(
        engine, "P7", ("P", "U", "V"), basic_triples(),
        lambda m: bool(upd(m[0], m[1]) & upd(m[0], m[2])
                       & ~upd(m[0], m[1] | m[2])), method))
    report.results.append(_run_mask_postulate(
        engine, "P8", ("P", "Q", "U"), triples(),
        lambda m: upd(m[0] | m[1], m[2]) != (upd(m[0], m[2])
                                             | upd(m[1], m[2])), method))

    full = engine.full
    report.results.append(_run_mask_postulate(
        engine, "initialisation", ("U",), singles,
        lambda m: upd(full, m[0]) != m[0], method))
    report.results.append(_run_mask_postulate(
        engine, "idempotence", ("P",), singles,
        lambda m: upd(m[0], m[0]) != m[0], method))
    report.results.append(_run_mask_postulate(
        engine, "tautology", ("P",), singles,
        lambda m: upd(m[0], full) != m[0], method))
    report.results.append(_run_mask_postulate(
        engine, "absorption", ("P", "U"), pairs(),
        lambda m: upd(upd(m[0], m[1]), m[1]) != upd(m[0], m[1]), method))
    report.results.append(_run_mask_postulate(
        engine, "augmentation", ("P", "U", "V"), augment_instances(),
        lambda m: upd(upd(m[0], m[1]), m[2]) != upd(m[0], m[2]) if
        not m[2] & ~m[1] else False, method))
    return report


# ---------------------------------------------------------------------------
# classical side

def _formula_of_world_mask(mask: int, worlds, alphabet: Alphabet) -> Formula:
    terms = []
    for i, w in enumerate(worlds):
        if not mask >> i & 1:
            continue
        literals = [Atom(a) if a in w else Not(Atom(a))
                    for a in alphabet.atoms]
        terms.append(conj(literals))
    return disj(terms)


def check_classical_postulates(alphabet: Alphabet, *,
                               exhaustive_limit: int = 2) -> PostulateReport:
    """Exhaustive classical belief-update postulates for the
    symmetric-difference operator, over model-set representatives."""
    if len(alphabet) > exhaustive_limit:
        raise AlphabetTooLargeError(
            "exhaustive classical suite is limited to %d atoms"
            % exhaustive_limit)
    worlds = interpretations(alphabet)
    w = len(worlds)
    full = (1 << w) - 1
    o = WinslettClassicalAssignment()
    sb = [[0] * w for _ in range(w)]
    for ii in range(w):
        for jj in range(w):
            mask = 0
            for kk in range(w):
                if (o.leq(worlds[ii], worlds[kk], worlds[jj])
                        and not o.leq(worlds[ii], worlds[jj], worlds[kk])):
                    mask |= 1 << kk
            sb[ii][jj] = mask

    memo: dict = {}

    def bu(mphi: int, mmu: int) -> int:
        key = (mphi, mmu)
        got = memo.get(key)
        if got is not None:
            return got
        out = 0
        rest = mphi
        while rest:
            low = rest & -rest
            rest ^= low
            row = sb[low.bit_length() - 1]
            cand = mmu
            while cand:
                ylow = cand & -cand
                cand ^= ylow
                if not mmu & row[ylow.bit_length() - 1]:
                    out |= ylow
        memo[key] = out
        return out

    masks = list(range(full + 1))
    complete = [1 << i for i in range(w)]
    method = "exhaustive |A|=%d over %d model sets" % (len(alphabet),
                                                       len(masks))

    def fmt(mask):
        return str(_formula_of_world_mask(mask, worlds, alphabet))

    def run(name, labels, instances, fails):
        checked = 0
        for inst in instances:
            checked += 1
            if fails(inst):
                witness = tuple("%s = %s" % (lab, fmt(m))
                                for lab, m in zip(labels, inst))
                return PostulateResult(name, "fails", method, checked,
                                       witness)
        return PostulateResult(name, "holds", method, checked)

    report = PostulateReport()
    pairs = [(a, b) for a in masks for b in masks]
    report.results.append(run(
        "B1", ("phi", "mu"), pairs, lambda m: bool(bu(m[0], m[1]) & ~m[1])))
    report.results.append(run(
        "B2", ("phi", "mu"), pairs,
        lambda m: not m[0] & ~m[1] and bu(m[0], m[1]) != m[0]))
    report.results.append(run(
        "B3", ("phi", "mu"), pairs,
        lambda m: bool(m[0]) and bool(m[1]) and not bu(m[0], m[1])))
    report.results.append(PostulateResult(
        "B4", "holds", "definitional (operator depends only on model sets)",
        0))
    report.results.append(run(
        "B5", ("phi", "mu", "psi"),
        ((a, b, c) for a in masks for b in masks for c in masks),
        lambda m: bool(bu(m[0], m[1]) & m[2] & ~bu(m[0], m[1] & m[2]))))
    report.results.append(run(
        "B6", ("phi", "mu", "nu"),
        ((a, b, c) for a in masks for b in masks for c in masks),
        lambda m: (not bu(m[0], m[1]) & ~m[2] and not bu(m[0], m[2]) & ~m[1]
                   and bu(m[0], m[1]) != bu(m[0], m[2]))))
    report.results.append(run(
        "B7", ("phi", "mu", "nu"),
        ((a, b, c) for a in complete for b in masks for c in masks),
        lambda m: bool(bu(m[0], m[1]) & bu(m[0], m[2])
                       & ~bu(m[0], m[1] | m[2]))))
    report.results.append(run(
        "B8", ("phi", "psi", "mu"),
        ((a, b, c) for a in masks for b in masks for c in masks),
        lambda m: bu(m[0] | m[1], m[2]) != (bu(m[0], m[2]) | bu(m[1], m[2]))))
    return report


# ---------------------------------------------------------------------------
# timing harness

def benchmark_query(sizes=(1, 2, 3), samples: int = 3, seed: int = 0,
                    assignment=None) -> list[dict]:
    """Wall-clock growth of query() on random instances.

    Reports measurements only; no threshold is asserted anywhere, since
    desk-scale timings say nothing about the underlying hardness.
    """
    names = "pqrstuvwxyz"
    rng = random.Random(seed)
    rows = []
    for size in sizes:
        alphabet = Alphabet(names[:size])
        for k in range(samples):
            p = random_program(rng, alphabet)
            u = random_program(rng, alphabet)
            q = random_program(rng, alphabet, max_rules=2)
            t0 = time.perf_counter()
            verdict = query(p, u, q, assignment)
            rows.append({"alphabet_size": size, "sample": k,
                         "seconds": time.perf_counter() - t0,
                         "entailed": verdict})
    return rows
