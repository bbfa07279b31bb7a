import random

import pytest

from seupdate._gen import random_program
from seupdate.orders import (TableAssignment, WinslettSEAssignment, minima,
                             well_defined_sets)
from seupdate.realization import realize
from seupdate.semantics import (SEInterpretation, answer_sets, se_models,
                                strongly_equivalent)
from seupdate.syntax import (Alphabet, AlphabetError, Atom, Iff, And, Or,
                             parse_program, render_program, to_formula)
from seupdate.update import (FactUpdateVerdict, UpdateOperator,
                             WellDefinednessError, belief_update_models,
                             check_classical_postulates, check_postulates,
                             definite_query, impossibility_demo, is_supported,
                             query, respects_fact_update_instance,
                             respects_support_instance, se_update,
                             update_models)

AL1 = Alphabet(["p"])
AL2 = Alphabet(["p", "q"])
AL3 = Alphabet(["p", "q", "r"])


def se(here, there):
    return SEInterpretation(frozenset(here), frozenset(there))


def world(atoms):
    return frozenset(atoms)


def test_update_models_frozen_case():
    p = parse_program("p. q.", AL2)
    u = parse_program("~q.", AL2)
    assert update_models(p, u) == {se("p", "p")}
    result = se_update(p, u)
    assert se_models(result) == {se("p", "p")}
    assert answer_sets(result) == {world("p")}
    assert render_program(result) \
        == ":- ~p, ~q.\n:- p, q.\n:- q, ~p.\np ; ~p :- ~q."


def test_update_of_empty_program():
    p = parse_program("", AL1)
    u = parse_program("~p.", AL1)
    result = se_update(p, u)
    assert se_models(result) == {se("", "")}
    assert answer_sets(result) == {world("")}


def test_update_by_unsatisfiable_program():
    p = parse_program("p.", AL1)
    u = parse_program(":- p. :- ~p.", AL1)
    assert update_models(p, u) == frozenset()
    assert answer_sets(se_update(p, u)) == frozenset()


def test_update_requires_shared_alphabet():
    p = parse_program("p.", AL1)
    u = parse_program("~p.", AL2)
    with pytest.raises(AlphabetError):
        update_models(p, u)


def test_update_rejects_mismatched_table_alphabet():
    tables = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]] * 3
    o = TableAssignment(AL1, tables)
    p = parse_program("p.", AL2)
    u = parse_program("~p.", AL2)
    with pytest.raises(AlphabetError):
        update_models(p, u, o)


def test_fast_path_matches_generic_minima():
    class Wrapped:
        def __init__(self):
            self._o = WinslettSEAssignment()

        def leq(self, x, y, z):
            return self._o.leq(x, y, z)

        def points(self, alphabet):
            return self._o.points(alphabet)

    rng = random.Random(11)
    wrapped = Wrapped()
    for _ in range(60):
        p = random_program(rng, AL3)
        u = random_program(rng, AL3)
        assert update_models(p, u) == update_models(p, u, wrapped)


def test_not_well_defined_assignment_raises():
    tables = [[[1, 0, 0], [1, 1, 1], [0, 0, 1]]] * 3
    o = TableAssignment(AL1, tables)
    p = parse_program("p.", AL1)
    u = realize({se("", "p"), se("p", "p")}, AL1)
    with pytest.raises(WellDefinednessError) as err:
        update_models(p, u, o)
    assert err.value.point == se("p", "p")
    assert err.value.witness == se("", "p")
    assert "total companion" in str(err.value)
    with pytest.raises(WellDefinednessError):
        se_update(p, u, o)


def test_wis_example_equal_updates():
    p = parse_program("p. q.", AL2)
    u = parse_program("~p :- q.", AL2)
    v = parse_program("~q :- p.", AL2)
    assert strongly_equivalent(u, v)
    assert se_models(u) == {se("", ""), se("", "p"), se("", "q"),
                            se("p", "p"), se("q", "q")}
    left = update_models(p, u)
    right = update_models(p, v)
    assert left == right == {se("p", "p"), se("q", "q")}


def test_query():
    p = parse_program("p. q.", AL2)
    u = parse_program("~q.", AL2)
    assert query(p, u, parse_program("p.", AL2))
    assert not query(p, u, parse_program("q.", AL2))
    assert query(p, u, parse_program("", AL2))


def test_definite_query_agrees_with_query():
    rng = random.Random(5)
    names = ("p", "q", "r")

    def random_definite(al):
        rules = []
        for _ in range(rng.randint(1, 3)):
            head = rng.choice(names[:len(al)])
            body = [a for a in names[:len(al)]
                    if a != head and rng.random() < 0.4]
            rules.append("%s%s." % (head,
                                    " :- " + ", ".join(body) if body else ""))
        return parse_program("\n".join(rules), al)

    for _ in range(60):
        al = Alphabet(names[:rng.randint(1, 3)])
        p, u, q = (random_definite(al) for _ in range(3))
        assert definite_query(p, u, q) == query(p, u, q)


def test_definite_query_rejects_non_definite():
    p = parse_program("p.", AL2)
    u = parse_program("~q.", AL2)
    with pytest.raises(ValueError):
        definite_query(p, u, p)


def test_is_supported():
    prog = parse_program("p :- q. q :- ~r.", AL3)
    assert is_supported(prog, "p", {"p", "q"})
    assert not is_supported(prog, "p", {"p"})
    assert is_supported(prog, "q", {"q"})
    assert not is_supported(prog, "q", {"q", "r"})
    assert not is_supported(prog, "r", {"r"})


def test_support_verdicts_on_fixed_instance():
    op = UpdateOperator.winslett()
    p = parse_program("p. q.", AL2)
    q = parse_program("p :- q. q.", AL2)
    u = parse_program("~q.", AL2)
    good = respects_support_instance(op, p, u)
    assert good.holds
    assert good.answer_sets == (world("p"),)
    bad = respects_support_instance(op, q, u)
    assert not bad.holds
    assert bad.failures == ((world("p"), "p"),)


def test_fact_update_verdict():
    op = UpdateOperator.winslett()
    p = parse_program("p. q.", AL2)
    u = parse_program("~q.", AL2)
    verdict = respects_fact_update_instance(op, p, u)
    assert verdict == FactUpdateVerdict(holds=True, expected=world("p"),
                                        actual=(world("p"),))


def test_fact_update_rejects_bad_inputs():
    op = UpdateOperator.winslett()
    facts = parse_program("p.", AL2)
    with pytest.raises(ValueError):
        respects_fact_update_instance(op, parse_program("p :- q.", AL2), facts)
    with pytest.raises(ValueError):
        respects_fact_update_instance(op, facts, parse_program("q. ~q.", AL2))


def test_impossibility_demo_report():
    report = impossibility_demo()
    assert report.operator == "winslett"
    assert report.p_equiv_q
    assert report.p4_instance_holds
    assert report.update_p_se == ("<p|p>",)
    assert report.update_q_se == ("<p|p>",)
    assert report.support_p.holds
    assert not report.support_q.holds
    assert report.fact_update.holds
    assert report.verdict == "violates support"
    data = report.to_json()
    assert data["support_failures"] == [{"answer_set": ["p"], "atom": "p"}]
    text = report.render_text()
    assert "unsupported atom 'p'" in text


def test_impossibility_dichotomy_for_custom_operator():
    # an operator insensitive to equivalence must break support or fact
    # update on the fixed instance; the projection operator breaks
    # support the same way
    op = UpdateOperator(name="projection", apply_fn=lambda p, u: u)
    report = impossibility_demo(op)
    assert report.p4_instance_holds
    assert not (report.support_holds and report.fact_update.holds)


def test_belief_update_example():
    al = Alphabet(["p", "q", "r"])
    phi = And((Atom("p"), Iff(Atom("q"), Atom("r"))))
    mu = Or((Atom("q"), Atom("r")))
    got = belief_update_models(phi, mu, al)
    assert got == {world("pq"), world("pr"), world("pqr")}


def test_belief_update_from_program_formulas():
    al = Alphabet(["p", "q"])
    phi = to_formula(parse_program("p. q.", al))
    mu = to_formula(parse_program("~q.", al))
    assert belief_update_models(phi, mu, al) == {world("p")}


def test_postulates_hold_one_atom():
    report = check_postulates(UpdateOperator.winslett(), AL1, p4_samples=30)
    assert report.all_hold
    names = [r.name for r in report.results]
    assert names == ["P1", "P2", "P3", "P4", "P4.1", "P4.2", "P5", "P6",
                     "P7", "P8", "initialisation", "idempotence",
                     "tautology", "absorption", "augmentation"]


def test_postulates_sampled_mode():
    report = check_postulates(UpdateOperator.winslett(), AL2,
                              exhaustive=False, seed=3, samples=25,
                              p4_samples=20)
    for r in report.results:
        assert r.verdict == "holds", r.name
        assert "sampled" in r.method


def test_projection_operator_fails_p2_and_tautology():
    op = UpdateOperator(name="projection", apply_fn=lambda p, u: u)
    report = check_postulates(op, AL1, p4_samples=20)
    assert report.result("P2").verdict == "fails"
    assert report.result("tautology").verdict == "fails"
    assert report.result("P1").verdict == "holds"
    assert report.result("P8").verdict == "holds"

    # re-falsify the shrunk P2 witness
    texts = dict(part.split(" = ", 1) for part in report.result("P2").witness)
    progs = {k: parse_witness(v) for k, v in texts.items()}
    assert se_models(progs["P"]) <= se_models(progs["U"])
    assert se_models(op.apply(progs["P"], progs["U"])) \
        != se_models(progs["P"])


def parse_witness(text):
    if text == "(empty program)":
        return parse_program("", AL1)
    body = text.strip()
    assert body.startswith("{") and body.endswith("}")
    return parse_program(body[1:-1].strip(), AL1)


def test_syntax_sensitive_operator_fails_wis():
    def freaky(p, u):
        if len(p.rules) % 2 == 0:
            return u
        return realize(frozenset(), p.alphabet)

    op = UpdateOperator(name="freaky", apply_fn=freaky)
    report = check_postulates(op, AL1, seed=1, p4_samples=60)
    assert report.result("P4.1").verdict == "fails"
    witness = report.result("P4.1").witness
    assert len(witness) == 4


def test_augmentation_counterexample():
    # frozen counterexample: the operator drops a non-total point when
    # updating straight from P, but keeps it when the update goes
    # through the intermediate program
    su = {se("", "q"), se("p", "p"), se("q", "q")}
    sv = {se("", "q"), se("q", "q")}
    p = parse_program("p. q.", AL2)
    u = realize(su, AL2)
    v = realize(sv, AL2)
    assert se_models(v) <= se_models(u)
    via = se_update(se_update(p, u), v)
    direct = se_update(p, v)
    assert se_models(via) == {se("", "q"), se("q", "q")}
    assert se_models(direct) == {se("q", "q")}
    assert not strongly_equivalent(via, direct)


def test_augmentation_reported_as_failing_two_atoms():
    report = check_postulates(UpdateOperator.winslett(), AL2, p4_samples=5)
    assert report.result("augmentation").verdict == "fails"
    assert len(report.result("augmentation").witness) == 3
    for name in ("P1", "P2", "P3", "P5", "P6", "P7", "P8",
                 "initialisation", "idempotence", "tautology", "absorption"):
        assert report.result(name).verdict == "holds", name
    assert not report.all_hold


def test_classical_postulates_all_hold():
    report = check_classical_postulates(AL2)
    assert report.all_hold
    assert [r.name for r in report.results] \
        == ["B%d" % i for i in range(1, 9)]


def test_postulate_report_json():
    report = check_postulates(UpdateOperator.winslett(), AL1, p4_samples=5)
    data = report.to_json()
    assert data["all_hold"] is True
    assert len(data["results"]) == 15
    assert all(set(r) == {"name", "verdict", "method", "checked", "witness"}
               for r in data["results"])
