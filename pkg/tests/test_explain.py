import pytest

from decpi.core import Circuit, CircuitBuilder, Node, UnsupportedQuery, condition, is_implicant
from decpi.explain import (
    AbductionInstance, CapExceeded, SRQuery, abduction_exists, cnf_to_obdd_chain,
    decision_tree_from_models, hypergraph_to_circuit, min_transversals_via_sr,
    restricted_implicant_exists, sr_all, sr_greedy,
)
from decpi.formats import CNF, Hypergraph, parse_circuit, print_circuit
from decpi.oracle import tt_of_circuit
from decpi.terms import EMPTY_TERM, Assignment, Literal, Term, TermError, TermSet

EVIL_HOBBIT = Assignment.parse("h=1,b=0,p=1,s=1,e=1")
ROUND_EVIL = Assignment.parse("b=1,e=1,p=0,s=0")


def S(*texts):
    return TermSet(Term.parse(t) for t in texts)


def test_sr_on_inner_nodes(creatures):
    c, v = creatures
    assert sr_all(SRQuery(c.sub(v["v1"]), ROUND_EVIL)) == S("-p -s")
    assert sr_all(SRQuery(c.sub(v["v2"]), ROUND_EVIL)) == S("-p -s", "b -p")


def test_sr_is_not_monotone_under_conditioning(creatures):
    c, v = creatures
    v1 = c.sub(v["v1"])
    whole = len(sr_all(SRQuery(v1, ROUND_EVIL)))
    parts = [len(sr_all(SRQuery(condition(v1, [Literal("e", pos)]), ROUND_EVIL)))
             for pos in (False, True)]
    assert whole < max(parts)


def test_negative_side_on_decision_diagram(data):
    dt = parse_circuit((data / "fig1_dt.dnnf").read_text())
    q = SRQuery(dt, EVIL_HOBBIT)
    assert not q.positive
    assert S("e h p", "e h s") <= sr_all(q)
    assert sr_greedy(q) in sr_all(q)


def test_negative_side_refused_with_and_nodes(creatures):
    c, _ = creatures
    with pytest.raises(UnsupportedQuery):
        sr_all(SRQuery(c, EVIL_HOBBIT))
    with pytest.raises(UnsupportedQuery):
        sr_greedy(SRQuery(c, EVIL_HOBBIT))


def test_sr_trivial_cases():
    one = Circuit([Node("T")])
    a = Assignment({"x": 1})
    assert sr_greedy(SRQuery(one, a)) == EMPTY_TERM
    assert sr_all(SRQuery(one, a)) == S("")
    x = Circuit([Node("L", lit=Literal("x"))])
    assert sr_greedy(SRQuery(x, a)) == Term.parse("x")


def test_sr_instance_must_cover_circuit(creatures):
    c, _ = creatures
    with pytest.raises(TermError):
        SRQuery(c, Assignment.parse("h=1"))


def test_sr_methods_agree_on_creatures(creatures):
    c, _ = creatures
    tt = tt_of_circuit(c)
    for a in tt.models():
        q = SRQuery(c, a)
        assert sr_all(q, "recursive") == sr_all(q, "filter")
        assert sr_greedy(q) in sr_all(q)


def test_abduction_example(creatures):
    c, _ = creatures
    inst = AbductionInstance(c, {"h", "b", "p", "s"}, Term.parse("e"))
    t = abduction_exists(inst)
    assert t == Term.parse("-h p")


def test_abduction_empty_manifestation(creatures):
    c, _ = creatures
    assert abduction_exists(AbductionInstance(c, {"h"}, EMPTY_TERM)) == EMPTY_TERM


def test_abduction_unsatisfiable_circuit():
    f = Circuit([Node("F")], variables=["x"])
    assert abduction_exists(AbductionInstance(f, {"x"}, EMPTY_TERM)) is None


def test_abduction_cap_and_overlap(creatures):
    c, _ = creatures
    with pytest.raises(CapExceeded, match="NP-hard"):
        abduction_exists(AbductionInstance(c, {"h", "b"}, Term.parse("e")), cap=1)
    with pytest.raises(ValueError):
        AbductionInstance(c, {"e"}, Term.parse("e"))


def test_chain_of_single_clause():
    circuit, ys = cnf_to_obdd_chain(CNF(2, ((1, 2),)))
    assert ys == {"1", "2"}
    assert [str(n) for n in circuit.structure()] == ["F", "T", "D 2 0 1", "D 1 2 1", "D z1 3 1"]
    assert print_circuit(parse_circuit(print_circuit(circuit))) == print_circuit(circuit)


def test_chain_unsatisfiable_and_satisfiable():
    circuit, ys = cnf_to_obdd_chain(CNF(1, ((1,), (-1,))))
    assert restricted_implicant_exists(circuit, ys) is None
    circuit, ys = cnf_to_obdd_chain(CNF(1, ((1,),)))
    assert restricted_implicant_exists(circuit, ys) == Term.parse("1")


def test_chain_tautological_and_empty_clauses():
    circuit, ys = cnf_to_obdd_chain(CNF(1, ((1, -1),)))
    assert restricted_implicant_exists(circuit, ys) == EMPTY_TERM
    circuit, ys = cnf_to_obdd_chain(CNF(1, ((),)))
    assert restricted_implicant_exists(circuit, ys) is None


def test_restricted_implicant_trivial_cases(creatures):
    c, _ = creatures
    assert restricted_implicant_exists(c, set()) is None
    t = restricted_implicant_exists(c, c.variables)
    assert is_implicant(t, c)
    with pytest.raises(CapExceeded):
        restricted_implicant_exists(c, c.variables, cap=3)


def test_decision_tree_models_exact():
    models = [Assignment({"a": 0, "b": 1}), Assignment({"a": 1, "b": 1})]
    t = decision_tree_from_models(["a", "b"], models)
    assert tt_of_circuit(t).models() == models


def test_hypergraph_circuit_single_edge():
    neg, a = hypergraph_to_circuit(Hypergraph.of([["1", "2"]]))
    assert dict(a) == {"1": 1, "2": 1}
    assert sr_all(SRQuery(neg, a)) == S("1", "2")


@pytest.mark.parametrize("edges,expected", [
    ([["1"], ["2"]], [{"1", "2"}]),
    ([["1", "2"], ["2", "3"]], [{"2"}, {"1", "3"}]),
    ([["v"]], [{"v"}]),
    ([["1"], ["2"], ["3"]], [{"1", "2", "3"}]),
    ([], [set()]),
])
def test_min_transversals(edges, expected):
    got = min_transversals_via_sr(Hypergraph.of(edges))
    assert got == {frozenset(e) for e in expected}
