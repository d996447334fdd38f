"""All prime implicants of a dec-DNNF circuit in one bottom-up pass.

Leaves: ``IP(0) = ∅``, ``IP(1) = {t_∅}``, ``IP(ℓ) = {ℓ}``.  A decomposable
AND takes pairwise conjunctions of its children's sets.  A decision node on
``x`` with children ``c0, c1`` keeps

    {t ∧ -x | t ∈ IP(c0), t ⊭ c1} ∪ {t ∧ x | t ∈ IP(c1), t ⊭ c0} ∪ IP(c0 ∧ c1)

where ``IP(c0 ∧ c1)`` is the ⊨-maximal part of the pairwise conjunctions.
"""

from __future__ import annotations

from collections.abc import Iterable

from .core import Circuit, is_implicant, reduce
from .terms import EMPTY_TERM, Literal, Term, TermSet, consistent_products, maximal


def combine_and(su: Iterable[Term], sw: Iterable[Term], disjoint: bool) -> TermSet:
    """Prime implicants of a conjunction from those of its two operands.

    With ``disjoint`` the operands share no variable and every pairwise
    conjunction is prime.  Otherwise contradictory pairs are dropped and
    only ⊨-maximal conjunctions are kept.
    """
    su, sw = list(su), list(sw)
    if disjoint:
        return TermSet(Term._raw(t | u) for t in su for u in sw)
    return TermSet(maximal(consistent_products(su, sw)))


def lift_decision(s0: Iterable[Term], s1: Iterable[Term], x: str,
                  circuit0: Circuit, circuit1: Circuit) -> TermSet:
    """Prime implicants of ``(-x ∧ f0) ∨ (x ∧ f1)`` from ``IP(f0)`` and ``IP(f1)``."""
    s0, s1 = list(s0), list(s1)
    neg, pos = Literal(x, False), Literal(x, True)
    out = {Term._raw(t | {neg}) for t in s0 if not is_implicant(t, circuit1)}
    out.update(Term._raw(t | {pos}) for t in s1 if not is_implicant(t, circuit0))
    out.update(combine_and(s0, s1, disjoint=False))
    return TermSet(out)


def ip_table(circuit: Circuit) -> dict[int, frozenset[Term]]:
    """``IP(Σ_v)`` for every node reachable from the root of an already reduced circuit."""
    table: dict[int, frozenset[Term]] = {}
    nodes = circuit.nodes
    for v in circuit.reachable():
        node = nodes[v]
        k = node.kind
        if k == "F":
            table[v] = frozenset()
        elif k == "T":
            table[v] = frozenset((EMPTY_TERM,))
        elif k == "L":
            table[v] = frozenset((Term._raw((node.lit,)),))
        elif k == "A":
            u, w = node.children
            table[v] = frozenset(combine_and(table[u], table[w], disjoint=True))
        else:
            u, w = node.children
            table[v] = frozenset(
                lift_decision(table[u], table[w], node.var, circuit.sub(u), circuit.sub(w)))
    return table


def ip_all(circuit: Circuit) -> TermSet:
    """Every prime implicant of the circuit."""
    circuit.require_valid()
    if not circuit.reduced:
        circuit = reduce(circuit)
    table = ip_table(circuit)
    result = table[circuit.root]
    # no intermediate set outgrows the final one on a reduced circuit
    assert all(len(s) <= len(result) for s in table.values())
    return TermSet(result)
