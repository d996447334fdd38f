"""Sufficient reasons, abductive explanations and the two reductions behind
their hardness (CNF satisfiability to restricted implicants on an OBDD
chain, and minimal transversals to sufficient reasons of a negated OBDD)."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .batch import combine_and, ip_all
from .core import (
    Circuit, CircuitBuilder, UnsupportedQuery, _count_under, evaluate, is_implicant, negate,
    reduce,
)
from .formats import CNF, Hypergraph
from .terms import EMPTY_TERM, Assignment, Literal, Term, TermError, TermSet

DEFAULT_CAP = 24


class CapExceeded(UnsupportedQuery):
    """Brute-force search refused because the search space is too large."""


@dataclass(frozen=True)
class SRQuery:
    circuit: Circuit
    instance: Assignment

    def __post_init__(self):
        missing = [x for x in self.circuit.variables if x not in self.instance]
        if missing:
            raise TermError("instance misses variables " + " ".join(missing))

    @property
    def positive(self) -> bool:
        """True when the instance is a model of the circuit."""
        return bool(evaluate(self.circuit, self.instance))

    def target(self) -> Circuit:
        """The function whose prime implicants explain the instance: ``f`` or ``¬f``."""
        self.circuit.require_valid()
        if self.positive:
            return reduce(self.circuit)
        if not self.circuit.is_decision_diagram:
            raise UnsupportedQuery(
                "instance is rejected by the circuit; explaining it needs the negation, "
                "which is only available for decision trees and OBDD-like inputs")
        return reduce(negate(self.circuit))


def sr_greedy(q: SRQuery) -> Term:
    """Shrink the instance's full term, in variable order, while it stays an implicant."""
    target = q.target()
    t = set(q.instance.term(target.variables))
    for lit in sorted(t):
        t.discard(lit)
        if not is_implicant(t, target):
            t.add(lit)
    return Term._raw(t)


def _sr_recursive(target: Circuit, a: Assignment) -> frozenset[Term]:
    table: dict[int, frozenset[Term]] = {}
    for v in target.reachable():
        node = target.nodes[v]
        k = node.kind
        if k == "F":
            table[v] = frozenset()
        elif k == "T":
            table[v] = frozenset((EMPTY_TERM,))
        elif k == "L":
            hit = a[node.lit.var] == int(node.lit.positive)
            table[v] = frozenset((Term._raw((node.lit,)),)) if hit else frozenset()
        elif k == "A":
            u, w = node.children
            table[v] = frozenset(combine_and(table[u], table[w], disjoint=True))
        else:
            value = a[node.var]
            mine, other = node.children[value], node.children[1 - value]
            lit = Literal(node.var, bool(value))
            out = {Term._raw(t | {lit}) for t in table[mine] if not is_implicant(t, target, other)}
            u, w = node.children
            out.update(combine_and(table[u], table[w], disjoint=False))
            table[v] = frozenset(out)
    return table[target.root]


def sr_all(q: SRQuery, method: str = "recursive") -> TermSet:
    """Every sufficient reason of the instance.

    ``method="recursive"`` works node by node, keeping only terms the
    instance satisfies; ``method="filter"`` filters all prime implicants.
    """
    target = q.target()
    if method == "recursive":
        return TermSet(_sr_recursive(target, q.instance))
    if method == "filter":
        return TermSet(t for t in ip_all(target) if q.instance.satisfies(t))
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class AbductionInstance:
    circuit: Circuit
    hypotheses: frozenset[str]
    manifestation: Term

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", frozenset(self.hypotheses))
        clash = self.hypotheses & self.manifestation.vars
        if clash:
            raise ValueError("manifestation mentions hypotheses " + " ".join(sorted(clash)))


def _terms_by_size(variables: Iterable[str]) -> Iterator[Term]:
    names = sorted(variables)
    for k in range(len(names) + 1):
        for combo in itertools.combinations(names, k):
            for signs in itertools.product((False, True), repeat=k):
                yield Term._raw(Literal(x, s) for x, s in zip(combo, signs))


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceeded(
            f"{n} {what} exceed the cap of {cap}; this search is NP-hard in general, "
            "so it is only run by brute force on small inputs")


def abduction_exists(inst: AbductionInstance, cap: int = DEFAULT_CAP) -> Term | None:
    """Smallest term ``t`` over the hypotheses with ``f ∧ t`` satisfiable and
    ``f ∧ t ⊨ m``, or None.  Candidates are tried by size, then in
    variable order with negative literals before positive ones."""
    _check_cap(len(inst.hypotheses), cap, "hypotheses")
    circuit = inst.circuit
    circuit.require_valid()
    support = circuit.var()
    m = inst.manifestation
    outside = m.vars - support
    for t in _terms_by_size(inst.hypotheses):
        fixed = {lit.var: lit.positive for lit in t}
        with_t = _count_under(circuit, circuit.root, fixed)
        if not with_t:
            continue
        if outside:
            continue
        fixed.update((lit.var, lit.positive) for lit in m)
        if _count_under(circuit, circuit.root, fixed) == with_t:
            return t
    return None


def cnf_to_obdd_chain(cnf: CNF) -> tuple[Circuit, frozenset[str]]:
    """Chain of decision nodes on fresh selectors ``z1..zm``.

    Node ``i`` of the chain reads ``(-z_i ∧ B_i) ∨ (z_i ∧ next)`` where
    ``B_i`` is a small OBDD for clause ``i`` and the last ``next`` is 1.
    The chain has an implicant over the CNF variables iff the CNF is
    satisfiable.
    """
    b = CircuitBuilder()
    clause_roots = []
    for clause in cnf.clauses:
        lits = sorted(set(clause), key=lambda k: (abs(k), k))
        if any(-k in lits for k in lits):
            clause_roots.append(b.true())
            continue
        rest = b.false()
        for k in reversed(lits):
            x = str(abs(k))
            rest = b.decision(x, rest, b.true()) if k > 0 else b.decision(x, b.true(), rest)
        clause_roots.append(rest)
    acc = b.true()
    selectors = [f"z{i}" for i in range(1, len(cnf.clauses) + 1)]
    for z, root in zip(reversed(selectors), reversed(clause_roots)):
        acc = b.decision(z, root, acc)
    ys = frozenset(cnf.variables)
    return b.build(acc, [*selectors, *ys]), ys


def restricted_implicant_exists(circuit: Circuit, ys: Iterable[str],
                                cap: int = DEFAULT_CAP) -> Term | None:
    """Smallest implicant whose variables all lie in ``ys``, or None."""
    ys = frozenset(ys)
    _check_cap(len(ys), cap, "variables")
    circuit.require_valid()
    if not circuit.satisfiable_at(circuit.root):
        return None
    for t in _terms_by_size(ys):
        if is_implicant(t, circuit):
            return t
    return None


def decision_tree_from_models(variables: Iterable[str], models: Iterable[Assignment]) -> Circuit:
    """Decision diagram over ``variables`` (tested in sorted order) whose
    models are exactly ``models``."""
    names = sorted(variables)
    rows = {tuple(a[x] for x in names) for a in models}
    b = CircuitBuilder()

    def build(i: int, rows: frozenset) -> int:
        if not rows:
            return b.false()
        if i == len(names):
            return b.true()
        lo = frozenset(r for r in rows if r[i] == 0)
        hi = rows - lo
        return b.decision(names[i], build(i + 1, lo), build(i + 1, hi))

    return b.build(build(0, frozenset(rows)), names)


def hypergraph_to_circuit(h: Hypergraph) -> tuple[Circuit, Assignment]:
    """Negated diagram of the function whose models are the edge indicators
    (vertex 0 iff it lies in the edge), and the all-ones instance."""
    models = [Assignment({x: int(x not in e) for x in h.vertices}) for e in h.edges]
    f = decision_tree_from_models(h.vertices, models)
    return negate(f), Assignment({x: 1 for x in h.vertices})


def min_transversals_via_sr(h: Hypergraph, method: str = "recursive") -> set[frozenset[str]]:
    neg, a = hypergraph_to_circuit(h)
    return {t.vars for t in sr_all(SRQuery(neg, a), method)}
