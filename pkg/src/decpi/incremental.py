"""Incremental-polynomial enumeration of prime implicants.

``missing_ip`` searches top-down for a node where the given set ``S`` cannot
be all of ``IP(Σ)``; ``propagate`` lifts a fresh prime implicant of that node
back to the root along the recorded path.  ``another_ip`` chains the two and
``enumerate_ip`` calls it repeatedly.

Traversal order is fixed so outputs are reproducible: AND nodes visit the
left child first, decision nodes visit the 1-child first, ``generate_ip``
follows the 0-child whenever it is satisfiable and drops literals in
variable-name order, and ties between several missing terms go to the
lexicographically least printed term.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .core import Circuit, is_implicant, is_prime_implicant, reduce
from .terms import EMPTY_TERM, Literal, Term, consistent_products, maximal, term_key


class PromiseViolation(ValueError):
    """An input set is not a subset of the prime implicants."""


class MemoTable(dict):
    """Node → ``|IP(Σ_v)|`` once certified; -1 when unknown."""

    def __missing__(self, v: int) -> int:
        return -1


@dataclass(frozen=True)
class Found:
    """A prime implicant of ``Σ_{path[-1]}`` not derivable from the input set."""

    term: Term
    path: tuple[int, ...]


class _Checks:
    """Memoized implicant / prime implicant tests on one circuit."""

    def __init__(self, circuit: Circuit):
        self.circuit = circuit
        self._imp: dict[tuple[Term, int], bool] = {}
        self._prime: dict[tuple[Term, int], bool] = {}

    def implicant(self, t: Term, v: int) -> bool:
        key = (t, v)
        got = self._imp.get(key)
        if got is None:
            got = self._imp[key] = is_implicant(t, self.circuit, v)
        return got

    def prime(self, t: Term, v: int) -> bool:
        key = (t, v)
        got = self._prime.get(key)
        if got is None:
            got = self.implicant(t, v) and not any(
                self.implicant(Term._raw(t - {lit}), v) for lit in t)
            self._prime[key] = got
        return got


def generate_ip(circuit: Circuit, root: int | None = None) -> Term:
    """Some prime implicant of a satisfiable (sub)circuit."""
    v0 = circuit.root if root is None else root
    if not circuit.satisfiable_at(v0):
        raise PromiseViolation("generate_ip needs a satisfiable circuit")
    nodes = circuit.nodes
    values: dict[str, bool] = {}
    stack, seen = [v0], set()
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        node = nodes[v]
        if node.kind == "L":
            values[node.lit.var] = node.lit.positive
        elif node.kind == "A":
            stack.extend(node.children)
        elif node.kind == "D":
            c0, c1 = node.children
            if circuit.satisfiable_at(c0):
                values[node.var] = False
                stack.append(c0)
            else:
                values[node.var] = True
                stack.append(c1)
    lits = {x: Literal(x, values.get(x, False)) for x in circuit.var(v0)}
    t = set(lits.values())
    for x in sorted(lits):
        t.discard(lits[x])
        if not is_implicant(t, circuit, v0):
            t.add(lits[x])
    return Term._raw(t)


def missing_ip(circuit: Circuit, s: Iterable[Term], path: tuple[int, ...] = (),
               memo: MemoTable | None = None, root: int | None = None, *,
               debug: bool = False, _checks: _Checks | None = None) -> Found | None:
    """None when ``s`` is exactly ``IP(Σ_root)``, otherwise a :class:`Found` witness.

    ``circuit`` must be reduced and ``s`` a subset of its prime implicants.
    The promise is only verified when ``debug`` is set.
    """
    v = circuit.root if root is None else root
    s = frozenset(s)
    memo = MemoTable() if memo is None else memo
    checks = _checks or _Checks(circuit)
    if debug:
        bad = [t for t in s if not checks.prime(t, v)]
        if bad:
            raise PromiseViolation("not prime implicants: " + ", ".join(sorted(map(str, bad))))
    return _missing(circuit, s, path, memo, v, checks)


def _missing(circuit: Circuit, s: frozenset, path: tuple[int, ...],
             memo: MemoTable, v: int, checks: _Checks) -> Found | None:
    here = path + (v,)
    if memo[v] == len(s):
        return None
    node = circuit.nodes[v]
    if not s:
        if node.kind == "F":
            memo[v] = 0
            return None
        return Found(generate_ip(circuit, v), here)
    if node.kind == "A":
        u, w = node.children
        lu, lw = circuit.lits(u), circuit.lits(w)
        su = frozenset(Term._raw(t & lu) for t in s)
        sw = frozenset(Term._raw(t & lw) for t in s)
        r = _missing(circuit, su, here, memo, u, checks)
        if r is not None:
            return r
        r = _missing(circuit, sw, here, memo, w, checks)
        if r is not None:
            return r
        if len(s) != len(su) * len(sw):
            extra = [Term._raw(a | b) for a in su for b in sw]
            extra = [t for t in extra if t not in s]
            if not extra:
                raise PromiseViolation(f"node {v}: set is not a product of its projections")
            return Found(min(extra, key=term_key), here)
    elif node.kind == "D":
        u, w = node.children
        neg, pos = Literal(node.var, False), Literal(node.var, True)
        su, sw, rest = set(), set(), set()
        for t in s:
            if neg in t:
                su.add(Term._raw(t - {neg}))
            elif pos in t:
                sw.add(Term._raw(t - {pos}))
            else:
                rest.add(t)
                if checks.prime(t, u):
                    su.add(t)
                if checks.prime(t, w):
                    sw.add(t)
        r = _missing(circuit, frozenset(sw), here, memo, w, checks)
        if r is not None:
            return r
        r = _missing(circuit, frozenset(su), here, memo, u, checks)
        if r is not None:
            return r
        star = set(maximal(consistent_products(su, sw)))
        if star != rest:
            extra = star - rest
            if not extra:
                raise PromiseViolation(f"node {v}: terms without {node.var} are not prime")
            return Found(min(extra, key=term_key), here)
    memo[v] = len(s)
    return None


def propagate(circuit: Circuit, t: Term, path: Iterable[int], *,
              _checks: _Checks | None = None) -> Term:
    """Lift ``t ∈ IP(Σ_{path[-1]})`` to a prime implicant of the whole circuit."""
    path = list(path)
    checks = _checks or _Checks(circuit)
    for i in range(len(path) - 1, 0, -1):
        parent, child = circuit.nodes[path[i - 1]], path[i]
        u, w = parent.children
        if parent.kind == "A":
            extra = generate_ip(circuit, w if child == u else u)
            t = Term._raw(t | extra)
        elif parent.kind == "D":
            if child == u:
                if not checks.implicant(t, w):
                    t = Term._raw(t | {Literal(parent.var, False)})
            elif not checks.implicant(t, u):
                t = Term._raw(t | {Literal(parent.var, True)})
        else:
            raise ValueError(f"path step {path[i - 1]} -> {child} is not an edge")
    return t


def _another(circuit: Circuit, s: frozenset, checks: _Checks) -> Term | None:
    r = _missing(circuit, s, (), MemoTable(), circuit.root, checks)
    if r is None:
        return None
    return propagate(circuit, r.term, r.path, _checks=checks)


def another_ip(circuit: Circuit, s: Iterable[Term]) -> Term | None:
    """A prime implicant outside ``s``, or None when ``s`` already holds them all."""
    circuit.require_valid()
    if not circuit.reduced:
        circuit = reduce(circuit)
    return _another(circuit, frozenset(s), _Checks(circuit))


def enumerate_ip(circuit: Circuit, k: int | None = None) -> Iterator[Term]:
    """Yield up to ``k`` distinct prime implicants (all of them when ``k`` is None)."""
    circuit.require_valid()
    if not circuit.reduced:
        circuit = reduce(circuit)
    checks = _Checks(circuit)
    found: set[Term] = set()
    while k is None or len(found) < k:
        t = _another(circuit, frozenset(found), checks)
        if t is None:
            return
        found.add(t)
        yield t


__all__ = [
    "EMPTY_TERM", "Found", "MemoTable", "PromiseViolation", "another_ip",
    "enumerate_ip", "generate_ip", "missing_ip", "propagate",
]
