"""Decision-DNNF circuits: data model, validation, normalization and queries.

A circuit is an immutable node table plus a root index.  Children always
carry smaller indices than their parents, so ascending index order is a
topological order.  Node kinds:

    F, T            constant leaves
    L lit           literal leaf
    A c1 c2 ...     decomposable conjunction (binary after ``binarize``)
    D x c0 c1       decision on ``x``: (-x ∧ c0) ∨ (x ∧ c1)
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

from .terms import Literal, Term, check_var


class CircuitError(Exception):
    """Base class for circuit errors."""


class InvalidCircuit(CircuitError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations))


class UnsupportedQuery(CircuitError):
    """Query that is not tractable (or not implemented) for this circuit."""


class Node(NamedTuple):
    kind: str
    lit: Literal | None = None
    var: str | None = None
    children: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.kind == "L":
            return f"L {self.lit}"
        if self.kind == "A":
            return "A " + " ".join(map(str, self.children))
        if self.kind == "D":
            return f"D {self.var} {self.children[0]} {self.children[1]}"
        return self.kind


FALSE = Node("F")
TRUE = Node("T")


@dataclass(frozen=True)
class Violation:
    node: int
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"node {self.node}: {self.kind}: {self.detail}"


_FATAL = ("kind", "cycle", "arity")


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def well_formed(self) -> bool:
        """Indices and arities are sane, so per-node variable sets exist."""
        return not any(v.kind in _FATAL for v in self.violations)

    def __bool__(self) -> bool:
        return self.ok


class _Table:
    """Per-node data shared by a circuit and all of its subcircuits."""

    def __init__(self, nodes: tuple[Node, ...]):
        self.nodes = nodes
        self._report: ValidationReport | None = None
        self._varsets: list[frozenset[str]] | None = None
        self._lits: dict[int, frozenset[Literal]] = {}
        self._sat: list[bool] | None = None

    def report(self) -> ValidationReport:
        if self._report is None:
            self._report = _validate_table(self.nodes)
        return self._report

    @property
    def varsets(self) -> list[frozenset[str]]:
        if self._varsets is None:
            self._varsets = _varsets(self.nodes)
        return self._varsets

    def lits(self, v: int) -> frozenset[Literal]:
        """All literals (both polarities) over ``var(v)``; used for projections."""
        got = self._lits.get(v)
        if got is None:
            got = frozenset(
                lit for x in self.varsets[v] for lit in (Literal(x, True), Literal(x, False))
            )
            self._lits[v] = got
        return got

    @property
    def sat(self) -> list[bool]:
        if self._sat is None:
            out: list[bool] = []
            for node in self.nodes:
                k = node.kind
                if k == "F":
                    out.append(False)
                elif k == "A":
                    out.append(all(out[c] for c in node.children))
                elif k == "D":
                    out.append(out[node.children[0]] or out[node.children[1]])
                else:
                    out.append(True)
            self._sat = out
        return self._sat


def _validate_table(nodes: tuple[Node, ...]) -> ValidationReport:
    report = ValidationReport()
    bad_order = False
    for i, node in enumerate(nodes):
        if node.kind not in "FTLAD" or len(node.kind) != 1:
            report.violations.append(Violation(i, "kind", f"unknown node kind {node.kind!r}"))
            bad_order = True
            continue
        for c in node.children:
            if not 0 <= c < i:
                report.violations.append(
                    Violation(i, "cycle", f"child {c} does not precede node {i}")
                )
                bad_order = True
        if node.kind == "D" and len(node.children) != 2:
            report.violations.append(Violation(i, "arity", "decision node needs two children"))
            bad_order = True
    if bad_order:
        return report
    varsets = _varsets(nodes)
    for i, node in enumerate(nodes):
        if node.kind == "A":
            if len(node.children) != 2:
                report.violations.append(
                    Violation(i, "non-binary", f"AND node has {len(node.children)} children")
                )
            seen: set[str] = set()
            for c in node.children:
                shared = seen & varsets[c]
                if shared:
                    report.violations.append(
                        Violation(i, "decomposability", "shared variables " + " ".join(sorted(shared)))
                    )
                seen |= varsets[c]
        elif node.kind == "D":
            c0, c1 = node.children
            if node.var in varsets[c0] or node.var in varsets[c1]:
                report.violations.append(
                    Violation(i, "decision", f"variable {node.var} occurs below its decision node")
                )
    return report


def _varsets(nodes: tuple[Node, ...]) -> list[frozenset[str]]:
    out: list[frozenset[str]] = []
    empty: frozenset[str] = frozenset()
    for node in nodes:
        k = node.kind
        if k == "L":
            out.append(frozenset((node.lit.var,)))
        elif k == "A":
            acc = empty
            for c in node.children:
                acc = acc | out[c]
            out.append(acc)
        elif k == "D":
            c0, c1 = node.children
            out.append(out[c0] | out[c1] | {node.var})
        else:
            out.append(empty)
    return out


class Circuit:
    """Immutable dec-DNNF circuit.

    ``variables`` is the declared variable set (sorted); it always contains
    the variables occurring under the root and may contain more.  Counting
    and printing use the declared set.
    """

    __slots__ = ("nodes", "root", "variables", "_table")

    def __init__(self, nodes: Iterable[Node], root: int | None = None,
                 variables: Iterable[str] = (), *, check: bool = True, _table: _Table | None = None):
        self.nodes = tuple(nodes)
        if not self.nodes:
            raise CircuitError("empty node table")
        self.root = len(self.nodes) - 1 if root is None else root
        if not 0 <= self.root < len(self.nodes):
            raise CircuitError(f"root {self.root} out of range")
        self._table = _table if _table is not None else _Table(self.nodes)
        declared = {check_var(v) for v in variables}
        if check:
            self.require_valid()
        if self._table.report().well_formed:
            declared |= self._table.varsets[self.root]
        self.variables = tuple(sorted(declared))

    # structure ---------------------------------------------------------

    def node(self, v: int) -> Node:
        return self.nodes[v]

    def sub(self, v: int) -> Circuit:
        """The subcircuit rooted at ``v``, sharing this node table."""
        return Circuit(self.nodes, v, check=False, _table=self._table)

    def var(self, v: int | None = None) -> frozenset[str]:
        """Variables occurring under ``v`` (default: the root)."""
        return self._table.varsets[self.root if v is None else v]

    def lits(self, v: int) -> frozenset[Literal]:
        return self._table.lits(v)

    def reachable(self, v: int | None = None) -> list[int]:
        """Node indices reachable from ``v``, ascending (children first)."""
        start = self.root if v is None else v
        seen = {start}
        stack = [start]
        nodes = self.nodes
        while stack:
            for c in nodes[stack.pop()].children:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return sorted(seen)

    @property
    def size(self) -> int:
        """Number of edges reachable from the root."""
        return sum(len(self.nodes[v].children) for v in self.reachable())

    def validation(self) -> ValidationReport:
        return self._table.report()

    def require_valid(self) -> None:
        report = self._table.report()
        if not report.ok:
            raise InvalidCircuit(report)

    def satisfiable_at(self, v: int) -> bool:
        return self._table.sat[v]

    @property
    def reduced(self) -> bool:
        """No reachable non-leaf node computes the constant-0 function."""
        sat = self._table.sat
        return all(sat[v] or self.nodes[v].kind == "F" for v in self.reachable())

    @property
    def is_decision_diagram(self) -> bool:
        """True when no AND node is reachable (FBDD/OBDD/decision tree shape)."""
        return all(self.nodes[v].kind != "A" for v in self.reachable())

    def structure(self) -> list[Node]:
        """Reachable nodes renumbered in canonical post-order.

        Two circuits with equal structure print identically.
        """
        return list(_rebuild(self, lambda node, kids, b: b.add(node._replace(children=kids))).nodes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.variables == other.variables and self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash((self.variables, tuple(self.structure())))

    def __repr__(self) -> str:
        return f"<Circuit {len(self.reachable())} nodes, vars={' '.join(self.variables)}>"


class CircuitBuilder:
    """Incremental construction with structural hashing.

    Identical nodes (same kind, label and child indices) are created once.
    ``conj`` folds its arguments into binary AND nodes from the left.
    """

    def __init__(self) -> None:
        self.nodes: list[Node] = []
        self._index: dict[Node, int] = {}

    def add(self, node: Node) -> int:
        got = self._index.get(node)
        if got is None:
            got = len(self.nodes)
            self.nodes.append(node)
            self._index[node] = got
        return got

    def false(self) -> int:
        return self.add(FALSE)

    def true(self) -> int:
        return self.add(TRUE)

    def const(self, value: bool) -> int:
        return self.add(TRUE if value else FALSE)

    def lit(self, lit: Literal | str, positive: bool = True) -> int:
        if isinstance(lit, str):
            lit = Literal.parse(lit) if positive else -Literal.parse(lit)
        return self.add(Node("L", lit=lit))

    def conj(self, *children: int) -> int:
        if not children:
            return self.true()
        acc = children[0]
        for c in children[1:]:
            acc = self.add(Node("A", children=(acc, c)))
        return acc

    def decision(self, var: str, child0: int, child1: int) -> int:
        return self.add(Node("D", var=check_var(var), children=(child0, child1)))

    def build(self, root: int | None = None, variables: Iterable[str] = (), *, check: bool = True) -> Circuit:
        return Circuit(self.nodes, root, variables, check=check)


def _rebuild(circuit: Circuit, make, select=None) -> Circuit:
    """Post-order rebuild of the reachable part of ``circuit``.

    ``make(node, new_children, builder)`` returns the new index for a node
    given its already rebuilt children.  ``select(node)`` may return a
    subset of the children to visit (default: all).  Children are visited
    left-to-right / 0-child first, which fixes the output numbering.
    """
    b = CircuitBuilder()
    done: dict[int, int] = {}
    nodes = circuit.nodes
    stack = [circuit.root]
    while stack:
        v = stack[-1]
        if v in done:
            stack.pop()
            continue
        node = nodes[v]
        kids = node.children if select is None else select(node)
        pending = [c for c in kids if c not in done]
        if pending:
            stack.extend(reversed(pending))
            continue
        stack.pop()
        done[v] = make(node, tuple(done[c] for c in kids), b)
    return Circuit(b.nodes, done[circuit.root], check=False)


def _finish(tmp: Circuit, variables: Iterable[str], check: bool = True) -> Circuit:
    return Circuit(tmp.nodes, tmp.root, variables, check=check)


def validate(circuit: Circuit) -> ValidationReport:
    """Every structural violation in the node table (not only the reachable part)."""
    return circuit.validation()


def evaluate(circuit: Circuit, a: Mapping[str, int]) -> int:
    circuit.require_valid()
    missing = circuit.var() - set(a)
    if missing:
        raise KeyError("assignment misses " + " ".join(sorted(missing)))
    nodes = circuit.nodes
    memo: dict[int, int] = {}
    stack = [circuit.root]
    while stack:
        v = stack[-1]
        node = nodes[v]
        k = node.kind
        if k == "D":
            kids = (node.children[int(a[node.var])],)
        else:
            kids = node.children
        pending = [c for c in kids if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        if k == "F":
            memo[v] = 0
        elif k == "T":
            memo[v] = 1
        elif k == "L":
            memo[v] = int(int(a[node.lit.var]) == node.lit.positive)
        elif k == "A":
            memo[v] = int(all(memo[c] for c in kids))
        else:
            memo[v] = memo[kids[0]]
    return memo[circuit.root]


def binarize(circuit: Circuit) -> Circuit:
    """Equivalent circuit whose AND nodes are binary (left fold)."""

    def make(node, kids, b):
        if node.kind == "A":
            return b.conj(*kids)
        return b.add(node._replace(children=kids))

    return _finish(_rebuild(circuit, make), circuit.variables, check=False)


def _count_under(circuit: Circuit, root: int, fixed: Mapping[str, bool]) -> int:
    """Models of ``Σ_root`` consistent with ``fixed``, counted over ``var(root)`` minus fixed vars."""
    nodes = circuit.nodes
    varsets = circuit._table.varsets
    fixed_vars = frozenset(fixed)

    def free(v: int) -> int:
        vs = varsets[v]
        if not fixed:
            return len(vs)
        return len(vs) - len(vs & fixed_vars)

    memo: dict[int, int] = {}
    stack = [root]
    while stack:
        v = stack[-1]
        node = nodes[v]
        k = node.kind
        kids = node.children
        if k == "D" and node.var in fixed:
            kids = (kids[int(fixed[node.var])],)
        pending = [c for c in kids if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        if k == "F":
            memo[v] = 0
        elif k == "T":
            memo[v] = 1
        elif k == "L":
            val = fixed.get(node.lit.var)
            memo[v] = 1 if val is None or val == node.lit.positive else 0
        elif k == "A":
            n = 1
            for c in kids:
                n *= memo[c]
            memo[v] = n
        elif len(kids) == 1:
            memo[v] = memo[kids[0]] << (free(v) - free(kids[0]))
        else:
            fv = free(v) - 1
            c0, c1 = kids
            memo[v] = (memo[c0] << (fv - free(c0))) + (memo[c1] << (fv - free(c1)))
    return memo[root]


def _fixed(t: Iterable[Literal]) -> dict[str, bool]:
    return {lit.var: lit.positive for lit in t}


def count_models(circuit: Circuit, over: Iterable[str] | None = None) -> int:
    """Number of assignments to ``over`` (default: declared variables) satisfying the circuit."""
    circuit.require_valid()
    over = set(circuit.variables if over is None else over)
    inner = circuit.var()
    if not inner <= over:
        raise ValueError("count domain misses " + " ".join(sorted(inner - over)))
    return _count_under(circuit, circuit.root, {}) << (len(over) - len(inner))


def is_satisfiable(circuit: Circuit) -> bool:
    circuit.require_valid()
    return circuit.satisfiable_at(circuit.root)


def reduce(circuit: Circuit) -> Circuit:
    """Replace every unsatisfiable node by the 0-leaf and drop unreachable nodes."""
    circuit.require_valid()
    sat = circuit._table.sat

    # unsatisfiable nodes are cut before their children are visited
    b = CircuitBuilder()
    done: dict[int, int] = {}
    nodes = circuit.nodes
    stack = [circuit.root]
    while stack:
        v = stack[-1]
        if v in done:
            stack.pop()
            continue
        if not sat[v]:
            done[v] = b.false()
            stack.pop()
            continue
        node = nodes[v]
        pending = [c for c in node.children if c not in done]
        if pending:
            stack.extend(reversed(pending))
            continue
        stack.pop()
        done[v] = b.add(node._replace(children=tuple(done[c] for c in node.children)))
    return Circuit(b.nodes, done[circuit.root], circuit.variables)


def condition(circuit: Circuit, t: Iterable[Literal]) -> Circuit:
    """Circuit for ``f|t`` over the declared variables minus ``var(t)``, reduced."""
    circuit.require_valid()
    fixed = _fixed(t)

    def select(node):
        if node.kind == "D" and node.var in fixed:
            return (node.children[int(fixed[node.var])],)
        return node.children

    def make(node, kids, b):
        if node.kind == "L" and node.lit.var in fixed:
            return b.const(fixed[node.lit.var] == node.lit.positive)
        if node.kind == "D" and node.var in fixed:
            return kids[0]
        return b.add(node._replace(children=kids))

    tmp = _rebuild(circuit, make, select)
    rest = [v for v in circuit.variables if v not in fixed]
    return reduce(_finish(tmp, rest))


def is_implicant(t: Iterable[Literal], circuit: Circuit, root: int | None = None) -> bool:
    """``t ⊨ Σ``: the conditioned circuit has ``2^free`` models."""
    v = circuit.root if root is None else root
    fixed = _fixed(t)
    vs = circuit.var(v)
    free = len(vs) - len(vs & frozenset(fixed))
    return _count_under(circuit, v, fixed) == 1 << free


def is_prime_implicant(t: Term, circuit: Circuit, root: int | None = None) -> bool:
    if not is_implicant(t, circuit, root):
        return False
    return not any(is_implicant(t - {lit}, circuit, root) for lit in t)


def negate(circuit: Circuit) -> Circuit:
    """Negation of a decision diagram by swapping sinks and flipping literal leaves.

    Only defined for circuits without reachable AND nodes; negating a
    general dec-DNNF circuit is not a local transformation.
    """
    circuit.require_valid()
    if not circuit.is_decision_diagram:
        raise UnsupportedQuery("negation needs a decision diagram (no AND nodes)")

    def make(node, kids, b):
        k = node.kind
        if k == "F":
            return b.true()
        if k == "T":
            return b.false()
        if k == "L":
            return b.lit(-node.lit)
        return b.add(node._replace(children=kids))

    return _finish(_rebuild(circuit, make), circuit.variables)
