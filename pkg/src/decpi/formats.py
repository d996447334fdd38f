"""Text formats: native circuits, c2d NNF import, DIMACS CNF, hypergraphs, terms.

Native circuit format (index-based, children before parents, last node is
the root)::

    dec-dnnf <numNodes> <numVars>
    vars <name> ...
    F | T | L <lit> | A <i> <j> | D <var> <i0> <i1>

Literals are ``name`` or ``-name``.  Variables coming from integer based
formats (DIMACS, c2d) are named by their decimal index.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .core import Circuit, CircuitBuilder, Node, UnsupportedQuery
from .terms import Assignment, Literal, Term, TermError, check_var


class FormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(msg if line is None else f"line {line}: {msg}")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _index(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected node index, got {tok!r}", no) from None


def parse_circuit(text: str) -> Circuit:
    """Parse native text into a validated, binary, hash-consed circuit (not reduced)."""
    lines = list(_lines(text))
    if not lines:
        raise FormatError("empty input")
    no, header = lines[0]
    head = header.split()
    if len(head) != 3 or head[0] != "dec-dnnf":
        raise FormatError("expected header 'dec-dnnf <numNodes> <numVars>'", no)
    n_nodes, n_vars = _index(head[1], no), _index(head[2], no)
    if len(lines) > 1 and lines[1][1].split()[0] == "vars":
        no, vline = lines[1]
        names, body = vline.split()[1:], lines[2:]
    elif n_vars == 0:
        names, body = [], lines[1:]
    else:
        raise FormatError("expected 'vars' line", lines[1][0] if len(lines) > 1 else no)
    try:
        declared = {check_var(v) for v in names}
    except TermError as exc:
        raise FormatError(str(exc), no) from None
    if len(declared) != len(names):
        raise FormatError("duplicate variable in 'vars' line", no)
    if len(names) != n_vars:
        raise FormatError(f"header declares {n_vars} variables, 'vars' lists {len(names)}", no)
    if len(body) != n_nodes:
        raise FormatError(f"header declares {n_nodes} nodes, found {len(body)}")
    if not body:
        raise FormatError("circuit has no nodes")

    def var_of(tok: str, no: int) -> str:
        if tok not in declared:
            raise FormatError(f"undeclared variable {tok!r}", no)
        return tok

    raw: list[Node] = []
    for i, (no, line) in enumerate(body):
        tok = line.split()
        op, args = tok[0], tok[1:]
        if op in ("F", "T") and not args:
            raw.append(Node(op))
        elif op == "L" and len(args) == 1:
            try:
                lit = Literal.parse(args[0])
            except TermError as exc:
                raise FormatError(str(exc), no) from None
            var_of(lit.var, no)
            raw.append(Node("L", lit=lit))
        elif op == "A" and len(args) == 2:
            raw.append(Node("A", children=(_index(args[0], no), _index(args[1], no))))
        elif op == "D" and len(args) == 3:
            raw.append(Node("D", var=var_of(args[0], no),
                            children=(_index(args[1], no), _index(args[2], no))))
        else:
            raise FormatError(f"malformed node line {line!r}", no)
        for c in raw[-1].children:
            if not 0 <= c < i:
                raise FormatError(f"child index {c} must be smaller than node index {i}", no)
    circuit = Circuit(raw, len(raw) - 1, declared)  # raises InvalidCircuit
    return _canonical(circuit)


def _canonical(circuit: Circuit) -> Circuit:
    return Circuit(circuit.structure(), None, circuit.variables)


def print_circuit(circuit: Circuit) -> str:
    """Canonical text: reachable nodes in post-order, variables sorted."""
    circuit.require_valid()
    nodes = circuit.structure()
    out = [f"dec-dnnf {len(nodes)} {len(circuit.variables)}",
           " ".join(["vars", *circuit.variables])]
    out.extend(str(node) for node in nodes)
    return "\n".join(out) + "\n"


def import_c2d_nnf(text: str) -> Circuit:
    """Read a c2d/d4 style ``.nnf`` file and rewrite OR nodes as decision nodes.

    An ``O j 2 a b`` node is accepted when one child contains the literal
    ``-j`` and the other ``j``, either as a literal leaf or as a direct
    child of an AND node.
    """
    lines = [(no, line) for no, line in _lines(text) if line.split()[0] != "c"]
    if not lines:
        raise FormatError("empty input")
    no, header = lines[0]
    head = header.split()
    if len(head) != 4 or head[0] != "nnf":
        raise FormatError("expected header 'nnf <nodes> <edges> <vars>'", no)
    n_nodes, n_vars = _index(head[1], no), _index(head[3], no)
    body = lines[1:]
    if len(body) != n_nodes:
        raise FormatError(f"header declares {n_nodes} nodes, found {len(body)}")

    def lit_of(tok: str, no: int) -> Literal:
        k = _index(tok, no)
        if k == 0 or abs(k) > n_vars:
            raise FormatError(f"literal {k} out of range", no)
        return Literal(str(abs(k)), k > 0)

    raw: list[tuple] = []
    for i, (no, line) in enumerate(body):
        tok = line.split()
        op = tok[0]
        if op == "L" and len(tok) == 2:
            raw.append(("L", lit_of(tok[1], no)))
            continue
        if op == "A" and len(tok) >= 2:
            count, kids = _index(tok[1], no), [_index(t, no) for t in tok[2:]]
            dvar = 0
        elif op == "O" and len(tok) >= 3:
            dvar, count = _index(tok[1], no), _index(tok[2], no)
            kids = [_index(t, no) for t in tok[3:]]
        else:
            raise FormatError(f"malformed node line {line!r}", no)
        if count != len(kids):
            raise FormatError(f"node declares {count} children, lists {len(kids)}", no)
        for c in kids:
            if not 0 <= c < i:
                raise FormatError(f"child index {c} must be smaller than node index {i}", no)
        raw.append((op, kids, dvar, no))

    b = CircuitBuilder()
    done: list[int] = []

    def split(c: int, lit: Literal) -> int | None:
        # c ≡ lit ∧ rest  →  index of rest
        entry = raw[c]
        if entry[0] == "L":
            return b.true() if entry[1] == lit else None
        if entry[0] == "A":
            kids = entry[1]
            hits = [k for k in kids if raw[k][0] == "L" and raw[k][1] == lit]
            if hits:
                rest = [done[k] for k in kids if k != hits[0]]
                return b.conj(*rest)
        return None

    for i, entry in enumerate(raw):
        if entry[0] == "L":
            done.append(b.lit(entry[1]))
        elif entry[0] == "A":
            done.append(b.conj(*(done[c] for c in entry[1])))
        else:
            _, kids, dvar, no = entry
            if not kids:
                done.append(b.false())
            elif len(kids) == 1:
                done.append(done[kids[0]])
            elif dvar == 0 or len(kids) != 2:
                raise UnsupportedQuery(f"node {i} (line {no}): OR node without decision shape")
            else:
                x = str(dvar)
                neg, pos = Literal(x, False), Literal(x, True)
                a, c = kids
                lo, hi = split(a, neg), split(c, pos)
                if lo is None or hi is None:
                    lo, hi = split(c, neg), split(a, pos)
                if lo is None or hi is None:
                    raise UnsupportedQuery(
                        f"node {i} (line {no}): children do not branch on variable {x}")
                done.append(b.decision(x, lo, hi))
    tmp = Circuit(b.nodes, done[-1], check=False)
    return Circuit(tmp.structure(), None, (str(k) for k in range(1, n_vars + 1)))


def parse_term(text: str) -> Term:
    return Term.parse(text)


def parse_assignment(text: str) -> Assignment:
    return Assignment.parse(text)


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[frozenset[str], ...]

    @classmethod
    def of(cls, edges: Iterable[Iterable[str]], vertices: Iterable[str] = ()) -> Hypergraph:
        es = tuple(frozenset(check_var(str(v)) for v in e) for e in edges)
        if any(not e for e in es):
            raise ValueError("hypergraph edges must be nonempty")
        vs = set(map(str, vertices)).union(*es) if es else set(map(str, vertices))
        return cls(tuple(sorted(vs)), es)


def parse_hypergraph(text: str) -> Hypergraph:
    edges = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            edges.append([check_var(v) for v in line.split()])
        except TermError as exc:
            raise FormatError(str(exc), no) from None
    return Hypergraph.of(edges)


def print_hypergraph(h: Hypergraph) -> str:
    return "".join(" ".join(sorted(e)) + "\n" for e in h.edges)


@dataclass(frozen=True)
class CNF:
    nvars: int
    clauses: tuple[tuple[int, ...], ...]

    @property
    def variables(self) -> list[str]:
        return [str(k) for k in range(1, self.nvars + 1)]

    def clause_literals(self, clause: tuple[int, ...]) -> list[Literal]:
        return [Literal(str(abs(k)), k > 0) for k in clause]


def parse_dimacs(text: str) -> CNF:
    nvars = nclauses = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            tok = line.split()
            if nvars is not None or len(tok) != 4 or tok[1] != "cnf":
                raise FormatError("bad problem line", no)
            nvars, nclauses = _index(tok[2], no), _index(tok[3], no)
            continue
        if nvars is None:
            raise FormatError("clause before problem line", no)
        for tok in line.split():
            k = _index(tok, no)
            if k == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(k) > nvars:
                raise FormatError(f"literal {k} exceeds declared {nvars} variables", no)
            else:
                current.append(k)
    if nvars is None:
        raise FormatError("missing problem line")
    if current:
        raise FormatError("last clause not terminated by 0")
    if len(clauses) != nclauses:
        raise FormatError(f"problem line declares {nclauses} clauses, found {len(clauses)}")
    return CNF(nvars, tuple(clauses))


def print_dimacs(cnf: CNF) -> str:
    out = [f"p cnf {cnf.nvars} {len(cnf.clauses)}"]
    out.extend(" ".join(map(str, (*c, 0))) for c in cnf.clauses)
    return "\n".join(out) + "\n"
