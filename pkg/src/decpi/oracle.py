"""Brute-force ground truth and random instance generators.

Nothing here touches the enumeration code: truth tables are evaluated
directly from the node table with numpy bit vectors, prime implicants come
from a 3^n table of implicant flags, and transversals from a subset scan.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .core import Circuit, CircuitBuilder, reduce
from .formats import CNF, Hypergraph
from .terms import Assignment, Literal, Term, TermSet

MAX_TT_VARS = 20
MAX_TR_VERTICES = 16


class OracleLimit(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Outcomes of ``f`` over ``{0,1}^n``; entry ``i`` reads the variables as
    the bits of ``i``, first variable most significant."""

    variables: tuple[str, ...]
    bits: np.ndarray

    def __post_init__(self):
        if len(self.bits) != 1 << len(self.variables):
            raise ValueError("truth table length must be 2^n")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.variables == other.variables and bool(np.array_equal(self.bits, other.bits))

    def value(self, a: Mapping[str, int]) -> int:
        i = 0
        for x in self.variables:
            i = (i << 1) | int(a[x])
        return int(self.bits[i])

    def count(self) -> int:
        return int(self.bits.sum())

    def complement(self) -> TruthTable:
        return TruthTable(self.variables, ~self.bits)

    def models(self) -> list[Assignment]:
        n = len(self.variables)
        return [Assignment({x: (int(i) >> (n - 1 - k)) & 1 for k, x in enumerate(self.variables)})
                for i in np.flatnonzero(self.bits)]


def _columns(n: int) -> list[np.ndarray]:
    idx = np.arange(1 << n, dtype=np.int64)
    return [((idx >> (n - 1 - k)) & 1).astype(bool) for k in range(n)]


def tt_of_circuit(circuit: Circuit, variables: Iterable[str] | None = None) -> TruthTable:
    names = tuple(sorted(circuit.variables if variables is None else variables))
    if len(names) > MAX_TT_VARS:
        raise OracleLimit(f"{len(names)} variables exceed the truth-table limit of {MAX_TT_VARS}")
    cols = dict(zip(names, _columns(len(names))))
    size = 1 << len(names)
    vals: list[np.ndarray | None] = [None] * len(circuit.nodes)
    for v in circuit.reachable():
        node = circuit.nodes[v]
        if node.kind == "F":
            vals[v] = np.zeros(size, dtype=bool)
        elif node.kind == "T":
            vals[v] = np.ones(size, dtype=bool)
        elif node.kind == "L":
            col = cols[node.lit.var]
            vals[v] = col if node.lit.positive else ~col
        elif node.kind == "A":
            out = np.ones(size, dtype=bool)
            for c in node.children:
                out = out & vals[c]
            vals[v] = out
        else:
            c0, c1 = node.children
            vals[v] = np.where(cols[node.var], vals[c1], vals[c0])
    return TruthTable(names, vals[circuit.root])


def tt_of_cnf(cnf: CNF) -> TruthTable:
    names = tuple(cnf.variables)
    if len(names) > MAX_TT_VARS:
        raise OracleLimit(f"{len(names)} variables exceed the truth-table limit of {MAX_TT_VARS}")
    cols = _columns(len(names))
    out = np.ones(1 << len(names), dtype=bool)
    for clause in cnf.clauses:
        sat = np.zeros_like(out)
        for k in clause:
            col = cols[abs(k) - 1]
            sat |= col if k > 0 else ~col
        out &= sat
    return TruthTable(names, out)


def _implicant_cube(tt: TruthTable) -> np.ndarray:
    # axis value 0 = negative literal, 1 = positive literal, 2 = variable absent
    n = len(tt.variables)
    cube = tt.bits.reshape((2,) * n) if n else tt.bits.reshape(())
    for k in range(n):
        lo = np.take(cube, [0], axis=k)
        hi = np.take(cube, [1], axis=k)
        cube = np.concatenate([cube, lo & hi], axis=k)
    return cube


def tt_implicant(tt: TruthTable, t: Iterable[Literal]) -> bool:
    """``t ⊨ f`` by scanning every row consistent with ``t``."""
    pos = {x: k for k, x in enumerate(tt.variables)}
    idx = np.arange(len(tt.bits), dtype=np.int64)
    n = len(tt.variables)
    mask = np.ones(len(tt.bits), dtype=bool)
    for lit in t:
        if lit.var not in pos:
            continue
        bit = ((idx >> (n - 1 - pos[lit.var])) & 1).astype(bool)
        mask &= bit if lit.positive else ~bit
    return bool(tt.bits[mask].all())


def tt_prime_implicants(tt: TruthTable) -> TermSet:
    """Every term ``t`` with ``t ⊨ f`` such that no literal can be dropped."""
    n = len(tt.variables)
    if n > MAX_TT_VARS:
        raise OracleLimit(f"{n} variables exceed the truth-table limit")
    cube = _implicant_cube(tt)
    if n == 0:
        return TermSet([Term()] if bool(cube) else [])
    prime = cube.copy()
    for k in range(n):
        freed = np.take(cube, [2], axis=k)
        sel = [slice(None)] * n
        sel[k] = slice(0, 2)
        prime[tuple(sel)] &= ~freed
    out = []
    for idx in np.argwhere(prime):
        out.append(Term(Literal(x, bool(c)) for x, c in zip(tt.variables, idx) if c != 2))
    return TermSet(out)


def tt_min_transversals(h: Hypergraph) -> set[frozenset[str]]:
    """All inclusion-minimal vertex sets meeting every edge."""
    verts = h.vertices
    n = len(verts)
    if n > MAX_TR_VERTICES:
        raise OracleLimit(f"{n} vertices exceed the transversal limit of {MAX_TR_VERTICES}")
    bit = {x: 1 << k for k, x in enumerate(verts)}
    subsets = np.arange(1 << n, dtype=np.int64)
    hits = np.ones(1 << n, dtype=bool)
    for e in h.edges:
        em = sum(bit[x] for x in e)
        hits &= (subsets & em) != 0
    minimal = hits.copy()
    for k in range(n):
        has = (subsets >> k) & 1 == 1
        without = subsets[has] ^ (1 << k)
        minimal[has] &= ~hits[without]
    return {frozenset(x for x in verts if int(s) & bit[x]) for s in np.flatnonzero(minimal)}


def cnf_satisfiable(cnf: CNF) -> bool:
    return bool(tt_of_cnf(cnf).bits.any())


VAR_NAMES = "abcdefghijkl"


def random_circuit(seed: int, nvars: int = 8, max_nodes: int = 40, *,
                   reduced: bool = True, false_rate: float = 0.2) -> Circuit:
    """A random dec-DNNF circuit, identical for identical arguments.

    Nodes are drawn top-down over a shrinking pool of free variables: AND
    nodes split the pool in two, decision nodes remove their variable, and
    finished subcircuits are sometimes reused to create sharing.  Constant
    leaves are 0 with probability ``false_rate``; the result is reduced
    unless ``reduced`` is false.
    """
    if not 0 <= nvars <= len(VAR_NAMES):
        raise ValueError(f"nvars must be between 0 and {len(VAR_NAMES)}")
    rng = random.Random(seed)
    names = list(VAR_NAMES[:nvars])
    b = CircuitBuilder()
    made: list[tuple[int, frozenset[str]]] = []

    def leaf(pool: list[str]) -> int:
        r = rng.random()
        if not pool or r < 0.15:
            return b.false() if rng.random() < false_rate else b.true()
        return b.lit(rng.choice(pool), rng.random() < 0.5)

    def gen(pool: list[str], depth: int, allow: int) -> int:
        # creates at most ``allow`` new nodes
        stop = 0.0 if depth < 2 else 0.2
        if allow < 3 or not pool or depth > 10 or rng.random() < stop:
            return leaf(pool)
        shared = [v for v, vs in made if vs <= set(pool)]
        if shared and rng.random() < 0.15:
            return rng.choice(shared)
        before = len(b.nodes)
        if len(pool) >= 2 and rng.random() < 0.35:
            rng.shuffle(pool)
            cut = rng.randint(1, len(pool) - 1)
            left = gen(pool[:cut], depth + 1, allow - 2)
            right = gen(pool[cut:], depth + 1, allow - 1 - (len(b.nodes) - before))
            v = b.conj(left, right)
        else:
            x = rng.choice(pool)
            rest = [y for y in pool if y != x]
            low = gen(list(rest), depth + 1, allow - 2)
            high = gen(list(rest), depth + 1, allow - 1 - (len(b.nodes) - before))
            v = b.decision(x, low, high)
        made.append((v, frozenset(_vars_below(b, v))))
        return v

    root = gen(list(names), 0, max_nodes)
    c = b.build(root, names)
    return reduce(c) if reduced else c


def _vars_below(b: CircuitBuilder, v: int) -> set[str]:
    out, stack, seen = set(), [v], set()
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        node = b.nodes[u]
        if node.kind == "L":
            out.add(node.lit.var)
        elif node.kind == "D":
            out.add(node.var)
        stack.extend(node.children)
    return out


def random_assignment(seed: int, variables: Iterable[str]) -> Assignment:
    rng = random.Random(seed)
    return Assignment({x: rng.randint(0, 1) for x in sorted(variables)})


def random_cnf(seed: int, max_vars: int = 8, max_clauses: int = 10) -> CNF:
    rng = random.Random(seed)
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, min(3, n))
        picked = rng.sample(range(1, n + 1), width)
        clauses.append(tuple(k if rng.random() < 0.5 else -k for k in picked))
    return CNF(n, tuple(clauses))


def random_hypergraph(seed: int, max_vertices: int = 8, max_edges: int = 8) -> Hypergraph:
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    verts = [str(k) for k in range(1, n + 1)]
    edges = [rng.sample(verts, rng.randint(1, n)) for _ in range(rng.randint(0, max_edges))]
    return Hypergraph.of(edges, verts)


def all_assignments(variables: Iterable[str]):
    names = sorted(variables)
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield Assignment(dict(zip(names, bits)))
