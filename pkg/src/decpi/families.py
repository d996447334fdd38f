"""Parametric circuit families used by the benchmarks."""

from __future__ import annotations

from .core import Circuit, CircuitBuilder
from .explain import cnf_to_obdd_chain
from .formats import CNF


def gadget(n: int) -> Circuit:
    """AND of ``n`` gadgets ``x_i ∨ y_i``, each written as a decision node on
    ``x_i`` with children ``y_i`` and 1; it has ``2^n`` prime implicants."""
    if n < 1:
        raise ValueError("gadget family needs n >= 1")
    width = len(str(n))
    b = CircuitBuilder()
    acc = None
    for i in range(1, n + 1):
        g = b.decision(f"x{i:0{width}d}", b.lit(f"y{i:0{width}d}"), b.true())
        acc = g if acc is None else b.conj(acc, g)
    return b.build(acc)


def path_cnf(n: int) -> CNF:
    """``(x_1 ∨ x_2) ∧ (x_2 ∨ x_3) ∧ ... ∧ (x_{n-1} ∨ x_n)``."""
    if n < 2:
        raise ValueError("chain family needs n >= 2")
    return CNF(n, tuple((i, i + 1) for i in range(1, n)))


def chain(n: int) -> Circuit:
    """Selector chain built from :func:`path_cnf`."""
    circuit, _ = cnf_to_obdd_chain(path_cnf(n))
    return circuit


FAMILIES = {"gadget": gadget, "chain": chain}
