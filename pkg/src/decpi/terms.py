"""Literals, terms, term sets and total assignments over named variables."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import NamedTuple


class TermError(ValueError):
    """Malformed literal, term or assignment."""


def check_var(name: str) -> str:
    if not name or name.startswith("-") or any(c.isspace() for c in name):
        raise TermError(f"invalid variable name {name!r}")
    return name


class Literal(NamedTuple):
    var: str
    positive: bool = True

    def __neg__(self) -> Literal:
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return self.var if self.positive else "-" + self.var

    @classmethod
    def parse(cls, token: str) -> Literal:
        if token.startswith("-"):
            return cls(check_var(token[1:]), False)
        return cls(check_var(token), True)


class Term(frozenset):
    """A consistent conjunction of literals, stored as a frozenset.

    Entailment between terms is reverse inclusion: ``t`` entails ``u``
    iff ``u <= t``.
    """

    def __new__(cls, literals: Iterable[Literal] = ()):
        lits = frozenset(literals)
        if len({lit.var for lit in lits}) != len(lits):
            raise TermError("term contains a literal and its negation")
        return frozenset.__new__(cls, lits)

    @classmethod
    def _raw(cls, lits: Iterable[Literal]) -> Term:
        # no consistency check; callers guarantee it
        return frozenset.__new__(cls, lits)

    @classmethod
    def parse(cls, text: str) -> Term:
        seen: dict[str, Literal] = {}
        for tok in text.split():
            lit = Literal.parse(tok)
            prev = seen.get(lit.var)
            if prev is not None:
                if prev == lit:
                    raise TermError(f"duplicate literal {tok!r}")
                raise TermError(f"contradictory literals on {lit.var!r}")
            seen[lit.var] = lit
        return cls._raw(seen.values())

    @property
    def vars(self) -> frozenset[str]:
        return frozenset(lit.var for lit in self)

    def literals(self) -> list[Literal]:
        """Literals in canonical (variable name) order."""
        return sorted(self)

    def conjoin(self, other: Iterable[Literal]) -> Term | None:
        """``self ∧ other``, or None when the conjunction is contradictory."""
        merged = self | other
        if len({lit.var for lit in merged}) != len(merged):
            return None
        return Term._raw(merged)

    def restrict(self, variables) -> Term:
        return Term._raw(lit for lit in self if lit.var in variables)

    def condition(self, lit: Literal) -> Term | None:
        """The term ``t|lit``; None when ``t`` contains the opposite literal."""
        if -lit in self:
            return None
        return Term._raw(self - {lit})

    def entails(self, other: Term) -> bool:
        return other <= self

    def __str__(self) -> str:
        return " ".join(str(lit) for lit in sorted(self))

    def __repr__(self) -> str:
        return f"Term({str(self)!r})"


EMPTY_TERM = Term()


def term_key(t: Term) -> str:
    return str(t)


class TermSet(frozenset):
    """Deduplicated set of terms iterated in canonical (printed) order."""

    def __new__(cls, terms: Iterable[Term] = ()):
        return frozenset.__new__(cls, terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(sorted(frozenset.__iter__(self), key=term_key))

    def __repr__(self) -> str:
        return "TermSet([" + ", ".join(repr(str(t)) for t in self) + "])"

    def lines(self) -> list[str]:
        return [str(t) for t in self]

    def subsumes(self, t: Term) -> bool:
        """True if some member is entailed by ``t`` (is a subset of it)."""
        return any(u <= t for u in frozenset.__iter__(self))

    def maximal(self) -> TermSet:
        return TermSet(maximal(self))


def maximal(terms: Iterable[frozenset]) -> list:
    """``max(S, ⊨)``: drop every term that strictly entails another one.

    Terms are bucketed by length, since a term can only strictly contain
    shorter ones, and kept terms are indexed by their least literal: a
    subset of ``t`` must have its least literal inside ``t``.
    """
    unique = set(terms)
    by_len: dict[int, list] = {}
    for t in unique:
        by_len.setdefault(len(t), []).append(t)
    if 0 in by_len:
        return by_len[0]
    index: dict = {}
    kept: list = []
    for size in sorted(by_len):
        fresh = [t for t in by_len[size]
                 if not any(u <= t for lit in t for u in index.get(lit, ()))]
        for t in fresh:
            index.setdefault(min(t), []).append(t)
        kept.extend(fresh)
    return kept


def consistent_products(su: Iterable[Term], sw: Iterable[Term]) -> list[Term]:
    """Every non-contradictory ``t ∧ u`` with ``t ∈ su`` and ``u ∈ sw``."""
    negated = [(u, frozenset(Literal(lit.var, not lit.positive) for lit in u)) for u in sw]
    out = []
    for t in su:
        for u, neg in negated:
            if t.isdisjoint(neg):
                out.append(Term._raw(t | u))
    return out


class Assignment(Mapping):
    """Total map from variable names to 0/1."""

    def __init__(self, values: Mapping[str, int] | Iterable[tuple[str, int]] = ()):
        data = dict(values)
        for name, val in data.items():
            check_var(name)
            if val not in (0, 1):
                raise TermError(f"value of {name!r} must be 0 or 1, got {val!r}")
            data[name] = int(val)
        self._values = data

    @classmethod
    def parse(cls, text: str) -> Assignment:
        values: dict[str, int] = {}
        text = text.strip()
        if not text:
            return cls()
        for item in text.split(","):
            name, sep, val = item.strip().partition("=")
            name, val = name.strip(), val.strip()
            if not sep or val not in ("0", "1"):
                raise TermError(f"bad assignment item {item.strip()!r}")
            if name in values:
                raise TermError(f"duplicate variable {name!r}")
            values[check_var(name)] = int(val)
        return cls(values)

    @classmethod
    def from_term(cls, t: Term) -> Assignment:
        return cls({lit.var: int(lit.positive) for lit in t})

    def __getitem__(self, name: str) -> int:
        return self._values[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __str__(self) -> str:
        return ",".join(f"{k}={v}" for k, v in sorted(self._values.items()))

    def __repr__(self) -> str:
        return f"Assignment({str(self)!r})"

    def term(self, variables: Iterable[str] | None = None) -> Term:
        """Canonical term whose only model (over ``variables``) is this assignment."""
        names = self._values if variables is None else variables
        return Term._raw(Literal(v, bool(self._values[v])) for v in names)

    def satisfies(self, t: Iterable[Literal]) -> bool:
        return all(self._values.get(lit.var) == int(lit.positive) for lit in t)
