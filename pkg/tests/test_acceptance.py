"""The eight acceptance criteria, at their stated tolerances.

Each test records one PASS/FAIL line, shown in the terminal summary.
"""

import itertools
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from decpi.batch import ip_all
from decpi.core import condition, reduce
from decpi.explain import (
    SRQuery, cnf_to_obdd_chain, decision_tree_from_models, min_transversals_via_sr,
    restricted_implicant_exists, sr_all,
)
from decpi.families import gadget
from decpi.formats import parse_circuit
from decpi.incremental import another_ip, enumerate_ip, missing_ip
from decpi.oracle import (
    cnf_satisfiable, random_assignment, random_circuit, random_cnf, random_hypergraph,
    tt_min_transversals, tt_of_circuit, tt_prime_implicants,
)
from decpi.terms import Assignment, Literal, Term, TermSet, maximal

CORPUS_SIZE = 500


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


@pytest.fixture(scope="module")
def corpus():
    return [random_circuit(seed, 12, 60) for seed in range(CORPUS_SIZE)]


@pytest.fixture(scope="module")
def corpus_timed(corpus):
    start = time.perf_counter()
    sets = [ip_all(c) for c in corpus]
    return sets, time.perf_counter() - start


@pytest.fixture(scope="module")
def corpus_ip(corpus_timed):
    return corpus_timed[0]


def S(*texts):
    return TermSet(Term.parse(t) for t in texts)


def test_1_golden_examples(creatures):
    start = time.perf_counter()
    c, v = creatures
    checks = [
        ip_all(c.sub(v["v3"])) == S("-s", "p"),
        ip_all(c.sub(v["v2"])) == S("b -p", "-b -s", "-b p", "-p -s"),
        ip_all(c.sub(v["v1"])) == S("-e -b p", "-e b -p", "-e -b -s", "-p -s"),
        another_ip(c, S("h -e b -p", "h -p -s", "-e -p -s")) == Term.parse("h -e -b -s"),
    ]
    elapsed = time.perf_counter() - start
    ok = all(checks) and elapsed < 1.0
    assert record(1, ok, f"{sum(checks)}/4 golden sets exact in {elapsed:.3f}s (limit 1s)")


def test_2_batch_equals_oracle(corpus, corpus_timed):
    corpus_ip, batch_time = corpus_timed
    start = time.perf_counter()
    bad = [i for i, c in enumerate(corpus) if tt_prime_implicants(tt_of_circuit(c)) != corpus_ip[i]]
    elapsed = batch_time + time.perf_counter() - start
    sizes = [len(c.reachable()) for c in corpus]
    ok = not bad and elapsed < 300 and max(sizes) <= 60 and max(len(c.variables) for c in corpus) <= 12
    assert record(2, ok, f"{len(corpus) - len(bad)}/{len(corpus)} circuits match the oracle "
                         f"in {elapsed:.1f}s (limit 300s), largest has {max(sizes)} nodes")


def test_3_incremental_equals_batch(corpus, corpus_ip):
    start = time.perf_counter()
    bad = []
    for i, c in enumerate(corpus):
        got = list(enumerate_ip(c))
        if len(got) != len(set(got)) or set(got) != corpus_ip[i]:
            bad.append(i)
    small = [i for i, ip in enumerate(corpus_ip) if len(ip) <= 8][:50]
    subset_errors = 0
    for i in small:
        full = list(corpus_ip[i])
        for r in range(len(full) + 1):
            for sub in itertools.combinations(full, r):
                if (missing_ip(corpus[i], sub) is None) != (r == len(full)):
                    subset_errors += 1
    elapsed = time.perf_counter() - start
    ok = not bad and len(small) == 50 and not subset_errors and elapsed < 300
    assert record(3, ok, f"{len(corpus) - len(bad)}/{len(corpus)} enumerations exact, "
                         f"{len(small)} circuits with all-subset check, {subset_errors} errors, "
                         f"{elapsed:.1f}s (limit 300s)")


def first_k_time(n, k=100, repeats=3):
    circuit = reduce(gadget(n))
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        got = list(enumerate_ip(circuit, k))
        best = min(best, time.perf_counter() - start)
    assert len(set(got)) == k
    return best


def test_4_incremental_delay_scaling():
    ns = [10, 15, 20, 25, 30]
    times = [first_k_time(n) for n in ns]
    slope = float(np.polyfit(np.log(ns), np.log(times), 1)[0])
    at30 = times[-1]
    ok = at30 < 10 and slope <= 3.5
    shown = ", ".join(f"n={n}:{t:.3f}s" for n, t in zip(ns, times))
    assert record(4, ok, f"first 100 implicants {shown}; fit exponent {slope:.2f} (limit 3.5)")


def test_5_sufficient_reasons(creatures, data):
    c, v = creatures
    a3 = Assignment.parse("b=1,e=1,p=0,s=0")
    golden = [
        sr_all(SRQuery(c.sub(v["v1"]), a3)) == S("-p -s"),
        sr_all(SRQuery(c.sub(v["v2"]), a3)) == S("-p -s", "b -p"),
    ]
    dt = parse_circuit((data / "fig1_dt.dnnf").read_text())
    neg = sr_all(SRQuery(dt, Assignment.parse("h=1,b=0,p=1,s=1,e=1")))
    golden.append(S("e h p", "e h s") <= neg)
    bad = 0
    negative = 0
    for seed in range(200):
        circuit = random_circuit(10_000 + seed, 12, 60)
        a = random_assignment(seed, circuit.variables)
        tt = tt_of_circuit(circuit)
        if not tt.value(a):
            negative += 1
            circuit = decision_tree_from_models(circuit.variables, tt.models())
            tt = tt.complement()
        expected = TermSet(t for t in tt_prime_implicants(tt) if a.satisfies(t))
        q = SRQuery(circuit, a)
        if sr_all(q, "recursive") != expected or sr_all(q, "filter") != expected:
            bad += 1
    ok = all(golden) and not bad
    assert record(5, ok, f"{sum(golden)}/3 golden checks exact; {200 - bad}/200 random instances "
                         f"match the oracle ({negative} on the negative side)")


def test_6_abduction_reduction():
    start = time.perf_counter()
    bad = 0
    sat = 0
    for seed in range(100):
        cnf = random_cnf(seed, 8, 10)
        circuit, ys = cnf_to_obdd_chain(cnf)
        found = restricted_implicant_exists(circuit, ys) is not None
        truth = cnf_satisfiable(cnf)
        sat += truth
        bad += found != truth
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    assert record(6, ok, f"{100 - bad}/100 CNFs agree with brute-force SAT ({sat} satisfiable) "
                         f"in {elapsed:.1f}s (limit 60s)")


def test_7_transversal_bridge():
    start = time.perf_counter()
    bad = 0
    for seed in range(100):
        h = random_hypergraph(seed, 8, 8)
        bad += min_transversals_via_sr(h) != tt_min_transversals(h)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    assert record(7, ok, f"{100 - bad}/100 hypergraphs match brute force in {elapsed:.1f}s (limit 60s)")


def test_8_structural_invariants(corpus, corpus_ip):
    reduce_bad = 0
    for seed in range(CORPUS_SIZE):
        raw = random_circuit(seed, 12, 60, reduced=False)
        r = reduce(raw)
        if reduce(r) != r or tt_of_circuit(r, raw.variables) != tt_of_circuit(raw):
            reduce_bad += 1
    cond_bad = 0
    checked = 0
    for c, ip in zip(corpus, corpus_ip):
        for x in c.var():
            for pos in (False, True):
                lit = Literal(x, pos)
                got = ip_all(condition(c, [lit]))
                restricted = (t.condition(lit) for t in ip)
                expected = TermSet(maximal(t for t in restricted if t is not None))
                checked += 1
                if got != expected or len(got) > len(ip):
                    cond_bad += 1
    ok = not reduce_bad and not cond_bad
    assert record(8, ok, f"reduce idempotent and equivalent on {CORPUS_SIZE - reduce_bad}/{CORPUS_SIZE}; "
                         f"conditioning identity and size bound on {checked - cond_bad}/{checked} literals")
