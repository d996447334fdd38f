"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 invalid circuit, 3 refused
(unsupported query or brute-force cap), 4 ``--verify`` mismatch.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from . import __version__
from .batch import ip_all
from .core import InvalidCircuit, UnsupportedQuery, count_models, reduce
from .explain import (
    DEFAULT_CAP, AbductionInstance, SRQuery, abduction_exists, cnf_to_obdd_chain,
    min_transversals_via_sr, restricted_implicant_exists, sr_all, sr_greedy,
)
from .families import FAMILIES
from .formats import (
    FormatError, import_c2d_nnf, parse_assignment, parse_circuit, parse_dimacs,
    parse_hypergraph, parse_term, print_circuit,
)
from .incremental import enumerate_ip
from .oracle import OracleLimit, random_circuit, tt_of_circuit, tt_prime_implicants
from .terms import TermError

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_REFUSED, EXIT_MISMATCH = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _circuit(args):
    text = _read(args.path)
    if args.format == "c2d":
        return import_c2d_nnf(text)
    return parse_circuit(text)


def _emit(line: str) -> None:
    sys.stdout.write(line + "\n")
    sys.stdout.flush()


def cmd_check(args) -> int:
    c = _circuit(args)
    state = "reduced" if c.reduced else "unreduced"
    _emit(f"valid {state} dec-dnnf, {len(c.variables)} vars")
    return EXIT_OK


def cmd_pi(args) -> int:
    c = _circuit(args)
    limit = None if args.all or args.limit is None else args.limit
    if args.mode == "batch":
        terms = list(ip_all(c))
        shown = terms if limit is None else terms[:limit]
        for t in shown:
            _emit(str(t))
        if args.verify:
            other = set(enumerate_ip(c))
            if other != set(terms):
                raise _Fail(EXIT_MISMATCH, "incremental enumeration disagrees with batch result")
        return EXIT_OK
    seen = []
    for t in enumerate_ip(c, limit):
        _emit(str(t))
        seen.append(t)
    if args.verify:
        full = ip_all(c)
        if not set(seen) <= full or (limit is None and len(seen) != len(full)):
            raise _Fail(EXIT_MISMATCH, "batch construction disagrees with incremental output")
    return EXIT_OK


def cmd_sr(args) -> int:
    c = _circuit(args)
    q = SRQuery(c, parse_assignment(args.instance))
    if args.one:
        _emit(str(sr_greedy(q)))
    else:
        for t in sr_all(q, args.method):
            _emit(str(t))
    return EXIT_OK


def cmd_abduce(args) -> int:
    c = _circuit(args)
    hyp = frozenset(x.strip() for x in args.hyp.split(",") if x.strip())
    inst = AbductionInstance(c, hyp, parse_term(args.manifest))
    t = abduction_exists(inst, cap=args.cap)
    if t is None:
        _note(args, "no abductive explanation")
    else:
        _emit(str(t))
    return EXIT_OK


def cmd_transversals(args) -> int:
    h = parse_hypergraph(_read(args.path))
    found = min_transversals_via_sr(h)
    for names in sorted((sorted(s) for s in found), key=lambda s: (len(s), s)):
        _emit(" ".join(names))
    return EXIT_OK


def cmd_reduce_cnf(args) -> int:
    cnf = parse_dimacs(_read(args.path))
    circuit, ys = cnf_to_obdd_chain(cnf)
    if args.solve:
        t = restricted_implicant_exists(circuit, ys, cap=args.cap)
        _emit("no implicant" if t is None else f"implicant {t}")
    else:
        sys.stdout.write(print_circuit(circuit))
    return EXIT_OK


def cmd_count(args) -> int:
    c = _circuit(args)
    _emit(str(count_models(c)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.random is not None:
        sys.stdout.write(print_circuit(random_circuit(args.seed, args.random, args.max_nodes)))
        return EXIT_OK
    if args.path is None:
        raise _Fail(EXIT_INPUT, "oracle needs a circuit path or --random")
    c = _circuit(args)
    tt = tt_of_circuit(c)
    if args.models:
        for a in tt.models():
            _emit(str(a))
    else:
        for t in tt_prime_implicants(tt):
            _emit(str(t))
    return EXIT_OK


def cmd_bench(args) -> int:
    circuit = reduce(FAMILIES[args.family](args.n))
    _emit(f"family={args.family}")
    _emit(f"n={args.n}")
    _emit(f"k={args.k}")
    delays = []
    start = last = time.perf_counter()
    for _ in enumerate_ip(circuit, args.k):
        now = time.perf_counter()
        delays.append(now - last)
        last = now
    _emit(f"items={len(delays)}")
    if delays:
        _emit(f"total_s={last - start:.6f}")
        _emit(f"first_s={delays[0]:.6f}")
        _emit(f"median_s={statistics.median(delays):.6f}")
        _emit(f"max_s={max(delays):.6f}")
    return EXIT_OK


def _note(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="decpi", description="Prime implicants and explanations on dec-DNNF circuits.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--seed", type=int, default=0, help="seed for random generation")
    p.add_argument("--quiet", action="store_true", help="suppress diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def circuit_cmd(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("path", help="circuit file, or - for stdin")
        sp.add_argument("--format", choices=("native", "c2d"), default="native")
        sp.set_defaults(func=func)
        return sp

    circuit_cmd("check", cmd_check, "validate a circuit")

    sp = circuit_cmd("pi", cmd_pi, "prime implicants")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="every prime implicant (default)")
    group.add_argument("--limit", type=int, metavar="K", help="stop after K prime implicants")
    sp.add_argument("--mode", choices=("batch", "incremental"), default="batch")
    sp.add_argument("--verify", action="store_true", help="cross-check with the other mode")

    sp = circuit_cmd("sr", cmd_sr, "sufficient reasons for an instance")
    sp.add_argument("--instance", required=True, help="e.g. h=1,b=0,p=1")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="every sufficient reason (default)")
    group.add_argument("--one", action="store_true", help="one sufficient reason, greedily")
    sp.add_argument("--method", choices=("recursive", "filter"), default="recursive")

    sp = circuit_cmd("abduce", cmd_abduce, "smallest abductive explanation")
    sp.add_argument("--hyp", required=True, help="comma-separated hypothesis variables")
    sp.add_argument("--manifest", required=True, help="manifestation term, e.g. '-p s'")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)

    sp = sub.add_parser("transversals", help="minimal transversals of a hypergraph")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_transversals)

    sp = sub.add_parser("reduce-cnf", help="selector chain circuit of a DIMACS CNF")
    sp.add_argument("path")
    sp.add_argument("--solve", action="store_true",
                    help="search for an implicant over the CNF variables instead of printing")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.set_defaults(func=cmd_reduce_cnf)

    circuit_cmd("count", cmd_count, "model count over the declared variables")

    sp = sub.add_parser("oracle", help="truth-table ground truth")
    sp.add_argument("path", nargs="?")
    sp.add_argument("--format", choices=("native", "c2d"), default="native")
    sp.add_argument("--models", action="store_true", help="list models instead of prime implicants")
    sp.add_argument("--random", type=int, metavar="NVARS", help="print a random circuit (uses --seed)")
    sp.add_argument("--max-nodes", type=int, default=40)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="delay statistics of incremental enumeration")
    sp.add_argument("--family", choices=sorted(FAMILIES), default="gadget")
    sp.add_argument("--n", type=int, default=20)
    sp.add_argument("--k", type=int, default=100)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Fail as exc:
        _note(args, str(exc))
        return exc.code
    except InvalidCircuit as exc:
        _note(args, f"invalid circuit: {exc}")
        return EXIT_INVALID
    except UnsupportedQuery as exc:
        _note(args, f"refused: {exc}")
        return EXIT_REFUSED
    except OracleLimit as exc:
        _note(args, f"refused: {exc}")
        return EXIT_REFUSED
    except BrokenPipeError:
        return EXIT_OK
    except (FormatError, TermError, KeyError, OSError, ValueError) as exc:
        _note(args, f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
