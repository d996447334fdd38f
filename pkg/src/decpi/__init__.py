"""Prime implicant enumeration and explanations on decision-DNNF circuits."""

from .batch import ip_all
from .core import (
    Circuit, CircuitBuilder, CircuitError, InvalidCircuit, UnsupportedQuery, binarize, condition,
    count_models, evaluate, is_implicant, is_prime_implicant, is_satisfiable, negate, reduce,
    validate,
)
from .explain import (
    AbductionInstance, CapExceeded, SRQuery, abduction_exists, cnf_to_obdd_chain,
    decision_tree_from_models, hypergraph_to_circuit, min_transversals_via_sr,
    restricted_implicant_exists, sr_all, sr_greedy,
)
from .formats import (
    CNF, FormatError, Hypergraph, import_c2d_nnf, parse_assignment, parse_circuit, parse_dimacs,
    parse_hypergraph, parse_term, print_circuit,
)
from .incremental import another_ip, enumerate_ip, generate_ip, missing_ip, propagate
from .terms import Assignment, Literal, Term, TermSet

__version__ = "0.1.0"
