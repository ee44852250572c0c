"""Goal translation to SMT-LIB and step-by-step checking of refutation proofs."""

from .checker import CheckReport, check_files, check_proof, exit_code
from .errors import *  # noqa: F401,F403
from .goals import Goal, negate_conclusion, parse_goal, preprocess, translate
from .poly import certify_poly_eq, denote, to_poly
from .proof import ProofDag, ProofStep, parse_proof, print_proof
from .rules import RULES, check_resolution, check_mult_tangent, check_sum_ub, check_step
from .smtlib import Script, parse_script, parse_term, print_script
from .terms import Sort, Term, flatten_or, rat_arith, rebuild_or, well_sorted

__version__ = "0.1.0"
