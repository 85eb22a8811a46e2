"""Workbench for residuated chains with consistency and inconsistency
operators: exact chain algebra, operator validation and enumeration,
truth- and degree-preserving countermodel search, and Hilbert-style proof
checking."""

from .chain import (Component, FiniteChain, NSet, StandardChain,
                    builtin_chains, quotient_by_filter, upward_filter,
                    validate_mtl_laws)
from .formula import (Formula, Schema, match_schema, normalize, parse, power,
                      render, schema, substitute)
from .hilbert import (ChainProfileMismatch, parse_proof, soundness_bridge,
                      verify_proof)
from .operators import (ConsistencyOp, InconsistencyOp, crisp_op, dual,
                        enumerate_ops, max_op, min_op, op_from_delta,
                        delta_from_op, piecewise_op, table_op,
                        validate_algebraic, validate_bullet, validate_c)
from .profiles import LogicProfile, load_profile, profile_names
from .semantics import (ChainModel, Evaluation, bridge_check, check_dat_axiom,
                        check_lfi, check_propagation, classical_taut,
                        degree_consequence, evaluate, pdat_search,
                        truth_consequence)
from .suite import run_suite

__version__ = "0.1.0"
