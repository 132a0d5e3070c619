"""Sparse quantum state preparation: synthesis, verification, benchmarks."""

from .batch import (BatchParams, EliminationPlan, choose_params,
                    plan_elimination, synth_be)
from .bench import (BenchRow, BudgetError, bench_sparse, bench_u1,
                    random_sparse_state, write_csv)
from .bits import hamming_distance, hamming_weight, path_length
from .circuit import (CCX, CSPL, CX, MCX, SPL, Circuit, Gate, X, circuit,
                      load_circuit, parse_circuit, save_circuit, spl_matrix)
from .cvo import gamma_schedule, synth_cvo
from .decompose import (ELEMENTARY, HIGH_LEVEL, CostModel, GateCounts,
                        WorkQubitError, count_gates, decompose_mcx,
                        decompose_toffoli, gate_census, tally_gates)
from .hampath import (PathBudgetError, PathResult, constant_weight_path,
                      constant_weight_strings, greedy_path, optimal_path)
from .lazytree import TreeLayout, build_layout, synth_lt
from .simulator import (PreparationError, SimState, apply, assert_prepares,
                        basis_state, initial_state, run, verify_preparation)
from .state import (FormatError, SparseState, load_state, parse_state,
                    save_state, sparse_state, uniform_state)

__version__ = "0.1.0"
