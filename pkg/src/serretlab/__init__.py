"""serret-lab: exact analysis of slow continued fraction algorithms.

Given a finite unimodular partition of [0, oo] with a branch orientation
per cell, this package builds the associated interval map, its labelled
graph and Schreier quotient, the canonical and commutator transducers, and
decides (or refutes, with exact witnesses) the tail property named after
Serret, plus synchronizability of the underlying automaton.
"""

from .algebra import (F, IDENTITY, L, N, R, S, EmptyWordError, GenWord,
                      NotNonnegativeError, ProjMatrix, conjugacy_of_periodic,
                      eval_word, generic_factor, mobius_apply, monoid_factor,
                      parse_word)
from .algorithm import (AlgorithmError, BadDeterminantError, FirstReturn,
                        NegativeEntriesError, NotAPartitionError, SlowAlgorithm,
                        StepResult, TooFewBranchesError, UndefinedReturnError,
                        Window, WrongOrderError, validate, load_spec)
from .exact import (INF, ZERO, ExtRational, QuadIrr, UnimodInterval,
                    parse_value, squarefree_decompose)
from .expansion import (BoundExceededError, CensusReport, OrbitResult,
                        OrbitStatus, SigmaVerdict, UPWord, census,
                        ln_expansion, orbit, pi_value, rcf_expansion,
                        sigma_equivalent, tail_equivalent)
from .graph import (AlgGraph, Fingerprint, OpFibration, SchreierGraph,
                    build_graph, contains, export_dot, fingerprint,
                    schreier_quotient)
from .presets import BUNDLED, bundled_spec, load_bundled
from .transducer import (DefectReport, MarkedWord, SerretVerdict,
                         SerretWitness, StuckError, SyncResult, Transducer,
                         build_ft, defect, gt_transducer, root_component,
                         serret_check, sync_check, sync_sample)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
