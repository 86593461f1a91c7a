"""Fuzzy Turing machine workbench: degree algebra, machine model, simulation
engine, brute-force oracle, constructions and the ``.ftm`` file format."""

from .constructions import (LiftParams, lift_core, lift_loop_catcher, lift_re,
                            swap_roles, union_conorm)
from .degrees import GOEDEL, LUKASIEWICZ, PRODUCT, DegreeAlgebra, TNorm
from .engine import (Configuration, RunReport, SearchBudget, Status,
                     indeterminacy_degree, level_bound, run, successors)
from .ftmfile import ParseError, load, parse, serialize
from .machine import (MachineError, MachineKind, MachineSpec, Move, StateKind,
                      Transition, is_classical, validate)
from .oracle import enumerate_paths, oracle_degrees
from .report import report_emit

__all__ = [
    "Configuration", "DegreeAlgebra", "GOEDEL", "LUKASIEWICZ", "LiftParams",
    "MachineError", "MachineKind", "MachineSpec", "Move", "PRODUCT", "ParseError",
    "RunReport", "SearchBudget", "StateKind", "Status", "TNorm", "Transition",
    "enumerate_paths", "indeterminacy_degree", "is_classical", "level_bound",
    "lift_core", "lift_loop_catcher", "lift_re", "load", "oracle_degrees", "parse",
    "report_emit", "run", "serialize", "successors", "swap_roles", "union_conorm",
    "validate",
]
