"""Dual-normal disjunctive answer-set programs: solving, SAT encoding,
normal-program translation, SE/UE-model analysis and synthesis."""

from .common import BudgetExceededError, OracleBudget, ProgramClassError, SynthesisPreconditionError
from .core import Atom, AtomTable, Program, Rule, is_model, p_t_transform, reduct, satisfies, split
from .classify import ClassLabels, DepGraph, classify_labels, dep_graph, is_bcf, is_hcf, is_tight
from .dualhorn import (
    EliminationTrace,
    answer_sets_dn,
    elimination_fixpoint,
    is_answer_set_dn,
    max_model_dual_horn,
    pmm,
)
from .oracle import (
    answer_sets_bf,
    equivalent_as,
    is_answer_set,
    minimal_models,
    models,
    strongly_equivalent_bf,
    uniformly_equivalent_bf,
)
from .satenc import answer_sets_via_sat, build_f, enumerate_models, program_cnf, tseitin_cnf
from .seue import (
    SEPair,
    SEProperties,
    SESet,
    is_ue_model_dn,
    program_from_se_set,
    program_from_ue_set,
    se_closure,
    se_models,
    se_properties,
    se_satisfies,
    ue_models,
    uniformly_equivalent_dn,
)
from .reductions import Cnf3, Qbf2E, is_complexity_sensitive, qbf_eval, qbf_to_program, unsat_to_singular
from .textio import ParseError, SourceSpan, parse_program, parse_se_set, render_program, render_se_set, write_dimacs
from .transform import build_px, check_trans2, check_trans3, decode_as, mp_of, translate, translate_star

__version__ = "0.1.0"
