"""Implicative lattices, their canonical two-sorted frames and the
satisfaction/refutation semantics over those frames."""

from .frame import (ComplexAlgebra, ImplicativeFrame, check_distributivity, check_frame_axioms,
                    check_heyting_frame, check_residuation, derive_relations, full_complex_algebra,
                    implication_facts)
from .lattice import (FiniteLattice, ResiduatedTriple, check_An, check_distributive, check_heyting,
                      check_implicative, check_residuated_triple, enumerate_filters, enumerate_ideals,
                      validate_lattice)
from .polarity import Polarity, StableFamily, enumerate_stable, polarity_facts
from .report import Check, Report, VerificationFailure
from .representation import (CanonicalFrame, canonical_frame, reduct_report, rep_X, rep_Y,
                             stable_lattices_isomorphic, verify_basis, verify_heyting_canonical,
                             verify_implicative_rep, verify_lattice_rep, verify_upper_bound)
from .semantics import (Model, check_clause_equivalences, entails, interpret, parse_formula,
                        satisfies, refutes, to_text, validity)

__all__ = [
    "CanonicalFrame", "Check", "ComplexAlgebra", "FiniteLattice", "ImplicativeFrame", "Model",
    "Polarity", "Report", "ResiduatedTriple", "StableFamily", "VerificationFailure",
    "canonical_frame", "check_An", "check_clause_equivalences", "check_distributive",
    "check_distributivity", "check_frame_axioms", "check_heyting", "check_heyting_frame",
    "check_implicative", "check_residuated_triple", "check_residuation", "derive_relations",
    "entails", "enumerate_filters", "enumerate_ideals", "enumerate_stable", "full_complex_algebra",
    "implication_facts", "interpret", "parse_formula", "polarity_facts", "reduct_report",
    "refutes", "rep_X", "rep_Y", "satisfies", "stable_lattices_isomorphic", "to_text", "validate_lattice",
    "validity", "verify_basis", "verify_heyting_canonical", "verify_implicative_rep",
    "verify_lattice_rep", "verify_upper_bound",
]
