"""Counterexamples to "Reimer's conditions imply abundance", with checkers and closures."""

from .closure import (ClosureResult, SweepRow, average_set_size_check, conjecture_formula,
                      knill_check, parametric_group_closure, sweep, theorem_checks,
                      union_closure)
from .construct import ConstructionParams, build_family, build_filter, member_set
from .core import ElementSet, PairedSystem, SetFamily, element_frequencies, is_subset, set_union
from .io import emit_report, emit_sf, parse_sf
from .verify import (check_abundance, check_filter, check_non_interference,
                     check_subset_condition, intervals_disjoint, intervals_disjoint_oracle,
                     structural_lints, verify_system)

__version__ = "0.1.0"
