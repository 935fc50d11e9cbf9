"""Exact desk-scale toolkit for frequent elements in union-closed set families.

Core objects: bitmask set families with rational frequencies (`family`),
the named extremal constructions (`constructions`), entropy machinery and
size bounds (`entropy`), minimal good-set certificates (`good_sets`), and
exhaustive/randomized verification (`verifier`).  `cli` wires everything to
a command line; `formats` defines the family text/JSON interchange formats.
"""

from .constructions import NearKCubeSpec, direct_sum, nagel_example, near_k_cube, power_cube
from .entropy import (ALPHA_THRESHOLD, BoundReport, UnionEntropyReport,
                      below_alpha_threshold, binary_entropy,
                      check_union_entropy_inequality,
                      conditional_entropy_given_projection,
                      distribution_of_uniform, entropy, lambda_alpha,
                      projection_distribution, refined_size_bound,
                      simple_size_bound, union_distribution)
from .family import (MAX_GROUND_SET_SIZE, Projection, SetFamily, SetMask,
                     canonical_form, elements_of, frequencies, frequency,
                     frequency_order, is_union_closed, kth_frequency, mask_of,
                     normalize_with_empty, preimage_sizes, project_away_top,
                     projected_frequency_bound, relabel, support, union_closure)
from .formats import (FamilyParseError, family_from_json_obj, family_from_string,
                      family_from_text, family_to_json_obj, family_to_text,
                      load_family)
from .good_sets import (GoodSetCertificate, is_k_good, knill_lower_bound,
                        minimal_k_good, restricted_family, verify_union_injection)
from .verifier import (NagelCheck, RangeTag, SweepReport, SweepViolation,
                       check_nagel, classify_range, enumerate_union_closed,
                       full_coverage_check, nagel_threshold,
                       random_union_closed, sweep)

__version__ = "0.1.0"
