"""Symbolic game-algebra engine.

Generators of the algebra of a synchronous game are indexed by
``gid = question * k + answer`` (question-major, so each question's
projection family occupies a contiguous id range).
"""

from .poly import GeneratorId, NCPoly, gen_id, gen_label, format_poly
from .presentation import Closure, Presentation, presentation_of, saturate
from .reduce import reduce_poly, ReduceConfig
from .maps import GeneratorMap, apply_map, builtin_maps, identity_map
from .verify import Check, Report, verify_hom, verify_mutual_inverse
from .detreps import CertLog, DetRepResult, check_in_deterministic_reps, replay_certificates
from .lemmas import projection_lemma_suite

__all__ = [
    "GeneratorId",
    "NCPoly",
    "gen_id",
    "gen_label",
    "format_poly",
    "Presentation",
    "Closure",
    "presentation_of",
    "saturate",
    "reduce_poly",
    "ReduceConfig",
    "GeneratorMap",
    "identity_map",
    "builtin_maps",
    "apply_map",
    "Check",
    "Report",
    "verify_hom",
    "verify_mutual_inverse",
    "CertLog",
    "DetRepResult",
    "check_in_deterministic_reps",
    "replay_certificates",
    "projection_lemma_suite",
]
