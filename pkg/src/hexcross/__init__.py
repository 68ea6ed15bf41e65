"""hexcross: crossing probabilities for a dilute spin model on the
triangular/hexagonal lattice.

Exact enumeration with inequality checks (FKG, boundary-condition
comparison, spatial Markov, crossing complementarity), a heat-bath /
cluster MCMC sampler, and size-scaling probes for phase classification.
"""

__version__ = "0.1.0"

from .errors import ConfigurationError, EnumerationCapError
from .hexlat import (Face, HexDomain, build_annulus, build_hex_box,
                     build_regular_hexagon, build_strip, custom_domain,
                     dual_edges, partition_arc, union_domain)
from .model import (BoundaryCondition, DiluteParams, DilutePottsConfig,
                    LoopConfig, ModelParams, SiteGraph, SpinConfig,
                    affine_crossing_bound, dilute_potts_log_weight,
                    loop_count, loop_count_cycle_space, loop_log_weight,
                    nienhuis_critical_x, spin_log_weight, spins_to_loops)
from .crossing import (CrossingEvent, UnionFind, canonical_increasing_events,
                       center_to_boundary, chain_event, component_volumes,
                       connected, connectivity_event, face_event,
                       horizontal_crossing, six_arm_events,
                       vertical_blocking, vertical_crossing)
from .exact import (CheckValue, EventPredicate, check_arm_union_bound,
                    check_cbc, check_cbc_factor, check_complementarity,
                    check_fkg, check_smp, clear_caches, enumerate_stats,
                    event_probabilities, event_probability,
                    partition_function_log)
from .sampler import (Estimate, Schedule, estimate_event, estimate_events,
                      estimate_observable, heatbath_sweep, run_chain,
                      wolff_step)
from .density import (DensityCurve, PhaseVerdict, REFERENCE_GRID,
                      annulus_volume_tail, check_renorm_inequality,
                      check_strip_inequality, classify_phase,
                      escape_failure_probe, point_to_boundary_probe,
                      push_disjunction, push_probe, strip_density)

__all__ = [
    "__version__",
    "ConfigurationError", "EnumerationCapError",
    "Face", "HexDomain", "build_annulus", "build_hex_box",
    "build_regular_hexagon", "build_strip", "custom_domain", "dual_edges",
    "partition_arc", "union_domain",
    "BoundaryCondition", "DiluteParams", "DilutePottsConfig", "LoopConfig",
    "ModelParams", "SiteGraph", "SpinConfig", "affine_crossing_bound",
    "dilute_potts_log_weight", "loop_count", "loop_count_cycle_space",
    "loop_log_weight", "nienhuis_critical_x", "spin_log_weight",
    "spins_to_loops",
    "CrossingEvent", "UnionFind", "canonical_increasing_events",
    "center_to_boundary", "chain_event", "component_volumes", "connected",
    "connectivity_event", "face_event", "horizontal_crossing",
    "six_arm_events", "vertical_blocking", "vertical_crossing",
    "CheckValue", "EventPredicate", "check_arm_union_bound", "check_cbc",
    "check_cbc_factor", "check_complementarity", "check_fkg", "check_smp",
    "clear_caches", "enumerate_stats", "event_probabilities",
    "event_probability", "partition_function_log",
    "Estimate", "Schedule", "estimate_event", "estimate_events",
    "estimate_observable", "heatbath_sweep", "run_chain", "wolff_step",
    "DensityCurve", "PhaseVerdict", "REFERENCE_GRID",
    "annulus_volume_tail", "check_renorm_inequality",
    "check_strip_inequality", "classify_phase", "escape_failure_probe",
    "point_to_boundary_probe", "push_disjunction", "push_probe",
    "strip_density",
]
