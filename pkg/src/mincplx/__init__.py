"""Random simplicial complexes: topological minor search, 3-cycle filling,
and surface-triangulation counting."""

from .complex_core import (CheckResult, DiskFilling, GeneralComplex, KComplex,
                           MinorWitness, ParseError, contains_face,
                           deserialize_complex, link, make_complete_complex,
                           serialize_complex, verify_disk_filling,
                           verify_minor_witness)
from .link_graphs import (Component, Graph, common_link_graph, induced_subgraph,
                          largest_component, shortest_path)
from .minor_finder import (EventReport, FinderConfig, VertexPartition,
                           build_filling, check_events, default_delta,
                           find_branch_tuple, find_topological_minor,
                           partition_vertices, preset_c)
from .pi1_filler import (CycleFilling, FillabilityReport, GoodSetReport,
                         all_three_cycles_fillable, fill_three_cycle, good_set)
from .random_gen import (RandomParams, derive_trial_seed, p_from_c,
                         sample_complex, sample_graph)
from .surface_census import (BoundParams, SurfaceCheckResult,
                             enumerate_sphere_triangulations, euler_face_count,
                             load_genus2_fixture, surface_check,
                             union_bound_closed_form, union_bound_direct_sum)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
