"""Graph size estimation from node samples.

Estimate the number of nodes N of a partially observed undirected graph
from uniform, weighted, or random-walk node samples, using collision-count
(NODE) and induced-edge (IND) estimators with random-walk dependence
correction (thinning and margin filtering).
"""

from .core import (AuxiliarySet, EstimateOutcome, EstimatorError,
                   NO_COLLISIONS, RatioEstimate, aggregate_mean,
                   aggregate_ratios, build_auxiliary, count_collisions,
                   count_cross_collisions, count_induced_edges, count_unique,
                   pairwise_inverse_weight_sum)
from .graph import (Graph, GraphError, GraphStats, LoadReport, exact_stats,
                    largest_connected_component, load_edge_list,
                    size_identity, write_edge_list)
from .ind_estimators import (density_uis, density_wis, inda_uis, inda_wis,
                             indb_auto, indb_uis, indb_wis, mean_degree_uis,
                             mean_degree_wis)
from .node_estimators import (MleSolverConfig, capture_recapture,
                              capture_recapture_from_sample, mle_unique_approx,
                              mle_unique_exact, node_uis, node_wis)
from .rw_correction import (MarginConfig, ThinningConfig, estimate_thinned,
                            ind_margin, margin_crosswalker, node_margin,
                            surviving_pair_count, thin_shifted, thin_simple)
from .sampling import (Sample, SampleRecord, SamplingError, read_sample,
                       sample_rw, sample_rw_multi, sample_uis, sample_wis,
                       write_sample)
from .star import (StarAggregates, star_aggregates, star_estimate,
                   star_ncol_wis)

__version__ = "0.1.0"
