"""Exact and sampling-based higher-order motif counting in hypergraphs."""

__version__ = "0.1.0"

from .census import MotifCensus, count_baseline, count_exact, count_exact_3, count_exact_4, count_motifs
from .errors import ConfigError, EmptyHypergraphError, HypermotifError, InvariantError, ParseError
from .esu import esu, esu_anchored
from .hypergraph import (
    Hypergraph,
    ProjectedGraph,
    SubHypergraph,
    adjacent_hyperedges,
    induced_subhypergraph,
    is_connected,
    load_hyperedge_list,
    project,
)
from .patterns import Pattern, PatternTable, build_table, canonicalize, classify, enumerate_patterns
from .sampling import (
    EstimateCensus,
    SampleBudget,
    budget_search,
    correct,
    default_budget,
    enumerate_containing,
    sample_census,
)
from .significance import (
    NullCounts,
    SignificanceProfile,
    abundance_profile,
    configuration_sample,
    null_ensemble,
    profile_correlation_matrix,
    profile_metrics,
)
from .synthetic import GenSpec, generate
