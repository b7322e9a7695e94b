"""cwkit: unit interval graphs, canonical graphs H_{n,m} and clique-width expressions."""

from .canonical import (CanonicalGraphSpec, CellEmbedding, Check, cell_id, generate_H, generate_h,
                        row_layers, verify_embedding)
from .cochain import CoChain, CoChainError, ClusterPartition, check_cochain, clusters, embed_cochain
from .decomposition import (ClusterGraph, TwinMap, WindowSplit, augment_trivial, build_BG,
                            collapse_twins, decompose, expand_twins, forbidden_to_k, free_corpus,
                            max_disjoint_paths, min_separator, split_window, synthesize, width_bound,
                            xy_split)
from .embedding import embed_layered, embed_universal
from .errors import (CwkitError, NotUnitIntervalError, ParseError, PreconditionError, SizeCapError,
                     VerificationError)
from .expr import (Create, CwExpr, Join, LabeledGraph, PartScheme, Relabel, Union, compose_partition,
                   evaluate, parse, path_expression, render, restrict, width)
from .graph import (Graph, connected_components, find_induced_copy, find_nontrivial_module,
                    format_graph, induced_subgraph, is_isomorphic, mu, parse_graph,
                    similarity_classes)
from .oracle import oracle_cliquewidth, unit_interval_model_oracle
from .uig import (CanonicalPartition, IntervalModel, build_model, canonical_partition,
                  graph_from_model, h_expression, random_uig, verify_canonical)

__version__ = "0.1.0"
