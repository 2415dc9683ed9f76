"""Parallel Louvain community detection that never returns internally-disconnected communities."""

from .graph import (
    Graph,
    GraphFormatError,
    is_symmetric,
    load_edgelist,
    load_graph,
    load_matrix_market,
    vertex_weights,
    write_edgelist,
)
from .louvain import (
    LouvainParams,
    PassSnapshot,
    ScanAccumulator,
    louvain,
    louvain_aggregate,
    louvain_move,
    lookup_dendrogram,
    renumber_communities,
    scan_communities,
)
from .quality import (
    CHUNK_SIZE,
    MembershipError,
    community_sizes,
    count_communities,
    delta_modularity,
    disconnected_communities,
    disconnected_fraction,
    modularity,
    read_membership,
    write_membership,
)
from .report import DetectionReport, PassRecord
from .split import (
    SplitConfig,
    SplitMode,
    SplitTechnique,
    canonicalize_partition,
    split_disconnected,
    split_disconnected_bfs,
    split_disconnected_lp,
)

__version__ = "0.1.0"
