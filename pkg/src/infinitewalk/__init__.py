"""Node embeddings from the infinite-window random-walk PMI matrix.

The pipeline: load a graph, eigendecompose its symmetrized transition
matrix, build the limiting PMI matrix from the Laplacian pseudoinverse,
apply a ramp-log nonlinearity, factorize, and evaluate with multi-label
classification.
"""

from .graph import (
    Bipartite,
    Disconnected,
    Graph,
    GraphError,
    IsolatedNode,
    LabeledDataset,
    WalkabilityError,
    build_graph,
    largest_connected_component,
    load_edge_list,
    load_label_sets,
    load_labels,
    validate_walkable,
)
from .spectral import (
    SpectralCache,
    SpectralError,
    eigendecompose,
    fiedler_value,
    normalized_laplacian_pinv,
    spectral_cache,
    sym_transition,
    unnormalized_laplacian_pinv,
)
from .pmi import (
    ErrorReport,
    LimitMatrix,
    PmiConfig,
    PmiMatrix,
    WalkConfig,
    approx_error_report,
    empirical_pmi,
    pmi_approx,
    pmi_closed_form,
    pmi_exact,
    pmi_limit,
    pmi_limit_rank3,
)
from .embed import (
    BinaryMatrix,
    EmbedConfig,
    Embedding,
    binarize_lpinv,
    embed,
    factorize,
)
from .evaluation import (
    EvalConfig,
    EvalReport,
    OvrClassifier,
    evaluate_sweep,
    f1_scores,
    predict_top_k,
    train_logreg_ovr,
)

__all__ = [name for name in dir() if not name.startswith("_")]
