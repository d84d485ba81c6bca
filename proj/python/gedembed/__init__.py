"""Graph-level embeddings that preserve edit-distance proximity.

The surface mirrors the C++ library: synthesize or load graph corpora, label
pairs with exact or bounded edit distances, train the embedding model, and
evaluate rankings, classification, and 2D projections.
"""

from gedembed._core import (
    CheckReport,
    CheckResult,
    Checkpoint,
    Dataset,
    DatasetSplits,
    EvalReport,
    GedembedError,
    GedResult,
    GraphEmbedding,
    LabeledGraph,
    LabelVocab,
    LogRegConfig,
    LogRegModel,
    ModelConfig,
    ModelParams,
    PairRecord,
    PairTable,
    Projection,
    RankEval,
    RankedItem,
    Ranking,
    TrainConfig,
    TrainHistory,
    TrainHistoryEntry,
    TrainResult,
    build_label_vocab,
    classification_accuracy,
    embed_dataset,
    evaluate_rankings,
    ged,
    ground_truth_pairs,
    kendall_tau_b,
    load_checkpoint,
    load_dataset,
    load_embeddings_csv,
    load_pair_table,
    logreg_predict,
    logreg_train,
    nged,
    precision_at_k,
    predict_distance,
    predict_similarity,
    project_2d,
    save_checkpoint,
    save_dataset,
    save_embeddings_csv,
    save_pair_table,
    save_train_history,
    self_check,
    split_dataset,
    synth,
    train,
)

__all__ = [
    "CheckReport",
    "CheckResult",
    "Checkpoint",
    "Dataset",
    "DatasetSplits",
    "EvalReport",
    "GedembedError",
    "GedResult",
    "GraphEmbedding",
    "LabeledGraph",
    "LabelVocab",
    "LogRegConfig",
    "LogRegModel",
    "ModelConfig",
    "ModelParams",
    "PairRecord",
    "PairTable",
    "Projection",
    "RankEval",
    "RankedItem",
    "Ranking",
    "TrainConfig",
    "TrainHistory",
    "TrainHistoryEntry",
    "TrainResult",
    "build_label_vocab",
    "classification_accuracy",
    "embed_dataset",
    "evaluate_rankings",
    "ged",
    "ground_truth_pairs",
    "kendall_tau_b",
    "load_checkpoint",
    "load_dataset",
    "load_embeddings_csv",
    "load_pair_table",
    "logreg_predict",
    "logreg_train",
    "nged",
    "precision_at_k",
    "predict_distance",
    "predict_similarity",
    "project_2d",
    "save_checkpoint",
    "save_dataset",
    "save_embeddings_csv",
    "save_pair_table",
    "save_train_history",
    "self_check",
    "split_dataset",
    "synth",
    "train",
]

__version__ = "0.1.0"
