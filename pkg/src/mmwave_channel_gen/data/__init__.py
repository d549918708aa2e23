"""Dataset IO and the synthetic ground-truth oracle."""

from mmwave_channel_gen.data.dataset import (
    Dataset,
    SourceKind,
    SplitTag,
    export_csv,
    link_from_paths,
    load_conditions,
    load_dataset,
    record_to_link,
    save_conditions,
    save_dataset,
    split_train_test,
)
from mmwave_channel_gen.data.oracle import (
    OracleParams,
    oracle_generate,
    oracle_link,
    oracle_state_probs,
    sample_conditions,
)

__all__ = [
    "Dataset",
    "SourceKind",
    "SplitTag",
    "load_dataset",
    "load_conditions",
    "record_to_link",
    "link_from_paths",
    "save_dataset",
    "save_conditions",
    "export_csv",
    "split_train_test",
    "OracleParams",
    "oracle_state_probs",
    "oracle_link",
    "oracle_generate",
    "sample_conditions",
]
