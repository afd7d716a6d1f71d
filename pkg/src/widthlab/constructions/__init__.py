"""Decomposition-transforming constructions and the witness families."""
from .product import embedding_from_partition, partition_from_embedding, product_to_layered
from .separator import (SeparatorGraphMeta, Witness, build_separator_graph, copy_count,
                        find_respecting_model, separator_graph_size, separator_layered_decomposition,
                        separator_layering, separator_tree_decomposition, witness, witness_parameters)
from .subdivision import chordal_layer_colouring, contract_layered_decomposition, ltw1_subdivision
from .trees import find_tree_in_host, tree_host_degree, verify_tree_embedding

__all__ = [
    "embedding_from_partition", "partition_from_embedding", "product_to_layered", "SeparatorGraphMeta",
    "Witness", "build_separator_graph", "copy_count", "find_respecting_model", "separator_graph_size",
    "separator_layered_decomposition", "separator_layering", "separator_tree_decomposition", "witness",
    "witness_parameters", "chordal_layer_colouring", "contract_layered_decomposition", "ltw1_subdivision",
    "find_tree_in_host", "tree_host_degree", "verify_tree_embedding",
]
