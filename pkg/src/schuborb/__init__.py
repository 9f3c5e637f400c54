"""schuborb: exact combinatorics of Schubert cell posets, Borel orbit fibers,
and the quiver algebras attached to them."""

__version__ = "0.1.0"

from .halfint import HalfInt, half, edge_sign
from .partitions import (Box, Partition, PhiProfile, phi, phi_profile,
                         partition_from_phi, enumerate_box, cell_dim)
from .pairs import (LambdaPair, PairForest, Diamond, lambda_pairs,
                    lambda_pairs_d, pair_forest, apply_move, arrows_from,
                    complete_diamond)

__all__ = [
    "HalfInt", "half", "edge_sign",
    "Box", "Partition", "PhiProfile", "phi", "phi_profile",
    "partition_from_phi", "enumerate_box", "cell_dim",
    "LambdaPair", "PairForest", "Diamond", "lambda_pairs", "lambda_pairs_d",
    "pair_forest", "apply_move", "arrows_from", "complete_diamond",
    "__version__",
]
