"""Exact weight distributions of defining-set codes over F_p built from Kloosterman sums."""

from .codes import (
    CodeFamily,
    DefiningSet,
    WeightDistribution,
    build_defining_set,
    codeword,
    default_T,
    weight_distribution,
    weight_table_full,
)
from .cyclotomic import CycInt, compute_S, kloosterman, kloosterman_lift
from .field import Field, SubsetTables, build_subsets, find_v, make_field, uv_decompose
from .theory import predict_cd, predict_cd1, predict_cd2
from .transform import CountSpectrum, char_count_transform, naive_count

__version__ = "0.1.0"
