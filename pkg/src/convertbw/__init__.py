"""Bandwidth of split-regime MDS convertible codes: models, bounds, and checks."""
from .bounds import BoundResult, bound_prior, bound_thm1, bound_thm2, bound_thm3, compare, lower_bound
from .code_model import CodeParams, ConvertiblePair, encode_final, encode_initial, random_mds_pair, validate_params
from .conversion import Converter, ReadPlan, check_feasible, convert, cost, derive_transform
from .ff_linalg import FFMatrix

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "CodeParams", "ConvertiblePair", "Converter", "FFMatrix", "ReadPlan",
    "bound_prior", "bound_thm1", "bound_thm2", "bound_thm3", "check_feasible", "compare",
    "convert", "cost", "derive_transform", "encode_final", "encode_initial", "lower_bound",
    "random_mds_pair", "validate_params",
]
