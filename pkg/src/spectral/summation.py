"""Deterministic reductions.

All spectral sums go through these helpers so that the reduction shape depends
only on the input order, never on how the caller scheduled the work.
"""

from typing import Iterable, Union

import numpy as np

Number = Union[float, complex]


def tree_sum(values: Iterable[Number]) -> Number:
    """Pairwise (tree) sum of a finite sequence in input order.

    numpy's reduction over a contiguous 1-D array is a fixed pairwise tree, so
    the result is bit-identical for identical inputs.
    """
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if arr.size == 0:
        return 0.0
    if np.iscomplexobj(arr):
        return complex(np.sum(arr.astype(np.complex128).ravel()))
    return float(np.sum(arr.astype(np.float64).ravel()))


def weighted_sum(weights: np.ndarray, values: np.ndarray) -> float:
    """Tree sum of weights * values (both 1-D, same length)."""
    return tree_sum(np.asarray(weights, dtype=np.float64) * np.asarray(values, dtype=np.float64))
