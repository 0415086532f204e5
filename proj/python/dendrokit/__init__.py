"""Exact computations on finite dendrites and group actions."""

from ._dendrokit import (
    InputError,
    Tree,
    find_free_pair,
    orbit_count,
    proximality,
    reduce_word,
    wazewski,
)

__all__ = [
    "InputError",
    "Tree",
    "find_free_pair",
    "orbit_count",
    "proximality",
    "reduce_word",
    "wazewski",
]
