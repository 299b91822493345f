"""Cartan data, positive roots, convex orders and Kostant partitions."""
from .cartan import CartanDatum, Root, root_str
from .kostant import (
    FalsificationError,
    KostantPartition,
    MinimalPair,
    act_on_word,
    bilex_le,
    bilex_lt,
    concatenated_words,
    kostant_partitions,
    lambda_equiv_witness,
    minimal_pairs,
    root_string_p,
)
from .orders import ConvexOrder, lexmin_longest_word, roots_from_word


def positive_roots(datum: CartanDatum):
    return list(datum.positive_roots)


def convex_order(datum: CartanDatum, word=None) -> ConvexOrder:
    return ConvexOrder.from_word(datum, word)


__all__ = [
    "CartanDatum", "ConvexOrder", "FalsificationError", "KostantPartition", "MinimalPair", "Root",
    "act_on_word", "bilex_le", "bilex_lt", "concatenated_words", "convex_order", "kostant_partitions",
    "lambda_equiv_witness", "lexmin_longest_word", "minimal_pairs", "positive_roots", "root_str",
    "root_string_p", "roots_from_word",
]
