"""Formal eps-series, Weyl words, contractions, Todd determinant and supertrace."""

from .clifford import CliffordElement, pi_element, supertrace, top_reversed
from .series import EpsSeries
from .todd import ToddReport, todd_series, verify_todd
from .weyl import WeylWord, contract, contract_word, duhamel_exp, naive_exp

__all__ = ["CliffordElement", "EpsSeries", "ToddReport", "WeylWord", "contract",
           "contract_word", "duhamel_exp", "naive_exp", "pi_element", "supertrace",
           "todd_series", "top_reversed", "verify_todd"]
