"""Commutator length of powers of [a,t] in free products of two cyclic groups.

The modules build on one another:

* :mod:`commlen.fpword`: words in Z_N * Z_M and their normal forms;
* :mod:`commlen.surfmap`: labelled maps on closed oriented surfaces;
* :mod:`commlen.stripdiag`: the rectangle presentation, base strips and compositions;
* :mod:`commlen.builder`: one-face diagrams for [a,t]^n;
* :mod:`commlen.decomp`: extraction of commutators, the planner and diagram search;
* :mod:`commlen.cli`: the ``commlen`` command.
"""
from .builder import build_diagram, k_hat
from .decomp import Decomposition, decompose, extract_commutators, odd_power_free, search_diagrams
from .fpword import FREE, INF, GroupCtx, Word, at_power, parse

__version__ = "0.1.0"

__all__ = [
    "FREE", "INF", "GroupCtx", "Word", "at_power", "parse",
    "build_diagram", "k_hat",
    "Decomposition", "decompose", "extract_commutators", "odd_power_free", "search_diagrams",
]
