"""Deciding whether one edge contraction lowers the domination number."""

from contractdom.domination import (
    DominationResult,
    enumerate_min_ds,
    gamma,
    gamma_forced,
    has_nonstable_min_ds,
    private_neighbours,
)
from contractdom.graph import (
    Graph,
    GraphError,
    contract_edge,
    distances,
    from_edge_list,
    is_clique,
    is_connected,
    is_dominating,
    is_stable,
    parse_edge_list,
)
from contractdom.oracle import Decision, crosscheck, decide_bruteforce, decide_characterization
from contractdom.polyalgo import decide_driver, decide_structural
from contractdom.structure import PatternSpec, find_induced, is_free, structural_context

__version__ = "0.1.0"
