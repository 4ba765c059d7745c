"""General-graph deciders for single-edge contraction blocking of domination."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from contractdom.domination import gamma_value, has_nonstable_min_ds, min_dominating_mask
from contractdom.graph import Edge, Graph, contract_edge, is_dominating, is_stable, require_connected

BRUTEFORCE = "bruteforce"
CHARACTERIZATION = "characterization"
STRUCTURAL = "structural"


@dataclass(frozen=True)
class Decision:
    """Yes/no answer with whatever witnesses the deciding method produced.

    ``provenance`` carries method-specific metadata (fired step, parameter
    used, bound, ...) and is what the CLI serialises.
    """

    answer: bool
    method: str
    witness_edge: Optional[Edge] = None
    witness_set: Optional[frozenset[int]] = None
    provenance: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def label(self) -> str:
        return "yes" if self.answer else "no"

    def to_dict(self) -> dict[str, Any]:
        return {
            "method": self.method,
            "answer": self.label,
            "witness_edge": list(self.witness_edge) if self.witness_edge else None,
            "witness_set": sorted(self.witness_set) if self.witness_set is not None else None,
            **self.provenance,
        }


def decide_bruteforce(g: Graph) -> Decision:
    """Contract every edge and compare domination numbers.

    The witness is the lexicographically smallest edge whose contraction
    lowers the domination number.
    """
    require_connected(g)
    if g.m == 0:
        return Decision(False, BRUTEFORCE, provenance={"gamma": 1 if g.n else 0})
    base = gamma_value(g)
    if base > 1:
        for e in g.edges:
            # gamma(G/e) >= gamma(G) - 1, so a capped solve suffices.
            if min_dominating_mask(contract_edge(g, e), 0, None, base - 1) is not None:
                return Decision(True, BRUTEFORCE, witness_edge=e, provenance={"gamma": base})
    return Decision(False, BRUTEFORCE, provenance={"gamma": base})


def decide_characterization(g: Graph) -> Decision:
    """Yes iff some minimum dominating set contains an edge."""
    require_connected(g)
    hit = has_nonstable_min_ds(g)
    if hit is None:
        return Decision(False, CHARACTERIZATION)
    edge, witness = hit
    return Decision(True, CHARACTERIZATION, witness_edge=edge, witness_set=witness,
                    provenance={"gamma": len(witness)})


def validate_decision(g: Graph, d: Decision) -> bool:
    """Re-check a yes-witness from first principles; no-answers pass trivially."""
    if not d.answer or d.witness_edge is None:
        return True
    u, v = d.witness_edge
    if not g.has_edge(u, v):
        return False
    base = gamma_value(g)
    if d.witness_set is not None:
        s = d.witness_set
        return len(s) == base and is_dominating(g, s) and u in s and v in s and not is_stable(g, s)
    return gamma_value(contract_edge(g, (u, v))) == base - 1


@dataclass(frozen=True)
class CrosscheckReport:
    agree: bool
    bruteforce: Decision
    characterization: Decision

    def to_dict(self) -> dict[str, Any]:
        return {
            "agree": self.agree,
            "bruteforce": self.bruteforce.to_dict(),
            "characterization": self.characterization.to_dict(),
        }


def crosscheck(g: Graph) -> CrosscheckReport:
    bf = decide_bruteforce(g)
    ch = decide_characterization(g)
    return CrosscheckReport(bf.answer == ch.answer, bf, ch)
