"""Semântica coletora exata sobre o domínio finito ℤ_B."""

from services.semantics.collecting import (
    bwsem,
    diverging_states,
    fwsem,
    is_terminating,
    unreachable_states,
)
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import eval_aexp, eval_bexp, states_satisfying
from services.semantics.relation import StateRelation, is_deterministic, semantics_relation

__all__ = [
    "DomainConfig",
    "StateRelation",
    "StateSet",
    "bwsem",
    "diverging_states",
    "eval_aexp",
    "eval_bexp",
    "fwsem",
    "is_deterministic",
    "is_terminating",
    "semantics_relation",
    "states_satisfying",
    "unreachable_states",
]
