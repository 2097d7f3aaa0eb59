"""
Validade de triplas de Separation SIL por enumeração.

⟨p⟩ r ⟨q⟩ vale sse todo estado de ⟦p⟧ tem algum sucessor diferente de
`err` em ⟦q⟧. A enumeração cobre as variáveis do programa e as livres nas
duas fórmulas.
"""

from __future__ import annotations

import logging

from services.sepsil.asl import Asl, asl_free_vars
from services.sepsil.heap_semantics import successors
from services.sepsil.model import ERR, HeapState, SepDomainConfig, format_state
from services.sepsil.models import SepVerdict, SepWitness
from services.sepsil.satisfaction import holds
from services.syntax.ast import Command
from services.syntax.variables import free_vars, mod_vars

logger = logging.getLogger(__name__)

WITNESS_SUCCESSORS = 4


def validity_config(p: Asl, r: Command, q: Asl, config: SepDomainConfig) -> SepDomainConfig:
    return config.with_vars(free_vars(r) | asl_free_vars(p) | asl_free_vars(q))


def check_sep_validity(p: Asl, r: Command, q: Asl, config: SepDomainConfig) -> SepVerdict:
    scope = validity_config(p, r, q, config)
    scope.check_budget()
    logger.info("validade sep sobre %d estados (%s)", scope.size, ", ".join(scope.vars))
    checked = 0
    for state in scope.states():
        if not holds(p, state, scope):
            continue
        checked += 1
        reached = successors(r, state, scope)
        if any(holds(q, successor, scope) for successor in reached):
            continue
        shown = sorted(format_state(successor, scope) for successor in reached)[:WITNESS_SUCCESSORS]
        return SepVerdict(
            valid=False,
            witness=SepWitness(
                state=format_state(state, scope),
                successors=shown,
                role="estado de p sem sucessor em q" if reached else "estado de p sem sucessor algum",
            ),
            states_checked=checked,
            locations=scope.locations,
            int_range=(scope.int_min, scope.int_max),
        )
    return SepVerdict(
        valid=True, states_checked=checked, locations=scope.locations, int_range=(scope.int_min, scope.int_max)
    )


def store_mod_agreement(r: Command, state: HeapState, config: SepDomainConfig) -> bool:
    """Sucessores não-`err` só diferem do store inicial em `mod(r)`."""
    scope = config.with_vars(free_vars(r))
    if scope != config:
        raise ValueError("o estado precisa cobrir as variáveis livres do comando")
    modified = mod_vars(r)
    kept = [index for index, name in enumerate(config.vars) if name not in modified]
    for successor in successors(r, state, config):
        if successor is ERR:
            continue
        if any(successor.store[index] != state.store[index] for index in kept):
            return False
    return True
