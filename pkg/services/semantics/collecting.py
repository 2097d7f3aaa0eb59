"""
Semântica coletora exata, para frente e para trás.

Atribuições viram um vetor de índices destino (`alvo[σ]` é o índice de
`σ[x ↦ ⟦a⟧σ]`); a semântica direta espalha a máscara por esse vetor e a
reversa a recolhe. A estrela é o menor ponto fixo de `X ↦ S ∪ passo(X)`,
alcançado em no máximo |Σ| rodadas.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np

from services.errors import UnsupportedCommandError
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import aexp_values, bexp_mask
from services.syntax.ast import (
    AExp,
    Assign,
    Assume,
    Choice,
    Command,
    HEAP_ATOMICS,
    Havoc,
    Seq,
    Skip,
    Star,
)
from services.syntax.printer import pretty_print

logger = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def assign_targets(var: str, expr: AExp, config: DomainConfig) -> np.ndarray:
    base = np.arange(config.size, dtype=np.int64)
    delta = aexp_values(expr, config) - config.column(var)
    targets = base + delta * config.stride(var)
    targets.flags.writeable = False
    return targets


def _cylinder(mask: np.ndarray, var: str, config: DomainConfig) -> np.ndarray:
    """{σ | ∃v. σ[x ↦ v] ∈ S}: o mesmo para havoc direto e reverso."""
    grid = mask.reshape(config.shape)
    projected = grid.any(axis=config.axis(var), keepdims=True)
    return np.broadcast_to(projected, config.shape).reshape(-1).copy()


def _reject_heap(r: Command) -> None:
    raise UnsupportedCommandError(
        f"comando de heap {pretty_print(r)!r} na semântica simples; use services.sepsil"
    )


def fwsem(r: Command, states: StateSet) -> StateSet:
    """⟦r⟧→ S: estados de saída alcançáveis a partir de S."""
    config = states.config
    if isinstance(r, Skip):
        return states
    if isinstance(r, Assign):
        out = np.zeros(config.size, dtype=np.bool_)
        out[assign_targets(r.var, r.expr, config)[states.mask]] = True
        return StateSet(config, out)
    if isinstance(r, Assume):
        return StateSet(config, states.mask & bexp_mask(r.cond, config))
    if isinstance(r, Havoc):
        return StateSet(config, _cylinder(states.mask, r.var, config))
    if isinstance(r, HEAP_ATOMICS):
        _reject_heap(r)
    if isinstance(r, Seq):
        return fwsem(r.second, fwsem(r.first, states))
    if isinstance(r, Choice):
        return fwsem(r.left, states) | fwsem(r.right, states)
    if isinstance(r, Star):
        return _fixpoint(lambda current: fwsem(r.body, current), states)
    raise TypeError(f"comando desconhecido: {r!r}")


def bwsem(r: Command, states: StateSet) -> StateSet:
    """⟦r⟧← Q: estados de entrada com alguma execução terminando em Q."""
    config = states.config
    if isinstance(r, Skip):
        return states
    if isinstance(r, Assign):
        return StateSet(config, states.mask[assign_targets(r.var, r.expr, config)])
    if isinstance(r, Assume):
        return StateSet(config, states.mask & bexp_mask(r.cond, config))
    if isinstance(r, Havoc):
        return StateSet(config, _cylinder(states.mask, r.var, config))
    if isinstance(r, HEAP_ATOMICS):
        _reject_heap(r)
    if isinstance(r, Seq):
        return bwsem(r.first, bwsem(r.second, states))
    if isinstance(r, Choice):
        return bwsem(r.left, states) | bwsem(r.right, states)
    if isinstance(r, Star):
        return _fixpoint(lambda current: bwsem(r.body, current), states)
    raise TypeError(f"comando desconhecido: {r!r}")


def _fixpoint(step, seed: StateSet) -> StateSet:
    current = seed
    rounds = 0
    while True:
        rounds += 1
        following = current | step(current)
        if following == current:
            logger.debug("ponto fixo em %d rodadas (|X|=%d)", rounds, len(current))
            return current
        current = following


def bwsem_power(r: Command, states: StateSet, times: int) -> StateSet:
    for _ in range(times):
        states = bwsem(r, states)
    return states


def diverging_states(r: Command, config: DomainConfig) -> StateSet:
    """D_r: estados sem nenhuma execução terminada, ¬⟦r⟧←Σ."""
    return ~bwsem(r, StateSet.full(config))


def unreachable_states(r: Command, config: DomainConfig) -> StateSet:
    """U_r = Σ \\ ⟦r⟧→Σ."""
    return ~fwsem(r, StateSet.full(config))


def is_terminating(r: Command, config: DomainConfig) -> bool:
    return diverging_states(r, config).is_empty()
