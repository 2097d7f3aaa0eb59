"""
Semântica coletora dos comandos com heap.

`err` é absorvente. `free`, `[x]` e `[x] := y` exigem que `s(x)` seja uma
localização cuja célula guarda um valor; qualquer outro caso (fora do
domínio, desalocada ou `s(x)` inteiro) leva a `err`.
"""

from __future__ import annotations

import logging
from typing import FrozenSet, Iterable, Set

from services.errors import UnsupportedCommandError
from services.sepsil.model import (
    ERR,
    CellMark,
    HeapState,
    Loc,
    SepDomainConfig,
    SepState,
    eval_sep_aexp,
    eval_sep_bexp,
    is_allocated,
    update_heap,
)
from services.syntax.ast import (
    Alloc,
    Assign,
    Assume,
    Choice,
    Command,
    Free,
    Havoc,
    Load,
    Seq,
    Skip,
    Star,
    Store,
)

logger = logging.getLogger(__name__)


def _cell_of(state: HeapState, name: str, config: SepDomainConfig):
    pointer = state.store[config.vars.index(name)]
    if not isinstance(pointer, Loc):
        return None, None
    cell = state.heap[pointer.index]
    return pointer, cell if is_allocated(cell) else None


def step(c: Command, state: SepState, config: SepDomainConfig) -> FrozenSet[SepState]:
    """Sucessores de um comando atômico a partir de um estado."""
    if state is ERR:
        return frozenset({ERR})
    if isinstance(c, Skip):
        return frozenset({state})
    env = config.env(state)
    if isinstance(c, Assign):
        value = eval_sep_aexp(c.expr, env, config)
        if value is None:
            return frozenset({ERR})
        return frozenset({config.assign(state, c.var, value)})
    if isinstance(c, Havoc):
        return frozenset(config.assign(state, c.var, value) for value in config.values)
    if isinstance(c, Assume):
        return frozenset({state}) if eval_sep_bexp(c.cond, env, config) else frozenset()
    if isinstance(c, Alloc):
        successors: Set[SepState] = set()
        for location in config.all_locations:
            if state.heap[location.index] in (CellMark.ABSENT, CellMark.DANGLING):
                moved = config.assign(state, c.var, location)
                for value in config.values:
                    successors.add(HeapState(moved.store, update_heap(state.heap, location, value)))
        return frozenset(successors)
    if isinstance(c, Free):
        pointer, cell = _cell_of(state, c.var, config)
        if cell is None:
            return frozenset({ERR})
        return frozenset({HeapState(state.store, update_heap(state.heap, pointer, CellMark.DANGLING))})
    if isinstance(c, Load):
        _, cell = _cell_of(state, c.pointer, config)
        if cell is None:
            return frozenset({ERR})
        return frozenset({config.assign(state, c.var, cell)})
    if isinstance(c, Store):
        pointer, cell = _cell_of(state, c.pointer, config)
        if cell is None:
            return frozenset({ERR})
        value = state.store[config.vars.index(c.var)]
        return frozenset({HeapState(state.store, update_heap(state.heap, pointer, value))})
    raise UnsupportedCommandError(f"comando atômico sem semântica de heap: {c!r}")


def fwsem_heap(r: Command, states: Iterable[SepState], config: SepDomainConfig) -> FrozenSet[SepState]:
    current = frozenset(states)
    if isinstance(r, Seq):
        return fwsem_heap(r.second, fwsem_heap(r.first, current, config), config)
    if isinstance(r, Choice):
        return fwsem_heap(r.left, current, config) | fwsem_heap(r.right, current, config)
    if isinstance(r, Star):
        reached = set(current)
        frontier = current
        while frontier:
            frontier = fwsem_heap(r.body, frontier, config) - reached
            reached |= frontier
        return frozenset(reached)
    successors: Set[SepState] = set()
    for state in current:
        successors |= step(r, state, config)
    return frozenset(successors)


def successors(r: Command, state: SepState, config: SepDomainConfig) -> FrozenSet[SepState]:
    return fwsem_heap(r, (state,), config)
