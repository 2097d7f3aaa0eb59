"""Construção de derivações pela prova de completude."""

from __future__ import annotations

import logging
from typing import List, Optional

from services.semantics.collecting import bwsem
from services.semantics.domain import StateSet
from services.sil_proofs.models import Derivation, Rule
from services.syntax.ast import AtomicCmd, Choice, Command, Seq, Star

logger = logging.getLogger(__name__)


def iteration_sequence(body: Command, post: StateSet) -> List[StateSet]:
    """Q₀ = Q, Q_{n+1} = ⟦r⟧← Qₙ, até a união acumulada estabilizar."""
    sequence = [post]
    union = post
    while True:
        following = bwsem(body, sequence[-1])
        grown = union | following
        if grown == union:
            return sequence
        sequence.append(following)
        union = grown


def synthesize_derivation(r: Command, post: StateSet) -> Derivation:
    """Derivação de ⟨⟦r⟧← Q⟩ r ⟨Q⟩ aceita pelo checador."""
    if isinstance(r, AtomicCmd):
        return Derivation(Rule.ATOM, bwsem(r, post), r, post)
    if isinstance(r, Seq):
        second = synthesize_derivation(r.second, post)
        first = synthesize_derivation(r.first, second.pre)
        return Derivation(Rule.SEQ, first.pre, r, post, (first, second))
    if isinstance(r, Choice):
        left = synthesize_derivation(r.left, post)
        right = synthesize_derivation(r.right, post)
        return Derivation(Rule.CHOICE, left.pre | right.pre, r, post, (left, right))
    if isinstance(r, Star):
        sequence = iteration_sequence(r.body, post)
        premises = tuple(synthesize_derivation(r.body, q) for q in sequence[:-1])
        pre = post
        for q in sequence[1:]:
            pre = pre | q
        logger.debug("iter truncada com %d premissas", len(premises))
        return Derivation(Rule.ITER, pre, r, post, premises)
    raise TypeError(f"comando desconhecido: {r!r}")


def derive_then_weaken(r: Command, pre: StateSet, post: StateSet) -> Optional[Derivation]:
    """Derivação de ⟨P⟩ r ⟨Q⟩ quando válida; `None` caso contrário."""
    if pre.is_empty():
        return Derivation(Rule.EMPTY, pre, r, post)
    weakest = synthesize_derivation(r, post)
    if not pre <= weakest.pre:
        return None
    return Derivation(Rule.CONS, pre, r, post, (weakest,))
