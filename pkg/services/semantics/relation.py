"""
Relação de entrada e saída de um comando, usada como oráculo.

A relação é construída executando a semântica direta sobre pares
(origem, destino) em vez de conjuntos; equivale a rodar `fwsem` a partir
de cada singleton, mas em uma única passada vetorizada. Cada par é
codificado como `origem * |Σ| + destino`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from config import settings
from services.errors import BudgetExceededError, UnsupportedCommandError
from services.semantics.collecting import assign_targets
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import bexp_mask
from services.syntax.ast import Assign, Assume, Choice, Command, HEAP_ATOMICS, Havoc, Seq, Skip, Star

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StateRelation:
    config: DomainConfig
    codes: np.ndarray = field(repr=False)

    @property
    def sources(self) -> np.ndarray:
        return self.codes // self.config.size

    @property
    def targets(self) -> np.ndarray:
        return self.codes % self.config.size

    def __len__(self) -> int:
        return int(self.codes.size)

    def contains(self, source: dict, target: dict) -> bool:
        code = self.config.encode(source) * self.config.size + self.config.encode(target)
        position = np.searchsorted(self.codes, code)
        return bool(position < self.codes.size and self.codes[position] == code)

    def image(self, states: StateSet) -> StateSet:
        out = np.zeros(self.config.size, dtype=np.bool_)
        out[self.targets[states.mask[self.sources]]] = True
        return StateSet(self.config, out)

    def preimage(self, states: StateSet) -> StateSet:
        out = np.zeros(self.config.size, dtype=np.bool_)
        out[self.sources[states.mask[self.targets]]] = True
        return StateSet(self.config, out)

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.sources, minlength=self.config.size)


def _guard(config: DomainConfig, size: int) -> None:
    if size > settings.RELATION_PAIR_BUDGET:
        raise BudgetExceededError("relação de estados", size, settings.RELATION_PAIR_BUDGET)


def _step(r: Command, src: np.ndarray, dst: np.ndarray, config: DomainConfig):
    if isinstance(r, Skip):
        return src, dst
    if isinstance(r, Assign):
        return src, assign_targets(r.var, r.expr, config)[dst]
    if isinstance(r, Assume):
        keep = bexp_mask(r.cond, config)[dst]
        return src[keep], dst[keep]
    if isinstance(r, Havoc):
        _guard(config, dst.size * config.modulus)
        stride = config.stride(r.var)
        cleared = dst - config.column(r.var)[dst] * stride
        offsets = np.arange(config.modulus, dtype=np.int64) * stride
        return _unique(np.repeat(src, config.modulus), (cleared[:, None] + offsets).reshape(-1), config)
    if isinstance(r, HEAP_ATOMICS):
        raise UnsupportedCommandError("relação de estados só cobre comandos simples")
    if isinstance(r, Seq):
        middle_src, middle_dst = _step(r.first, src, dst, config)
        return _step(r.second, middle_src, middle_dst, config)
    if isinstance(r, Choice):
        left_src, left_dst = _step(r.left, src, dst, config)
        right_src, right_dst = _step(r.right, src, dst, config)
        return _unique(np.concatenate([left_src, right_src]), np.concatenate([left_dst, right_dst]), config)
    if isinstance(r, Star):
        codes = _encode(src, dst, config)
        while True:
            step_src, step_dst = _step(r.body, codes // config.size, codes % config.size, config)
            merged = np.union1d(codes, _encode(step_src, step_dst, config))
            _guard(config, merged.size)
            if merged.size == codes.size:
                return codes // config.size, codes % config.size
            codes = merged
    raise TypeError(f"comando desconhecido: {r!r}")


def _encode(src: np.ndarray, dst: np.ndarray, config: DomainConfig) -> np.ndarray:
    return src * config.size + dst


def _unique(src: np.ndarray, dst: np.ndarray, config: DomainConfig):
    codes = np.unique(_encode(src, dst, config))
    return codes // config.size, codes % config.size


def semantics_relation(r: Command, config: DomainConfig) -> StateRelation:
    """{(σ, σ′) | σ′ ∈ ⟦r⟧→{σ}} sobre todo Σ."""
    identity = np.arange(config.size, dtype=np.int64)
    src, dst = _step(r, identity, identity.copy(), config)
    codes = np.unique(_encode(src, dst, config))
    logger.debug("relação com %d pares sobre |Σ|=%d", codes.size, config.size)
    return StateRelation(config, codes)


def is_deterministic(r: Command, config: DomainConfig) -> bool:
    """Cada estado tem no máximo um sucessor."""
    relation = semantics_relation(r, config)
    if len(relation) == 0:
        return True
    return int(relation.out_degree().max()) <= 1
