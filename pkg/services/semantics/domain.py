"""
Domínio finito ℤ_B e conjuntos extensionais de estados.

Um store é codificado pelo índice em base mista
`Σ_k σ(v_k) · B^(n-1-k)`: a primeira variável declarada é a mais
significativa, de modo que `mask.reshape((B,) * n)` expõe um eixo por
variável na ordem de declaração.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

import numpy as np

from services.errors import BudgetExceededError, DomainMismatchError

Store = Dict[str, int]


@dataclass(frozen=True)
class DomainConfig:
    modulus: int
    vars: Tuple[str, ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError("o módulo B deve ser pelo menos 2")
        if not self.vars:
            raise ValueError("é preciso declarar ao menos uma variável")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variáveis repetidas na configuração do domínio")

    @property
    def size(self) -> int:
        return self.modulus ** len(self.vars)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.modulus,) * len(self.vars)

    def axis(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError as exc:
            raise DomainMismatchError(f"variável {name!r} fora do domínio {self.vars}") from exc

    def stride(self, name: str) -> int:
        return self.modulus ** (len(self.vars) - 1 - self.axis(name))

    def column(self, name: str) -> np.ndarray:
        """Valor de `name` em cada estado de Σ, indexado pela codificação."""
        return _columns(self)[self.axis(name)]

    def encode(self, store: Mapping[str, int]) -> int:
        index = 0
        for name in self.vars:
            index = index * self.modulus + (int(store[name]) % self.modulus)
        return index

    def decode(self, index: int) -> Store:
        values = []
        for _ in self.vars:
            index, value = divmod(index, self.modulus)
            values.append(value)
        return dict(zip(self.vars, reversed(values)))

    def check_budget(self, budget: int) -> None:
        if self.size > budget:
            raise BudgetExceededError(f"domínio B={self.modulus} com {len(self.vars)} variáveis", self.size, budget)


@lru_cache(maxsize=32)
def _columns(config: DomainConfig) -> Tuple[np.ndarray, ...]:
    grids = np.indices(config.shape, dtype=np.int64).reshape(len(config.vars), -1)
    columns = tuple(np.ascontiguousarray(grid) for grid in grids)
    for column in columns:
        column.flags.writeable = False
    return columns


@dataclass(frozen=True, eq=False)
class StateSet:
    """Subconjunto imutável de Σ representado como máscara booleana."""

    config: DomainConfig
    mask: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.mask.shape != (self.config.size,) or self.mask.dtype != np.bool_:
            raise ValueError("máscara incompatível com o domínio")
        if self.mask.flags.writeable:
            frozen = self.mask.copy()
            frozen.flags.writeable = False
            object.__setattr__(self, "mask", frozen)

    # --- construtores ------------------------------------------------------

    @classmethod
    def empty(cls, config: DomainConfig) -> "StateSet":
        return cls(config, np.zeros(config.size, dtype=np.bool_))

    @classmethod
    def full(cls, config: DomainConfig) -> "StateSet":
        return cls(config, np.ones(config.size, dtype=np.bool_))

    @classmethod
    def from_indices(cls, config: DomainConfig, indices: Iterable[int]) -> "StateSet":
        mask = np.zeros(config.size, dtype=np.bool_)
        mask[np.fromiter(indices, dtype=np.int64)] = True
        return cls(config, mask)

    @classmethod
    def from_stores(cls, config: DomainConfig, stores: Iterable[Mapping[str, int]]) -> "StateSet":
        return cls.from_indices(config, (config.encode(store) for store in stores))

    @classmethod
    def singleton(cls, config: DomainConfig, store: Mapping[str, int]) -> "StateSet":
        return cls.from_stores(config, [store])

    # --- álgebra booleana --------------------------------------------------

    def _same(self, other: "StateSet") -> None:
        if self.config != other.config:
            raise DomainMismatchError(f"conjuntos de domínios distintos: {self.config} e {other.config}")

    def __or__(self, other: "StateSet") -> "StateSet":
        self._same(other)
        return StateSet(self.config, self.mask | other.mask)

    def __and__(self, other: "StateSet") -> "StateSet":
        self._same(other)
        return StateSet(self.config, self.mask & other.mask)

    def __sub__(self, other: "StateSet") -> "StateSet":
        self._same(other)
        return StateSet(self.config, self.mask & ~other.mask)

    def __invert__(self) -> "StateSet":
        return StateSet(self.config, ~self.mask)

    def __le__(self, other: "StateSet") -> bool:
        self._same(other)
        return not bool(np.any(self.mask & ~other.mask))

    def __ge__(self, other: "StateSet") -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateSet):
            return NotImplemented
        return self.config == other.config and bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash((self.config, self.mask.tobytes()))

    # --- consultas ---------------------------------------------------------

    def is_empty(self) -> bool:
        return not bool(self.mask.any())

    def __len__(self) -> int:
        return int(np.count_nonzero(self.mask))

    def __contains__(self, store: Mapping[str, int]) -> bool:
        return bool(self.mask[self.config.encode(store)])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __iter__(self) -> Iterator[Store]:
        for index in self.indices():
            yield self.config.decode(int(index))

    def first(self) -> Optional[Store]:
        """Menor estado na ordem da codificação (testemunhas determinísticas)."""
        if self.is_empty():
            return None
        return self.config.decode(int(np.argmax(self.mask)))

    def grid(self) -> np.ndarray:
        return self.mask.reshape(self.config.shape)

    def __repr__(self) -> str:
        return f"StateSet(B={self.config.modulus}, vars={self.config.vars}, |S|={len(self)})"
