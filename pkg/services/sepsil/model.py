"""
Modelo limitado de heap para Separation SIL.

Val = inteiros em [int_min..int_max] mais localizações abstratas `Loc(i)`.
O heap é uma tupla indexada pela localização, com `CellMark.ABSENT` para
fora do domínio e `CellMark.DANGLING` para ⊥ (desalocada). As localizações
sobressalentes nunca aparecem nos estados enumerados: existem para que
`alloc` sempre encontre uma célula livre.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Tuple, Union

from config import settings
from services.errors import BudgetExceededError
from services.syntax.ast import AExp, And, BExp, BinOp, Cmp, FalseB, Not, Num, Var


@dataclass(frozen=True, order=True)
class Loc:
    index: int

    def __str__(self) -> str:
        return f"l{self.index}"


class CellMark(Enum):
    ABSENT = "absent"
    DANGLING = "⊥"


HVal = Union[int, Loc]
Cell = Union[int, Loc, CellMark]


@dataclass(frozen=True)
class HeapState:
    store: Tuple[HVal, ...]
    heap: Tuple[Cell, ...]


class _ErrorState:
    _instance: Optional["_ErrorState"] = None

    def __new__(cls) -> "_ErrorState":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "err"

    def __reduce__(self):
        return (_ErrorState, ())


ERR = _ErrorState()
SepState = Union[HeapState, _ErrorState]


@dataclass(frozen=True)
class SepDomainConfig:
    vars: Tuple[str, ...] = ()
    locations: int = 3
    spare_locations: int = 1
    int_min: int = 0
    int_max: int = 1

    def __post_init__(self) -> None:
        if self.locations < 1:
            raise ValueError("é preciso ao menos uma localização")
        if self.spare_locations < 0:
            raise ValueError("spare_locations não pode ser negativo")
        if self.int_max < self.int_min:
            raise ValueError("intervalo de inteiros vazio")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variáveis repetidas na configuração de heap")

    @classmethod
    def from_settings(cls, variables: Iterable[str] = ()) -> "SepDomainConfig":
        return cls(
            vars=tuple(variables),
            locations=settings.SEP_LOCATIONS,
            spare_locations=settings.SEP_SPARE_LOCATIONS,
            int_min=settings.SEP_INT_MIN,
            int_max=settings.SEP_INT_MAX,
        )

    def with_vars(self, extra: Iterable[str]) -> "SepDomainConfig":
        """Mesma configuração com as variáveis extras ao final, em ordem alfabética."""
        missing = sorted(set(extra) - set(self.vars))
        if not missing:
            return self
        return replace(self, vars=self.vars + tuple(missing))

    def restricted_to(self, variables: Iterable[str]) -> "SepDomainConfig":
        return replace(self, vars=tuple(sorted(set(variables))))

    # --- valores -----------------------------------------------------------

    @property
    def ints(self) -> Tuple[int, ...]:
        return tuple(range(self.int_min, self.int_max + 1))

    @property
    def all_locations(self) -> Tuple[Loc, ...]:
        return tuple(Loc(index) for index in range(self.locations + self.spare_locations))

    @property
    def values(self) -> Tuple[HVal, ...]:
        """Val completo, usado por ∃, havoc e alloc."""
        return self.ints + self.all_locations

    @property
    def initial_values(self) -> Tuple[HVal, ...]:
        return self.ints + tuple(Loc(index) for index in range(self.locations))

    def wrap(self, value: int) -> int:
        span = self.int_max - self.int_min + 1
        return self.int_min + (value - self.int_min) % span

    # --- espaço de estados -------------------------------------------------

    @property
    def size(self) -> int:
        count = len(self.initial_values)
        return count ** len(self.vars) * (count + 2) ** self.locations

    def check_budget(self, budget: Optional[int] = None) -> None:
        budget = settings.SEP_STATE_BUDGET if budget is None else budget
        if self.size > budget:
            raise BudgetExceededError(
                f"modelo de heap com {len(self.vars)} variáveis e {self.locations} localizações", self.size, budget
            )

    def states(self) -> Iterator[HeapState]:
        """Todos os estados iniciais (sem `err`), em ordem determinística."""
        self.check_budget()
        cells = (CellMark.ABSENT, CellMark.DANGLING) + self.initial_values
        spare = (CellMark.ABSENT,) * self.spare_locations
        heaps = [tuple(heap) + spare for heap in itertools.product(cells, repeat=self.locations)]
        for store in itertools.product(self.initial_values, repeat=len(self.vars)):
            for heap in heaps:
                yield HeapState(tuple(store), heap)

    def env(self, state: HeapState) -> Dict[str, HVal]:
        return dict(zip(self.vars, state.store))

    def assign(self, state: HeapState, name: str, value: HVal) -> HeapState:
        position = self.vars.index(name)
        store = state.store[:position] + (value,) + state.store[position + 1 :]
        return HeapState(store, state.heap)


def update_heap(heap: Tuple[Cell, ...], location: Loc, cell: Cell) -> Tuple[Cell, ...]:
    return heap[: location.index] + (cell,) + heap[location.index + 1 :]


def is_allocated(cell: Cell) -> bool:
    """Célula em dom(h) com valor (não ⊥)."""
    return not isinstance(cell, CellMark)


# --- expressões no modelo de heap ---------------------------------------------


def eval_sep_aexp(a: AExp, env: Dict[str, HVal], config: SepDomainConfig) -> Optional[HVal]:
    """Valor de `a`; `None` quando a aritmética envolve uma localização."""
    if isinstance(a, Num):
        return config.wrap(a.value)
    if isinstance(a, Var):
        return env[a.name]
    if isinstance(a, BinOp):
        left = eval_sep_aexp(a.left, env, config)
        right = eval_sep_aexp(a.right, env, config)
        if not isinstance(left, int) or not isinstance(right, int):
            return None
        if a.op == "+":
            return config.wrap(left + right)
        if a.op == "-":
            return config.wrap(left - right)
        if a.op == "*":
            return config.wrap(left * right)
        return config.wrap(left % right) if right != 0 else left
    raise TypeError(f"expressão aritmética desconhecida: {a!r}")


def compare_values(op: str, left: Optional[HVal], right: Optional[HVal]) -> bool:
    """Localizações só se comparam por igualdade; `≠` entre localização e inteiro vale."""
    if left is None or right is None:
        return False
    if isinstance(left, int) and isinstance(right, int):
        return {
            "=": left == right,
            "!=": left != right,
            "<": left < right,
            "<=": left <= right,
            ">": left > right,
            ">=": left >= right,
        }[op]
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    return False


def eval_sep_bexp(b: BExp, env: Dict[str, HVal], config: SepDomainConfig) -> bool:
    if isinstance(b, FalseB):
        return False
    if isinstance(b, Not):
        return not eval_sep_bexp(b.operand, env, config)
    if isinstance(b, And):
        return eval_sep_bexp(b.left, env, config) and eval_sep_bexp(b.right, env, config)
    if isinstance(b, Cmp):
        return compare_values(b.op, eval_sep_aexp(b.left, env, config), eval_sep_aexp(b.right, env, config))
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def format_cell(cell: Cell) -> str:
    if cell is CellMark.DANGLING:
        return "⊥"
    return str(cell)


def format_state(state: SepState, config: SepDomainConfig) -> str:
    if state is ERR:
        return "err"
    store = ", ".join(f"{name}={value}" for name, value in zip(config.vars, state.store))
    heap = ", ".join(
        f"l{index}↦{format_cell(cell)}" for index, cell in enumerate(state.heap) if cell is not CellMark.ABSENT
    )
    return f"s: {store or '-'} | h: {heap or '[]'}"
