"""Derivações de Separation SIL e veredictos do modelo limitado."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from services.sepsil.asl import Asl
from services.syntax.ast import Command


class SepRule(str, Enum):
    SKIP = "skip"
    ASSIGN = "assign"
    ASSERT = "assert"
    ALLOC = "alloc"
    FREE = "free"
    LOAD = "load"
    STORE = "store"
    EXISTS = "exists"
    FRAME = "frame"
    CONS = "cons"
    SEQ = "seq"
    CHOICE = "choice"
    ITER = "iter"
    EMPTY = "empty"
    DISJ = "disj"
    ITER0 = "iter0"
    UNROLL = "unroll"


AXIOMS = frozenset(
    {SepRule.SKIP, SepRule.ASSIGN, SepRule.ASSERT, SepRule.ALLOC, SepRule.FREE, SepRule.LOAD, SepRule.STORE}
)

SEP_PREMISE_COUNT = {
    **{rule: 0 for rule in AXIOMS},
    SepRule.EMPTY: 0,
    SepRule.ITER0: 0,
    SepRule.EXISTS: 1,
    SepRule.FRAME: 1,
    SepRule.CONS: 1,
    SepRule.UNROLL: 1,
    SepRule.SEQ: 2,
    SepRule.CHOICE: 2,
    SepRule.DISJ: 2,
}


@dataclass(frozen=True)
class SepDerivation:
    rule: SepRule
    pre: Asl
    cmd: Command
    post: Asl
    premises: Tuple["SepDerivation", ...] = field(default=())
    frame: Optional[Asl] = None
    bound_var: Optional[str] = None

    def size(self) -> int:
        return 1 + sum(premise.size() for premise in self.premises)


class SepWitness(BaseModel):
    state: str
    successors: List[str] = Field(default_factory=list)
    role: str


class SepVerdict(BaseModel):
    """Validade ⟨p⟩ r ⟨q⟩ no modelo limitado; testemunha sse inválida."""

    valid: bool
    witness: Optional[SepWitness] = None
    states_checked: int = 0
    locations: int
    int_range: Tuple[int, int]

    @model_validator(mode="after")
    def witness_iff_invalid(self) -> "SepVerdict":
        if self.valid == (self.witness is not None):
            raise ValueError("testemunha deve existir exatamente nos veredictos inválidos")
        return self
