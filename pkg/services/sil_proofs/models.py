"""
Árvores de derivação SIL e seu formato de intercâmbio.

`Derivation` é a forma interna (conjuntos de estados e AST);
`DerivationDocument` é a forma textual com asserções `BExp` e comandos no
formato de programa. Os nomes dos campos e das regras são estáveis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from services.semantics.domain import StateSet
from services.syntax.ast import Command


class Rule(str, Enum):
    ATOM = "atom"
    CONS = "cons"
    SEQ = "seq"
    CHOICE = "choice"
    ITER = "iter"
    EMPTY = "empty"
    DISJ = "disj"
    ITER0 = "iter0"
    UNROLL = "unroll"
    UNROLL_SPLIT = "unroll_split"


# Aridade fixa; `iter` aceita qualquer número de premissas.
PREMISE_COUNT = {
    Rule.ATOM: 0,
    Rule.EMPTY: 0,
    Rule.ITER0: 0,
    Rule.CONS: 1,
    Rule.UNROLL: 1,
    Rule.UNROLL_SPLIT: 1,
    Rule.SEQ: 2,
    Rule.CHOICE: 2,
    Rule.DISJ: 2,
}

# Regras da figura de regras adicionais (modo estrito).
ADDITIONAL_RULES = frozenset({Rule.EMPTY, Rule.DISJ, Rule.ITER0, Rule.UNROLL, Rule.UNROLL_SPLIT})


@dataclass(frozen=True)
class Derivation:
    rule: Rule
    pre: StateSet
    cmd: Command
    post: StateSet
    premises: Tuple["Derivation", ...] = field(default=())

    def size(self) -> int:
        return 1 + sum(premise.size() for premise in self.premises)


class DerivationDocument(BaseModel):
    """Nó serializável; asserções são predicados e `cmd` é texto de programa."""

    rule: str
    pre: str
    cmd: str
    post: str
    premises: List["DerivationDocument"] = Field(default_factory=list)
    frame: Optional[str] = None
    bound_var: Optional[str] = None

    @field_validator("pre", "cmd", "post")
    @classmethod
    def must_not_be_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("pre, cmd e post não podem ser vazios")
        return value


DerivationDocument.model_rebuild()


class CheckReport(BaseModel):
    """Resultado da checagem: caminho do primeiro nó rejeitado e problemas."""

    accepted: bool
    nodes_checked: int = 0
    path: Optional[str] = None
    rule: Optional[str] = None
    problems: List[str] = Field(default_factory=list)
