"""Contratos de triplas e veredictos."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from services.semantics.domain import StateSet
from services.syntax.ast import Command


class Logic(str, Enum):
    HL = "HL"
    IL = "IL"
    NC = "NC"
    SIL = "SIL"


@dataclass(frozen=True)
class Triple:
    logic: Logic
    pre: StateSet
    cmd: Command
    post: StateSet


class Witness(BaseModel):
    """Contraexemplo concreto; `successor` só existe nas falhas com par."""

    state: Dict[str, int]
    successor: Optional[Dict[str, int]] = None
    role: str = Field(..., min_length=3)


class Verdict(BaseModel):
    """Resultado de validade; testemunha presente se e somente se inválido."""

    logic: str
    valid: bool
    witness: Optional[Witness] = None
    detail: str = ""
    checks: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def witness_iff_invalid(self) -> "Verdict":
        if self.valid and self.witness is not None:
            raise ValueError("veredicto válido não pode carregar testemunha")
        if not self.valid and self.witness is None:
            raise ValueError("veredicto inválido exige testemunha")
        return self
