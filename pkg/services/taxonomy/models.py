"""Contratos das campanhas de comparação entre lógicas.

`GenConfig` descreve o corpus aleatório; `PropertyReport` é o resultado de
uma propriedade (violações, achados de busca e pendências). O tempo gasto
fica fora da serialização para que relatórios com a mesma semente sejam
idênticos byte a byte.
"""

from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, computed_field, field_validator, model_validator

from config import settings

ATOMIC_CONSTRUCTORS = ("skip", "assign", "assume", "havoc")
COMPOSITE_CONSTRUCTORS = ("seq", "choice", "star")
CONSTRUCTORS = ATOMIC_CONSTRUCTORS + COMPOSITE_CONSTRUCTORS

DEFAULT_WEIGHTS: Dict[str, float] = {
    "skip": 1.0,
    "assign": 3.0,
    "assume": 2.0,
    "havoc": 1.0,
    "seq": 3.0,
    "choice": 2.0,
    "star": 1.0,
}


class GenConfig(BaseModel):
    """Parâmetros do gerador; a instância i usa a semente `seed + i`."""

    seed: int = Field(default_factory=lambda: settings.FUZZ_SEED)
    instances: int = Field(default_factory=lambda: settings.FUZZ_INSTANCES, ge=1)
    max_depth: int = Field(default_factory=lambda: settings.FUZZ_MAX_DEPTH, ge=1)
    variables: int = Field(default_factory=lambda: settings.FUZZ_MAX_VARS, ge=1, le=6)
    modulus: int = Field(default_factory=lambda: settings.FUZZ_DOMAIN, ge=2)
    weights: Dict[str, float] = Field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    workers: int = Field(default_factory=lambda: settings.FUZZ_WORKERS, ge=1)
    search_budget: int = Field(default_factory=lambda: settings.SEARCH_BUDGET, ge=1)
    properties: Optional[List[str]] = None

    @field_validator("weights")
    @classmethod
    def weights_must_be_known(cls, value: Dict[str, float]) -> Dict[str, float]:
        unknown = set(value) - set(CONSTRUCTORS)
        if unknown:
            raise ValueError(f"construtores desconhecidos em weights: {sorted(unknown)}")
        if any(weight < 0 for weight in value.values()):
            raise ValueError("weights não podem ser negativos")
        return {name: float(value.get(name, 0.0)) for name in CONSTRUCTORS}

    @model_validator(mode="after")
    def atomic_weight_required(self) -> "GenConfig":
        if sum(self.weights[name] for name in ATOMIC_CONSTRUCTORS) <= 0:
            raise ValueError("ao menos um construtor atômico precisa de peso positivo")
        if self.modulus ** self.variables > settings.PLAIN_STATE_BUDGET:
            raise ValueError("modulus ** variables excede PLAIN_STATE_BUDGET")
        return self


class Violation(BaseModel):
    """Instância em que a propriedade falhou, já reconfirmada pelo oráculo."""

    property_id: str
    index: int
    program: str
    pre: str
    post: str
    lhs: str
    rhs: str
    detail: str = ""


class Finding(BaseModel):
    """Instância encontrada por uma busca (contraexemplo esperado)."""

    label: str = Field(..., min_length=3)
    program: str
    sets: Dict[str, str] = Field(default_factory=dict)
    planted: bool = False
    attempts: int = 0


class PropertyReport(BaseModel):
    property_id: str
    instances: int = 0
    violations: List[Violation] = Field(default_factory=list)
    findings: List[Finding] = Field(default_factory=list)
    unresolved: List[str] = Field(default_factory=list)
    elapsed_seconds: float = Field(default=0.0, exclude=True)

    @computed_field
    @property
    def ok(self) -> bool:
        return not self.violations and not self.unresolved
