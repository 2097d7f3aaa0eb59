"""Contratos da CLI: configuração de uma execução e registros de saída."""

from __future__ import annotations

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator

from config import settings
from services.triples.models import Logic


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


class RunConfig(BaseModel):
    """Argumentos já validados de um subcomando."""

    command: str
    program: Optional[str] = None
    logic: Optional[Logic] = None
    pre: Optional[str] = None
    post: Optional[str] = None
    domain: int = Field(default_factory=lambda: settings.DEFAULT_DOMAIN, ge=2)
    sep_locs: Optional[int] = Field(default=None, ge=1)
    sep_ints: Optional[Tuple[int, int]] = None
    derivation: Optional[str] = None
    emit_derivation: Optional[str] = None
    sep: bool = False
    strict: bool = False
    seed: Optional[int] = None
    instances: Optional[int] = Field(default=None, ge=1)
    workers: Optional[int] = Field(default=None, ge=1)
    properties: Optional[List[str]] = None
    output_format: OutputFormat = OutputFormat.TEXT

    @field_validator("sep_ints", mode="before")
    @classmethod
    def parse_int_range(cls, value):
        if isinstance(value, str):
            low, separator, high = value.partition("..")
            if not separator:
                raise ValueError("use o formato MIN..MAX, por exemplo 0..1")
            value = (int(low), int(high))
        return value

    @field_validator("sep_ints")
    @classmethod
    def range_not_empty(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is not None and value[1] < value[0]:
            raise ValueError("intervalo de inteiros vazio")
        return value

    @field_validator("properties")
    @classmethod
    def expand_all(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is None or "all" in value:
            return None
        return value


class StateSetSummary(BaseModel):
    """Conjunto de estados como predicado (se pequeno) ou contagem e amostras."""

    count: int
    total: int
    predicate: Optional[str] = None
    samples: List[Dict[str, int]] = Field(default_factory=list)


class InferenceReport(BaseModel):
    program: str
    post: str
    weakest_pre: StateSetSummary
    derivation_path: Optional[str] = None
    derivation_nodes: Optional[int] = None
