"""Codificação de derivações SIL para o formato JSON e de volta."""

from __future__ import annotations

import json
from typing import Any, Dict, Union

from pydantic import ValidationError

from services.errors import DerivationFormatError, ProgramSyntaxError, ScopeError
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import states_satisfying
from services.semantics.predicates import describe_state_set
from services.sil_proofs.models import Derivation, DerivationDocument, Rule
from services.syntax.parser import parse_assertion, parse_command
from services.syntax.printer import pretty_print, print_bexp


def encode_state_set(states: StateSet) -> str:
    return print_bexp(describe_state_set(states))


def encode(derivation: Derivation) -> DerivationDocument:
    return DerivationDocument(
        rule=Rule(derivation.rule).value,
        pre=encode_state_set(derivation.pre),
        cmd=pretty_print(derivation.cmd),
        post=encode_state_set(derivation.post),
        premises=[encode(premise) for premise in derivation.premises],
    )


def decode(document: DerivationDocument, config: DomainConfig, path: str = "root") -> Derivation:
    try:
        rule = Rule(document.rule)
    except ValueError as exc:
        raise DerivationFormatError(f"{path}: regra desconhecida {document.rule!r}") from exc
    try:
        pre = states_satisfying(parse_assertion(document.pre, config.vars), config)
        post = states_satisfying(parse_assertion(document.post, config.vars), config)
        cmd = parse_command(document.cmd, config.vars)
    except (ProgramSyntaxError, ScopeError) as exc:
        raise DerivationFormatError(f"{path}: {exc}") from exc
    premises = tuple(
        decode(premise, config, f"{path}.premises[{index}]") for index, premise in enumerate(document.premises)
    )
    return Derivation(rule, pre, cmd, post, premises)


def load_document(source: Union[str, Dict[str, Any]]) -> DerivationDocument:
    try:
        payload = json.loads(source) if isinstance(source, str) else source
        return DerivationDocument.model_validate(payload)
    except (ValidationError, json.JSONDecodeError) as exc:
        raise DerivationFormatError(f"documento de derivação malformado: {exc}") from exc


def dump_derivation(derivation: Derivation) -> str:
    return encode(derivation).model_dump_json(indent=2, exclude_none=True)


def load_derivation(source: Union[str, Dict[str, Any]], config: DomainConfig) -> Derivation:
    return decode(load_document(source), config)
