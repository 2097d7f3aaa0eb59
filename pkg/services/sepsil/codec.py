"""Derivações de Separation SIL no mesmo formato JSON das derivações SIL."""

from __future__ import annotations

from typing import Any, Dict, Sequence, Union

from services.errors import DerivationFormatError, ProgramSyntaxError, ScopeError
from services.sepsil.asl_text import parse_asl, print_asl
from services.sepsil.models import SepDerivation, SepRule
from services.sil_proofs.codec import load_document
from services.sil_proofs.models import DerivationDocument
from services.syntax.parser import parse_command
from services.syntax.printer import pretty_print


def encode_sep(derivation: SepDerivation) -> DerivationDocument:
    return DerivationDocument(
        rule=SepRule(derivation.rule).value,
        pre=print_asl(derivation.pre),
        cmd=pretty_print(derivation.cmd),
        post=print_asl(derivation.post),
        premises=[encode_sep(premise) for premise in derivation.premises],
        frame=print_asl(derivation.frame) if derivation.frame is not None else None,
        bound_var=derivation.bound_var,
    )


def decode_sep(document: DerivationDocument, variables: Sequence[str], path: str = "root") -> SepDerivation:
    try:
        rule = SepRule(document.rule)
    except ValueError as exc:
        raise DerivationFormatError(f"{path}: regra desconhecida {document.rule!r}") from exc
    try:
        pre = parse_asl(document.pre)
        post = parse_asl(document.post)
        frame = parse_asl(document.frame) if document.frame is not None else None
        cmd = parse_command(document.cmd, variables, heap_allowed=True)
    except (ProgramSyntaxError, ScopeError) as exc:
        raise DerivationFormatError(f"{path}: {exc}") from exc
    premises = tuple(
        decode_sep(premise, variables, f"{path}.premises[{index}]") for index, premise in enumerate(document.premises)
    )
    return SepDerivation(rule, pre, cmd, post, premises, frame=frame, bound_var=document.bound_var)


def dump_sep_derivation(derivation: SepDerivation) -> str:
    return encode_sep(derivation).model_dump_json(indent=2, exclude_none=True)


def load_sep_derivation(source: Union[str, Dict[str, Any]], variables: Sequence[str]) -> SepDerivation:
    return decode_sep(load_document(source), variables)
